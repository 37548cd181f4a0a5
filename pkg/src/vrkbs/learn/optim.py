"""Line-search descent on a smooth convex function of a real vector.

Two direction rules share one Armijo backtracking line search (initial step
1, shrink 0.5, slope 1e-4):

``mirror``  d = -J^{-1}(G), the inverse duality map applied to the gradient.
``lbfgs``   limited-memory BFGS, started from the mirror direction.

Near the optimum the objective difference drops below floating point
resolution before the gradient does. In that regime a step is also accepted
when the objective is unchanged to roundoff and the stationarity measure
decreases.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

ARMIJO_C = 1e-4
SHRINK = 0.5
MAX_HALVINGS = 60
ROUNDOFF = 64 * np.finfo(float).eps


@dataclass
class OptimResult:
    x: np.ndarray
    value: float
    stationarity: float
    iterations: int
    converged: bool
    message: str


def minimize(fun: Callable, x0, tol: float = 1e-8, max_iter: int = 1000,
             method: str = "lbfgs", mirror: Callable | None = None,
             memory: int = 30, precond=None) -> OptimResult:
    """Minimize ``fun(x) -> (value, grad, stationarity)``.

    ``mirror(x, grad) -> direction`` supplies the mirror direction; without
    it the steepest descent direction is used. ``precond`` is the diagonal of
    the initial inverse-Hessian metric of L-BFGS (identity by default).
    """
    if method not in ("lbfgs", "mirror"):
        raise ValueError(f"unknown method {method!r}")
    x = np.array(x0, dtype=float)
    h0 = np.ones_like(x) if precond is None else np.asarray(precond, dtype=float)
    f, g, s = fun(x)
    best = (s, x.copy(), f)
    hist: deque = deque(maxlen=memory)

    def base_direction(x, g):
        return mirror(x, g) if mirror is not None else -g

    it = 0
    msg = "max_iter reached"
    while it < max_iter:
        if s < tol:
            msg = "converged"
            break
        if method == "lbfgs" and hist:
            d = _two_loop(g, hist, h0)
        else:
            d = base_direction(x, g)
        slope = float(g @ d)
        if not slope < 0:
            hist.clear()
            d = base_direction(x, g)
            slope = float(g @ d)
            if not slope < 0:
                msg = "no descent direction"
                break
        step = _armijo(fun, x, f, s, d, slope)
        if step is None and hist:
            hist.clear()
            d = base_direction(x, g)
            slope = float(g @ d)
            step = _armijo(fun, x, f, s, d, slope) if slope < 0 else None
        if step is None:
            msg = "line search stalled"
            break
        t, xn, fn, gn, sn = step
        if method == "lbfgs":
            sk, yk = xn - x, gn - g
            sy = float(sk @ yk)
            if sy > 1e-12 * float(np.linalg.norm(sk) * np.linalg.norm(yk)):
                hist.append((sk, yk, 1.0 / sy))
        x, f, g, s = xn, fn, gn, sn
        it += 1
        if s < best[0]:
            best = (s, x.copy(), f)
    if s >= best[0]:
        s, x, f = best
    return OptimResult(x, f, s, it, s < tol, msg if s >= tol else "converged")


def _armijo(fun, x, f, s, d, slope):
    t = 1.0
    for _ in range(MAX_HALVINGS):
        xn = x + t * d
        fn, gn, sn = fun(xn)
        if np.isfinite(fn):
            if fn <= f + ARMIJO_C * t * slope:
                return t, xn, fn, gn, sn
            if fn <= f + ROUNDOFF * (1.0 + abs(f)) and sn < s:
                return t, xn, fn, gn, sn
        t *= SHRINK
    return None


def _two_loop(g, hist, h0):
    q = g.copy()
    alphas = []
    for sk, yk, rho in reversed(hist):
        a = rho * float(sk @ q)
        alphas.append(a)
        q -= a * yk
    sk, yk, rho = hist[-1]
    q *= h0 * (float(sk @ yk) / float(yk @ (h0 * yk)))
    for (sk, yk, rho), a in zip(hist, reversed(alphas)):
        b = rho * float(yk @ q)
        q += (a - b) * sk
    return -q
