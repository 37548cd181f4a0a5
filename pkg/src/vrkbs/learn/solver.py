"""Solving the regularized problem in feature coordinates."""

from __future__ import annotations

import numpy as np

from vrkbs.learn.optim import minimize
from vrkbs.learn.problem import (
    LearningProblem,
    Model,
    _value_and_gradient,
    from_real,
    real_gradient,
    to_real,
)

__all__ = ["solve", "recover_eta"]


def recover_eta(problem: LearningProblem, u):
    """Representer parameters from stationarity.

    eta_j = -c_j r_j with c_j = [phi'(rho_j)/rho_j] / (lam Psi'(||u||)/||u||).
    For square loss with sigma = 2 this is eta_j = (xi_j - f0(x_j)) / lam.
    Returns zeros when the regularizer coefficient vanishes (u = 0, sigma != 2).
    """
    W = problem.space.feature_space
    R = problem.residuals(u)
    rho = problem.residual_norms(R)
    denom = problem.lam * problem.regularizer.ratio(W.norm(u))
    if denom == 0.0 or not np.isfinite(denom):
        return np.zeros_like(R)
    c = problem.loss.ratio(rho) / denom
    return -c[:, None] * R


def solve(problem: LearningProblem, tol: float = 1e-8, max_iter: int = 5000,
          method: str = "lbfgs", u0=None) -> Model:
    """Minimize the regularized objective; stop when ||G(u)||_{W*} < tol.

    ``method="mirror"`` uses plain mirror steps -J^{-1}(G); the default
    ``"lbfgs"`` adds curvature pairs on top of the same line search. When
    max_iter is hit the best iterate found is returned with
    ``converged=False``.
    """
    W = problem.space.feature_space
    Wd = W.dual_space()
    cplx = problem.complex

    def fun(z):
        u = from_real(z, cplx)
        f, G, _, _ = _value_and_gradient(problem, u)
        return f, real_gradient(G, W.weights, cplx), Wd.norm(G)

    def mirror(z, g):
        # recover G from the real gradient, then step along -J^{-1}(G)
        k = W.dim
        G = (g[:k] - 1j * g[k:]) / W.weights if cplx else g / W.weights
        return -to_real(W.undual(G), cplx)

    start = problem.zero() if u0 is None else W.coerce(u0)
    h0 = 1.0 / W.weights
    res = minimize(fun, to_real(start, cplx), tol=tol, max_iter=max_iter, method=method,
                   mirror=mirror, precond=np.concatenate([h0, h0]) if cplx else h0)
    u = W.coerce(from_real(res.x, cplx))
    return Model(u=u, eta=recover_eta(problem, u), space=problem.space, objective=res.value,
                 gradient_norm=res.stationarity, iterations=res.iterations,
                 converged=res.converged, message=res.message)
