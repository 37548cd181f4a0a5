"""Minimal norm interpolation: min ||u||_W subject to Phi(x_j) u = z_j.

The constraint set is the affine space u0 + N v with u0 the least squares
solution and N a basis of the null space of the stacked Phi(x_j). Minimizing
||u0 + N v||^2 over v is then unconstrained and smooth, the constraints hold to
least squares accuracy at every iterate, and stationarity in v is exactly the
statement that u^* lies in the span of the dual kernel sections.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from vrkbs.kernel import FeatureMap
from vrkbs.learn.optim import minimize
from vrkbs.learn.problem import Model, from_real, to_real
from vrkbs.learn.span import stacked_adjoint, span_coefficients

__all__ = ["InfeasibleInterpolation", "solve_min_norm_interpolation"]

FEASIBILITY_TOL = 1e-10


class InfeasibleInterpolation(ValueError):
    """No u satisfies Phi(x_j) u = z_j for all j."""


def solve_min_norm_interpolation(space: FeatureMap, points: Sequence, targets,
                                 tol: float = 1e-12, max_iter: int = 5000) -> Model:
    W, L = space.feature_space, space.output_space
    cplx = space.complex
    points = list(points)
    z = np.asarray(targets, dtype=L.dtype).reshape(len(points), L.dim)
    A = np.concatenate([space.phi(x) for x in points], axis=0)
    b = z.ravel()
    u0, *_ = np.linalg.lstsq(A, b, rcond=None)
    scale = max(1.0, float(np.abs(b).max(initial=0.0)))
    infeas = float(np.abs(A @ u0 - b).max(initial=0.0))
    if infeas > FEASIBILITY_TOL * scale:
        raise InfeasibleInterpolation(f"constraints are inconsistent (residual {infeas:.3g})")

    N = null_space(A)
    Wd = W.dual_space()
    k = N.shape[1]

    def fun(zv):
        v = from_real(zv, cplx)
        u = u0 + N @ v
        ustar, nrm = W.dual_with_norm(u)
        # d(||u||^2 / 2) = Re (N dv, ||u|| u^*)
        Gv = N.T @ (W.weights * nrm * ustar)
        g = np.concatenate([Gv.real, -Gv.imag]) if cplx else Gv
        # stationarity measured as the distance of u^* to the dual span, relative to ||u||
        stat = float(np.linalg.norm(Gv)) / max(nrm, 1e-300) if nrm > 0 else 0.0
        return 0.5 * nrm * nrm, g, stat

    if k == 0 or not np.any(b):
        v = np.zeros(k, dtype=W.dtype)
        res_it, res_ok, res_msg, stat = 0, True, "converged", 0.0
        if not np.any(b):
            u0 = np.zeros_like(u0)
    else:
        res = minimize(fun, to_real(np.zeros(k, dtype=W.dtype), cplx), tol=tol,
                       max_iter=max_iter)
        v = from_real(res.x, cplx)
        res_it, res_ok, res_msg, stat = res.iterations, res.converged, res.message, res.stationarity
    u = W.coerce(u0 + N @ v)
    cres = float(max(L.norm(space.apply(x, u) - zj) for x, zj in zip(points, z)))
    # representer parameters: u^* = sum_j Phi(x_j)^* eta_j^*
    c, _ = span_coefficients(stacked_adjoint(space, points), W.dual(u))
    eta = np.stack([L.undual(cj) for cj in c.reshape(len(points), L.dim)])
    return Model(u=u, eta=eta, space=space, objective=W.norm(u), gradient_norm=stat,
                 iterations=res_it, converged=res_ok, constraint_residual=cres,
                 message=res_msg)
