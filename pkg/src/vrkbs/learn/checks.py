"""Optimality, representer and independence checks for learned models."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from vrkbs.kernel import FeatureMap, dual_section, numerical_rank
from vrkbs.learn.problem import LearningProblem, Model
from vrkbs.learn.span import span_coefficients, stacked_adjoint

__all__ = [
    "characterization_residual",
    "ZeroTest",
    "zero_minimizer_test",
    "representer_check",
    "essential_li_check",
    "dual_coordinate_residual",
    "network_residuals",
]


def characterization_residual(problem: LearningProblem, model: Model) -> float:
    """||lam [Psi'(||f0||)/||f0||] f0^* + sum_j [phi'(rho_j)/rho_j] (K(x_j,.) r_j)^*||_{W*}.

    Built from the dual kernel sections of the residuals r_j = f0(x_j) - xi_j.
    """
    fm = problem.space
    W = fm.feature_space
    u = W.coerce(model.u)
    total = np.zeros(W.dim, dtype=W.dtype)
    for x, xi in zip(problem.points, problem.targets):
        r = fm.apply(x, u) - xi
        rho = fm.output_space.norm(r)
        a = float(problem.loss.ratio(rho))
        if a != 0.0:
            total += a * dual_section(fm, x, r)
    nrm = W.norm(u)
    if nrm > 0.0:
        total += problem.lam * problem.regularizer.ratio(nrm) * W.dual(u)
    return W.dual_space().norm(total)


class ZeroTest(NamedTuple):
    holds: bool
    lhs: float
    rhs: float


def zero_minimizer_test(problem: LearningProblem) -> ZeroTest:
    """Is f0 = 0 the minimizer? Compares ||T||_{W*} with lam * Psi'(0).

    T = sum_j [phi'(||xi_j||)/||xi_j||] (K(x_j, .) xi_j)^*.
    """
    fm = problem.space
    W = fm.feature_space
    T = np.zeros(W.dim, dtype=W.dtype)
    for x, xi in zip(problem.points, problem.targets):
        a = float(problem.loss.ratio(fm.output_space.norm(xi)))
        if a != 0.0:
            T += a * dual_section(fm, x, xi)
    lhs = W.dual_space().norm(T)
    rhs = problem.lam * problem.regularizer.derivative(0.0)
    return ZeroTest(bool(lhs <= rhs), float(lhs), float(rhs))


def representer_check(model: Model, space: FeatureMap, points) -> float:
    """Euclidean distance of u^* to span{Phi(x_j)^* e_l} by least squares."""
    W = space.feature_space
    _, res = span_coefficients(stacked_adjoint(space, points), W.dual(model.u))
    return res


def essential_li_check(space: FeatureMap, points, rtol: float = 1e-10) -> bool:
    """Does sum_j Phi(x_j)^* eta_j^* = 0 force every eta_j = 0?"""
    B = stacked_adjoint(space, points)
    rank, _ = numerical_rank(B, rtol)
    return rank == B.shape[1]


def dual_coordinate_residual(model: Model, problem: LearningProblem, basis=None):
    """Residual matrix R[j, l] of the dual-coordinate equations.

    R = lam [eta_j, e_l] + [Phi(x_j)^* e_l^*, sum_k Phi(x_k)^* eta_k^*]_{W*} - [xi_j, e_l].
    Only meaningful for the square loss with sigma = 2.
    """
    if problem.loss.kind != "square" or problem.regularizer.sigma != 2.0:
        raise ValueError("the dual-coordinate equations hold for square loss with sigma = 2")
    fm = problem.space
    W, L = fm.feature_space, fm.output_space
    E = np.eye(L.dim, dtype=L.dtype) if basis is None else np.asarray(basis, dtype=L.dtype)
    eta = np.asarray(model.eta)
    s = np.zeros(W.dim, dtype=W.dtype)
    for x, e in zip(problem.points, eta):
        s += dual_section(fm, x, e)
    Wd = W.dual_space()
    R = np.zeros((problem.m, len(E)), dtype=W.dtype)
    for j, (x, xi) in enumerate(zip(problem.points, problem.targets)):
        for l, e in enumerate(E):
            R[j, l] = (problem.lam * L.sip(eta[j], e)
                       + Wd.sip(dual_section(fm, x, e), s)
                       - L.sip(xi, e))
    return R


def network_residuals(problem: LearningProblem, model: Model):
    """||lam eta_j + f0(x_j) - xi_j||_Lambda for each j."""
    fm = problem.space
    return np.array([fm.output_space.norm(problem.lam * e + fm.apply(x, model.u) - xi)
                     for x, e, xi in zip(problem.points, model.eta, problem.targets)])
