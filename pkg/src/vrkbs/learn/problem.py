"""Regularized learning problems and the objective in feature coordinates.

For f = Phi(.) u the objective is

    F(u) = sum_j phi(||Phi(x_j) u - xi_j||) + lam * Psi(||u||)

and its gradient in dual coordinates is

    G(u) = sum_j [phi'(rho_j) / rho_j] Phi(x_j)^* r_j^* + lam [Psi'(||u||) / ||u||] u^*

with r_j the residuals and rho_j their norms. The directional derivative along
h is Re (h, G). Complex feature spaces are handled through the real view
z = (Re u, Im u).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from vrkbs.kernel import FeatureMap
from vrkbs.learn.losses import LossSpec, RegularizerSpec

__all__ = [
    "LearningProblem",
    "Model",
    "objective_eval",
    "objective_gradient",
    "to_real",
    "from_real",
    "real_gradient",
]


def to_real(v, cplx: bool):
    v = np.asarray(v)
    return np.concatenate([v.real, v.imag]) if cplx else np.asarray(v, dtype=float)


def from_real(z, cplx: bool):
    if not cplx:
        return z
    k = z.shape[0] // 2
    return z[:k] + 1j * z[k:]


def real_gradient(G, weights, cplx: bool):
    """Euclidean gradient in the real view from the dual-coordinate gradient."""
    g = weights * G
    return np.concatenate([g.real, -g.imag]) if cplx else np.real(g)


@dataclass(frozen=True, eq=False)
class LearningProblem:
    space: FeatureMap
    points: Sequence
    targets: np.ndarray
    loss: LossSpec
    regularizer: RegularizerSpec
    lam: float
    phis: np.ndarray = field(init=False, repr=False)
    adjoints: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.lam <= 0 or not np.isfinite(self.lam):
            raise ValueError("lambda must be positive and finite")
        m = len(self.points)
        if m < 1:
            raise ValueError("need at least one sample")
        L = self.space.output_space
        t = np.asarray(self.targets)
        if t.ndim == 1 and L.dim == 1:
            t = t[:, None]
        if t.shape != (m, L.dim):
            raise ValueError(f"targets must have shape ({m}, {L.dim}), got {t.shape}")
        t = np.array(t, dtype=L.dtype)
        t.setflags(write=False)
        object.__setattr__(self, "targets", t)
        object.__setattr__(self, "points", list(self.points))
        phis = np.stack([self.space.phi(x) for x in self.points])
        adj = np.stack([self.space.adjoint(x) for x in self.points])
        phis.setflags(write=False)
        adj.setflags(write=False)
        object.__setattr__(self, "phis", phis)
        object.__setattr__(self, "adjoints", adj)

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def complex(self) -> bool:
        return self.space.complex

    @property
    def dim(self) -> int:
        return self.space.feature_space.dim

    def residuals(self, u):
        return np.einsum("jni,i->jn", self.phis, np.asarray(u)) - self.targets

    def residual_norms(self, R):
        L = self.space.output_space
        return np.array([L.norm(r) for r in R])

    def zero(self):
        return np.zeros(self.dim, dtype=self.space.feature_space.dtype)


@dataclass(frozen=True, eq=False)
class Model:
    """Learned f0 = Phi(.) u with representer parameters eta (one row per sample)."""

    u: np.ndarray
    eta: np.ndarray
    space: FeatureMap
    objective: float = float("nan")
    gradient_norm: float = float("nan")
    iterations: int = 0
    converged: bool = True
    constraint_residual: float = float("nan")
    message: str = ""

    def predict(self, x):
        return self.space.apply(x, self.u)

    def predict_many(self, xs):
        n = self.space.output_space.dim
        if len(xs) == 0:
            return np.zeros((0, n), dtype=self.space.output_space.dtype)
        return np.stack([self.predict(x) for x in xs])

    @property
    def norm(self) -> float:
        return self.space.feature_space.norm(self.u)


def objective_eval(problem: LearningProblem, u, exact: bool = False) -> float:
    """F(u). ``exact=True`` evaluates the unsmoothed eps-insensitive loss."""
    W = problem.space.feature_space
    u = W.coerce(u)
    rho = problem.residual_norms(problem.residuals(u))
    data = float(np.sum(problem.loss.value(rho, exact=exact)))
    return data + problem.lam * problem.regularizer.value(W.norm(u))


def _value_and_gradient(problem: LearningProblem, u):
    W, L = problem.space.feature_space, problem.space.output_space
    if not problem.loss.differentiable:
        raise ValueError("the loss is not differentiable; use a smoothed eps-insensitive loss")
    R = problem.residuals(u)
    G = np.zeros(W.dim, dtype=W.dtype)
    rho = np.empty(problem.m)
    for j, r in enumerate(R):
        rstar, rho[j] = L.dual_with_norm(r)
        a = float(problem.loss.ratio(rho[j]))
        if a != 0.0:
            G += a * (problem.adjoints[j] @ rstar)
    ustar, unorm = W.dual_with_norm(u)
    reg = problem.regularizer
    b = reg.ratio(unorm)
    if b != 0.0 and unorm > 0.0:
        G += problem.lam * b * ustar
    value = float(np.sum(problem.loss.value(rho))) + problem.lam * reg.value(unorm)
    return value, G, rho, unorm


def objective_gradient(problem: LearningProblem, u):
    """G(u) in dual feature coordinates, with the 0/0 := 0 convention."""
    u = problem.space.feature_space.coerce(u)
    return _value_and_gradient(problem, u)[1]
