"""Vector-valued RKBS built from a feature map, and their reproducing kernels.

A ``FeatureMap`` sends an input ``x`` to a dense matrix ``Phi(x)`` acting from a
feature space ``W`` (an ``LpSpace`` or ``ProductSpace``) to an output space
``Lambda``. The RKBS is ``{Phi(.) u : u in W}`` with ``||Phi(.)u|| = ||u||_W``,
and its kernel is ``K(x, y) = Phi(y) Phi^dagger(x)`` where the generalized
adjoint ``Phi^dagger(x) = J_W^{-1} Phi(x)^* J_Lambda`` is nonlinear unless all
exponents are 2.

``Phi(x)^*`` is the adjoint for the weighted bilinear pairings of the two
spaces, i.e. ``diag(1/w_W) Phi(x)^T diag(w_Lambda)`` (a plain transpose when all
weights are one).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import optimize

from vrkbs.sip import LpSpace, ProductSpace, Space

__all__ = [
    "FeatureMap",
    "RkbsFunction",
    "KernelSection",
    "ScalarizedRkbs",
    "RankReport",
    "evaluate",
    "generalized_adjoint_apply",
    "kernel_apply",
    "kernel_apply_via_duality",
    "kernel_section",
    "dual_section",
    "rkbs_sip",
    "rkbs_norm",
    "denseness_rank_check",
    "primal_span_rank",
    "numerical_rank",
    "scalarize",
    "operator_norm",
    "random_feature_map",
]

RANK_RTOL = 1e-10


class FeatureMap:
    """x -> Phi(x), a linear operator from ``feature_space`` to ``output_space``."""

    def __init__(self, matrix: Callable, feature_space: Space, output_space: LpSpace,
                 name: str = "feature map"):
        self._matrix = matrix
        self.feature_space = feature_space
        self.output_space = output_space
        self.name = name
        if output_space.complex and not feature_space.complex:
            raise ValueError("a real feature space cannot feed a complex output space")

    @classmethod
    def from_table(cls, matrices: Sequence, feature_space: Space, output_space: LpSpace,
                   name: str = "finite domain"):
        """Feature map on the finite domain {0, ..., m-1} given by explicit matrices."""
        mats = [np.array(m, dtype=feature_space.dtype) for m in matrices]
        for m in mats:
            m.setflags(write=False)
        fm = cls(lambda x: mats[int(x)], feature_space, output_space, name)
        fm.domain = list(range(len(mats)))
        return fm

    def __repr__(self):
        return (f"FeatureMap({self.name!r}, W={self.feature_space!r}, "
                f"Lambda={self.output_space!r})")

    @property
    def complex(self):
        return self.feature_space.complex

    def phi(self, x):
        m = np.asarray(self._matrix(x))
        shape = (self.output_space.dim, self.feature_space.dim)
        if m.shape != shape:
            raise ValueError(f"Phi(x) has shape {m.shape}, expected {shape}")
        return m

    def adjoint(self, x):
        """Matrix of Phi(x)^*: Lambda^* -> W^* under the weighted pairings."""
        m = self.phi(x)
        return (m.T * self.output_space.weights[None, :]) / self.feature_space.weights[:, None]

    def apply(self, x, u):
        return self.phi(x) @ np.asarray(u)


@dataclass(frozen=True, eq=False)
class RkbsFunction:
    """f = Phi(.) u for a feature coefficient u."""

    coef: np.ndarray
    space: FeatureMap

    def __post_init__(self):
        c = self.space.feature_space.coerce(self.coef)
        c.setflags(write=False)
        object.__setattr__(self, "coef", c)

    def __call__(self, x):
        return evaluate(self, x)

    def norm(self) -> float:
        return rkbs_norm(self)

    def dual(self):
        """Coefficient of f^* in W^*."""
        return self.space.feature_space.dual(self.coef)

    def __add__(self, other):
        _check_same(self, other)
        return RkbsFunction(self.coef + other.coef, self.space)

    def __sub__(self, other):
        _check_same(self, other)
        return RkbsFunction(self.coef - other.coef, self.space)

    def __mul__(self, a):
        return RkbsFunction(a * self.coef, self.space)

    __rmul__ = __mul__


def _check_same(f, g):
    if f.space is not g.space:
        raise ValueError("functions live in different spaces")


def evaluate(f: RkbsFunction, x):
    """Point evaluation f(x) = Phi(x) u."""
    return f.space.apply(x, f.coef)


def generalized_adjoint_apply(fm: FeatureMap, x, xi):
    """Phi^dagger(x) xi = J_W^{-1}(Phi(x)^* J_Lambda xi)."""
    return fm.feature_space.undual(dual_section(fm, x, xi))


def dual_section(fm: FeatureMap, x, xi):
    """Coefficient in W^* of (K(x, .) xi)^*, namely Phi(x)^* xi^*."""
    return fm.adjoint(x) @ fm.output_space.dual(xi)


def kernel_apply(fm: FeatureMap, x, y, xi):
    """K(x, y) xi = Phi(y) Phi^dagger(x) xi."""
    return fm.phi(y) @ generalized_adjoint_apply(fm, x, xi)


def kernel_apply_via_duality(fm: FeatureMap, x, y, xi):
    """K(x, y) xi computed as J_B^{-1} (delta_x)^* J_Lambda xi, evaluated at y.

    (delta_x)^* xi^* is assembled by probing the functional f -> (f(x), xi^*)
    on the coordinate functions of W, without using ``FeatureMap.adjoint``.
    """
    W, L = fm.feature_space, fm.output_space
    xi_star = L.dual(xi)
    eye = np.eye(W.dim, dtype=W.dtype)
    functional = np.array([np.sum(L.weights * evaluate(RkbsFunction(e, fm), x) * xi_star)
                           for e in eye])
    section_dual = functional / W.weights
    section = RkbsFunction(W.undual(section_dual), fm)
    return section(y)


@dataclass(frozen=True, eq=False)
class KernelSection:
    """K(x, .) xi, held through its feature coefficient and its dual coefficient."""

    x: object
    xi: np.ndarray
    coef: np.ndarray
    dual_coef: np.ndarray
    space: FeatureMap

    def function(self) -> RkbsFunction:
        return RkbsFunction(self.coef, self.space)

    def __call__(self, y):
        return self.space.apply(y, self.coef)

    def norm(self) -> float:
        return self.space.feature_space.norm(self.coef)


def kernel_section(fm: FeatureMap, x, xi) -> KernelSection:
    xi = fm.output_space.coerce(xi)
    dc = dual_section(fm, x, xi)
    return KernelSection(x, xi, fm.feature_space.undual(dc), dc, fm)


def rkbs_sip(f: RkbsFunction, g: RkbsFunction):
    _check_same(f, g)
    return f.space.feature_space.sip(f.coef, g.coef)


def rkbs_norm(f: RkbsFunction) -> float:
    return f.space.feature_space.norm(f.coef)


class RankReport(NamedTuple):
    full: bool
    rank: int
    dim: int
    singular_values: np.ndarray


def numerical_rank(columns, rtol: float = RANK_RTOL) -> tuple[int, np.ndarray]:
    """Rank with singular values below rtol * largest counted as zero."""
    a = np.asarray(columns)
    if a.size == 0:
        return 0, np.zeros(0)
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0, s
    return int(np.sum(s > rtol * s[0])), s


def denseness_rank_check(fm: FeatureMap, points, directions=None,
                         rtol: float = RANK_RTOL) -> RankReport:
    """Do the dual sections Phi^*(x) xi^* over the given points span W^*?

    Phi(x)^* is linear on Lambda^*, so without ``directions`` its full column
    space is used; otherwise only the sections for the given xi.
    """
    cols = []
    for x in points:
        if directions is None:
            cols.append(fm.adjoint(x))
        else:
            cols.append(np.column_stack([dual_section(fm, x, xi) for xi in directions]))
    rank, s = numerical_rank(np.hstack(cols), rtol)
    dim = fm.feature_space.dim
    return RankReport(rank == dim, rank, dim, s)


def primal_span_rank(fm: FeatureMap, points, directions, rtol: float = RANK_RTOL) -> RankReport:
    """Rank of span{Phi^dagger(x) xi} in W over the given points and directions."""
    cols = [generalized_adjoint_apply(fm, x, xi) for x in points for xi in directions]
    rank, s = numerical_rank(np.column_stack(cols), rtol)
    dim = fm.feature_space.dim
    return RankReport(rank == dim, rank, dim, s)


class ScalarizedRkbs:
    """Scalar-valued view on X x Lambda: f~(x, xi) = [f(x), xi]_Lambda."""

    def __init__(self, fm: FeatureMap):
        self.feature_map = fm

    def value(self, f: RkbsFunction, x, xi):
        return self.feature_map.output_space.sip(evaluate(f, x), xi)

    def kernel(self, x, xi, y, eta):
        """K~((x, xi), (y, eta)) = [K(x, y) xi, eta]_Lambda."""
        return self.feature_map.output_space.sip(kernel_apply(self.feature_map, x, y, xi), eta)

    def norm(self, f: RkbsFunction) -> float:
        return rkbs_norm(f)

    def sip(self, f: RkbsFunction, g: RkbsFunction):
        return rkbs_sip(f, g)


def scalarize(fm: FeatureMap) -> ScalarizedRkbs:
    return ScalarizedRkbs(fm)


def operator_norm(apply: Callable, space: LpSpace, rng: np.random.Generator,
                  samples: int = 200, polish: bool = True, polish_starts: int = 2) -> float:
    """Estimate sup ||apply(xi)|| / ||xi|| for a homogeneous map on ``space``.

    Random unit directions plus the coordinate axes give a starting lower
    bound, refined by a local maximization from the best few directions.
    """
    n = space.dim

    def ratio(xi):
        nx = space.norm(xi)
        return 0.0 if nx == 0.0 else space.norm(apply(xi)) / nx

    cand = [np.eye(n)[i] for i in range(n)]
    cand += [rng.standard_normal(n) for _ in range(samples)]
    if space.complex:
        cand += [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(samples // 2)]
    vals = np.array([ratio(c) for c in cand])
    best = float(vals.max())
    if not polish:
        return best
    for i in np.argsort(vals)[-polish_starts:]:
        x0 = cand[i]
        if space.complex:
            x0 = np.concatenate([np.real(x0), np.imag(x0)])
            fun = lambda z: -ratio(z[:n] + 1j * z[n:])
        else:
            x0 = np.real(x0)
            fun = lambda z: -ratio(z)
        res = optimize.minimize(fun, x0, method="Nelder-Mead",
                                options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 200 * n})
        best = max(best, -float(res.fun))
    return best


def random_feature_map(rng: np.random.Generator, input_dim: int = 2, output_dim: int | None = None,
                       exponents: Sequence[float] = (1.5, 2.0, 3.0, 4.0),
                       max_feature_dim: int = 8, complex: bool = False,
                       weighted: bool = False) -> FeatureMap:
    """A random affine-in-x feature map Phi(x) = M_0 + sum_k x_k M_k.

    The feature space is an ``LpSpace`` or a ``ProductSpace`` of up to three
    blocks with exponents drawn from ``exponents``.
    """
    n = int(output_dim) if output_dim is not None else int(rng.integers(1, 4))
    pick = lambda: float(rng.choice(exponents))

    def weights(k):
        return rng.uniform(0.5, 2.0, k) if weighted else None

    total = int(rng.integers(2, max_feature_dim + 1))
    if rng.random() < 0.5:
        W = LpSpace(total, pick(), weights(total), complex)
    else:
        nblocks = int(rng.integers(1, min(3, total) + 1))
        cuts = np.sort(rng.choice(np.arange(1, total), nblocks - 1, replace=False)) if nblocks > 1 else []
        sizes = np.diff(np.concatenate([[0], cuts, [total]])).astype(int)
        W = ProductSpace([LpSpace(int(k), pick(), weights(int(k)), complex) for k in sizes], pick())
    L = LpSpace(n, pick(), weights(n), complex)

    def draw():
        m = rng.standard_normal((n, W.dim))
        if complex:
            m = m + 1j * rng.standard_normal((n, W.dim))
        return m

    mats = [draw() for _ in range(input_dim + 1)]

    def matrix(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return mats[0] + sum(xk * mk for xk, mk in zip(x, mats[1:]))

    return FeatureMap(matrix, W, L, name="random affine")
