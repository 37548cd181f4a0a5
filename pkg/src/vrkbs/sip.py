"""Semi-inner products and duality mappings on weighted finite-dimensional lp spaces.

Two space types carry all the numerics:

``LpSpace``
    C^l or R^l with the weighted norm ``(sum_j w_j |u_j|^g)^(1/g)``.
``ProductSpace``
    a product of ``LpSpace`` blocks under the mixed norm
    ``(sum_j ||f_j||^p)^(1/p)``.

Both expose ``norm``, ``dual``, ``undual``, ``sip`` and ``pairing`` on plain
arrays. The dual of a space is the same shape with conjugate exponents and the
same weights; the bilinear pairing ``(u, w) = sum_j w_j u_j v_j`` carries the
weights, so ``dual`` never multiplies them in.

Terms of the form ``0 * |0|^(g-2)`` are taken to be 0, also for ``g < 2``.

The thin value types ``LpVector``, ``ProductVector`` and ``DualVector`` tie an
array to its space and are what the module-level functions accept.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from vrkbs import _backend

__all__ = [
    "conjugate_exponent",
    "check_exponent",
    "LpSpace",
    "ProductSpace",
    "LpVector",
    "ProductVector",
    "DualVector",
    "lp_norm",
    "sip",
    "dualize",
    "undualize",
    "pairing",
    "product_norm",
    "product_sip",
    "product_dualize",
]


def check_exponent(p) -> float:
    p = float(p)
    if not np.isfinite(p) or p <= 1.0:
        raise ValueError(f"exponent must lie in (1, inf), got {p!r}")
    return p


def conjugate_exponent(p) -> float:
    """Return q with 1/p + 1/q = 1."""
    p = check_exponent(p)
    return p / (p - 1.0)


def _readonly(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class LpSpace:
    """Weighted lp norm on a finite-dimensional real or complex vector space."""

    def __init__(self, dim: int, exponent, weights=None, complex: bool = False):
        dim = int(dim)
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.exponent = check_exponent(exponent)
        if weights is None:
            weights = np.ones(dim)
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (dim,):
            raise ValueError(f"weights must have shape ({dim},), got {weights.shape}")
        if not np.all(weights > 0):
            raise ValueError("weights must be positive")
        self.weights = _readonly(weights)
        self.complex = bool(complex)
        self._dual_space = None

    @property
    def dtype(self):
        return np.complex128 if self.complex else np.float64

    def __repr__(self):
        kind = "C" if self.complex else "R"
        return f"LpSpace({kind}^{self.dim}, exponent={self.exponent:g})"

    def __eq__(self, other):
        return (isinstance(other, LpSpace) and self.dim == other.dim
                and self.exponent == other.exponent and self.complex == other.complex
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.dim, self.exponent, self.complex, self.weights.tobytes()))

    def coerce(self, x):
        x = np.asarray(x)
        if x.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}, got shape {x.shape}")
        if np.iscomplexobj(x) and not self.complex:
            raise TypeError("complex vector given to a real space")
        return np.ascontiguousarray(x, dtype=self.dtype)

    def dual_space(self) -> "LpSpace":
        if self._dual_space is None:
            d = LpSpace(self.dim, conjugate_exponent(self.exponent), self.weights, self.complex)
            d._dual_space = self
            self._dual_space = d
        return self._dual_space

    def norm(self, x) -> float:
        return _backend.lp_norm(self.coerce(x), self.weights, self.exponent)

    def dual(self, x):
        """Duality map x -> x*, as coordinates in the dual space."""
        out, _ = _backend.lp_dual(self.coerce(x), self.weights, self.exponent)
        return out

    def dual_with_norm(self, x):
        return _backend.lp_dual(self.coerce(x), self.weights, self.exponent)

    def undual(self, w):
        """Inverse duality map: the unique x with dual(x) == w."""
        return self.dual_space().dual(w)

    def pairing(self, x, w):
        """Bilinear form (x, w) between the space and its dual."""
        return np.sum(self.weights * self.coerce(x) * np.asarray(w))

    def sip(self, x, y):
        return self.pairing(x, self.dual(y))

    def dual_sip(self, a, b):
        """Semi-inner product on the dual space, [a, b] = [undual(b), undual(a)]."""
        return self.pairing(self.undual(b), a)


class ProductSpace:
    """Mixed-norm product of ``LpSpace`` blocks, stored as one flat vector."""

    def __init__(self, blocks: Sequence[LpSpace], outer_exponent):
        blocks = tuple(blocks)
        if not blocks:
            raise ValueError("a product space needs at least one block")
        if len({b.complex for b in blocks}) != 1:
            raise ValueError("blocks must share a scalar field")
        self.blocks = blocks
        self.exponent = check_exponent(outer_exponent)
        self.complex = blocks[0].complex
        self.offsets = _readonly(np.concatenate(
            [[0], np.cumsum([b.dim for b in blocks])]).astype(np.int64))
        self.dim = int(self.offsets[-1])
        self.weights = _readonly(np.concatenate([b.weights for b in blocks]))
        self.inner = _readonly(np.array([b.exponent for b in blocks]))
        self._dual_space = None

    dtype = LpSpace.dtype
    coerce = LpSpace.coerce
    pairing = LpSpace.pairing
    sip = LpSpace.sip
    dual_sip = LpSpace.dual_sip

    def __repr__(self):
        return f"ProductSpace({len(self.blocks)} blocks, dim={self.dim}, outer={self.exponent:g})"

    def __eq__(self, other):
        return (isinstance(other, ProductSpace) and self.exponent == other.exponent
                and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.exponent, self.blocks))

    def split(self, x):
        x = np.asarray(x)
        return [x[lo:hi] for lo, hi in zip(self.offsets[:-1], self.offsets[1:])]

    def block_norms(self, x):
        return np.array([b.norm(xb) for b, xb in zip(self.blocks, self.split(x))])

    def dual_space(self) -> "ProductSpace":
        if self._dual_space is None:
            d = ProductSpace([b.dual_space() for b in self.blocks],
                             conjugate_exponent(self.exponent))
            d._dual_space = self
            self._dual_space = d
        return self._dual_space

    def norm(self, x) -> float:
        return _backend.block_norm(self.coerce(x), self.weights, self.offsets,
                                   self.inner, self.exponent)

    def dual(self, x):
        out, _ = self.dual_with_norm(x)
        return out

    def dual_with_norm(self, x):
        return _backend.block_dual(self.coerce(x), self.weights, self.offsets,
                                   self.inner, self.exponent)

    def undual(self, w):
        return self.dual_space().dual(w)


Space = Union[LpSpace, ProductSpace]


# --- value types ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LpVector:
    """An element of a weighted lp space."""

    values: np.ndarray
    space: LpSpace

    @classmethod
    def of(cls, entries, exponent, weights=None) -> "LpVector":
        entries = np.asarray(entries)
        if entries.ndim != 1 or entries.size == 0:
            raise ValueError("entries must be a nonempty 1-d sequence")
        cplx = np.iscomplexobj(entries)
        space = LpSpace(entries.size, exponent, weights, complex=cplx)
        return cls(_readonly(space.coerce(entries)), space)

    @property
    def exponent(self):
        return self.space.exponent

    def __len__(self):
        return self.space.dim


@dataclass(frozen=True, eq=False)
class ProductVector:
    """An element of a mixed-norm product space."""

    values: np.ndarray
    space: ProductSpace

    @classmethod
    def of(cls, blocks: Sequence[LpVector], outer_exponent) -> "ProductVector":
        blocks = list(blocks)
        cplx = any(b.space.complex for b in blocks)
        spaces = [LpSpace(b.space.dim, b.space.exponent, b.space.weights, cplx) for b in blocks]
        space = ProductSpace(spaces, outer_exponent)
        vals = np.concatenate([b.values for b in blocks]).astype(space.dtype)
        return cls(_readonly(vals), space)

    @property
    def blocks(self):
        return [LpVector(_readonly(v.copy()), b)
                for v, b in zip(self.space.split(self.values), self.space.blocks)]

    def __len__(self):
        return self.space.dim


@dataclass(frozen=True, eq=False)
class DualVector:
    """An element of the dual of ``primal``; its own space has conjugate exponents."""

    values: np.ndarray
    primal: Space

    @property
    def space(self):
        return self.primal.dual_space()


Vector = Union[LpVector, ProductVector]


def _same_space(u, v):
    if u.space != v.space:
        raise ValueError(f"space mismatch: {u.space!r} vs {v.space!r}")


def lp_norm(u: Vector) -> float:
    return u.space.norm(u.values)


def sip(u: Vector, v: Vector):
    """Semi-inner product [u, v]; linear in u, conjugate-homogeneous in v."""
    _same_space(u, v)
    return u.space.sip(u.values, v.values)


def dualize(u: Vector) -> DualVector:
    return DualVector(_readonly(u.space.dual(u.values)), u.space)


def undualize(w: DualVector) -> Vector:
    vals = _readonly(w.primal.undual(w.values))
    if isinstance(w.primal, ProductSpace):
        return ProductVector(vals, w.primal)
    return LpVector(vals, w.primal)


def pairing(u: Vector, w: DualVector):
    if u.space != w.primal:
        raise ValueError("dual vector belongs to a different space")
    return u.space.pairing(u.values, w.values)


def dual_norm(w: DualVector) -> float:
    return w.space.norm(w.values)


def product_norm(f: ProductVector) -> float:
    return lp_norm(f)


def product_sip(f: ProductVector, g: ProductVector):
    return sip(f, g)


def product_dualize(f: ProductVector) -> DualVector:
    return dualize(f)
