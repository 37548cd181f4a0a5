"""The space of n x d sensing matrices, A acting as x -> A x.

Norm: the l^r norm of the l^p norms of the columns (rows with
``transpose=True``). The output space is l^n_gamma.
"""

from __future__ import annotations

import numpy as np

from vrkbs.kernel import FeatureMap, kernel_apply as _generic_kernel_apply
from vrkbs.sip import LpSpace, ProductSpace, check_exponent

__all__ = ["SensingMatrixSpace", "schatten_norm"]


def schatten_norm(A, p) -> float:
    """l^p norm of the singular values of A."""
    p = check_exponent(p)
    s = np.linalg.svd(np.asarray(A, dtype=float), compute_uv=False)
    return float(np.sum(s ** p) ** (1.0 / p))


def _pnorm(v, p):
    a = np.abs(v)
    m = a.max(initial=0.0)
    return 0.0 if m == 0.0 else float(m * np.sum((a / m) ** p) ** (1.0 / p))


def _pdual(v, p):
    a = np.abs(v)
    nrm = _pnorm(v, p)
    out = np.zeros_like(v, dtype=float)
    if nrm > 0.0:
        nz = a > 0
        out[nz] = np.sign(v[nz]) * nrm * (a[nz] / nrm) ** (p - 1.0)
    return out


class SensingMatrixSpace:
    def __init__(self, d: int, n: int, p=2.0, r=2.0, gamma=2.0, transpose: bool = False):
        self.d, self.n = int(d), int(n)
        self.p = check_exponent(p)
        self.r = check_exponent(r)
        self.gamma = check_exponent(gamma)
        self.transpose = bool(transpose)
        self.output_space = LpSpace(self.n, self.gamma)
        nblocks, bdim = (self.n, self.d) if self.transpose else (self.d, self.n)
        self.feature_space = ProductSpace([LpSpace(bdim, self.p)] * nblocks, self.r)

    def __repr__(self):
        return (f"SensingMatrixSpace(d={self.d}, n={self.n}, p={self.p:g}, r={self.r:g}, "
                f"gamma={self.gamma:g}, transpose={self.transpose})")

    def _check(self, A):
        A = np.asarray(A, dtype=float)
        if A.shape != (self.n, self.d):
            raise ValueError(f"expected an {self.n}x{self.d} matrix, got {A.shape}")
        return A

    def _cols(self, A):
        return A.T if self.transpose else A

    def norm(self, A) -> float:
        C = self._cols(self._check(A))
        return _pnorm(np.array([_pnorm(C[:, j], self.p) for j in range(C.shape[1])]), self.r)

    def dual(self, A):
        """A^* = [a_j^* ||a_j||_p^(r-2)] / ||A||^(r-2); zero columns give zero."""
        A = self._check(A)
        C = self._cols(A)
        total = self.norm(A)
        out = np.zeros_like(C)
        if total == 0.0:
            return self._cols(out)
        for j in range(C.shape[1]):
            cn = _pnorm(C[:, j], self.p)
            if cn > 0.0:
                out[:, j] = _pdual(C[:, j], self.p) * (cn / total) ** (self.r - 2.0)
        return self._cols(out)

    @staticmethod
    def pairing(A, B):
        return float(np.sum(np.asarray(A) * np.asarray(B)))

    def sip(self, A, B):
        return self.pairing(A, self.dual(B))

    def xi_dual(self, xi):
        return self.output_space.dual(np.asarray(xi, dtype=float))

    def dual_section(self, x, xi):
        """(K(x, .) xi)^* = xi^* x^T."""
        x = np.asarray(x, dtype=float)
        return np.outer(self.xi_dual(xi), x)

    # feature-form representation: the coefficient of A is its stacked columns
    def vec(self, A):
        A = self._check(A)
        return A.ravel(order="C" if self.transpose else "F")

    def unvec(self, v):
        v = np.asarray(v)
        if self.transpose:
            return v.reshape(self.n, self.d)
        return v.reshape(self.d, self.n).T

    def feature_map(self) -> FeatureMap:
        eye = np.eye(self.n)

        def matrix(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            if self.transpose:
                return np.kron(eye, x[None, :])
            return np.kron(x[None, :], eye)

        return FeatureMap(matrix, self.feature_space, self.output_space, name="sensing matrices")

    def kernel_apply(self, x, y, xi):
        """K(x, y) xi through the feature form (no closed form is used)."""
        return _generic_kernel_apply(self.feature_map(), x, y, xi)
