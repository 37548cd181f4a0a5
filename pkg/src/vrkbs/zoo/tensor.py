"""Tensor products of scalar RKHS under an lp mixed norm.

The space holds f = (f_1, ..., f_n) with f_j in the RKHS of a scalar kernel
K_j and ``||f|| = (sum_j ||f_j||^p)^(1/p)``; the output space is l^n_r.
Closed forms for the dual kernel section, the section norm and K(x, y) xi are
implemented directly; ``feature_map`` gives the same space in feature form so
the generic machinery can cross-check them.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from vrkbs.kernel import FeatureMap
from vrkbs.sip import LpSpace, ProductSpace, check_exponent, conjugate_exponent
from vrkbs.zoo.scalar_kernels import ScalarKernel

__all__ = ["SingularKernelError", "TensorProductSpace"]


class SingularKernelError(ValueError):
    """Raised when some K_j(x, x) <= 0, where the closed forms divide by it."""


class TensorProductSpace:
    def __init__(self, kernels: Sequence[ScalarKernel], p=2.0, r=2.0):
        self.kernels = list(kernels)
        if not self.kernels:
            raise ValueError("need at least one scalar kernel")
        self.n = len(self.kernels)
        self.p = check_exponent(p)
        self.q = conjugate_exponent(p)
        self.r = check_exponent(r)
        self.output_space = LpSpace(self.n, self.r)
        self.feature_space = ProductSpace([LpSpace(k.feature_dim, 2.0) for k in self.kernels],
                                          self.p)

    def __repr__(self):
        return f"TensorProductSpace(n={self.n}, p={self.p:g}, r={self.r:g})"

    def feature_map(self) -> FeatureMap:
        offsets = self.feature_space.offsets

        def matrix(x):
            m = np.zeros((self.n, self.feature_space.dim))
            for j, k in enumerate(self.kernels):
                m[j, offsets[j]:offsets[j + 1]] = k.features(x)
            return m

        return FeatureMap(matrix, self.feature_space, self.output_space, name="tensor product")

    def scalar_kernel_values(self, x, y):
        return np.array([k(x, y) for k in self.kernels])

    def _diag(self, x):
        kxx = self.scalar_kernel_values(x, x)
        if np.any(kxx <= 0.0):
            raise SingularKernelError(f"K_j(x, x) must be positive, got {kxx}")
        return kxx

    def _xi_dual(self, xi):
        # conj(xi_j)|xi_j|^(r-2) / ||xi||_r^(r-2), zero components stay zero
        xi = np.asarray(xi, dtype=float)
        a = np.abs(xi)
        nrm = np.sum(a ** self.r) ** (1.0 / self.r)
        out = np.zeros_like(xi)
        if nrm == 0.0:
            return out, a, nrm
        nz = a > 0
        out[nz] = np.sign(xi[nz]) * a[nz] ** (self.r - 1.0) / nrm ** (self.r - 2.0)
        return out, a, nrm

    def dual_section(self, x, xi):
        """Coefficient of (K(x, .) xi)^* in W^*: block j is (xi^*)_j psi_j(x)."""
        self._diag(x)
        c, _, _ = self._xi_dual(xi)
        return np.concatenate([cj * k.features(x) for cj, k in zip(c, self.kernels)])

    def kernel_norm(self, x, xi) -> float:
        """||K(x, .) xi||_B."""
        kxx = self._diag(x)
        _, a, nrm = self._xi_dual(xi)
        if nrm == 0.0:
            return 0.0
        terms = (a ** (self.r - 1.0) * np.sqrt(kxx)) ** self.q
        return float(np.sum(terms) ** (1.0 / self.q) / nrm ** (self.r - 2.0))

    def kernel_apply(self, x, y, xi):
        """K(x, y) xi from the closed form; components with xi_j = 0 are 0."""
        kxx = self._diag(x)
        kxy = self.scalar_kernel_values(x, y)
        xi = np.asarray(xi, dtype=float)
        _, a, nrm = self._xi_dual(xi)
        out = np.zeros(self.n)
        if nrm == 0.0:
            return out
        knorm = self.kernel_norm(x, xi)
        nz = a > 0
        p = self.p
        inner = (knorm ** (p - 2.0) * a[nz] ** (self.r - 1.0)
                 / (nrm ** (self.r - 2.0) * kxx[nz] ** ((p - 2.0) / 2.0)))
        out[nz] = np.sign(xi[nz]) * kxy[nz] * inner ** (1.0 / (p - 1.0))
        return out
