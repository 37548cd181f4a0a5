"""Translation-invariant C^n-valued spaces built from Fourier transforms.

The feature space is ``(L^p(R^d, phi dt))^n`` with phi the standard Gaussian
density and the feature map ``Phi(x)u = c S int u(t) phi(t) e^{-i x.t} dt``.
Two normalizations of the constant c are supported:

``"probability"`` (default)
    c = 1, so at p = 2 with the Euclidean output norm the kernel is exactly
    ``S S^T exp(-||x - y||^2 / 2)``.
``"unitary"``
    c = (2 pi)^(-d/2), the symmetric Fourier convention; every kernel value is
    then scaled by (2 pi)^(-d).

``discretized_feature_map`` replaces the integral by a trapezoidal rule on a
uniform tensor grid, giving a weighted lp feature space.
"""

from __future__ import annotations

import numpy as np

from vrkbs.kernel import FeatureMap
from vrkbs.sip import LpSpace, ProductSpace, check_exponent, conjugate_exponent

__all__ = ["TranslationInvariantSpace", "trapezoid_grid"]

MAX_CONDITION = 1e12


def trapezoid_grid(d: int, points: int = 400, half_width: float = 8.0):
    """Uniform tensor grid on [-half_width, half_width]^d with trapezoidal weights."""
    if points < 2:
        raise ValueError("grid needs at least two points per axis")
    t = np.linspace(-half_width, half_width, points)
    h = t[1] - t[0]
    w = np.full(points, h)
    w[0] = w[-1] = h / 2.0
    mesh = np.meshgrid(*([t] * d), indexing="ij")
    nodes = np.stack([m.ravel() for m in mesh], axis=1)
    wmesh = np.meshgrid(*([w] * d), indexing="ij")
    weights = np.prod(np.stack([m.ravel() for m in wmesh], axis=1), axis=1)
    return nodes, weights


class TranslationInvariantSpace:
    def __init__(self, d: int, n: int, S, p=2.0, output_exponent=None,
                 normalization: str = "probability"):
        self.d, self.n = int(d), int(n)
        S = np.asarray(S, dtype=float)
        if S.shape != (self.n, self.n):
            raise ValueError(f"S must be {self.n}x{self.n}")
        cond = np.linalg.cond(S)
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise ValueError(f"S is singular or too ill-conditioned (cond={cond:.3g})")
        self.S = S
        self.p = check_exponent(p)
        self.q = conjugate_exponent(p)
        self.r = check_exponent(output_exponent) if output_exponent is not None else self.q
        if normalization == "probability":
            self.c = 1.0
        elif normalization == "unitary":
            self.c = (2.0 * np.pi) ** (-self.d / 2.0)
        else:
            raise ValueError(f"unknown normalization {normalization!r}")
        self.normalization = normalization
        self.output_space = LpSpace(self.n, self.r, complex=True)

    def __repr__(self):
        return (f"TranslationInvariantSpace(d={self.d}, n={self.n}, p={self.p:g}, "
                f"r={self.r:g}, normalization={self.normalization!r})")

    @staticmethod
    def density(t):
        t = np.atleast_2d(t)
        d = t.shape[1]
        return (2.0 * np.pi) ** (-d / 2.0) * np.exp(-0.5 * np.sum(t * t, axis=1))

    @staticmethod
    def characteristic(s):
        """int phi(t) e^{-i s.t} dt for the standard Gaussian density."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return float(np.exp(-0.5 * s @ s))

    def phi_hat(self, s):
        """Fourier transform of the density in the symmetric convention."""
        return (2.0 * np.pi) ** (-self.d / 2.0) * self.characteristic(s)

    def _xi_dual(self, xi):
        return self.output_space.dual(np.asarray(xi, dtype=complex))

    def dual_section(self, x, xi, y):
        """(K(x, .) xi)^*(y) = c^2 S S^T xi^* chi(x - y)."""
        x, y = np.atleast_1d(x), np.atleast_1d(y)
        return (self.c ** 2 * self.characteristic(x - y)) * (self.S @ (self.S.T @ self._xi_dual(xi)))

    def kernel_apply(self, x, y, xi):
        """K(x, y) xi in closed form; components with (S^T xi^*)_j = 0 are 0."""
        x, y = np.atleast_1d(x), np.atleast_1d(y)
        a = self.S.T @ self._xi_dual(xi)
        mag = np.abs(a)
        amax = mag.max(initial=0.0)
        if amax == 0.0:
            return np.zeros(self.n, dtype=complex)
        anorm = amax * np.sum((mag / amax) ** self.q) ** (1.0 / self.q)
        e = (self.p - 2.0) / (self.p - 1.0)
        b = np.zeros(self.n, dtype=complex)
        nz = mag > 0
        b[nz] = np.conj(a[nz]) * (mag[nz] / anorm) ** (-e)
        return (self.c ** 2 * self.characteristic(y - x)) * (self.S @ b)

    def discretized_feature_map(self, points: int = 400, half_width: float = 8.0) -> FeatureMap:
        """Weighted-lp feature map from trapezoidal quadrature of the Fourier integral."""
        nodes, tw = trapezoid_grid(self.d, points, half_width)
        if nodes.shape[0] == 0:
            raise ValueError("empty quadrature grid")
        omega = tw * self.density(nodes)
        keep = omega > 0
        nodes, omega = nodes[keep], omega[keep]
        K = nodes.shape[0]
        block = LpSpace(K, self.p, omega, complex=True)
        W = ProductSpace([block] * self.n, self.p)
        S, c = self.S, self.c

        def matrix(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            row = c * omega * np.exp(-1j * (nodes @ x))
            return np.kron(S, row[None, :])

        fm = FeatureMap(matrix, W, self.output_space, name="translation invariant (quadrature)")
        fm.nodes = nodes
        return fm

    @staticmethod
    def shift_coefficient(fm: FeatureMap, u, y):
        """Coefficient of f(. + y) when f = Phi(.) u: multiply by e^{-i y.t}."""
        y = np.atleast_1d(np.asarray(y, dtype=float))
        phase = np.exp(-1j * (fm.nodes @ y))
        n = fm.output_space.dim
        return np.asarray(u) * np.tile(phase, n)
