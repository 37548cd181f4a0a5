"""Executable versions of the two finite-dimensional counterexamples.

Non-completeness: with feature space l^m_r (dual l^m_s), output l^n_p, and
``Phi^*(x_j) xi^* = (xi^*)_1 w_j``, the dual kernel sections span W^* iff the
matrix A = [w_1 ... w_m] is nonsingular, while the primal sections span W iff
A with ``t -> conj(t)|t|^(s-2)`` applied entrywise is nonsingular. A matrix
that is nonsingular before and singular after therefore gives a space whose
kernel sections are not dense in it.

Non-positive-definiteness: in the same construction with m = 3 and
``(xi_j^*)_1 = 1``, the kernel Gram sum equals
``sum_j sum_k [w_k, w_j]_{l^3_s}``, which can be negative.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational
from typing import NamedTuple

import numpy as np

from vrkbs.kernel import FeatureMap, kernel_apply, random_feature_map
from vrkbs.sip import LpSpace, check_exponent, conjugate_exponent

__all__ = [
    "A1", "A2", "W1", "W2", "BUILTIN",
    "bareiss_det",
    "elementwise_duality_power",
    "nondensity_verify",
    "gram_sip_sum",
    "counterexample_feature_map",
    "kernel_gram_sum",
    "small_m_positivity_check",
    "NondensityReport",
    "PositivityReport",
]

A1 = ((0, 8, 2, 4),
      (5, 0, 5, 1),
      (5, 4, 6, 9),
      (0, 9, 4, 8))
A2 = ((9, 9, 9, 9),
      (8, 6, 0, 2),
      (6, 9, 2, 1),
      (7, 4, 9, 9))
# columns are w_1, w_2, w_3
W1 = ((4, -2, -3),
      (3, -5, 4),
      (1, -1, 1))
W2 = ((3, 2, -3),
      (2, -3, 3),
      (-5, 0, 4))

BUILTIN = {
    "A1": (A1, 4),
    "A2": (A2, 5),
    "W1": (W1, 4),
    "W2": (W2, 5),
}


def _is_exact(M):
    return all(isinstance(v, Rational) for row in M for v in row)


def _as_rows(A):
    if isinstance(A, np.ndarray):
        if A.dtype.kind in "iu":
            return [[int(v) for v in row] for row in A]
        return [list(row) for row in A]
    return [list(row) for row in A]


def bareiss_det(M):
    """Determinant by fraction-free (Bareiss) elimination.

    Integer input stays in Python integers throughout, so the result is
    exact; rational input is handled via ``Fraction``.
    """
    rows = _as_rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    if not _is_exact(rows):
        raise TypeError("bareiss_det needs integer or rational entries")
    if not all(isinstance(v, Integral) for row in rows for v in row):
        rows = [[Fraction(v) for v in row] for row in rows]
    a = [row[:] for row in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                # exact division: Sylvester's identity guarantees divisibility
                a[i][j] = num // prev if isinstance(num, int) else num / prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def elementwise_duality_power(A, s):
    """Apply t -> conj(t)|t|^(s-2) to every entry.

    The column normalization of the inverse duality map is left out: it
    multiplies each column by a positive scalar, and positive column scalings
    multiply the determinant by a positive factor, so (non)singularity is
    unchanged. Integer matrices with integer s stay exact integers.
    """
    s = check_exponent(s)
    rows = _as_rows(A)
    if float(s).is_integer() and all(isinstance(v, Integral) for row in rows for v in row):
        k = int(s) - 2
        return [[int(t) * abs(int(t)) ** k for t in row] for row in rows]
    arr = np.asarray(rows)
    mag = np.abs(arr)
    out = np.zeros(arr.shape, dtype=np.result_type(arr.dtype, float))
    nz = mag > 0
    out[nz] = np.conj(arr[nz]) * mag[nz] ** (s - 2.0)
    return out


class NondensityReport(NamedTuple):
    det_before: object
    det_after: object
    exact: bool
    verdict: bool


def _det(M, exact):
    if exact:
        return bareiss_det(M)
    return complex(np.linalg.det(np.asarray(M))) if np.iscomplexobj(np.asarray(M)) \
        else float(np.linalg.det(np.asarray(M, dtype=float)))


def nondensity_verify(A, s, rtol: float = 1e-12) -> NondensityReport:
    """Is A nonsingular while its entrywise duality power is singular?

    Exact integer matrices are decided by exact determinants; otherwise a
    determinant below ``rtol`` times the product of column norms counts as 0.
    """
    rows = _as_rows(A)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("nondensity_verify needs a square matrix")
    B = elementwise_duality_power(rows, s)
    exact = _is_exact(rows) and isinstance(B, list)
    d0, d1 = _det(rows, exact), _det(B, exact)
    if exact:
        return NondensityReport(d0, d1, True, d0 != 0 and d1 == 0)

    def singular(M, d):
        scale = np.prod(np.linalg.norm(np.asarray(M, dtype=complex), axis=0))
        return abs(d) <= rtol * scale

    return NondensityReport(d0, d1, False, (not singular(rows, d0)) and singular(B, d1))


def gram_sip_sum(W, s) -> float:
    """sum_j sum_k [w_k, w_j] in l^m_s, with w_j the columns of W."""
    W = np.asarray(W)
    cplx = np.iscomplexobj(W)
    W = W.astype(complex if cplx else float)
    space = LpSpace(W.shape[0], s, complex=cplx)
    cols = [W[:, j] for j in range(W.shape[1])]
    total = sum(space.sip(wk, wj) for wj in cols for wk in cols)
    if cplx:
        if abs(np.imag(total)) > 1e-10 * (1.0 + abs(total)):
            raise ArithmeticError(f"gram sum has an imaginary part: {total}")
    return float(np.real(total))


def counterexample_feature_map(W, s, n: int = 1, p=2.0) -> FeatureMap:
    """Feature map on {0, ..., m-1} with Phi^*(x_j) xi^* = (xi^*)_1 w_j.

    W^* = l^m_s, so W = l^m_r with r conjugate to s; the output is l^n_p.
    """
    W = np.asarray(W, dtype=float)
    m = W.shape[0]
    if W.shape[1] != m:
        raise ValueError("need m vectors in C^m")
    feature = LpSpace(m, conjugate_exponent(s))
    output = LpSpace(n, p)
    mats = []
    for j in range(m):
        phi = np.zeros((n, m))
        phi[0, :] = W[:, j]
        mats.append(phi)
    return FeatureMap.from_table(mats, feature, output, name="counterexample")


def kernel_gram_sum(fm: FeatureMap, points, directions) -> float:
    """sum_j sum_k [K(x_j, x_k) xi_j, xi_k]_Lambda."""
    L = fm.output_space
    total = 0.0
    for xj, xij in zip(points, directions):
        for xk, xik in zip(points, directions):
            total += L.sip(kernel_apply(fm, xj, xk, xij), xik)
    return float(np.real(total))


class PositivityReport(NamedTuple):
    trials: int
    min_sum: float
    violations: int
    ok: bool


def small_m_positivity_check(fm: FeatureMap | None = None, trials: int = 200, seed: int = 0,
                             max_m: int = 2, tol: float = 1e-10) -> PositivityReport:
    """Sample kernel Gram sums with at most ``max_m`` points over the reals.

    With ``fm=None`` a fresh random real feature map is drawn per trial.
    Inputs are points of R^2.
    """
    rng = np.random.default_rng(seed)
    worst, bad = np.inf, 0
    for _ in range(trials):
        space = fm if fm is not None else random_feature_map(rng, input_dim=2)
        if space.complex:
            raise ValueError("positivity for m <= 2 is a real-field statement")
        m = int(rng.integers(1, max_m + 1))
        pts = [rng.standard_normal(2) for _ in range(m)]
        dirs = [rng.standard_normal(space.output_space.dim) for _ in range(m)]
        value = kernel_gram_sum(space, pts, dirs)
        worst = min(worst, value)
        bad += value < -tol
    return PositivityReport(trials, float(worst), int(bad), bad == 0)
