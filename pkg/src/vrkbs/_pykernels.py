"""Pure numpy implementations of the weighted lp kernels.

Same signatures as the compiled ``_ckernels`` module. These also handle
complex input, which the compiled path does not.
"""

import numpy as np


def lp_norm(x, w, p):
    a = np.abs(x)
    m = a.max(initial=0.0)
    if m == 0.0:
        return 0.0
    return float(m * np.sum(w * (a / m) ** p) ** (1.0 / p))


def _dual_scaled(x, p, nrm, scale):
    a = np.abs(x)
    out = np.zeros_like(x)
    if nrm == 0.0:
        return out
    nz = a != 0.0
    # conj(x)|x|^(p-2)/nrm^(p-2), written to stay finite for large p and p < 2
    mag = scale * nrm * (a[nz] / nrm) ** (p - 1.0)
    out[nz] = np.conj(x[nz]) / a[nz] * mag
    return out


def lp_dual(x, w, p):
    nrm = lp_norm(x, w, p)
    return _dual_scaled(x, p, nrm, 1.0), nrm


def _block_norms(x, w, offsets, inner):
    return np.array([lp_norm(x[lo:hi], w[lo:hi], q)
                     for lo, hi, q in zip(offsets[:-1], offsets[1:], inner)])


def block_norm(x, w, offsets, inner, outer):
    bn = _block_norms(x, w, offsets, inner)
    return lp_norm(bn, np.ones_like(bn), outer)


def block_dual(x, w, offsets, inner, outer):
    bn = _block_norms(x, w, offsets, inner)
    total = lp_norm(bn, np.ones_like(bn), outer)
    out = np.zeros_like(x)
    if total == 0.0:
        return out, 0.0
    for k, (lo, hi) in enumerate(zip(offsets[:-1], offsets[1:])):
        if bn[k] != 0.0:
            out[lo:hi] = _dual_scaled(x[lo:hi], inner[k], bn[k],
                                      (bn[k] / total) ** (outer - 2.0))
    return out, total
