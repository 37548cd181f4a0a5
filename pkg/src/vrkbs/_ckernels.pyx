# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for weighted lp norms and duality maps (real float64).

Every routine mirrors a function of the same name in ``_pykernels``; the
two are interchangeable and are compared element-wise in the test suite.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, pow, copysign

cnp.import_array()


cdef inline double _norm(const double[::1] x, const double[::1] w,
                         Py_ssize_t lo, Py_ssize_t hi, double p) noexcept nogil:
    cdef Py_ssize_t i
    cdef double m = 0.0, s = 0.0, a
    for i in range(lo, hi):
        a = fabs(x[i])
        if a > m:
            m = a
    if m == 0.0:
        return 0.0
    for i in range(lo, hi):
        a = fabs(x[i])
        if a != 0.0:
            s += w[i] * pow(a / m, p)
    return m * pow(s, 1.0 / p)


cdef inline void _dual(const double[::1] x, Py_ssize_t lo, Py_ssize_t hi,
                       double p, double nrm, double scale,
                       double[::1] out) noexcept nogil:
    # out_i = sign(x_i) * nrm * (|x_i|/nrm)^(p-1) * scale, zero entries stay zero
    cdef Py_ssize_t i
    cdef double a
    for i in range(lo, hi):
        a = fabs(x[i])
        if a == 0.0 or nrm == 0.0:
            out[i] = 0.0
        else:
            out[i] = copysign(scale * nrm * pow(a / nrm, p - 1.0), x[i])


def lp_norm(const double[::1] x, const double[::1] w, double p):
    return _norm(x, w, 0, x.shape[0], p)


def lp_dual(const double[::1] x, const double[::1] w, double p):
    cdef Py_ssize_t n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double nrm
    with nogil:
        nrm = _norm(x, w, 0, n, p)
        _dual(x, 0, n, p, nrm, 1.0, o)
    return out, nrm


def block_norm(const double[::1] x, const double[::1] w,
               const cnp.int64_t[::1] offsets, const double[::1] inner,
               double outer):
    cdef Py_ssize_t k, nb = inner.shape[0]
    cdef double m = 0.0, s = 0.0, b
    bn = np.empty(nb, dtype=np.float64)
    cdef double[::1] bv = bn
    with nogil:
        for k in range(nb):
            bv[k] = _norm(x, w, offsets[k], offsets[k + 1], inner[k])
            if bv[k] > m:
                m = bv[k]
        if m != 0.0:
            for k in range(nb):
                b = bv[k]
                if b != 0.0:
                    s += pow(b / m, outer)
    if m == 0.0:
        return 0.0
    return m * pow(s, 1.0 / outer)


def block_dual(const double[::1] x, const double[::1] w,
               const cnp.int64_t[::1] offsets, const double[::1] inner,
               double outer):
    cdef Py_ssize_t k, nb = inner.shape[0], n = x.shape[0]
    cdef double m = 0.0, s = 0.0, total, b
    out = np.zeros(n, dtype=np.float64)
    bn = np.empty(nb, dtype=np.float64)
    cdef double[::1] o = out
    cdef double[::1] bv = bn
    with nogil:
        for k in range(nb):
            bv[k] = _norm(x, w, offsets[k], offsets[k + 1], inner[k])
            if bv[k] > m:
                m = bv[k]
        if m == 0.0:
            total = 0.0
        else:
            for k in range(nb):
                b = bv[k]
                if b != 0.0:
                    s += pow(b / m, outer)
            total = m * pow(s, 1.0 / outer)
            for k in range(nb):
                b = bv[k]
                if b != 0.0:
                    _dual(x, offsets[k], offsets[k + 1], inner[k], b,
                          pow(b / total, outer - 2.0), o)
    return out, total
