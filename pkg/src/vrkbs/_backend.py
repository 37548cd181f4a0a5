"""Select the compiled or pure-Python kernel implementation at import time.

Set ``VRKBS_PURE_PYTHON=1`` in the environment to force the numpy fallback.
Complex arrays always take the numpy path, and so do flat lp vectors longer
than ``FLAT_CUTOFF``, where numpy's vectorized pow beats the scalar loop.
"""

import os

import numpy as np

from vrkbs import _pykernels

_compiled = None
if os.environ.get("VRKBS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from vrkbs import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
FLAT_CUTOFF = 512


def _pick(x):
    if _compiled is not None and x.dtype == np.float64:
        return _compiled
    return _pykernels


def _pick_flat(x):
    return _pykernels if x.shape[0] > FLAT_CUTOFF else _pick(x)


def lp_norm(x, w, p):
    return float(_pick_flat(x).lp_norm(x, w, p))


def lp_dual(x, w, p):
    return _pick_flat(x).lp_dual(x, w, p)


def block_norm(x, w, offsets, inner, outer):
    return float(_pick(x).block_norm(x, w, offsets, inner, outer))


def block_dual(x, w, offsets, inner, outer):
    return _pick(x).block_dual(x, w, offsets, inner, outer)
