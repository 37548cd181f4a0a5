import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vrkbs import _backend, _pykernels

try:
    from vrkbs import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
IMPLS = [pytest.param(_pykernels, id="python"),
         pytest.param(_ckernels, id="cython", marks=needs_ext)]

exps = st.sampled_from([1.1, 1.5, 2.0, 3.0, 4.0, 10.0])
vals = st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=12)


@pytest.mark.parametrize("impl", IMPLS)
def test_known_values(impl):
    x = np.array([3.0, 4.0])
    w = np.ones(2)
    assert impl.lp_norm(x, w, 2.0) == pytest.approx(5.0)
    out, nrm = impl.lp_dual(x, w, 2.0)
    np.testing.assert_allclose(out, x)
    assert nrm == pytest.approx(5.0)
    out, nrm = impl.lp_dual(np.zeros(3), np.ones(3), 3.0)
    assert nrm == 0.0 and np.all(out == 0.0)


@needs_ext
@given(vals, exps)
def test_compiled_matches_python_lp(xs, p):
    x = np.array(xs)
    w = np.linspace(0.5, 2.0, len(x))
    assert _ckernels.lp_norm(x, w, p) == pytest.approx(_pykernels.lp_norm(x, w, p), rel=1e-13,
                                                       abs=1e-300)
    a, na = _ckernels.lp_dual(x, w, p)
    b, nb = _pykernels.lp_dual(x, w, p)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-300)
    assert na == pytest.approx(nb, rel=1e-13, abs=1e-300)


@needs_ext
@given(st.lists(vals, min_size=1, max_size=4), st.lists(exps, min_size=4, max_size=4), exps)
def test_compiled_matches_python_blocks(blocks, inner, outer):
    x = np.concatenate([np.array(b) for b in blocks])
    offsets = np.concatenate([[0], np.cumsum([len(b) for b in blocks])]).astype(np.int64)
    inner = np.array(inner[:len(blocks)])
    w = np.ones(len(x))
    assert _ckernels.block_norm(x, w, offsets, inner, outer) == pytest.approx(
        _pykernels.block_norm(x, w, offsets, inner, outer), rel=1e-13, abs=1e-300)
    a, na = _ckernels.block_dual(x, w, offsets, inner, outer)
    b, nb = _pykernels.block_dual(x, w, offsets, inner, outer)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-300)


def test_complex_input_uses_python_path():
    x = np.array([1 + 1j, 2.0])
    assert _backend._pick(x) is _pykernels


def test_env_var_forces_python_backend():
    env = dict(os.environ, VRKBS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import vrkbs; print(vrkbs.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_long_flat_vectors_use_numpy():
    assert _backend._pick_flat(np.zeros(_backend.FLAT_CUTOFF + 1)) is _pykernels
