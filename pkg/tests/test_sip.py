import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vrkbs.sip import (
    DualVector,
    LpSpace,
    LpVector,
    ProductSpace,
    ProductVector,
    conjugate_exponent,
    dual_norm,
    dualize,
    lp_norm,
    pairing,
    product_dualize,
    product_norm,
    sip,
    undualize,
)

exponents = st.sampled_from([1.2, 1.5, 2.0, 2.5, 3.0, 4.0, 7.0])
reals = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def vectors(n_min=1, n_max=6):
    return st.lists(reals, min_size=n_min, max_size=n_max).map(np.array)


def dual_oracle(x, w, p):
    # direct transcription of conj(x)|x|^(p-2) / ||x||^(p-2), one entry at a time
    nrm = sum(wi * abs(xi) ** p for xi, wi in zip(x, w)) ** (1 / p)
    if nrm == 0:
        return [0.0] * len(x)
    return [0.0 if xi == 0 else np.conj(xi) * abs(xi) ** (p - 2) / nrm ** (p - 2) for xi in x]


def test_norm_examples():
    assert LpSpace(2, 2).norm([3.0, 4.0]) == pytest.approx(5.0, rel=1e-15)
    assert LpSpace(3, 3).norm([1.0, -1.0, 1.0]) == pytest.approx(3 ** (1 / 3), rel=1e-15)
    assert LpSpace(2, 2, weights=[4.0, 1.0]).norm([1.0, 0.0]) == pytest.approx(2.0)
    assert LpSpace(3, 1.5).norm(np.zeros(3)) == 0.0


def test_norm_handles_extreme_magnitudes():
    sp = LpSpace(2, 4)
    assert sp.norm([1e200, 1e200]) == pytest.approx(1e200 * 2 ** 0.25, rel=1e-14)
    assert sp.norm([1e-200, 0.0]) == pytest.approx(1e-200, rel=1e-14)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 4.0])
def test_dual_matches_entrywise_oracle(p, rng):
    w = rng.uniform(0.5, 2.0, 5)
    x = rng.standard_normal(5)
    x[2] = 0.0
    got = LpSpace(5, p, w).dual(x)
    np.testing.assert_allclose(got, dual_oracle(x, w, p), rtol=1e-13, atol=1e-15)


def test_complex_dual_matches_oracle(rng):
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    w = np.ones(4)
    got = LpSpace(4, 3.0, complex=True).dual(x)
    np.testing.assert_allclose(got, dual_oracle(x, w, 3.0), rtol=1e-13)


def test_hilbert_dual_is_conjugation(rng):
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    np.testing.assert_allclose(LpSpace(4, 2, complex=True).dual(x), np.conj(x), rtol=1e-15)


def test_zero_and_basis_vectors():
    sp = LpSpace(3, 3.0)
    np.testing.assert_array_equal(sp.dual(np.zeros(3)), np.zeros(3))
    np.testing.assert_allclose(sp.dual([1.0, 0.0, 0.0]), [1.0, 0.0, 0.0])


def test_sip_of_unit_vectors_is_inner_product_like():
    sp = LpSpace(2, 3.0)
    assert sp.sip([1.0, 0.0], [0.0, 1.0]) == 0.0
    assert sp.sip([1.0, 0.0], [1.0, 0.0]) == pytest.approx(1.0)


def test_invalid_exponent_and_shape():
    with pytest.raises(ValueError):
        LpSpace(2, 1.0)
    with pytest.raises(ValueError):
        conjugate_exponent(0.5)
    with pytest.raises(ValueError):
        LpSpace(2, 2.0).norm([1.0, 2.0, 3.0])
    with pytest.raises(TypeError):
        LpSpace(2, 2.0).norm([1j, 0.0])


def test_value_types_round_trip():
    u = LpVector.of([1.0, -2.0, 0.5], 3.0)
    us = dualize(u)
    assert isinstance(us, DualVector)
    assert us.space.exponent == pytest.approx(1.5)
    assert dual_norm(us) == pytest.approx(lp_norm(u), rel=1e-14)
    assert pairing(u, us) == pytest.approx(lp_norm(u) ** 2, rel=1e-14)
    np.testing.assert_allclose(undualize(us).values, u.values, rtol=1e-13)
    v = LpVector.of([1.0, 2.0], 3.0)
    with pytest.raises(ValueError):
        sip(u, v)


def test_product_space_norm_and_dual(rng):
    a = LpVector.of(rng.standard_normal(3), 3.0)
    b = LpVector.of(rng.standard_normal(2), 1.5)
    f = ProductVector.of([a, b], 4.0)
    norms = np.array([lp_norm(a), lp_norm(b)])
    total = np.sum(norms ** 4) ** 0.25
    assert product_norm(f) == pytest.approx(total, rel=1e-14)
    fs = product_dualize(f).values
    expect = np.concatenate([dualize(a).values * (norms[0] / total) ** 2,
                             dualize(b).values * (norms[1] / total) ** 2])
    np.testing.assert_allclose(fs, expect, rtol=1e-13)
    assert [blk.space.exponent for blk in f.blocks] == [3.0, 1.5]


def test_product_blocks_must_share_field():
    with pytest.raises(ValueError):
        ProductSpace([LpSpace(2, 2.0), LpSpace(2, 2.0, complex=True)], 2.0)


@given(vectors(), exponents)
def test_sip_diagonal_is_squared_norm(x, p):
    sp = LpSpace(len(x), p)
    assert sp.sip(x, x) == pytest.approx(sp.norm(x) ** 2, rel=1e-12, abs=1e-300)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(vectors(n, n), vectors(n, n))), exponents)
def test_cauchy_schwarz(xy, p):
    x, y = xy
    sp = LpSpace(len(x), p)
    assert abs(sp.sip(x, y)) <= sp.norm(x) * sp.norm(y) * (1 + 1e-12) + 1e-300


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(vectors(n, n), vectors(n, n))), exponents,
       st.floats(-50, 50).filter(lambda a: abs(a) > 1e-3))
def test_homogeneity_in_both_arguments(xy, p, a):
    x, y = xy
    sp = LpSpace(len(x), p)
    base = sp.sip(x, y)
    scale = 1.0 + abs(base) + sp.norm(x) * sp.norm(y)
    assert sp.sip(a * x, y) == pytest.approx(a * base, abs=1e-11 * abs(a) * scale)
    assert sp.sip(x, a * y) == pytest.approx(a * base, abs=1e-11 * abs(a) * scale)


@given(vectors(), exponents)
def test_duality_map_is_an_involution(x, p):
    sp = LpSpace(len(x), p)
    back = sp.undual(sp.dual(x))
    np.testing.assert_allclose(back, x, rtol=1e-9, atol=1e-9 * (1 + sp.norm(x)))


@given(vectors(2, 5), exponents)
def test_dual_norm_is_isometric(x, p):
    sp = LpSpace(len(x), p)
    d = sp.dual(x)
    assert sp.dual_space().norm(d) == pytest.approx(sp.norm(x), rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 4.0])
def test_sip_is_the_gateaux_derivative_of_half_squared_norm(p, rng):
    sp = LpSpace(4, p, rng.uniform(0.5, 2, 4))
    x, y = rng.standard_normal(4), rng.standard_normal(4)
    h = 1e-6
    fd = (sp.norm(y + h * x) ** 2 - sp.norm(y - h * x) ** 2) / (4 * h)
    assert sp.sip(x, y) == pytest.approx(fd, rel=1e-6)
