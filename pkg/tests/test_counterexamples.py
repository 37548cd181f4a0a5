from fractions import Fraction

import numpy as np
import pytest

from vrkbs import counterexamples as cx
from vrkbs.kernel import FeatureMap, denseness_rank_check, primal_span_rank
from vrkbs.sip import LpSpace

# regression baselines, frozen from the first computation
W1_SUM = -1.594699100920689
W2_SUM = -1.4101857311073118


def test_bareiss_known_values():
    assert cx.bareiss_det(cx.A1) == 420
    assert cx.bareiss_det(cx.A2) == -360
    assert cx.bareiss_det([[0, 1], [1, 0]]) == -1
    assert cx.bareiss_det([[Fraction(1, 2), 1], [1, 3]]) == Fraction(1, 2)
    assert cx.bareiss_det([[1, 2], [2, 4]]) == 0
    with pytest.raises(ValueError):
        cx.bareiss_det([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(TypeError):
        cx.bareiss_det([[1.5, 0.0], [0.0, 1.0]])


@pytest.mark.parametrize("seed", range(10))
def test_bareiss_matches_float_determinant(seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-9, 10, (5, 5))
    assert cx.bareiss_det(A) == round(np.linalg.det(A))


def test_bareiss_is_exact_for_large_entries():
    big = 10 ** 30
    assert cx.bareiss_det([[big, 1], [1, big]]) == big * big - 1


def test_powers_are_exact_integers():
    cubed = cx.elementwise_duality_power(cx.A1, 4)
    assert cubed[0][1] == 512 and cubed[1][0] == 125
    assert all(isinstance(v, int) for row in cubed for v in row)
    fourth = cx.elementwise_duality_power([[-2]], 5)
    assert fourth == [[-16]]
    assert cx.bareiss_det(cubed) == 0
    assert cx.bareiss_det(cx.elementwise_duality_power(cx.A2, 5)) == 0


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_nondensity_verdicts(name):
    A, s = cx.BUILTIN[name]
    rep = cx.nondensity_verify(A, s)
    assert rep.exact and rep.verdict and rep.det_after == 0 and rep.det_before != 0


def test_nondensity_negative_cases():
    assert not cx.nondensity_verify(np.eye(4, dtype=int), 4).verdict
    assert not cx.nondensity_verify([[1, 2], [2, 4]], 4).verdict
    with pytest.raises(ValueError):
        cx.nondensity_verify([[1, 2]], 4)


def test_nondensity_float_path():
    rep = cx.nondensity_verify(np.asarray(cx.A1, dtype=float), 4.0)
    assert not rep.exact and rep.verdict


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_kernel_sections_are_not_dense(name):
    A, s = cx.BUILTIN[name]
    fm = cx.counterexample_feature_map(A, s)
    pts, dirs = fm.domain, [np.ones(1)] * 4
    assert denseness_rank_check(fm, pts, dirs).full
    primal = primal_span_rank(fm, pts, dirs)
    assert not primal.full and primal.rank == 3


def test_gram_sums_are_negative_and_match_baselines():
    w1 = cx.gram_sip_sum(cx.W1, 4)
    w2 = cx.gram_sip_sum(cx.W2, 5)
    assert w1 < 0 and w2 < 0
    assert w1 == pytest.approx(W1_SUM, rel=1e-13)
    assert w2 == pytest.approx(W2_SUM, rel=1e-13)


def test_gram_sum_oracle():
    # independent transcription: [w_k, w_j] = sum_i w_k,i w_j,i |w_j,i|^(s-2) / ||w_j||^(s-2)
    W = np.asarray(cx.W1, dtype=float)
    total = 0.0
    for j in range(3):
        wj = W[:, j]
        nj = np.sum(np.abs(wj) ** 4) ** 0.25
        for k in range(3):
            total += np.sum(W[:, k] * wj * np.abs(wj) ** 2) / nj ** 2
    assert cx.gram_sip_sum(cx.W1, 4) == pytest.approx(total, rel=1e-14)


@pytest.mark.parametrize("name", ["W1", "W2"])
def test_kernel_gram_sum_equals_sip_sum(name):
    Wm, s = cx.BUILTIN[name]
    fm = cx.counterexample_feature_map(Wm, s)
    value = cx.kernel_gram_sum(fm, fm.domain, [np.ones(1)] * 3)
    assert value == pytest.approx(cx.gram_sip_sum(Wm, s), rel=1e-12)


def test_hilbert_gram_sum_is_nonnegative(rng):
    W = rng.standard_normal((3, 3))
    assert cx.gram_sip_sum(W, 2) >= -1e-12


def test_complex_gram_sum():
    W = np.array([[1 + 1j, 0], [0, 1 - 2j]])
    assert cx.gram_sip_sum(W, 3) == pytest.approx(cx.gram_sip_sum(np.abs(W), 3), rel=1e-12)


def test_small_m_positivity():
    rep = cx.small_m_positivity_check(trials=100, seed=3)
    assert rep.ok and rep.violations == 0 and rep.min_sum >= -1e-10
    cspace = LpSpace(1, 2.0, complex=True)
    fm = FeatureMap(lambda x: np.ones((1, 1), dtype=complex), cspace, cspace)
    with pytest.raises(ValueError):
        cx.small_m_positivity_check(fm=fm, trials=1)


def test_nondensity_is_fast():
    import time

    t = time.perf_counter()
    for _ in range(100):
        cx.nondensity_verify(cx.A1, 4)
    assert (time.perf_counter() - t) / 100 < 1e-3
