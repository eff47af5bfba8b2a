import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import bisect_root, q_direct, q_ratio_direct
from presentbias.errors import DomainError
from presentbias.model import TaskParams, log_q_values
from presentbias.threshold import (
    ThresholdResult,
    beta0_asymptotic,
    beta0_exact,
    bounds,
    is_tai,
    is_tai_direct,
    log_q_ratio_gamma,
    log_q_ratio_product,
    q_ratio,
    q_regime,
)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def test_q_ratio_above_one_at_lower_bound():
    for alpha in (1.2, 2.0, 5.0):
        lo, _ = bounds(alpha)
        for T in (2, 10, 100):
            assert q_ratio(lo, T, alpha) > 1.0


@pytest.mark.parametrize("beta", [0.1, 0.3, 0.5, 0.618, 0.9, 1.0])
def test_q_ratio_T2_reduction(beta):
    assert q_ratio(beta, 2, 2.0) == pytest.approx(1.0 / (beta * (1.0 + beta)), rel=1e-13)


def test_q_ratio_unbiased_T3():
    assert q_ratio(1.0, 3, 2.0) == pytest.approx(1.0 / 3.0, rel=1e-14)
    # same ratio from the q_t values
    assert q_direct(2, 3, 2.0, 1.0) / q_direct(0, 3, 2.0, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-14)


def test_q_ratio_T1_rejected():
    with pytest.raises(DomainError):
        q_ratio(0.5, 1, 2.0)


@settings(max_examples=200)
@given(st.integers(2, 1000), st.floats(1.05, 12.0), st.floats(0.05, 1.0))
def test_gamma_and_product_paths_agree(T, alpha, beta):
    g = TaskParams(T, alpha, beta).gamma
    a = log_q_ratio_gamma(g, T, alpha)
    b = log_q_ratio_product(g, T, alpha)
    assert a == pytest.approx(b, rel=1e-10, abs=1e-11)
    if T <= 200:
        assert math.exp(a) == pytest.approx(q_ratio_direct(beta, T, alpha), rel=1e-9)


@settings(max_examples=100)
@given(st.integers(2, 500), st.floats(1.05, 12.0))
def test_q_ratio_decreasing_in_beta(T, alpha):
    betas = np.linspace(0.05, 1.0, 60)
    vals = [q_ratio(b, T, alpha) for b in betas]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_beta0_golden_ratio():
    assert beta0_exact(2, 2.0).beta0 == pytest.approx(GOLDEN, abs=1e-10)


def test_beta0_T10_in_bracket():
    r = beta0_exact(10, 2.0)
    assert 0.5 < r.beta0 < math.sqrt(0.5)
    assert r.lower_bound == 0.5 and r.upper_bound == pytest.approx(math.sqrt(0.5))


def test_beta0_against_independent_bisection():
    for T, alpha in [(3, 2.0), (7, 1.5), (25, 4.0), (60, 10.0)]:
        ref = bisect_root(lambda b: math.log(q_ratio_direct(b, T, alpha)), 0.3, 1.0)
        assert beta0_exact(T, alpha).beta0 == pytest.approx(ref, abs=1e-10)


def test_beta0_decreasing_toward_half():
    vals = [beta0_exact(T, 2.0).beta0 for T in (2, 5, 10, 100, 1000, 10**5)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 0.5


def test_beta0_above_inverse_e():
    for alpha in (1.2, 2.0, 10.0, 100.0):
        for T in (2, 50, 10**4):
            assert beta0_exact(T, alpha).beta0 > 1.0 / math.e


def test_asymptotic_examples():
    assert beta0_asymptotic(8, 2.0) == pytest.approx(0.5 + math.log(math.pi / 2) / (2 * math.log(8)), rel=1e-13)
    assert beta0_asymptotic(10**300, 2.0) == pytest.approx(0.5, abs=1e-3)
    # leading factor tends to 1/e as alpha grows
    lo, _ = bounds(1e8)
    assert lo == pytest.approx(1.0 / math.e, rel=1e-6)


@pytest.mark.parametrize("alpha", [1.5, 2.0, 4.0])
def test_asymptotic_error_shrinks(alpha):
    def scaled(T):
        return abs(beta0_exact(T, alpha).beta0 - beta0_asymptotic(T, alpha)) * math.log(T)

    assert scaled(10**5) < scaled(10**2)


def test_is_tai_examples():
    for T in (2, 10, 300):
        for alpha in (1.1, 2.0, 10.0):
            assert is_tai(0.3, T, alpha)
            assert not is_tai(1.0, T, alpha)
    assert is_tai(0.55, 2, 2.0)
    assert not is_tai(0.3, 1, 2.0)


@pytest.mark.parametrize("T", [2, 3, 8, 40])
@pytest.mark.parametrize("alpha", [1.2, 2.0, 4.0, 10.0])
def test_is_tai_sign_change_matches_direct(T, alpha):
    b0 = beta0_exact(T, alpha).beta0
    assert is_tai_direct(b0 - 1e-6, T, alpha) and is_tai(b0 - 1e-6, T, alpha)
    assert not is_tai_direct(b0 + 1e-6, T, alpha) and not is_tai(b0 + 1e-6, T, alpha)


@settings(max_examples=200)
@given(st.integers(2, 60), st.floats(1.05, 12.0), st.floats(0.05, 1.0))
def test_is_tai_agrees_with_direct(T, alpha, beta):
    b0 = beta0_exact(T, alpha).beta0
    if abs(beta - b0) > 1e-9:
        assert is_tai(beta, T, alpha) == is_tai_direct(beta, T, alpha)


def _shape(logq):
    d = np.diff(logq)
    if np.all(d > 0):
        return "increasing"
    if np.all(d < 0):
        return "decreasing"
    k = int(np.argmax(d > 0))
    assert np.all(d[:k] <= 0) and np.all(d[k:] > 0), "not down-then-up"
    return "unimodal"


@settings(max_examples=300)
@given(st.integers(3, 200), st.floats(1.05, 12.0), st.floats(0.05, 1.0))
def test_q_sequence_regimes(T, alpha, beta):
    logq = log_q_values(TaskParams(T, alpha, beta))
    shape = _shape(logq)
    regime = q_regime(beta, alpha)
    if regime == "unimodal":
        assert shape in ("unimodal", "increasing", "decreasing")
    else:
        assert shape == regime


def test_result_round_trip():
    r = beta0_exact(17, 3.0)
    assert ThresholdResult.from_dict(json.loads(json.dumps(r.to_dict()))) == r
