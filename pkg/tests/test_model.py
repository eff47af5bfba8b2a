import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from _oracles import q_direct, trajectory_direct
from presentbias.errors import DomainError
from presentbias.model import (
    TaskParams,
    Trajectory,
    abandonment_time,
    boundary_margins,
    cost,
    final_progress_many,
    iterate_recurrence,
    log_q_values,
    p_t,
    q_t,
    recurrence_step,
    trajectory,
)

params_st = st.builds(
    TaskParams,
    T=st.integers(1, 40),
    alpha=st.floats(1.05, 12.0),
    beta=st.floats(0.05, 1.0),
    theta=st.floats(0.01, 10.0),
    R=st.floats(0.0, 10.0),
)


def not_fragile(p):
    return bool(np.all(boundary_margins(p) > 1e-9))


# --- cost -------------------------------------------------------------------

def test_cost_examples():
    assert cost(0.0, 2.0) == 0.0
    assert cost(-0.1, 2.0) == math.inf
    assert cost(0.5, 3.0) == 0.125


def test_cost_rejects_alpha_le_one():
    with pytest.raises(DomainError):
        cost(0.5, 1.0)


@given(st.floats(1.01, 10.0), st.floats(0.0, 5.0), st.floats(0.0, 5.0))
def test_cost_increasing_and_convex(alpha, a, b):
    lo, hi = sorted((a, b))
    assume(hi - lo > 1e-6)
    assert cost(lo, alpha) <= cost(hi, alpha)
    mid = 0.5 * (lo + hi)
    assert cost(mid, alpha) <= 0.5 * (cost(lo, alpha) + cost(hi, alpha)) + 1e-12


# --- TaskParams ---------------------------------------------------------------

@pytest.mark.parametrize("kw, field", [
    (dict(T=0, alpha=2, beta=0.5), "T"),
    (dict(T=2.5, alpha=2, beta=0.5), "T"),
    (dict(T=2, alpha=1.0, beta=0.5), "alpha"),
    (dict(T=2, alpha=2, beta=0.0), "beta"),
    (dict(T=2, alpha=2, beta=1.5), "beta"),
    (dict(T=2, alpha=2, beta=0.5, theta=-1), "theta"),
    (dict(T=2, alpha=2, beta=0.5, R=-1), "R"),
])
def test_params_domain(kw, field):
    with pytest.raises(DomainError, match=field):
        TaskParams(**kw)


@given(params_st)
def test_gamma_in_unit_interval(p):
    assert 0.0 < p.gamma <= 1.0
    assert p.gamma == pytest.approx(p.beta ** (1.0 / (p.alpha - 1.0)), rel=1e-14)


# --- p_t / q_t ----------------------------------------------------------------

def test_p_examples():
    p = TaskParams(2, 2.0, 0.5)
    assert p_t(2, p) == 0.0
    assert p_t(1, p) == pytest.approx(2 / 3, rel=1e-15)
    assert p_t(1, TaskParams(4, 2.0, 1.0)) == 0.75
    with pytest.raises(IndexError):
        p_t(0, p)


def test_q_examples():
    p = TaskParams(2, 2.0, 0.5)
    assert q_t(0, p) == pytest.approx(2 / 3, rel=1e-15)
    assert q_t(1, p) == pytest.approx(8 / 9, rel=1e-15)
    assert q_t(0, TaskParams(2, 2.0, 1.0)) == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(IndexError):
        q_t(2, p)


@settings(max_examples=200)
@given(st.integers(1, 50), st.floats(1.05, 12.0), st.floats(0.05, 1.0))
def test_log_space_q_matches_direct_product(T, alpha, beta):
    p = TaskParams(T, alpha, beta)
    logq = log_q_values(p)
    for t in range(T):
        direct = q_direct(t, T, alpha, beta)
        assert math.exp(logq[t]) == pytest.approx(direct, rel=1e-10)
        assert q_t(t, p) == pytest.approx(direct, rel=1e-10)


# --- trajectory ---------------------------------------------------------------

def test_trajectory_beta_one_linear():
    tr = trajectory(TaskParams(4, 2.0, 1.0, 1.0, 1.0))
    assert tr.t_star == 4 and tr.achieved
    np.testing.assert_allclose(tr.xs, [0, 0.25, 0.5, 0.75, 1.0], atol=1e-15)


@pytest.mark.parametrize("R, xs, t_star", [
    (1.0, [0, Fraction(1, 3), 1], 2),
    (0.7, [0, Fraction(1, 3), Fraction(1, 3)], 1),
    (0.6, [0, 0, 0], 0),
])
def test_trajectory_T2_cases(R, xs, t_star):
    tr = trajectory(TaskParams(2, 2.0, 0.5, 1.0, R))
    assert tr.t_star == t_star
    np.testing.assert_allclose(tr.xs, [float(x) for x in xs], atol=1e-15)


def test_degenerate_goal_and_reward():
    tr = trajectory(TaskParams(5, 2.0, 0.5, 0.0, 1.0))
    assert tr.xs == (0.0,) * 6 and tr.t_star == 5
    tr = trajectory(TaskParams(5, 2.0, 0.5, 1.0, 0.0))
    assert tr.xs == (0.0,) * 6 and tr.t_star == 0


@settings(max_examples=300)
@given(params_st)
def test_trajectory_invariants(p):
    tr = trajectory(p)
    xs = np.array(tr.xs)
    assert len(xs) == p.T + 1 and xs[0] == 0.0
    assert np.all(np.diff(xs) >= 0.0)
    assert np.all(xs[tr.t_star:] == xs[tr.t_star])
    assert np.all(xs <= p.theta) and np.all(xs >= 0.0)


@settings(max_examples=300)
@given(params_st)
def test_matches_direct_closed_form(p):
    assume(not_fragile(p))
    xs, t_star = trajectory_direct(p.T, p.alpha, p.beta, p.theta, p.R)
    tr = trajectory(p)
    assert tr.t_star == t_star
    np.testing.assert_allclose(tr.xs, xs, rtol=1e-10, atol=1e-12 * p.theta)


@settings(max_examples=300)
@given(params_st)
def test_threshold_consistency(p):
    assume(p.theta > 0 and not_fragile(p))
    thr = p.R / p.theta**p.alpha
    expected = next((t for t in range(p.T) if q_t(t, p) > thr), p.T)
    assert abandonment_time(p) == expected == trajectory(p).t_star


# --- recurrence ---------------------------------------------------------------

def test_recurrence_examples():
    p = TaskParams(2, 2.0, 0.5, 1.0, 1.0)
    assert recurrence_step(1.0, 1, p) == 1.0
    assert recurrence_step(1.0, 2, p) == 1.0
    assert recurrence_step(0.0, 1, p) == pytest.approx(1 / 3, abs=1e-15)
    assert recurrence_step(0.0, 1, p.replace(R=0.6)) == 0.0


@settings(max_examples=300)
@given(params_st)
def test_recurrence_reproduces_closed_form(p):
    assume(not_fragile(p))
    np.testing.assert_allclose(iterate_recurrence(p), trajectory(p).xs, rtol=0, atol=1e-12 * max(p.theta, 1.0))


@pytest.mark.parametrize("T", range(1, 101))
def test_beta_one_linearity(T):
    p = TaskParams(T, 2.0, 1.0, 1.0, 1.0)
    tr = trajectory(p)
    assert tr.t_star == T
    np.testing.assert_allclose(tr.xs, [t / T for t in range(T + 1)], rtol=0, atol=1e-12)


@settings(max_examples=100)
@given(st.integers(1, 30), st.floats(1.1, 10.0), st.floats(0.05, 1.0), st.floats(0.1, 5.0))
def test_monotone_in_reward(T, alpha, beta, theta):
    rewards = np.linspace(0.0, 5.0, 41)
    runs = [trajectory(TaskParams(T, alpha, beta, theta, R)) for R in rewards]
    t_stars = [r.t_star for r in runs]
    finals = [r.xs[-1] for r in runs]
    assert all(a <= b for a, b in zip(t_stars, t_stars[1:]))
    assert all(a <= b + 1e-15 for a, b in zip(finals, finals[1:]))


@settings(max_examples=100)
@given(st.integers(1, 20), st.floats(1.1, 10.0), st.floats(0.05, 1.0), st.floats(0.0, 5.0))
def test_vectorised_final_progress_matches_trajectory(T, alpha, beta, R):
    thetas = np.linspace(0.0, 4.0, 57)
    got, t_star = final_progress_many(thetas, T, alpha, beta, R, return_t_star=True)
    for th, x, ts in zip(thetas, got, t_star):
        tr = trajectory(TaskParams(T, alpha, beta, th, R))
        assert x == pytest.approx(tr.xs[-1], rel=1e-12, abs=1e-15)
        assert ts == tr.t_star


# --- serialisation ------------------------------------------------------------

@given(params_st)
def test_trajectory_json_round_trip(p):
    tr = trajectory(p)
    back = Trajectory.from_dict(json.loads(json.dumps(tr.to_dict())))
    assert back == tr


def test_trajectory_csv():
    text = trajectory(TaskParams(2, 2.0, 1.0, 1.0, 1.0)).to_csv()
    assert text.splitlines() == ["t,x", "0,0.0", "1,0.5", "2,1.0"]
