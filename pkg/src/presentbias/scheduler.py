"""Reward scheduling: split a period ``T`` and budget ``R`` into claimable segments.

Each segment ``(T_i, R_i, theta_i)`` is an independent task whose goal is the
largest one the agent never abandons.  For a non-TAI agent one lump sum is
optimal.  For a TAI agent the budget split has a closed form given the
periods, and the periods solve an integer-partition problem maximising
``sum F(T_i)``; that is a one-dimensional DP.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, RegimeError
from .gammaln import log_gamma_ratio
from .goal import lump_sum_theta, nonexploitative_theta, snap_to_abandonment
from .model import TaskParams
from .threshold import is_tai

SQRT2_MINUS_1 = math.sqrt(2.0) - 1.0


@dataclass(frozen=True)
class Segment:
    T: int
    R: float
    theta: float

    @property
    def progress(self) -> float:
        # every segment is claimable, so the agent reaches theta
        return self.theta

    def to_dict(self) -> dict:
        return {"T": self.T, "R": self.R, "theta": self.theta, "progress": self.progress}


@dataclass(frozen=True)
class Schedule:
    segments: tuple
    total_progress: float

    @property
    def k(self) -> int:
        return len(self.segments)

    @property
    def periods(self) -> list:
        return [s.T for s in self.segments]

    def to_dict(self) -> dict:
        return {"segments": [s.to_dict() for s in self.segments], "total_progress": self.total_progress}

    @classmethod
    def from_dict(cls, data: dict) -> "Schedule":
        segs = tuple(Segment(int(s["T"]), float(s["R"]), float(s["theta"])) for s in data["segments"])
        return cls(segs, float(data["total_progress"]))


@dataclass(frozen=True)
class DpTable:
    v: np.ndarray
    choice: np.ndarray = field(repr=False)

    def to_csv(self) -> str:
        lines = ["T,v,choice"]
        lines += [f"{i},{float(self.v[i])!r},{int(self.choice[i])}" for i in range(len(self.v))]
        return "\n".join(lines) + "\n"


def _gamma(alpha, beta):
    return TaskParams(1, alpha, beta).gamma


def F(x: int, alpha: float, beta: float) -> float:
    """Segment value ``(G(x+g)/G(x))**(a/(a-1))``, with ``F(0) = 0``."""
    if x < 0:
        raise DomainError(f"F needs x >= 0, got {x!r}")
    if x == 0:
        return 0.0
    return math.exp(alpha / (alpha - 1.0) * log_gamma_ratio(x, _gamma(alpha, beta)))


def F_values(T: int, alpha: float, beta: float) -> np.ndarray:
    """``F(0) .. F(T)``."""
    g = _gamma(alpha, beta)
    e = alpha / (alpha - 1.0)
    return np.array([0.0] + [math.exp(e * log_gamma_ratio(x, g)) for x in range(1, T + 1)])


def partition_objective(periods, Fv) -> float:
    """``sum F(T_i)``, summed longest period first so equal multisets give equal floats."""
    return float(sum(Fv[t] for t in sorted(periods, reverse=True)))


def split_rewards(periods, alpha: float, beta: float, R: float) -> list:
    """Budget split proportional to ``F(T_i)``, which is optimal for fixed periods."""
    periods = list(periods)
    if not periods:
        raise DomainError("periods must be non-empty")
    if any(int(t) != t or t < 1 for t in periods):
        raise DomainError(f"periods must be positive integers, got {periods}")
    weights = [F(int(t), alpha, beta) for t in periods]
    total = sum(weights)
    if total <= 0.0:
        raise DomainError("all segment weights are zero")
    return [R * w / total for w in weights]


def segment_progress_objective(periods, rewards, alpha: float, beta: float) -> float:
    """Total claimable progress ``sum (beta R_i)**(1/a) G(T_i+g)/(G(T_i) G(1+g))``."""
    g = _gamma(alpha, beta)
    c = math.exp(-log_gamma_ratio(1.0, g))
    return sum(
        (beta * r) ** (1.0 / alpha) * math.exp(log_gamma_ratio(t, g)) * c for t, r in zip(periods, rewards)
    )


def schedule_non_tai(T: int, alpha: float, beta: float, R: float) -> Schedule:
    TaskParams(T, alpha, beta, 0.0, R)
    if is_tai(beta, T, alpha):
        raise RegimeError(f"beta={beta} is TAI for T={T}, alpha={alpha}; use schedule_tai_dp")
    theta = lump_sum_theta(T, alpha, beta, R)
    if theta > 0.0:
        theta = snap_to_abandonment(theta, TaskParams(T, alpha, beta, theta, R), T)
    return Schedule((Segment(int(T), float(R), theta),), theta)


def partition_dp(T: int, alpha: float, beta: float) -> DpTable:
    """``v[n] = max_t F(t) + v[n - t]``; ties pick the largest ``t``."""
    Fv = F_values(T, alpha, beta)
    v = np.zeros(T + 1)
    choice = np.zeros(T + 1, dtype=int)
    for n in range(1, T + 1):
        cand = Fv[1 : n + 1] + v[n - 1 :: -1]
        rev = cand[::-1]
        j = int(np.argmax(rev))
        choice[n] = n - j
        v[n] = rev[j]
    return DpTable(v, choice)


def backtrack(table: DpTable) -> list:
    periods = []
    n = len(table.v) - 1
    while n > 0:
        t = int(table.choice[n])
        periods.append(t)
        n -= t
    return sorted(periods, reverse=True)


def _segments(periods, alpha, beta, R) -> tuple:
    rewards = split_rewards(periods, alpha, beta, R)
    segs = []
    for t, r in zip(periods, rewards):
        theta = nonexploitative_theta(t, alpha, beta, r)
        if theta > 0.0:
            theta = snap_to_abandonment(theta, TaskParams(t, alpha, beta, theta, r), t)
        segs.append(Segment(int(t), r, theta))
    return tuple(segs)


def closed_form_progress(periods, alpha: float, beta: float, R: float) -> float:
    """Aggregate optimum for given periods: ``(beta R)**(1/a) (sum F)**((a-1)/a) / G(1+g)``."""
    g = _gamma(alpha, beta)
    s = sum(F(int(t), alpha, beta) for t in periods)
    return (beta * R) ** (1.0 / alpha) * s ** ((alpha - 1.0) / alpha) * math.exp(-log_gamma_ratio(1.0, g))


def schedule_tai_dp(T: int, alpha: float, beta: float, R: float) -> tuple:
    """Optimal claimable schedule for a TAI agent; returns ``(Schedule, DpTable)``."""
    TaskParams(T, alpha, beta, 0.0, R)
    if not is_tai(beta, T, alpha):
        raise RegimeError(f"beta={beta} is not TAI for T={T}, alpha={alpha}; use schedule_non_tai")
    table = partition_dp(T, alpha, beta)
    periods = backtrack(table)
    segs = _segments(periods, alpha, beta, R)
    total = sum(s.progress for s in segs)
    closed = closed_form_progress(periods, alpha, beta, R)
    if not math.isclose(total, closed, rel_tol=1e-9, abs_tol=1e-300):
        raise AssertionError(f"per-segment progress {total!r} disagrees with aggregate {closed!r}")
    return Schedule(segs, total), table


def optimal_schedule(T: int, alpha: float, beta: float, R: float) -> tuple:
    """Dispatch on the TAI regime; the DP table is ``None`` for the lump-sum case."""
    TaskParams(T, alpha, beta, 0.0, R)
    if is_tai(beta, T, alpha):
        return schedule_tai_dp(T, alpha, beta, R)
    return schedule_non_tai(T, alpha, beta, R), None


def nearly_optimal_interval(beta: float, T: int, alpha: float = 2.0) -> int:
    """Heuristic reward interval ``min(T, ceil(beta**2 / (1 - 2 beta)))`` for ``alpha = 2``.

    Only defined for ``sqrt(2) - 1 < beta < 1/2``; outside that window the
    optimum is known exactly (every step below, a single lump sum above).
    """
    if alpha != 2.0:
        raise DomainError(f"nearly_optimal_interval is defined for alpha = 2 only, got {alpha!r}")
    if not SQRT2_MINUS_1 < beta < 0.5:
        raise DomainError(
            f"beta={beta} outside (sqrt(2)-1, 1/2); use per-step rewards below and a lump sum above"
        )
    return min(int(T), math.ceil(beta * beta / (1.0 - 2.0 * beta)))


def lump_vs_frequent_ratio(T: int, alpha: float, beta: float, R: float = 1.0) -> float:
    """Progress with a reward every step divided by progress with one lump sum (TAI goals)."""
    TaskParams(T, alpha, beta, 0.0, R)
    g = _gamma(alpha, beta)
    return math.exp((1.0 - 1.0 / alpha) * math.log(T) + log_gamma_ratio(1.0, g) - log_gamma_ratio(T, g))


def dominant_segment_length(schedule: Schedule) -> int:
    """Most frequent segment length; ties go to the longer length."""
    counts = Counter(schedule.periods)
    return max(counts, key=lambda t: (counts[t], t))


def interval_sweep(T: int, betas, alpha: float = 2.0, R: float = 1.0) -> list:
    """Per beta: (beta, shortest segment, longest segment, heuristic interval or None)."""
    rows = []
    for beta in betas:
        sched, _ = optimal_schedule(T, alpha, beta, R)
        periods = sched.periods
        try:
            approx = nearly_optimal_interval(beta, T, alpha)
        except DomainError:
            approx = None
        rows.append((float(beta), min(periods), max(periods), approx))
    return rows
