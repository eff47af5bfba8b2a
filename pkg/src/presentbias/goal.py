"""Goal setting: pick ``theta`` to maximise final progress for a fixed reward.

Three regimes.  A non-TAI agent either quits at once or finishes, so the best
goal is the largest one it still starts.  A TAI agent without exploitative
goals gets the largest goal it never abandons.  With exploitative goals
allowed, the planner may set a goal the agent gives up on at step ``t``;
``u_t`` is the best final progress for each such ``t``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import RegimeError
from .gammaln import log_gamma_ratio
from .model import TaskParams, abandonment_time
from .threshold import is_tai

log = logging.getLogger(__name__)

TIE_RTOL = 1e-12


@dataclass(frozen=True)
class GoalSolution:
    theta: float
    final_progress: float
    abandon_time: int
    exploitative: bool
    u_curve: tuple | None = None
    argmax_tie: bool = False

    def to_dict(self) -> dict:
        out = {
            "theta": self.theta,
            "final_progress": self.final_progress,
            "abandon_time": self.abandon_time,
            "exploitative": self.exploitative,
            "argmax_tie": self.argmax_tie,
        }
        if self.u_curve is not None:
            out["u_curve"] = list(self.u_curve)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GoalSolution":
        u = data.get("u_curve")
        return cls(float(data["theta"]), float(data["final_progress"]), int(data["abandon_time"]),
                   bool(data["exploitative"]), None if u is None else tuple(float(v) for v in u),
                   bool(data.get("argmax_tie", False)))


def _params(T, alpha, beta, R) -> TaskParams:
    # validates the domain and caches gamma
    return TaskParams(T, alpha, beta, 0.0, R)


def snap_to_abandonment(theta: float, params: TaskParams, target: int, max_ulps: int = 64) -> float:
    """Move ``theta`` by a few ulps until the agent's abandonment time equals ``target``.

    Closed-form goals sit exactly on the abandonment boundary, where rounding
    can land either side of the strict inequality.
    """
    x = theta
    for _ in range(max_ulps):
        t_star = abandonment_time(params.replace(theta=x))
        if t_star == target:
            return x
        x = math.nextafter(x, 0.0) if t_star < target else math.nextafter(x, math.inf)
    log.warning("goal %.17g did not reach abandonment time %d within %d ulps", theta, target, max_ulps)
    return theta


def lump_sum_theta(T, alpha, beta, R) -> float:
    """Largest goal the agent starts: ``R**(1/a) (T - 1 + gamma)**((a-1)/a)``."""
    p = _params(T, alpha, beta, R)
    return R ** (1.0 / alpha) * (T - 1 + p.gamma) ** ((alpha - 1.0) / alpha)


def nonexploitative_theta(T, alpha, beta, R) -> float:
    """Largest goal a TAI agent never abandons: ``(beta R)**(1/a) G(T+g) / (G(T) G(1+g))``.

    No regime check; the scheduler applies this per segment.
    """
    p = _params(T, alpha, beta, R)
    g = p.gamma
    return (beta * R) ** (1.0 / alpha) * math.exp(log_gamma_ratio(T, g) - log_gamma_ratio(1.0, g))


def optimal_goal_non_tai(T, alpha, beta, R) -> GoalSolution:
    p = _params(T, alpha, beta, R)
    if is_tai(beta, T, alpha):
        raise RegimeError(f"beta={beta} is TAI for T={T}, alpha={alpha}; use the TAI goal optimisers")
    theta = lump_sum_theta(T, alpha, beta, R)
    if theta > 0.0:
        theta = snap_to_abandonment(theta, p, T)
    return GoalSolution(theta, theta, p.T, False)


def optimal_goal_tai_nonexploitative(T, alpha, beta, R) -> GoalSolution:
    p = _params(T, alpha, beta, R)
    if not is_tai(beta, T, alpha):
        raise RegimeError(f"beta={beta} is not TAI for T={T}, alpha={alpha}; use optimal_goal_non_tai")
    theta = nonexploitative_theta(T, alpha, beta, R)
    if theta > 0.0:
        theta = snap_to_abandonment(theta, p, T)
    return GoalSolution(theta, theta, p.T, False)


# below this many factors the product is summed term by term; the gamma route
# loses relative accuracy when g is tiny and the log factor is near zero
DIRECT_TERMS = 4096


def _log_claim_factor(t: int, T: int, g: float) -> float:
    # log of G(T-t+1) G(T+g) / (G(T) G(T-t+1+g)) = sum_{i<t} log1p(g / (T-i))
    if t - 1 <= DIRECT_TERMS:
        return math.fsum(math.log1p(g / (T - i)) for i in range(1, t))
    return log_gamma_ratio(T, g) - log_gamma_ratio(T - t + 1, g)


def _log_claim_factors(T: int, g: float) -> np.ndarray:
    """``_log_claim_factor(t, T, g)`` for ``t = 1 .. T``."""
    T = int(T)
    head = min(T, DIRECT_TERMS + 1)
    out = np.empty(T)
    out[0] = 0.0
    out[1:head] = np.cumsum(np.log1p(g / (T - np.arange(1, head, dtype=float))))
    for t in range(head + 1, T + 1):
        out[t - 1] = log_gamma_ratio(T, g) - log_gamma_ratio(T - t + 1, g)
    return out


def u_t(t: int, T, alpha, beta, R) -> float:
    """Best final progress when the goal is abandoned exactly at step ``t`` (``t = T``: never)."""
    p = _params(T, alpha, beta, R)
    if not 1 <= t <= p.T:
        raise IndexError(f"t={t} outside [1, {p.T}]")
    g = p.gamma
    rest = T - t
    lead = R ** (1.0 / alpha) * (rest + g) ** ((alpha - 1.0) / alpha)
    # factor - rest/(rest+g) == expm1(log factor) + g/(rest+g), without cancelling
    return lead * (math.expm1(_log_claim_factor(t, T, g)) + g / (rest + g))


def u_curve(T, alpha, beta, R) -> np.ndarray:
    """``u_1 .. u_T``."""
    g = _params(T, alpha, beta, R).gamma
    rest = int(T) - np.arange(1, int(T) + 1, dtype=float)
    lead = R ** (1.0 / alpha) * (rest + g) ** ((alpha - 1.0) / alpha)
    return lead * (np.expm1(_log_claim_factors(T, g)) + g / (rest + g))


def exploitative_theta(t: int, T, alpha, beta, R) -> float:
    """Goal that makes the agent abandon at ``t`` with the most progress."""
    g = _params(T, alpha, beta, R).gamma
    rest = T - t
    return R ** (1.0 / alpha) * (rest + g) ** ((alpha - 1.0) / alpha) * math.exp(_log_claim_factor(t, T, g))


def optimal_goal_tai_exploitative(T, alpha, beta, R) -> GoalSolution:
    p = _params(T, alpha, beta, R)
    if not is_tai(beta, T, alpha):
        raise RegimeError(f"beta={beta} is not TAI for T={T}, alpha={alpha}; use optimal_goal_non_tai")
    u = u_curve(T, alpha, beta, R)
    best = float(u.max())
    # ties go to the largest t, i.e. the least exploitative design
    near = np.flatnonzero(u >= best - TIE_RTOL * abs(best))
    t = int(near[-1]) + 1
    tie = near.size > 1
    if tie:
        log.warning("argmax of u_t is tied within %g at t=%s; choosing t=%d", TIE_RTOL, (near + 1).tolist(), t)
    theta = exploitative_theta(t, T, alpha, beta, R)
    if theta > 0.0:
        theta = snap_to_abandonment(theta, p, t)
    progress = theta if t == p.T else float(u[t - 1])
    return GoalSolution(theta, progress, t, t < p.T, tuple(float(v) for v in u), bool(tie))


def optimal_goal(T, alpha, beta, R, allow_exploitative: bool = True) -> GoalSolution:
    """Dispatch on the TAI regime."""
    _params(T, alpha, beta, R)
    if not is_tai(beta, T, alpha):
        return optimal_goal_non_tai(T, alpha, beta, R)
    if allow_exploitative:
        return optimal_goal_tai_exploitative(T, alpha, beta, R)
    return optimal_goal_tai_nonexploitative(T, alpha, beta, R)
