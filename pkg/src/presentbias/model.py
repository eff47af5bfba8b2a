"""Task model: power cost, the p_t/q_t kernels and the analytic trajectory.

An agent starts at progress 0 and, at each of ``T`` steps, re-plans the
remaining path while inflating the current step's cost by ``1/beta``.  With
``c(d) = d**alpha`` the realised path has a closed form, computed here with
products accumulated as sums of logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class TaskParams:
    """One agent/task instance ``(T, alpha, beta, theta, R)``."""

    T: int
    alpha: float
    beta: float
    theta: float = 1.0
    R: float = 1.0
    gamma: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.T, bool) or int(self.T) != self.T or self.T < 1:
            raise DomainError(f"T must be a positive integer, got {self.T!r}")
        object.__setattr__(self, "T", int(self.T))
        for name in ("alpha", "beta", "theta", "R"):
            value = float(getattr(self, name))
            if math.isnan(value) or math.isinf(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if not self.alpha > 1.0:
            raise DomainError(f"alpha must be > 1, got {self.alpha!r}")
        if not 0.0 < self.beta <= 1.0:
            raise DomainError(f"beta must lie in (0, 1], got {self.beta!r}")
        if self.theta < 0.0:
            raise DomainError(f"theta must be >= 0, got {self.theta!r}")
        if self.R < 0.0:
            raise DomainError(f"R must be >= 0, got {self.R!r}")
        object.__setattr__(self, "gamma", present_bias_gamma(self.beta, self.alpha))

    def replace(self, **changes) -> "TaskParams":
        fields = {k: getattr(self, k) for k in ("T", "alpha", "beta", "theta", "R")}
        fields.update(changes)
        return TaskParams(**fields)

    def to_dict(self) -> dict:
        return {"T": self.T, "alpha": self.alpha, "beta": self.beta, "theta": self.theta, "R": self.R}


def present_bias_gamma(beta: float, alpha: float) -> float:
    """``beta ** (1 / (alpha - 1))``, the variable most formulas are written in."""
    return math.exp(math.log(beta) / (alpha - 1.0))


@dataclass(frozen=True)
class Trajectory:
    params: TaskParams
    xs: tuple
    t_star: int

    @property
    def achieved(self) -> bool:
        return self.t_star == self.params.T

    @property
    def final_progress(self) -> float:
        return self.xs[-1]

    def to_dict(self) -> dict:
        return {"params": self.params.to_dict(), "t_star": self.t_star, "xs": list(self.xs)}

    @classmethod
    def from_dict(cls, data: dict) -> "Trajectory":
        return cls(TaskParams(**data["params"]), tuple(float(x) for x in data["xs"]), int(data["t_star"]))

    def to_csv(self) -> str:
        lines = ["t,x"]
        lines += [f"{t},{x!r}" for t, x in enumerate(self.xs)]
        return "\n".join(lines) + "\n"


def cost(delta: float, alpha: float) -> float:
    """Per-step effort ``delta**alpha``; moving backwards costs ``inf``."""
    if not alpha > 1.0:
        raise DomainError(f"alpha must be > 1, got {alpha!r}")
    if delta < 0.0:
        return math.inf
    return delta**alpha


def _check_t(t, lo, hi):
    if not lo <= t <= hi:
        raise IndexError(f"t={t} outside [{lo}, {hi}]")


def p_t(t: int, params: TaskParams) -> float:
    """Fraction of the remaining gap left open after a continuing step ``t``."""
    _check_t(t, 1, params.T)
    rest = params.T - t
    return rest / (rest + params.gamma)


def log_p_values(params: TaskParams) -> np.ndarray:
    """``log p_1 .. log p_{T-1}`` (``p_T = 0`` is excluded)."""
    rest = params.T - np.arange(1, params.T, dtype=float)
    return np.log(rest) - np.log(rest + params.gamma)


def log_q_values(params: TaskParams) -> np.ndarray:
    """``log q_0 .. log q_{T-1}``."""
    T, a, g = params.T, params.alpha, params.gamma
    t = np.arange(T, dtype=float)
    cum = np.concatenate(([0.0], np.cumsum(log_p_values(params))))
    return (1.0 - a) * np.log(T - t - 1.0 + g) + a * cum


def q_t(t: int, params: TaskParams) -> float:
    """Left side of the abandonment test at time ``t``; abandon when it exceeds ``R/theta**alpha``."""
    _check_t(t, 0, params.T - 1)
    T, a, g = params.T, params.alpha, params.gamma
    log_prod = 0.0
    for i in range(1, t + 1):
        log_prod += math.log(T - i) - math.log(T - i + g)
    return math.exp((1.0 - a) * math.log(T - t - 1.0 + g) + a * log_prod)


def _log_threshold(params: TaskParams) -> float:
    # log(R / theta**alpha); -inf for R == 0
    if params.R == 0.0:
        return -math.inf
    return math.log(params.R) - params.alpha * math.log(params.theta)


def abandonment_time(params: TaskParams) -> int:
    """Smallest ``t`` in ``0..T-1`` with ``q_t > R/theta**alpha``, else ``T``."""
    if params.theta == 0.0:
        return params.T
    log_thr = _log_threshold(params)
    above = np.flatnonzero(log_q_values(params) > log_thr)
    return int(above[0]) if above.size else params.T


def trajectory(params: TaskParams) -> Trajectory:
    T, theta = params.T, params.theta
    if theta == 0.0:
        return Trajectory(params, (0.0,) * (T + 1), T)
    t_star = abandonment_time(params)
    cum = np.concatenate(([0.0], np.cumsum(log_p_values(params))))
    xs = [0.0]
    for t in range(1, T + 1):
        s = min(t, t_star)
        if s == T:
            xs.append(theta)
        else:
            xs.append(-theta * math.expm1(cum[s]))
    return Trajectory(params, tuple(xs), t_star)


def continue_threshold(t: int, params: TaskParams) -> float:
    """Least progress at ``t - 1`` from which the agent still pursues the goal at step ``t``."""
    a = params.alpha
    return params.theta - params.R ** (1.0 / a) * (params.T - t + params.gamma) ** ((a - 1.0) / a)


def recurrence_step(x_prev: float, t: int, params: TaskParams) -> float:
    """One step of the state recursion: move toward ``theta`` or stay put."""
    _check_t(t, 1, params.T)
    theta = params.theta
    if x_prev >= continue_threshold(t, params):
        if t == params.T:
            return theta
        return theta + p_t(t, params) * (x_prev - theta)
    return x_prev


def iterate_recurrence(params: TaskParams) -> list:
    xs = [0.0]
    for t in range(1, params.T + 1):
        xs.append(recurrence_step(xs[-1], t, params))
    return xs


def final_progress_many(thetas, T: int, alpha: float, beta: float, R: float, return_t_star: bool = False):
    """Final progress ``x_T`` for many goals at once (same rule as :func:`trajectory`).

    With ``return_t_star`` also returns the abandonment time for each goal.
    """
    thetas = np.asarray(thetas, dtype=float)
    base = TaskParams(T, alpha, beta, 1.0, R)
    log_q = log_q_values(base)
    cum = np.concatenate(([0.0], np.cumsum(log_p_values(base))))
    reached = np.concatenate((-np.expm1(cum), [1.0]))  # index s -> fraction of theta at t* = s
    out = np.zeros_like(thetas)
    t_star = np.full(thetas.shape, T, dtype=int)
    pos = thetas > 0.0
    if R == 0.0:
        t_star[pos] = 0
    else:
        log_thr = math.log(R) - alpha * np.log(thetas[pos])
        above = log_q[None, :] > log_thr[:, None]
        t_star[pos] = np.where(above.any(axis=1), above.argmax(axis=1), T)
        out[pos] = thetas[pos] * reached[t_star[pos]]
    return (out, t_star) if return_t_star else out


def boundary_margins(params: TaskParams) -> np.ndarray:
    """Relative gaps ``|q_t - R/theta**alpha| / (R/theta**alpha)`` for ``t = 0..T-1``."""
    if params.theta == 0.0 or params.R == 0.0:
        return np.full(params.T, np.inf)
    with np.errstate(over="ignore"):
        return np.abs(np.expm1(log_q_values(params) - _log_threshold(params)))
