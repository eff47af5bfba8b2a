"""The abandonment threshold beta_0(T, alpha).

Below ``beta_0`` some goal/reward pair makes the agent start and then quit
mid-task; at or above it the agent either never starts or finishes.  The
root is found by bisection in ``gamma = beta**(1/(alpha-1))``, where the
q-ratio is monotone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .gammaln import log_gamma, log_gamma_ratio
from .model import TaskParams, log_q_values, present_bias_gamma

MAX_BISECTIONS = 200


@dataclass(frozen=True)
class ThresholdResult:
    T: int
    alpha: float
    beta0: float
    lower_bound: float
    upper_bound: float
    beta0_asymptotic: float
    iterations: int

    def to_dict(self) -> dict:
        return {
            "T": self.T,
            "alpha": self.alpha,
            "beta0": self.beta0,
            "bounds": [self.lower_bound, self.upper_bound],
            "asymptotic": self.beta0_asymptotic,
            "iterations": self.iterations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ThresholdResult":
        lo, hi = data["bounds"]
        return cls(int(data["T"]), float(data["alpha"]), float(data["beta0"]), float(lo), float(hi),
                   float(data["asymptotic"]), int(data["iterations"]))


def _check(T, alpha):
    if int(T) != T or T < 2:
        raise DomainError(f"T must be an integer >= 2 for the threshold, got {T!r}")
    if not alpha > 1.0:
        raise DomainError(f"alpha must be > 1, got {alpha!r}")


def bounds(alpha: float) -> tuple:
    """``((1-1/a)**(a-1), (1-1/a)**((a-1)/2))``: beta_0 lies strictly between these."""
    base = 1.0 - 1.0 / alpha
    return base ** (alpha - 1.0), base ** ((alpha - 1.0) / 2.0)


def log_q_ratio_gamma(gamma: float, T: int, alpha: float) -> float:
    """``log(q_{T-1} / q_0)`` as a function of gamma, through log-gamma."""
    return (alpha - 1.0) * math.log1p((T - 1) / gamma) + alpha * (
        log_gamma_ratio(1.0, gamma) - log_gamma_ratio(T, gamma)
    )


def log_q_ratio_product(gamma: float, T: int, alpha: float) -> float:
    """Same quantity by explicitly summing the log-product; O(T)."""
    rest = np.arange(1, T, dtype=float)
    return (alpha - 1.0) * math.log1p((T - 1) / gamma) + alpha * float(np.sum(np.log(rest) - np.log(rest + gamma)))


def q_ratio(beta: float, T: int, alpha: float) -> float:
    _check(T, alpha)
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"beta must lie in (0, 1], got {beta!r}")
    return math.exp(log_q_ratio_gamma(present_bias_gamma(beta, alpha), T, alpha))


def beta0_exact(T: int, alpha: float, tol: float = 1e-12) -> ThresholdResult:
    _check(T, alpha)
    if not tol > 0.0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    lo = 1.0 - 1.0 / alpha
    hi = math.sqrt(lo)
    it = 0
    # log ratio > 0 at lo, < 0 at hi, strictly decreasing between
    while hi - lo > tol:
        if it >= MAX_BISECTIONS:
            raise ConvergenceError(f"bisection did not reach tol={tol} in {MAX_BISECTIONS} steps")
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if log_q_ratio_gamma(mid, T, alpha) > 0.0:
            lo = mid
        else:
            hi = mid
        it += 1
    gamma0 = 0.5 * (lo + hi)
    lower, upper = bounds(alpha)
    return ThresholdResult(
        T=int(T),
        alpha=float(alpha),
        beta0=gamma0 ** (alpha - 1.0),
        lower_bound=lower,
        upper_bound=upper,
        beta0_asymptotic=beta0_asymptotic(T, alpha),
        iterations=it,
    )


def beta0_asymptotic(T: int, alpha: float) -> float:
    """Large-T estimate; the error is o(1/log T)."""
    _check(T, alpha)
    base = 1.0 - 1.0 / alpha
    return base ** (alpha - 1.0) * (1.0 + (alpha * log_gamma(base) + math.log(base)) / math.log(T))


def is_tai(beta: float, T: int, alpha: float) -> bool:
    """True when some goal and reward make the agent quit mid-task. ``T = 1`` is never TAI."""
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"beta must lie in (0, 1], got {beta!r}")
    if not alpha > 1.0:
        raise DomainError(f"alpha must be > 1, got {alpha!r}")
    if T == 1:
        return False
    return beta < beta0_exact(T, alpha).beta0


def is_tai_direct(beta: float, T: int, alpha: float) -> bool:
    """TAI check straight from the q-sequence: some later ``q_t`` exceeds ``q_0``."""
    if T == 1:
        return False
    logq = log_q_values(TaskParams(T, alpha, beta))
    return bool(np.max(logq[1:]) > logq[0])


def q_regime(beta: float, alpha: float) -> str:
    """Shape of ``q_0..q_{T-1}``: 'increasing', 'unimodal' (down then up) or 'decreasing'."""
    lower, upper = bounds(alpha)
    if beta <= lower:
        return "increasing"
    if beta >= upper:
        return "decreasing"
    return "unimodal"
