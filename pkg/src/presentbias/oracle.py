"""Brute-force agent simulator on a uniform progress grid.

At every step the agent minimises its biased objective over grid points in
``[x_prev, theta]``.  The value of each candidate is the unbiased cheapest way
to finish (a backward DP over the same grid) capped at zero for "never finish".
Nothing here uses the closed-form solution; it is the independent check for
:mod:`presentbias.model`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError
from .model import TaskParams, Trajectory, trajectory

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class GridConfig:
    """``n_points`` grid intervals per unit of ``theta``; each refinement round doubles it."""

    n_points: int = 4096
    refine_rounds: int = 1
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.n_points < 16:
            raise DomainError(f"n_points must be >= 16, got {self.n_points}")
        if self.refine_rounds < 0:
            raise DomainError(f"refine_rounds must be >= 0, got {self.refine_rounds}")

    def levels(self) -> list:
        return [self.n_points * 2**r for r in range(self.refine_rounds + 1)]


# (alpha, n) -> list of arrays; entry m gives the unbiased cost, in units of
# theta**alpha, of covering k grid cells in exactly m further steps.
_FINISH_COST: dict = {}


def finish_cost_table(alpha: float, n: int, steps: int) -> list:
    key = (float(alpha), int(n))
    table = _FINISH_COST.get(key)
    if table is None:
        first = np.full(n + 1, np.inf)
        first[0] = 0.0
        table = [first]
        _FINISH_COST[key] = table
    if len(table) <= steps:
        step_cost = (np.arange(n + 1) / n) ** alpha
        while len(table) <= steps:
            prev = table[-1]
            nxt = prev.copy()
            # min-plus convolution: nxt[k] = min_j step_cost[j] + prev[k - j]
            for j in range(1, n + 1):
                np.minimum(nxt[j:], step_cost[j] + prev[: n + 1 - j], out=nxt[j:])
            table.append(nxt)
    return table


def _check_budget(params: TaskParams, n: int, budget: int):
    work = params.T * n
    if work > budget:
        raise ResourceError(f"T * n_points = {params.T} * {n} = {work} exceeds budget {budget}")


def _step_index(i0: int, t: int, params: TaskParams, n: int, table: list) -> int:
    a, b = params.alpha, params.beta
    remaining = params.T - t
    idx = np.arange(i0, n + 1)
    now = (idx - i0) / n
    now = now**a / b
    finish = table[remaining][n - idx]
    # pursuing the goal: biased step now + unbiased finish - R; giving up: stay (cost 0)
    pursue = now + finish
    best = int(np.argmin(pursue))
    best_val = pursue[best]
    scale = max(abs(best_val), 1e-300)
    if np.count_nonzero(pursue <= best_val + TIE_RTOL * scale) > 1:
        log.debug("near-tie in oracle argmin at t=%d (value %.17g)", t, best_val)
    if best_val * params.theta**a - params.R < 0.0:
        return i0 + best
    return i0


def oracle_step(x_prev: float, t: int, params: TaskParams, grid: GridConfig | None = None) -> float:
    """Grid-optimal next progress from ``x_prev`` at step ``t`` (``x_prev`` is snapped to the grid)."""
    grid = grid or GridConfig()
    if not 1 <= t <= params.T:
        raise IndexError(f"t={t} outside [1, {params.T}]")
    theta = params.theta
    if theta == 0.0:
        return 0.0
    n = grid.n_points
    _check_budget(params, n, grid.budget)
    i0 = min(max(int(round(x_prev / theta * n)), 0), n)
    table = finish_cost_table(params.alpha, n, params.T - t)
    i = _step_index(i0, t, params, n, table)
    return theta if i == n else theta * i / n


def oracle_trajectory(params: TaskParams, grid: GridConfig | None = None, n: int | None = None) -> Trajectory:
    """Simulate the agent from ``x_0 = 0``; ``n`` overrides ``grid.n_points``.

    ``t_star`` is the number of steps before the first step that makes no
    progress (a zero grid move), or ``T`` if every step moves.
    """
    grid = grid or GridConfig()
    n = grid.n_points if n is None else n
    _check_budget(params, n, grid.budget)
    T, theta = params.T, params.theta
    if theta == 0.0:
        return Trajectory(params, (0.0,) * (T + 1), T)
    table = finish_cost_table(params.alpha, n, T - 1)
    idx = [0]
    t_star = T
    for t in range(1, T + 1):
        i = _step_index(idx[-1], t, params, n, table)
        if i == idx[-1] and t_star == T:
            t_star = t - 1
        idx.append(i)
    xs = tuple(theta if i == n else theta * i / n for i in idx)
    return Trajectory(params, xs, t_star)


@dataclass
class OracleReport:
    params: TaskParams
    grid_spacing: float
    max_abs_err: float
    per_t: list
    t_star_analytic: int
    t_star_oracle: int
    refinements: list  # [(n, grid_spacing, max_abs_err), ...]

    @property
    def within_tolerance(self) -> bool:
        return self.max_abs_err <= 3.0 * self.grid_spacing

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "grid_spacing": self.grid_spacing,
            "max_abs_err": self.max_abs_err,
            "per_t": list(self.per_t),
            "t_star_analytic": self.t_star_analytic,
            "t_star_oracle": self.t_star_oracle,
            "refinements": [{"n_points": n, "grid_spacing": h, "max_abs_err": e} for n, h, e in self.refinements],
        }


def compare(params: TaskParams, grid: GridConfig | None = None) -> OracleReport:
    """Oracle vs closed form at every refinement level; headline numbers are for the base grid."""
    grid = grid or GridConfig()
    exact = np.array(trajectory(params).xs)
    refinements = []
    base = None
    for n in grid.levels():
        traj = oracle_trajectory(params, grid, n=n)
        err = np.abs(np.array(traj.xs) - exact)
        h = params.theta / n if params.theta > 0 else 1.0 / n
        refinements.append((n, h, float(err.max())))
        if base is None:
            base = (h, err, traj.t_star)
    h, err, t_star_oracle = base
    return OracleReport(
        params=params,
        grid_spacing=h,
        max_abs_err=float(err.max()),
        per_t=[float(e) for e in err],
        t_star_analytic=trajectory(params).t_star,
        t_star_oracle=t_star_oracle,
        refinements=refinements,
    )


def default_grid_params():
    """The standard verification grid over T, alpha, beta and R (theta = 1)."""
    for T in range(2, 9):
        for alpha in (1.5, 2.0, 3.0, 10.0):
            for beta in (0.2, 0.5, 0.8, 1.0):
                for R in (0.3, 0.7, 1.0, 2.0):
                    yield TaskParams(T, alpha, beta, 1.0, R)


def error_halving_ratio(reports) -> float:
    """Grid-wide max error after one refinement divided by the max before it."""
    coarse = max(r.refinements[0][2] for r in reports)
    fine = max(r.refinements[1][2] for r in reports)
    if coarse == 0.0:
        return math.nan
    return fine / coarse
