"""Present-biased agents on progress-accumulation tasks.

Closed-form trajectories, the task-abandonment threshold, optimal goals and
optimal reward schedules, plus a grid simulator used to check them.
"""

from .errors import ConvergenceError, DomainError, RegimeError, ResourceError
from .goal import GoalSolution, optimal_goal, u_curve, u_t
from .model import TaskParams, Trajectory, cost, p_t, q_t, recurrence_step, trajectory
from .oracle import GridConfig, oracle_step, oracle_trajectory
from .scheduler import DpTable, Schedule, Segment, optimal_schedule, schedule_non_tai, schedule_tai_dp
from .threshold import ThresholdResult, beta0_asymptotic, beta0_exact, is_tai, q_ratio

__all__ = [
    "ConvergenceError", "DomainError", "RegimeError", "ResourceError",
    "GoalSolution", "optimal_goal", "u_curve", "u_t",
    "TaskParams", "Trajectory", "cost", "p_t", "q_t", "recurrence_step", "trajectory",
    "GridConfig", "oracle_step", "oracle_trajectory",
    "DpTable", "Schedule", "Segment", "optimal_schedule", "schedule_non_tai", "schedule_tai_dp",
    "ThresholdResult", "beta0_asymptotic", "beta0_exact", "is_tai", "q_ratio",
]
