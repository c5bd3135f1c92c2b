"""Grounded STRIPS planner: A*, greedy best-first and enforced hill-climbing."""

from .heuristics import h_add, h_ff, h_max
from .search import (ALGORITHMS, BOUND_EXCEEDED, HEURISTICS, RESOURCE_LIMIT, SOLVED, UNSOLVABLE,
                     BoundExceededError, PlannerConfig, ResourceLimitError, SearchResult,
                     SearchStats, optimal_cost, search)
from .task import Task

__all__ = [
    "h_max", "h_add", "h_ff", "search", "optimal_cost", "PlannerConfig", "SearchResult",
    "SearchStats", "Task", "BoundExceededError", "ResourceLimitError", "ALGORITHMS",
    "HEURISTICS", "SOLVED", "UNSOLVABLE", "BOUND_EXCEEDED", "RESOURCE_LIMIT",
]
