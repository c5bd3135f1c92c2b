"""Forward state-space search: A*, greedy best-first and enforced hill-climbing."""

from __future__ import annotations

import heapq
import math
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..strips import Plan, PlanningError, StripsProblem
from .heuristics import INF, hadd_value, hmax_value, relaxed_plan
from .task import Task

ALGORITHMS = ("astar", "gbfs", "ehc")
HEURISTICS = ("hmax", "hadd", "ff", "blind")

SOLVED = "solved"
UNSOLVABLE = "unsolvable"
BOUND_EXCEEDED = "bound-exceeded"
RESOURCE_LIMIT = "resource-limit"


class BoundExceededError(PlanningError):
    pass


class ResourceLimitError(PlanningError):
    pass


@dataclass(frozen=True)
class PlannerConfig:
    algorithm: str = "astar"
    heuristic: str = "hmax"
    cost_bound: Fraction | None = None
    node_limit: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic {self.heuristic!r}")

    @property
    def optimal(self) -> bool:
        return self.algorithm == "astar" and self.heuristic in ("hmax", "blind")


@dataclass
class SearchStats:
    expanded: int = 0
    generated: int = 0
    evaluated: int = 0
    time_s: float = 0.0
    algorithm: str = ""
    attempted: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "expanded": self.expanded,
            "generated": self.generated,
            "evaluated": self.evaluated,
            "time_ms": round(self.time_s * 1000, 3),
            "algorithm": self.algorithm,
        }


@dataclass
class SearchResult:
    status: str
    plan: Plan | None = None
    cost: Fraction | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    optimal: bool = False

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


class _Limits:
    def __init__(self, cfg: PlannerConfig, stats: SearchStats):
        self.node_limit = cfg.node_limit
        self.deadline = None if cfg.time_limit is None else time.perf_counter() + cfg.time_limit
        self.stats = stats

    def hit(self) -> bool:
        if self.node_limit is not None and self.stats.expanded >= self.node_limit:
            return True
        if self.deadline is not None and (self.stats.expanded & 31) == 0:
            return time.perf_counter() > self.deadline
        return False


def _evaluator(task: Task, name: str) -> Callable[[int], float | int]:
    if name == "hmax":
        return lambda s: hmax_value(task, s)
    if name == "hadd":
        return lambda s: hadd_value(task, s)
    if name == "ff":
        return lambda s: relaxed_plan(task, s).estimate
    cheapest = min(task.cost, default=0)
    return lambda s: 0 if task.is_goal(s) else cheapest


def _extract(parents: dict, state: int, names: list[str]) -> list[str]:
    steps = []
    while True:
        entry = parents[state]
        if entry is None:
            break
        state, ai = entry
        steps.append(names[ai])
    steps.reverse()
    return steps


def _astar(task: Task, cfg: PlannerConfig, stats: SearchStats) -> SearchResult:
    h = _evaluator(task, cfg.heuristic)
    limits = _Limits(cfg, stats)
    bound = None if cfg.cost_bound is None else Fraction(cfg.cost_bound) * task.scale
    h0 = h(task.init)
    stats.evaluated += 1
    if h0 == INF:
        return SearchResult(UNSOLVABLE, stats=stats)
    pruned = False
    if bound is not None and h0 > bound:
        return SearchResult(BOUND_EXCEEDED, stats=stats)
    counter = 0
    # f, plan length, h, FIFO counter
    heap = [(h0, 0, h0, counter, task.init)]
    best = {task.init: (0, 0)}
    parents: dict[int, tuple[int, int] | None] = {task.init: None}
    closed = set()
    add, dele, cost = task.add, task.delete, task.cost
    goal = task.goal
    while heap:
        f, length, hv, _, s = heapq.heappop(heap)
        if s in closed:
            continue
        g, blen = best[s]
        if f - hv != g or length != blen:
            continue
        if s & goal == goal:
            plan = _extract(parents, s, task.names)
            return SearchResult(SOLVED, Plan(plan), task.unscale(g), stats, cfg.optimal)
        if limits.hit():
            return SearchResult(RESOURCE_LIMIT, stats=stats)
        closed.add(s)
        stats.expanded += 1
        for ai in task.applicable(s):
            t = (s & ~dele[ai]) | add[ai]
            stats.generated += 1
            if t in closed:
                continue
            g2 = g + cost[ai]
            key = (g2, length + 1)
            old = best.get(t)
            if old is not None and old <= key:
                continue
            ht = h(t)
            stats.evaluated += 1
            if ht == INF:
                closed.add(t)
                continue
            if bound is not None and g2 + ht > bound:
                pruned = True
                continue
            best[t] = key
            parents[t] = (s, ai)
            counter += 1
            heapq.heappush(heap, (g2 + ht, length + 1, ht, counter, t))
    return SearchResult(BOUND_EXCEEDED if pruned else UNSOLVABLE, stats=stats)


def _gbfs(task: Task, cfg: PlannerConfig, stats: SearchStats) -> SearchResult:
    h = _evaluator(task, cfg.heuristic)
    limits = _Limits(cfg, stats)
    bound = None if cfg.cost_bound is None else Fraction(cfg.cost_bound) * task.scale
    parents: dict[int, tuple[int, int] | None] = {task.init: None}
    gval = {task.init: 0}
    h0 = h(task.init)
    stats.evaluated += 1
    if h0 == INF:
        return SearchResult(UNSOLVABLE, stats=stats)
    if task.is_goal(task.init):
        return SearchResult(SOLVED, Plan(), Fraction(0), stats, task.zero_cost)
    counter = 0
    heap = [(h0, 0, counter, task.init)]
    add, dele, cost = task.add, task.delete, task.cost
    goal = task.goal
    pruned = False
    while heap:
        _, depth, _, s = heapq.heappop(heap)
        if limits.hit():
            return SearchResult(RESOURCE_LIMIT, stats=stats)
        stats.expanded += 1
        g = gval[s]
        for ai in task.applicable(s):
            t = (s & ~dele[ai]) | add[ai]
            stats.generated += 1
            if t in parents:
                continue
            g2 = g + cost[ai]
            if bound is not None and g2 > bound:
                pruned = True
                continue
            parents[t] = (s, ai)
            gval[t] = g2
            if t & goal == goal:
                plan = _extract(parents, t, task.names)
                return SearchResult(SOLVED, Plan(plan), task.unscale(g2), stats, task.zero_cost)
            ht = h(t)
            stats.evaluated += 1
            if ht == INF:
                continue
            counter += 1
            heapq.heappush(heap, (ht, depth + 1, counter, t))
    return SearchResult(BOUND_EXCEEDED if pruned else UNSOLVABLE, stats=stats)


def _ehc(task: Task, cfg: PlannerConfig, stats: SearchStats) -> SearchResult:
    """Enforced hill-climbing; returns None on a dead end so the caller can fall back."""
    limits = _Limits(cfg, stats)
    use_helpful = cfg.heuristic == "ff"

    def evaluate(s):
        stats.evaluated += 1
        if use_helpful:
            rp = relaxed_plan(task, s)
            return rp.estimate, rp.helpful
        return _evaluator(task, cfg.heuristic)(s), None

    s = task.init
    hv, helpful = evaluate(s)
    if hv == INF:
        return SearchResult(UNSOLVABLE, stats=stats)
    plan: list[int] = []
    while not task.is_goal(s):
        queue = deque([(s, helpful, [])])
        visited = {s}
        found = None
        while queue and found is None:
            u, u_helpful, path = queue.popleft()
            if limits.hit():
                return SearchResult(RESOURCE_LIMIT, stats=stats)
            stats.expanded += 1
            ops = sorted(u_helpful) if u_helpful is not None else task.applicable(u)
            for ai in ops:
                t = task.progress(u, ai)
                stats.generated += 1
                if t in visited:
                    continue
                visited.add(t)
                ht, t_helpful = evaluate(t)
                if ht == INF:
                    continue
                if ht < hv or task.is_goal(t):
                    found = (t, ht, t_helpful, path + [ai])
                    break
                queue.append((t, t_helpful, path + [ai]))
        if found is None:
            return None
        s, hv, helpful, path = found
        plan.extend(path)
    names = [task.names[a] for a in plan]
    cost = sum(task.cost[a] for a in plan)
    if cfg.cost_bound is not None and Fraction(cost, task.scale) > cfg.cost_bound:
        return None
    return SearchResult(SOLVED, Plan(names), task.unscale(cost), stats, task.zero_cost)


def search(problem: StripsProblem | Task, config: PlannerConfig | None = None) -> SearchResult:
    """Run the configured planner; the result always carries search statistics.

    ``ehc`` falls back to complete greedy best-first search when hill-climbing
    hits a dead end; ``stats.algorithm`` names the procedure that produced
    the reported outcome.
    """
    cfg = config or PlannerConfig()
    task = problem if isinstance(problem, Task) else Task(problem)
    stats = SearchStats()
    start = time.perf_counter()
    if cfg.algorithm == "astar":
        stats.attempted.append("astar")
        result = _astar(task, cfg, stats)
        stats.algorithm = "astar"
    elif cfg.algorithm == "gbfs":
        stats.attempted.append("gbfs")
        result = _gbfs(task, cfg, stats)
        stats.algorithm = "gbfs"
    else:
        stats.attempted.append("ehc")
        result = _ehc(task, cfg, stats)
        stats.algorithm = "ehc"
        if result is None:
            stats.attempted.append("gbfs")
            remaining = None
            if cfg.time_limit is not None:
                remaining = max(0.0, cfg.time_limit - (time.perf_counter() - start))
            sub = PlannerConfig("gbfs", cfg.heuristic, cfg.cost_bound, cfg.node_limit, remaining)
            result = _gbfs(task, sub, stats)
            stats.algorithm = "gbfs"
    stats.time_s = time.perf_counter() - start
    result.stats = stats
    return result


def optimal_cost(problem: StripsProblem | Task, bound=None, *, node_limit=None,
                 time_limit=None) -> Fraction | float:
    """Exact optimal cost by A* with h_max; ``math.inf`` if the goal is unreachable.

    ``bound`` is inclusive; raises BoundExceededError when every plan costs more.
    """
    cfg = PlannerConfig("astar", "hmax", None if bound is None else Fraction(bound),
                        node_limit, time_limit)
    r = search(problem, cfg)
    if r.status == SOLVED:
        return r.cost
    if r.status == UNSOLVABLE:
        return math.inf
    if r.status == BOUND_EXCEEDED:
        raise BoundExceededError(f"no plan within cost bound {bound}")
    raise ResourceLimitError("search limit reached")
