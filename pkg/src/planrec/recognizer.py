"""Goal recognition over STRIPS theories and over plan libraries."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .library import PlanLibrary, compile_library
from .cfg import recognition_problem
from .observations import Theory, compile_observations, dedupe_observations
from .planner.search import (BOUND_EXCEEDED, RESOURCE_LIMIT, SOLVED, UNSOLVABLE,
                             PlannerConfig, SearchStats, search)
from .strips import Plan

RECOGNIZED = "recognized"
REJECTED = "rejected"
UNDECIDED = "undecided"


@dataclass
class GoalRecord:
    name: str
    goal: frozenset[str]
    verdict: str
    cost_g: Fraction | float | None = None
    cost_gprime: Fraction | float | None = None
    witness: Plan | None = None
    stats: list[SearchStats] = field(default_factory=list)

    @property
    def in_optimal_set(self) -> bool:
        return self.verdict == RECOGNIZED

    def as_dict(self) -> dict:
        def num(c):
            if c is None:
                return None
            if c == math.inf:
                return "inf"
            return int(c) if c.denominator == 1 else str(c)

        return {
            "name": self.name,
            "cost_g": num(self.cost_g),
            "cost_gprime": num(self.cost_gprime),
            "verdict": self.verdict,
            "witness": None if self.witness is None else list(self.witness),
            "stats": _merge_stats(self.stats),
        }


def _merge_stats(stats: Sequence[SearchStats]) -> dict:
    return {
        "expanded": sum(s.expanded for s in stats),
        "generated": sum(s.generated for s in stats),
        "time_ms": round(sum(s.time_s for s in stats) * 1000, 3),
        "algorithm": ",".join(s.algorithm for s in stats),
    }


@dataclass
class RecognitionResult:
    goals: list[GoalRecord]

    @property
    def recognized(self) -> list[str]:
        return [g.name for g in self.goals if g.verdict == RECOGNIZED]

    @property
    def undecided(self) -> list[str]:
        return [g.name for g in self.goals if g.verdict == UNDECIDED]

    def as_dict(self) -> dict:
        return {"goals": [g.as_dict() for g in self.goals]}


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def optimal_goal_set(theory: Theory, *, node_limit: int | None = None,
                     time_limit: float | None = None, use_bound: bool = True,
                     jobs: int = 1) -> RecognitionResult:
    """Goals with an optimal plan that embeds the observations.

    Per goal, two optimal searches run over the observation-compiled
    domain: one for G, one for G plus the observation markers. The goal
    is recognized iff both costs are finite and equal. With ``use_bound``
    the first cost caps the second search.
    """
    tt = compile_observations(dedupe_observations(theory))

    def solve(k: int) -> GoalRecord:
        name, g, g2 = tt.goal_names[k], tt.base_goals[k], tt.goals[k]
        rec = GoalRecord(name, g, UNDECIDED)
        cfg = PlannerConfig("astar", "hmax", None, node_limit, time_limit)
        r1 = search(tt.domain.with_goal(g), cfg)
        rec.stats.append(r1.stats)
        if r1.status == RESOURCE_LIMIT:
            return rec
        if r1.status == UNSOLVABLE:
            rec.cost_g = math.inf
            rec.verdict = REJECTED
            return rec
        rec.cost_g = r1.cost
        bound = r1.cost if use_bound else None
        cfg2 = PlannerConfig("astar", "hmax", bound, node_limit, time_limit)
        r2 = search(tt.domain.with_goal(g2), cfg2)
        rec.stats.append(r2.stats)
        if r2.status == RESOURCE_LIMIT:
            return rec
        if r2.status in (UNSOLVABLE, BOUND_EXCEEDED):
            # bound-exceeded: every G' plan costs more than c*(G)
            rec.cost_gprime = math.inf if r2.status == UNSOLVABLE else None
            rec.verdict = REJECTED
            return rec
        rec.cost_gprime = r2.cost
        rec.witness = tt.restore(r2.plan)
        rec.verdict = RECOGNIZED if r2.cost == r1.cost else REJECTED
        return rec

    return RecognitionResult(_map(solve, range(len(tt.goals)), jobs))


def recognize_library(libraries: Mapping[str, PlanLibrary], obs: Sequence[str], depth: int, *,
                      heuristic: str = "ff", node_limit: int | None = None,
                      time_limit: float | None = None, jobs: int = 1) -> RecognitionResult:
    """Libraries whose depth-bounded derivations can account for ``obs``.

    All compiled actions cost zero, so any plan is optimal: satisficing
    search (EHC, falling back to complete greedy best-first) decides each
    library. The witness is the terminal string the plan derives.
    """
    names = list(libraries)

    def solve(name: str) -> GoalRecord:
        compiled = compile_library(libraries[name], depth)
        rec = GoalRecord(name, compiled.problem.goal, UNDECIDED)
        known = compiled.library.terminals
        if any(o not in known for o in obs):
            rec.verdict = REJECTED
            return rec
        tt = recognition_problem(compiled, obs, allow_missing=True)
        cfg = PlannerConfig("ehc", heuristic, None, node_limit, time_limit)
        r = search(tt.domain.with_goal(tt.goals[0]), cfg)
        rec.stats.append(r.stats)
        if r.status == SOLVED:
            rec.verdict = RECOGNIZED
            rec.cost_g = rec.cost_gprime = Fraction(0)
            rec.witness = Plan(compiled.extract(r.plan, tt.origin))
        elif r.status == UNSOLVABLE:
            rec.verdict = REJECTED
        return rec

    return RecognitionResult(_map(solve, names, jobs))
