"""Integer-indexed view of a StripsProblem used by heuristics and search."""

from __future__ import annotations

import math
from fractions import Fraction

from ..strips import NEG_PREFIX, PlanningError, StripsProblem, compile_negation


def _bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    b = bin(mask)[:1:-1]
    out = []
    i = b.find("1")
    while i >= 0:
        out.append(i)
        i = b.find("1", i + 1)
    return out


class Task:
    """Positive STRIPS problem with states as int bitmasks and integer costs.

    Costs are scaled by the lcm of their denominators so that all search
    arithmetic is exact integer arithmetic; ``unscale`` maps back.
    """

    def __init__(self, problem: StripsProblem):
        if problem.goal is None:
            raise PlanningError("search needs a problem with a goal")
        self.original = problem
        if problem.has_negation:
            problem = compile_negation(problem)
        self.problem = problem
        self.fluents = list(problem.fluents)
        index = {f: i for i, f in enumerate(self.fluents)}
        for f in sorted(problem.goal | problem.init):
            if f not in index:
                index[f] = len(self.fluents)
                self.fluents.append(f)
        self.index = index
        # (fluent, complement) index pairs introduced by negation compilation
        self.complements = [(index[f], index[NEG_PREFIX + f]) for f in self.original.fluents
                            if NEG_PREFIX + f in index and f in index]
        self.scale = math.lcm(*(a.cost.denominator for a in problem.actions)) if problem.actions else 1

        def mask(fs):
            m = 0
            for f in fs:
                m |= 1 << index[f]
            return m

        self.init = mask(problem.init)
        self.goal = mask(problem.goal)
        self.goal_list = sorted(index[f] for f in problem.goal)
        self.names = [a.name for a in problem.actions]
        self.pre = [mask(a.pre) for a in problem.actions]
        self.add = [mask(a.add) for a in problem.actions]
        self.delete = [mask(a.delete) for a in problem.actions]
        self.cost = [int(a.cost * self.scale) for a in problem.actions]
        self.pre_list = [sorted(index[f] for f in a.pre) for a in problem.actions]
        self.add_list = [sorted(index[f] for f in a.add) for a in problem.actions]
        self.pre_count = [len(p) for p in self.pre_list]
        self.pre_of: list[list[int]] = [[] for _ in self.fluents]
        for ai, pl in enumerate(self.pre_list):
            for f in pl:
                self.pre_of[f].append(ai)
        self.no_pre = [ai for ai, c in enumerate(self.pre_count) if c == 0]
        # Successor generation only looks at actions whose trigger (a
        # precondition false initially, when there is one) holds.
        self.by_trigger: dict[int, list[int]] = {}
        for ai, pl in enumerate(self.pre_list):
            if pl:
                t = next((f for f in pl if not (self.init >> f) & 1), pl[0])
                self.by_trigger.setdefault(t, []).append(ai)
        self.trigger_mask = 0
        for t in self.by_trigger:
            self.trigger_mask |= 1 << t
        self.zero_cost = all(c == 0 for c in self.cost)
        self.n_actions = len(self.names)

    def applicable(self, state: int) -> list[int]:
        """Applicable action indices in ascending order."""
        pre = self.pre
        out = [ai for ai in self.no_pre]
        by_trigger = self.by_trigger
        for t in _bits(state & self.trigger_mask):
            for ai in by_trigger[t]:
                p = pre[ai]
                if state & p == p:
                    out.append(ai)
        out.sort()
        return out

    def progress(self, state: int, ai: int) -> int:
        return (state & ~self.delete[ai]) | self.add[ai]

    def is_goal(self, state: int) -> bool:
        return state & self.goal == self.goal

    def unscale(self, c) -> Fraction | float:
        if c == math.inf:
            return math.inf
        return Fraction(c, self.scale)

    def state_mask(self, fluents) -> int:
        """Mask of a state given over the original fluents; complements are filled in."""
        m = 0
        for f in fluents:
            m |= 1 << self.index[f]
        for f, nf in self.complements:
            if not (m >> f) & 1:
                m |= 1 << nf
        return m

    def state_fluents(self, state: int) -> frozenset[str]:
        return frozenset(self.fluents[i] for i in _bits(state))


bits = _bits
