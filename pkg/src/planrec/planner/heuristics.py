"""Delete-relaxation heuristics: h_max, h_add and the FF relaxed plan."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from ..strips import StripsProblem
from .task import Task, bits

INF = math.inf


def _explore(task: Task, state: int, additive: bool, unit: bool):
    """Generalised Dijkstra over the relaxed problem.

    Returns per-fluent costs and best supporters. Stops as soon as every
    goal fluent is settled; unsettled fluents keep cost INF.
    """
    n = len(task.fluents)
    cost = [INF] * n
    supporter = [-1] * n
    settled = [False] * n
    unsat = task.pre_count[:]
    acc = [0] * task.n_actions
    acost = task.cost
    add_list = task.add_list
    pre_of = task.pre_of
    goal_flag = [False] * n
    goals_left = 0
    for g in task.goal_list:
        if not (state >> g) & 1:
            goal_flag[g] = True
            goals_left += 1

    current = bits(state)
    for f in current:
        cost[f] = 0
    if goals_left == 0:
        return cost, supporter
    fired = list(task.no_pre)
    for f in current:
        settled[f] = True
        for ai in pre_of[f]:
            unsat[ai] -= 1
            if unsat[ai] == 0:
                fired.append(ai)

    if unit and not additive:
        # Layered breadth-first version: an action firing while layer c is
        # settled reaches its effects at layer c + 1.
        layer = 0
        while fired:
            nxt = []
            c = layer + 1
            for ai in fired:
                for g in add_list[ai]:
                    if c < cost[g]:
                        cost[g] = c
                        supporter[g] = ai
                        nxt.append(g)
            fired = []
            for f in nxt:
                if settled[f]:
                    continue
                settled[f] = True
                if goal_flag[f]:
                    goals_left -= 1
                    if goals_left == 0:
                        return cost, supporter
                for ai in pre_of[f]:
                    unsat[ai] -= 1
                    if unsat[ai] == 0:
                        fired.append(ai)
            layer = c
        return cost, supporter

    heap = []
    for ai in fired:
        ca = 1 if unit else acost[ai]
        for g in add_list[ai]:
            if ca < cost[g]:
                cost[g] = ca
                supporter[g] = ai
                heap.append((ca, g))
    heapq.heapify(heap)
    while heap:
        c, f = heapq.heappop(heap)
        if settled[f] or c > cost[f]:
            continue
        settled[f] = True
        if goal_flag[f]:
            goals_left -= 1
            if goals_left == 0:
                break
        for ai in pre_of[f]:
            if additive:
                acc[ai] += c
            elif c > acc[ai]:
                acc[ai] = c
            unsat[ai] -= 1
            if unsat[ai] == 0:
                ca = acc[ai] + (1 if unit else acost[ai])
                for g in add_list[ai]:
                    if ca < cost[g]:
                        cost[g] = ca
                        supporter[g] = ai
                        heapq.heappush(heap, (ca, g))
    return cost, supporter


def hmax_value(task: Task, state: int) -> float | int:
    cost, _ = _explore(task, state, additive=False, unit=False)
    return max((cost[g] for g in task.goal_list), default=0)


def hadd_value(task: Task, state: int) -> float | int:
    cost, _ = _explore(task, state, additive=True, unit=False)
    return sum(cost[g] for g in task.goal_list)


@dataclass(frozen=True)
class RelaxedPlan:
    estimate: float | int
    helpful: frozenset[int]
    actions: tuple[int, ...] = ()


def relaxed_plan(task: Task, state: int) -> RelaxedPlan:
    """FF-style relaxed plan over unit-cost relaxed layers.

    Helpful actions are the applicable actions that add a subgoal lying
    in the first layer of the relaxed plan.
    """
    if state & task.goal == task.goal:
        return RelaxedPlan(0, frozenset())
    level, supporter = _explore(task, state, additive=False, unit=True)
    if any(level[g] == INF for g in task.goal_list):
        return RelaxedPlan(INF, frozenset())
    chosen: list[int] = []
    in_plan = set()
    first_layer = set()
    seen = set()
    stack = [g for g in task.goal_list if not (state >> g) & 1]
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        if level[f] == 1:
            first_layer.add(f)
        a = supporter[f]
        if a in in_plan:
            continue
        in_plan.add(a)
        chosen.append(a)
        for p in task.pre_list[a]:
            if not (state >> p) & 1:
                stack.append(p)
    helpful = set()
    if first_layer:
        fl_mask = 0
        for f in first_layer:
            fl_mask |= 1 << f
        for ai in task.applicable(state):
            if task.add[ai] & fl_mask:
                helpful.add(ai)
    return RelaxedPlan(len(chosen), frozenset(helpful), tuple(chosen))


def _as_task(problem, state):
    task = problem if isinstance(problem, Task) else Task(problem)
    if state is None:
        s = task.init
    elif isinstance(state, int):
        s = state
    else:
        s = task.state_mask(state)
    return task, s


def h_max(state, problem: StripsProblem | Task):
    """Admissible max-cost estimate; ``math.inf`` when the goal is relaxed-unreachable."""
    task, s = _as_task(problem, state)
    return task.unscale(hmax_value(task, s))


def h_add(state, problem: StripsProblem | Task):
    task, s = _as_task(problem, state)
    return task.unscale(hadd_value(task, s))


def h_ff(state, problem: StripsProblem | Task) -> tuple[float | int, frozenset[str]]:
    """Relaxed plan size and the names of the helpful actions."""
    task, s = _as_task(problem, state)
    rp = relaxed_plan(task, s)
    return rp.estimate, frozenset(task.names[a] for a in rp.helpful)
