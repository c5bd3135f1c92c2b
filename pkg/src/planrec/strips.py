"""Grounded STRIPS problems: data model, execution semantics and plan checking."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

NEG_PREFIX = "not_"


class PlanningError(Exception):
    """Base class for errors raised by this package."""


class NotApplicableError(PlanningError):
    def __init__(self, action: str, fluent: str, negated: bool = False):
        self.action = action
        self.fluent = fluent
        self.negated = negated
        lit = f"!{fluent}" if negated else fluent
        super().__init__(f"action {action!r} not applicable: precondition {lit} violated")


def as_cost(value) -> Fraction:
    """Coerce ints, floats, strings and Fractions into an exact cost."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # floats from JSON are taken at their shortest decimal repr
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Action:
    name: str
    pre: frozenset[str] = frozenset()
    add: frozenset[str] = frozenset()
    delete: frozenset[str] = frozenset()
    neg_pre: frozenset[str] = frozenset()
    cost: Fraction = Fraction(1)

    def __post_init__(self):
        for attr in ("pre", "add", "delete", "neg_pre"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        object.__setattr__(self, "cost", as_cost(self.cost))

    def applicable(self, state: frozenset[str]) -> bool:
        return self.pre <= state and not (self.neg_pre & state)

    def fluents(self) -> frozenset[str]:
        return self.pre | self.add | self.delete | self.neg_pre

    def renamed(self, name: str, **changes) -> Action:
        fields = dict(
            pre=self.pre, add=self.add, delete=self.delete,
            neg_pre=self.neg_pre, cost=self.cost,
        )
        fields.update(changes)
        return Action(name, **fields)


@dataclass(frozen=True)
class StripsProblem:
    """A grounded problem ``<F, I, A, G>``; ``goal`` is None for a bare domain.

    Fluents and actions keep their insertion order, which fixes the
    order in which the planner generates successors.
    """

    fluents: tuple[str, ...]
    init: frozenset[str]
    actions: tuple[Action, ...]
    goal: frozenset[str] | None = None
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "fluents", tuple(dict.fromkeys(self.fluents)))
        object.__setattr__(self, "init", frozenset(self.init))
        object.__setattr__(self, "actions", tuple(self.actions))
        if self.goal is not None:
            object.__setattr__(self, "goal", frozenset(self.goal))
        object.__setattr__(self, "_by_name", {a.name: a for a in self.actions})

    def action(self, name: str) -> Action:
        return self._by_name[name]

    def has_action(self, name: str) -> bool:
        return name in self._by_name

    def with_goal(self, goal: Iterable[str] | None) -> StripsProblem:
        return StripsProblem(self.fluents, self.init, self.actions,
                             None if goal is None else frozenset(goal))

    def with_actions(self, actions: Iterable[Action],
                     fluents: Iterable[str] = ()) -> StripsProblem:
        return StripsProblem(tuple(self.fluents) + tuple(fluents), self.init,
                             tuple(actions), self.goal)

    @property
    def has_negation(self) -> bool:
        return any(a.neg_pre for a in self.actions)


@dataclass(frozen=True)
class Plan:
    steps: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __add__(self, other: Plan) -> Plan:
        return Plan(self.steps + tuple(other))


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str


@dataclass(frozen=True)
class PlanCheck:
    """Outcome of :func:`validate_plan`.

    ``failed_step`` is 1-based; ``cost`` is None unless the plan is valid.
    """

    valid: bool
    cost: Fraction | None = None
    error: str | None = None
    failed_step: int | None = None
    final_state: frozenset[str] | None = None


def validate_problem(p: StripsProblem) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    universe = set(p.fluents)
    for f in sorted(p.init - universe):
        out.append(Diagnostic("unknown-init-fluent", f"init fluent {f!r} not in F"))
    if p.goal is not None:
        for f in sorted(p.goal - universe):
            out.append(Diagnostic("unknown-goal-fluent", f"goal fluent {f!r} not in F"))
    seen: set[str] = set()
    for a in p.actions:
        if a.name in seen:
            out.append(Diagnostic("duplicate-action", f"action name {a.name!r} repeated"))
        seen.add(a.name)
        overlap = a.add & a.delete
        if overlap:
            out.append(Diagnostic(
                "add-del-overlap",
                f"action {a.name!r} adds and deletes {sorted(overlap)}"))
        if a.cost < 0:
            out.append(Diagnostic("negative-cost", f"action {a.name!r} has cost {a.cost}"))
        for f in sorted(a.fluents() - universe):
            out.append(Diagnostic(
                "unknown-action-fluent", f"action {a.name!r} mentions unknown fluent {f!r}"))
    return out


def apply(state: frozenset[str], a: Action) -> frozenset[str]:
    """Progress ``state`` through ``a``; raises if ``a`` is not applicable."""
    for f in sorted(a.pre):
        if f not in state:
            raise NotApplicableError(a.name, f)
    for f in sorted(a.neg_pre):
        if f in state:
            raise NotApplicableError(a.name, f, negated=True)
    return (state - a.delete) | a.add


def execute(p: StripsProblem, steps: Sequence[str],
            state: frozenset[str] | None = None) -> frozenset[str]:
    s = p.init if state is None else state
    for name in steps:
        s = apply(s, p.action(name))
    return s


def plan_cost(p: StripsProblem, steps: Iterable[str]) -> Fraction:
    return sum((p.action(n).cost for n in steps), Fraction(0))


def validate_plan(p: StripsProblem, plan: Plan | Sequence[str]) -> PlanCheck:
    if p.goal is None:
        raise PlanningError("problem has no goal")
    state = p.init
    cost = Fraction(0)
    for i, name in enumerate(plan, start=1):
        if not p.has_action(name):
            return PlanCheck(False, error=f"unknown-action({name})", failed_step=i)
        a = p.action(name)
        if not a.applicable(state):
            return PlanCheck(False, error=f"step-not-applicable({i})", failed_step=i)
        state = (state - a.delete) | a.add
        cost += a.cost
    if not p.goal <= state:
        return PlanCheck(False, error="goal-not-satisfied", final_state=state)
    return PlanCheck(True, cost=cost, final_state=state)


def negated(fluent: str) -> str:
    return NEG_PREFIX + fluent


def compile_negation(p: StripsProblem) -> StripsProblem:
    """Replace negative preconditions by complement fluents.

    Only fluents that appear negated somewhere get a complement. The
    complement is kept in sync by every action touching the original.
    """
    order = {f: i for i, f in enumerate(p.fluents)}
    negs = sorted({f for a in p.actions for f in a.neg_pre},
                  key=lambda f: order.get(f, len(order)))
    if not negs:
        return p
    comp = {f: negated(f) for f in negs}
    clash = set(comp.values()) & set(p.fluents)
    if clash:
        raise PlanningError(f"complement names already in use: {sorted(clash)}")
    actions = []
    for a in p.actions:
        add = set(a.add) | {comp[f] for f in a.delete if f in comp}
        delete = set(a.delete) | {comp[f] for f in a.add if f in comp}
        pre = set(a.pre) | {comp[f] for f in a.neg_pre}
        actions.append(Action(a.name, pre=pre, add=add, delete=delete, cost=a.cost))
    init = set(p.init) | {comp[f] for f in negs if f not in p.init}
    return StripsProblem(tuple(p.fluents) + tuple(comp[f] for f in negs),
                         init, actions, p.goal)
