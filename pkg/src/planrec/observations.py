"""Observation sequences and their compilation into goals.

An observation is either a single action name or a collection of
action names (a *match set*), any member of which may account for it.
Match sets arise when a library terminal is emitted by many grounded
actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection, Iterable, Sequence, Union

from .strips import Plan, PlanningError, StripsProblem

Observation = Union[str, frozenset]


class UnknownObservationError(PlanningError):
    pass


def _norm_obs(o) -> Observation:
    if isinstance(o, str):
        return o
    return frozenset(o)


def _matches(step: str, o: Observation) -> bool:
    return step == o if isinstance(o, str) else step in o


def satisfies(plan: Iterable[str], obs: Sequence[Observation]) -> bool:
    """True iff ``obs`` embeds in ``plan`` under a strictly increasing index map."""
    obs = [_norm_obs(o) for o in obs]
    j = 0
    for step in plan:
        if j == len(obs):
            break
        if _matches(step, obs[j]):
            j += 1
    return j == len(obs)


@dataclass(frozen=True)
class Theory:
    """A recognition problem: goal-free domain, candidate goals, observations.

    ``origin`` maps copied action names back to the action they duplicate.
    """

    domain: StripsProblem
    goals: tuple[frozenset[str], ...]
    obs: tuple[Observation, ...] = ()
    goal_names: tuple[str, ...] | None = None
    origin: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "goals", tuple(frozenset(g) for g in self.goals))
        object.__setattr__(self, "obs", tuple(_norm_obs(o) for o in self.obs))
        if self.goal_names is None:
            names = tuple(",".join(sorted(g)) for g in self.goals)
            object.__setattr__(self, "goal_names", names)

    def check(self) -> list[str]:
        errs = []
        universe = set(self.domain.fluents)
        for name, g in zip(self.goal_names, self.goals):
            if not g <= universe:
                errs.append(f"goal {name!r} mentions unknown fluents {sorted(g - universe)}")
        for o in self.obs:
            for a in ([o] if isinstance(o, str) else sorted(o)):
                if not self.domain.has_action(a):
                    errs.append(f"observation names unknown action {a!r}")
        return errs


@dataclass(frozen=True)
class TransformedTheory:
    domain: StripsProblem
    base_goals: tuple[frozenset[str], ...]
    goals: tuple[frozenset[str], ...]
    marker_fluents: tuple[str, ...]
    goal_names: tuple[str, ...]
    origin: dict[str, str]
    observed: dict[str, int] = field(default_factory=dict)
    obs: tuple = ()

    def restore(self, plan: Plan | Sequence[str]) -> Plan:
        return restore_plan(plan, self)


def _fresh(base: str, taken: set[str]) -> str:
    k = 1
    while f"{base}_copy{k}" in taken:
        k += 1
    return f"{base}_copy{k}"


def dedupe_observations(t: Theory) -> Theory:
    """Give every repeated single-action observation its own action copy.

    The first observation of ``a`` keeps ``a``; later ones are redirected
    to fresh copies with identical preconditions, effects and cost.
    Match-set observations are left alone.
    """
    counts: dict[str, int] = {}
    for o in t.obs:
        if isinstance(o, str):
            counts[o] = counts.get(o, 0) + 1
    if all(c <= 1 for c in counts.values()):
        return t
    taken = {a.name for a in t.domain.actions}
    seen: set[str] = set()
    new_obs = []
    copies = []
    origin = dict(t.origin)
    for o in t.obs:
        if isinstance(o, str) and o in seen:
            if not t.domain.has_action(o):
                raise UnknownObservationError(o)
            name = _fresh(o, taken)
            taken.add(name)
            copies.append(t.domain.action(o).renamed(name))
            origin[name] = origin.get(o, o)
            new_obs.append(name)
        else:
            if isinstance(o, str):
                seen.add(o)
            new_obs.append(o)
    domain = t.domain.with_actions(t.domain.actions + tuple(copies))
    return Theory(domain, t.goals, tuple(new_obs), t.goal_names, origin)


def marker_name(j: int) -> str:
    return f"obs{j}"


def observed_action_name(j: int, action: str) -> str:
    return f"o{j}__{action}"


def compile_observations(t: Theory) -> TransformedTheory:
    """Encode the observations as marker fluents, chained action variants and goals.

    For the j-th observation every matching action ``a`` gets a variant
    ``o{j}__a`` that behaves like ``a``, also adds marker ``obs{j}``, and
    (for j > 1) requires the marker of observation j-1. The originals
    stay available. Each goal G becomes G plus all markers.
    """
    p = t.domain
    fluents = set(p.fluents)
    names = {a.name for a in p.actions}
    markers = []
    variants = []
    observed = {}
    origin = dict(t.origin)
    for j, o in enumerate(t.obs, start=1):
        members = [o] if isinstance(o, str) else sorted(o)
        marker = marker_name(j)
        if marker in fluents:
            raise PlanningError(f"marker fluent {marker!r} clashes with domain fluent")
        for a_name in members:
            if not p.has_action(a_name):
                raise UnknownObservationError(a_name)
            a = p.action(a_name)
            pre = a.pre | {markers[-1]} if markers else a.pre
            name = observed_action_name(j, a_name)
            if name in names:
                raise PlanningError(f"observed-action name {name!r} clashes")
            names.add(name)
            variants.append(a.renamed(name, pre=pre, add=a.add | {marker}))
            origin[name] = origin.get(a_name, a_name)
            observed[name] = j
        markers.append(marker)
    domain = StripsProblem(tuple(p.fluents) + tuple(markers), p.init,
                           p.actions + tuple(variants), None)
    goals = tuple(g | frozenset(markers) for g in t.goals)
    return TransformedTheory(domain, t.goals, goals, tuple(markers),
                             t.goal_names, origin, observed)


def restore_plan(plan: Plan | Sequence[str],
                 tt: TransformedTheory | dict[str, str]) -> Plan:
    """Map observed variants and copies in ``plan`` back to the original actions."""
    origin = tt if isinstance(tt, dict) else tt.origin
    return Plan(tuple(origin.get(s, s) for s in plan))


def observed_positions(plan: Sequence[str], tt: TransformedTheory) -> list[int]:
    """0-based indices of the steps in ``plan`` that are observed variants."""
    return [i for i, s in enumerate(plan) if s in tt.observed]


def as_observations(raw: Collection) -> tuple[Observation, ...]:
    return tuple(_norm_obs(o) for o in raw)
