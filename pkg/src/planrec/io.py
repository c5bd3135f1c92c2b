"""JSON file formats for problems, theories and libraries."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .library import PlanLibrary, library_from_dict, library_to_dict
from .observations import Theory
from .strips import Action, PlanningError, StripsProblem, as_cost


class FormatError(PlanningError):
    pass


def _cost_out(c: Fraction):
    # non-integral costs are written as exact "p/q" strings
    return int(c) if c.denominator == 1 else str(c)


def problem_from_dict(data: dict, require_goal: bool = False) -> StripsProblem:
    try:
        actions = []
        for raw in data["actions"]:
            pre, neg = set(), set()
            for lit in raw.get("pre", ()):
                (neg if lit.startswith("!") else pre).add(lit.lstrip("!"))
            actions.append(Action(raw["name"], pre, raw.get("add", ()), raw.get("del", ()),
                                  neg, as_cost(raw.get("cost", 1))))
        goal = data.get("goal")
        if require_goal and goal is None:
            raise FormatError("problem has no goal")
        return StripsProblem(tuple(data["fluents"]), frozenset(data.get("init", ())),
                             tuple(actions), None if goal is None else frozenset(goal))
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise FormatError(f"malformed problem: {exc}") from exc


def problem_to_dict(p: StripsProblem) -> dict:
    order = {f: i for i, f in enumerate(p.fluents)}

    def ordered(fs):
        return sorted(fs, key=lambda f: (order.get(f, len(order)), f))

    out = {"fluents": list(p.fluents), "init": ordered(p.init)}
    if p.goal is not None:
        out["goal"] = ordered(p.goal)
    out["actions"] = [
        {
            "name": a.name,
            "pre": ordered(a.pre) + ["!" + f for f in ordered(a.neg_pre)],
            "add": ordered(a.add),
            "del": ordered(a.delete),
            "cost": _cost_out(a.cost),
        }
        for a in p.actions
    ]
    return out


def theory_from_dict(data: dict) -> Theory:
    try:
        domain = problem_from_dict(data["problem"]).with_goal(None)
        raw_goals = data["goals"]
        names = None
        goals = []
        for g in raw_goals:
            if isinstance(g, dict):
                names = names or []
                names.append(g["name"])
                goals.append(frozenset(g["fluents"]))
            else:
                goals.append(frozenset(g))
        if names is not None and len(names) != len(goals):
            raise FormatError("either all goals are named or none")
        obs = [o if isinstance(o, str) else frozenset(o) for o in data.get("observations", ())]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed theory: {exc}") from exc
    t = Theory(domain, tuple(goals), tuple(obs), None if names is None else tuple(names))
    errs = t.check()
    if errs:
        raise FormatError("; ".join(errs))
    return t


def theory_to_dict(t: Theory) -> dict:
    return {
        "problem": problem_to_dict(t.domain.with_goal(None)),
        "goals": [{"name": n, "fluents": sorted(g)} for n, g in zip(t.goal_names, t.goals)],
        "observations": [o if isinstance(o, str) else sorted(o) for o in t.obs],
    }


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_problem(path) -> StripsProblem:
    return problem_from_dict(load_json(path))


def load_theory(path) -> Theory:
    return theory_from_dict(load_json(path))


def load_library(path) -> PlanLibrary:
    try:
        return library_from_dict(load_json(path), name=Path(path).stem)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed library: {exc}") from exc


def dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


__all__ = [
    "FormatError", "problem_from_dict", "problem_to_dict", "theory_from_dict",
    "theory_to_dict", "library_from_dict", "library_to_dict", "load_problem",
    "load_theory", "load_library", "load_json", "dump",
]
