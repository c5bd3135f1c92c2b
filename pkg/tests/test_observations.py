import pytest

from planrec.observations import (Theory, UnknownObservationError, compile_observations,
                                  dedupe_observations, observed_positions, restore_plan,
                                  satisfies)
from planrec.strips import Action, StripsProblem, validate_plan

import checks
import oracles


PI = list("abcdea")


@pytest.mark.parametrize("obs,expected", [
    ("bda", True), ("aca", True), ("bdc", False), ("", True), ("aa", True), ("aaa", False),
])
def test_satisfies_worked_cases(obs, expected):
    assert satisfies(PI, list(obs)) is expected


def test_satisfies_match_set():
    assert satisfies(["a", "b"], [frozenset({"x", "a"}), "b"])
    assert not satisfies(["a", "b"], ["b", frozenset({"a"})])


@pytest.mark.parametrize("seed", range(200))
def test_satisfies_matches_exhaustive(seed):
    assert checks.satisfies_mismatch(seed) is None


def _domain(names="abc"):
    acts = [Action(n, (), {f"did_{n}"}) for n in names]
    return StripsProblem(tuple(f"did_{n}" for n in names), set(), tuple(acts))


def test_dedupe_copies_repeated_observation():
    t = Theory(_domain("ac"), ({"did_a"},), ("a", "c", "a"))
    d = dedupe_observations(t)
    assert d.obs == ("a", "c", "a_copy1")
    assert d.domain.has_action("a_copy1")
    copy, orig = d.domain.action("a_copy1"), d.domain.action("a")
    assert (copy.pre, copy.add, copy.delete, copy.cost) == (orig.pre, orig.add, orig.delete, orig.cost)
    assert d.origin == {"a_copy1": "a"}


def test_dedupe_noop_on_distinct():
    t = Theory(_domain(), ({"did_a"},), ("a", "b"))
    assert dedupe_observations(t) == t


def test_dedupe_triple():
    d = dedupe_observations(Theory(_domain("a"), ({"did_a"},), ("a", "a", "a")))
    assert len(set(d.obs)) == 3
    assert len(d.domain.actions) == 3


def test_compile_structure():
    dom = StripsProblem(("p", "q", "r"), {"p"},
                        (Action("x", {"p"}, {"q"}), Action("y", {"q"}, {"r"})))
    tt = compile_observations(Theory(dom, ({"r"},), ("x", "y")))
    ox = tt.domain.action("o1__x")
    oy = tt.domain.action("o2__y")
    assert ox.pre == {"p"} and "obs1" in ox.add
    assert oy.pre == {"q", "obs1"} and "obs2" in oy.add
    assert tt.goals[0] == {"r", "obs1", "obs2"}
    # originals stay available
    assert tt.domain.has_action("x") and tt.domain.has_action("y")


def test_compile_empty_observations_is_identity():
    dom = _domain()
    tt = compile_observations(Theory(dom, ({"did_a"},), ()))
    assert tt.domain == dom
    assert tt.goals == tt.base_goals == (frozenset({"did_a"}),)


def test_unknown_observation_rejected():
    with pytest.raises(UnknownObservationError):
        compile_observations(Theory(_domain(), ({"did_a"},), ("zzz",)))


def test_restore():
    dom = _domain()
    tt = compile_observations(Theory(dom, ({"did_a"},), ("a", "b")))
    assert list(restore_plan(["o1__a", "c", "o2__b"], tt)) == ["a", "c", "b"]
    assert list(restore_plan(["c", "a"], tt)) == ["c", "a"]
    assert observed_positions(["o1__a", "c", "o2__b"], tt) == [0, 2]


@pytest.mark.parametrize("seed", range(40))
def test_restored_plans_are_satisfying_plans(seed):
    assert checks.compiled_plans_mismatch(seed) is None


@pytest.mark.parametrize("seed", range(10))
def test_restored_plans_validate(seed):
    import random
    rng = random.Random(seed)
    p = oracles.random_problem(rng, n_fluents=4, n_actions=5)
    obs = [rng.choice([a.name for a in p.actions]) for _ in range(2)]
    tt = compile_observations(dedupe_observations(Theory(p.with_goal(None), (p.goal,), obs)))
    for pi in oracles.enumerate_plans(tt.domain, 5, goal=tt.goals[0]):
        restored = restore_plan(pi, tt)
        assert validate_plan(p, restored).valid
        assert satisfies(restored, obs)
