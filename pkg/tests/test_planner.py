import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from planrec.fixtures import at, navigation_domain
from planrec.planner import (BoundExceededError, PlannerConfig, Task, h_add, h_ff, h_max,
                             optimal_cost, search)
from planrec.strips import Action, StripsProblem, validate_plan

import checks
import oracles


def chain(n=3):
    fl = [f"p{i}" for i in range(n + 1)]
    acts = [Action(f"a{i}", {fl[i]}, {fl[i + 1]}, {fl[i]}) for i in range(n)]
    return StripsProblem(tuple(fl), {fl[0]}, tuple(acts), {fl[-1]})


def corridor():
    rooms = "ABCD"
    return navigation_domain(rooms, list(zip(rooms, rooms[1:])), "A").with_goal({at("D")})


# -- heuristics ---------------------------------------------------------------

def test_heuristics_zero_at_goal():
    p = chain(3)
    s = {"p3"}
    assert h_max(s, p) == h_add(s, p) == 0
    assert h_ff(s, p) == (0, frozenset())


def test_heuristics_unreachable_goal():
    p = StripsProblem(("p", "q"), {"p"}, (), {"q"})
    assert h_max(None, p) == math.inf
    assert h_add(None, p) == math.inf
    assert h_ff(None, p)[0] == math.inf


def test_hadd_is_additive():
    p = StripsProblem(("p", "q"), set(), (Action("a", (), {"p"}), Action("b", (), {"q"})),
                      {"p", "q"})
    assert h_add(None, p) == 2
    assert h_max(None, p) == 1


def test_hff_serial_chain():
    est, helpful = h_ff(None, chain(3))
    assert est == 3 and helpful == {"a0"}


def test_hmax_fractional_costs():
    p = StripsProblem(("p", "q"), set(),
                      (Action("a", (), {"p"}, cost=Fraction(1, 2)),
                       Action("b", {"p"}, {"q"}, cost=Fraction(1, 3))), {"q"})
    assert h_max(None, p) == Fraction(5, 6)


def test_chain_hmax_matches_relaxed_fixpoint():
    p = chain(4)
    assert h_max(None, p) == oracles.hmax_oracle(p, p.init) == 4


@pytest.mark.parametrize("seed", range(60))
def test_heuristics_match_fixpoint_oracles(seed):
    rng = random.Random(seed)
    p = oracles.random_problem(rng, n_fluents=6, n_actions=7, costs=(1, 2, 3), goal_size=(1, 3))
    for s in oracles.reachable_states(p):
        assert h_max(s, p) == oracles.hmax_oracle(p, s)
        assert h_add(s, p) == oracles.hadd_oracle(p, s)
        est, _ = h_ff(s, p)
        assert (est == math.inf) == (h_max(s, p) == math.inf)


@pytest.mark.parametrize("seed", range(60))
def test_hff_dominates_hmax_on_unit_cost(seed):
    rng = random.Random(seed)
    p = oracles.random_problem(rng, n_fluents=6, n_actions=7, negation=True, goal_size=(1, 3))
    for s in oracles.reachable_states(p):
        assert h_max(s, p) <= h_ff(s, p)[0]
        assert h_max(s, p) <= h_add(s, p)


def test_helpful_actions_are_applicable():
    rng = random.Random(3)
    for _ in range(30):
        p = oracles.random_problem(rng, n_fluents=6, n_actions=8)
        _, helpful = h_ff(None, p)
        for name in helpful:
            assert p.action(name).applicable(p.init)


def test_task_complements_for_plain_states():
    p = StripsProblem(("p", "q"), set(), (Action("a", (), {"q"}, neg_pre={"p"}),), {"q"})
    task = Task(p)
    assert task.state_fluents(task.state_mask(set())) == {"not_p"}
    assert h_max(set(), p) == 1
    assert h_max({"p"}, p) == math.inf


# -- search -------------------------------------------------------------------

@pytest.mark.parametrize("alg,heur", [("astar", "hmax"), ("astar", "blind"), ("gbfs", "ff"),
                                      ("gbfs", "hadd"), ("ehc", "ff"), ("ehc", "hmax")])
def test_goal_in_init_gives_empty_plan(alg, heur):
    p = chain(2).with_goal({"p0"})
    r = search(p, PlannerConfig(alg, heur))
    assert r.solved and list(r.plan) == [] and r.cost == 0


def test_corridor_astar():
    r = search(corridor(), PlannerConfig("astar", "hmax"))
    assert r.solved and r.cost == 3 and r.optimal
    assert r.cost == oracles.bfs_depth(corridor())
    assert r.stats.algorithm == "astar" and r.stats.expanded > 0


def test_zero_cost_plan_is_optimal():
    p = StripsProblem(("p", "q"), set(), (Action("a", (), {"p"}, cost=0),
                                           Action("b", {"p"}, {"q"}, cost=0)), {"q"})
    for alg, heur in (("astar", "hmax"), ("gbfs", "ff"), ("ehc", "ff")):
        r = search(p, PlannerConfig(alg, heur))
        assert r.solved and r.cost == 0 and r.optimal


def test_unsolvable():
    p = StripsProblem(("p", "q"), {"p"}, (Action("a", {"q"}, {"p"}),), {"q"})
    for alg in ("astar", "gbfs", "ehc"):
        assert search(p, PlannerConfig(alg, "blind")).status == "unsolvable"
    assert optimal_cost(p) == math.inf


def test_bound_is_inclusive():
    p = corridor()
    assert optimal_cost(p, bound=3) == 3
    with pytest.raises(BoundExceededError):
        optimal_cost(p, bound=2)
    assert search(p, PlannerConfig("astar", "hmax", Fraction(2))).status == "bound-exceeded"


def test_node_limit():
    r = search(corridor(), PlannerConfig("astar", "blind", node_limit=1))
    assert r.status == "resource-limit"


def test_ehc_falls_back_on_dead_end():
    # the helpful first step leads into a trap; hill-climbing cannot escape it
    acts = (Action("trap", {"s"}, {"t"}, {"s"}), Action("slow", {"s"}, {"m"}, {"s"}),
            Action("on", {"m"}, {"n"}, {"m"}), Action("fin", {"n"}, {"g", "t2"}, {"n"}),
            Action("spring", {"t"}, {"g"}, {"t"}, neg_pre={"t"}))
    p = StripsProblem(("s", "t", "m", "n", "g", "t2"), {"s"}, acts, {"g"})
    r = search(p, PlannerConfig("ehc", "ff"))
    assert r.solved and validate_plan(p, r.plan).valid
    assert r.stats.attempted == ["ehc", "gbfs"] and r.stats.algorithm == "gbfs"


@pytest.mark.parametrize("seed", range(60))
def test_astar_hmax_matches_bfs(seed):
    assert checks.heuristic_violations(seed) is None


@pytest.mark.parametrize("seed", range(40))
def test_astar_fractional_costs_match_dijkstra(seed):
    rng = random.Random(seed)
    p = oracles.random_problem(rng, n_fluents=6, n_actions=7, negation=True,
                               costs=(Fraction(1, 2), 1, Fraction(5, 3)))
    assert optimal_cost(p) == oracles.dijkstra_cost(p)


@pytest.mark.parametrize("seed", range(40))
def test_satisficing_plans_are_valid(seed):
    rng = random.Random(seed)
    p = oracles.random_problem(rng, n_fluents=7, n_actions=8, negation=True, goal_size=(1, 3))
    reachable = oracles.bfs_depth(p) != math.inf
    for alg, heur in (("gbfs", "ff"), ("gbfs", "hadd"), ("ehc", "ff"), ("ehc", "hadd")):
        r = search(p, PlannerConfig(alg, heur))
        assert r.solved == reachable
        if r.solved:
            chk = validate_plan(p, r.plan)
            assert chk.valid and chk.cost == r.cost


def test_search_is_deterministic():
    rng = random.Random(11)
    p = oracles.random_problem(rng, n_fluents=8, n_actions=10)
    runs = [search(p, PlannerConfig("gbfs", "ff")) for _ in range(3)]
    assert len({(r.status, tuple(r.plan or ()), r.stats.expanded) for r in runs}) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_astar_property(seed):
    assert checks.heuristic_violations(seed) is None
