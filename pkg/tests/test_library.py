import random

import pytest

from planrec.cfg import cfg_to_library, parse_grammar
from planrec.fixtures import soccer_libraries, toy_grammar
from planrec.library import (AND, LEAF, OR, CompiledLibrary, InvalidLibraryError, LibraryNode,
                             PlanLibrary, compile_library, derivation_depths, derive_strings,
                             extract_primitive_sequence, finished, library_from_dict,
                             library_to_dict, started, top, validate_library)
from planrec.planner import PlannerConfig, search
from planrec.strips import validate_plan, validate_problem

import checks
import oracles


def single_rule():
    return PlanLibrary({
        "root": LibraryNode("root", OR, ("r",)),
        "r": LibraryNode("r", AND, ("t",)),
        "t": LibraryNode("t", LEAF, symbol="t"),
    }, "root")


def pair(order=()):
    return PlanLibrary({
        "root": LibraryNode("root", OR, ("r",)),
        "r": LibraryNode("r", AND, ("a", "b"), frozenset(order)),
        "a": LibraryNode("a", LEAF, symbol="a"),
        "b": LibraryNode("b", LEAF, symbol="b"),
    }, "root")


def diag_codes(lib):
    return {d.code for d in validate_library(lib)}


def test_cfg_shaped_library_is_valid():
    assert validate_library(cfg_to_library(toy_grammar())) == []
    for lib in soccer_libraries().values():
        assert validate_library(lib) == []


def test_validation_codes():
    assert "root-not-or" in diag_codes(PlanLibrary(
        {"r": LibraryNode("r", AND, ("t",)), "t": LibraryNode("t", LEAF, symbol="t")}, "r"))
    cyc = PlanLibrary({
        "root": LibraryNode("root", OR, ("r",)),
        "r": LibraryNode("r", AND, ("a", "b"), frozenset({("a", "b"), ("b", "a")})),
        "a": LibraryNode("a", OR, ("t",)),
        "b": LibraryNode("b", OR, ("t",)),
        "t": LibraryNode("t", LEAF, symbol="t"),
    }, "root")
    assert "order-cycle" in diag_codes(cyc)
    assert "root-missing" in diag_codes(PlanLibrary({}, "root"))
    assert "unknown-child" in diag_codes(PlanLibrary({"root": LibraryNode("root", OR, ("x",))}, "root"))
    assert "order-unknown-child" in diag_codes(pair({("a", "z")}))


def test_invalid_library_refuses_to_compile():
    with pytest.raises(InvalidLibraryError):
        compile_library(PlanLibrary({"root": LibraryNode("root", OR, ("x",))}, "root"), 2)


def test_single_rule_compilation():
    c = compile_library(single_rule(), 2)
    p = c.problem
    assert validate_problem(p) == []
    assert p.init == {top(0), started("root", 0)} | {f for f in p.init if f.startswith("not_")}
    assert p.goal == {finished("root", 0)}
    assert all(a.cost == 0 for a in p.actions)
    # f_L extraction over every plan yields exactly [t]
    plans = oracles.enumerate_plans(p, 8)
    assert plans
    assert {tuple(extract_primitive_sequence(pi, c)) for pi in plans} == {("t",)}
    assert derive_strings(single_rule(), 2, 5) == {("t",)}


def test_single_rule_counts():
    c = compile_library(single_rule(), 2)
    assert c.summary["nodes"] == 3
    assert c.summary["actions"] == len(c.problem.actions)
    assert c.summary["fluents"] == len(c.problem.fluents)
    assert isinstance(c, CompiledLibrary)


def test_unordered_and_realizes_both_orders():
    assert derive_strings(pair(), 2, 4) == {("a", "b"), ("b", "a")}
    c = compile_library(pair(), 2)
    assert oracles.plan_yields(c, 4) == {("a", "b"), ("b", "a")}
    assert oracles.plan_yields(compile_library(pair({("b", "a")}), 2), 4) == {("b", "a")}


def test_extract_degenerate():
    assert extract_primitive_sequence([], {}) == []
    assert extract_primitive_sequence(["end__x__1"], {"start__a__b__1": "b"}) == []


def test_toy_derivations_contain_first_sentence():
    strings = derive_strings(cfg_to_library(toy_grammar()), 10, 4)
    assert ("Jack", "ate", "my", "cookie") in strings


def test_recursive_library_depth_monotone():
    g = parse_grammar("S -> a | a S")
    lib = cfg_to_library(g)
    sizes = [len(derive_strings(lib, n, 10)) for n in range(1, 9)]
    assert sizes == sorted(sizes)
    assert derive_strings(lib, 2, 10) == {("a",)}
    assert ("a", "a") in derive_strings(lib, 4, 10)
    d = derivation_depths(lib, 4, 12)
    assert d[("a",)] < d[("a", "a")] < d[("a", "a", "a")]
    assert lib.depth() is None


@pytest.mark.parametrize("seed", range(30))
def test_plan_yields_match_derivations(seed):
    assert checks.correspondence_mismatch(seed, depths=(1, 2, 3)) is None


@pytest.mark.parametrize("seed", range(15))
def test_stack_discipline(seed):
    """At most one level holds top and nothing is started above it; an empty stack means done."""
    rng = random.Random(seed)
    lib = oracles.random_library(rng, max_nodes=8)
    n = 3
    c = compile_library(lib, n)
    for s in oracles.reachable_states(c.problem):
        tops = [i for i in range(n + 1) if top(i) in s]
        assert len(tops) <= 1
        if not tops:
            assert finished(lib.root, 0) in s
            assert not any(f.startswith("started__") for f in s)
            continue
        k = tops[0]
        for node in lib.nodes:
            for i in range(k + 1, n + 1):
                assert started(node, i) not in s


def test_soccer_plans_yield_derivable_strings():
    for lib in soccer_libraries().values():
        c = compile_library(lib, 6)
        r = search(c.problem, PlannerConfig("gbfs", "ff"))
        assert r.solved and validate_plan(c.problem, r.plan).valid
        assert tuple(c.extract(r.plan)) in derive_strings(lib, 6, 10)


def test_library_dict_roundtrip():
    for lib in soccer_libraries().values():
        assert library_from_dict(library_to_dict(lib), lib.name) == lib


def test_negation_free_variant():
    c = compile_library(single_rule(), 2, negation=False)
    assert any(a.neg_pre for a in c.problem.actions)
    assert not any(f.startswith("not_") for f in c.problem.fluents)
    assert oracles.plan_yields(c, 3) == {("t",)}


def test_finished_name():
    assert finished("x", 3) == "finished__x__3"
