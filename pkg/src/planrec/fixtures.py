"""Small bundled domains: navigation theories, soccer-style libraries and grammars."""

from __future__ import annotations

from importlib import resources

from .cfg import Grammar, parse_grammar
from .library import AND, LEAF, OR, LibraryNode, PlanLibrary
from .observations import Theory
from .strips import Action, StripsProblem


def move(a: str, b: str) -> str:
    return f"move({a},{b})"


def at(x: str) -> str:
    return f"at({x})"


def navigation_domain(rooms, doors, start: str) -> StripsProblem:
    """Unit-cost moves through undirected doors between rooms."""
    actions = []
    for a, b in doors:
        for x, y in ((a, b), (b, a)):
            actions.append(Action(move(x, y), {at(x)}, {at(y)}, {at(x)}))
    return StripsProblem(tuple(at(r) for r in rooms), {at(start)}, tuple(actions))


def corridor_theory() -> Theory:
    """Rooms A-B-C-D in a row, agent in A, observed moving A->B->C."""
    rooms = "ABCD"
    domain = navigation_domain(rooms, list(zip(rooms, rooms[1:])), "A")
    return Theory(domain, (frozenset({at("B")}), frozenset({at("D")})),
                  (move("A", "B"), move("B", "C")), ("at(B)", "at(D)"))


GRID_MAP = r"""
  C - B - A
  |   |
  D   F - G - H
  |   |   |   |
  E - +   I - J - K
"""

GRID_DOORS = [
    ("A", "B"), ("B", "C"), ("B", "F"), ("C", "D"), ("D", "E"), ("E", "F"),
    ("F", "G"), ("G", "H"), ("G", "I"), ("H", "J"), ("I", "J"), ("J", "K"),
]


def grid_theory() -> Theory:
    """Room layout with start A and candidate destinations C, I and K.

    The observed moves are A->B followed by F->G. The layout is drawn in
    ``GRID_MAP`` ('+' is a corridor bend, not a room).
    """
    rooms = "ABCDEFGHIJK"
    domain = navigation_domain(rooms, GRID_DOORS, "A")
    goals = tuple(frozenset({at(x)}) for x in "CIK")
    return Theory(domain, goals, (move("A", "B"), move("F", "G")),
                  tuple(at(x) for x in "CIK"))


def _lib(name: str, root: str, spec: dict) -> PlanLibrary:
    """Build a library from ``{id: ("or", kids) | ("and", kids, order)}``; unknown ids are leaves."""
    nodes = {}
    for nid, entry in spec.items():
        if entry[0] == OR:
            nodes[nid] = LibraryNode(nid, OR, entry[1])
        else:
            order = entry[2] if len(entry) > 2 else ()
            nodes[nid] = LibraryNode(nid, AND, entry[1], frozenset(order))
    for node in list(nodes.values()):
        for c in node.children:
            if c not in nodes:
                nodes[c] = LibraryNode(c, LEAF, symbol=c)
    return PlanLibrary(nodes, root, name)


def soccer_libraries() -> dict[str, PlanLibrary]:
    """Four team-play libraries in the spirit of simulated robot soccer.

    Both attack libraries share running forward and kicking; the two
    defensive ones hardly involve them.
    """
    frontal = _lib("frontal-attack", "frontal-attack", {
        "frontal-attack": (OR, ["fa-build-up", "fa-direct"]),
        "fa-build-up": (AND, ["advance", "support", "shoot"],
                        [("advance", "shoot"), ("support", "shoot")]),
        "fa-direct": (AND, ["advance", "shoot"], [("advance", "shoot")]),
        "advance": (OR, ["adv-run", "adv-dribble"]),
        "adv-run": (AND, ["run-forward"]),
        "adv-dribble": (AND, ["dribble", "run-forward"], [("dribble", "run-forward")]),
        "support": (OR, ["sup-pass", "sup-move"]),
        "sup-pass": (AND, ["turn-to-player", "pass"], [("turn-to-player", "pass")]),
        "sup-move": (AND, ["run-to-position"]),
        "shoot": (OR, ["sh-aim", "sh-volley"]),
        "sh-aim": (AND, ["turn-to-goal", "kick"], [("turn-to-goal", "kick")]),
        "sh-volley": (AND, ["kick"]),
    })
    flank = _lib("flank-attack", "flank-attack", {
        "flank-attack": (OR, ["fl-wing"]),
        "fl-wing": (AND, ["reach-wing", "advance", "cross"],
                    [("reach-wing", "advance"), ("advance", "cross")]),
        "reach-wing": (OR, ["rw-run", "rw-pass"]),
        "rw-run": (AND, ["run-to-wing"]),
        "rw-pass": (AND, ["turn-to-player", "receive"], [("turn-to-player", "receive")]),
        "advance": (OR, ["adv-run"]),
        "adv-run": (AND, ["run-forward"]),
        "cross": (OR, ["cr-high", "cr-low"]),
        "cr-high": (AND, ["turn-to-goal", "kick"], [("turn-to-goal", "kick")]),
        "cr-low": (AND, ["kick-short"]),
    })
    fight = _lib("fight-back", "fight-back", {
        "fight-back": (OR, ["fb-press"]),
        "fb-press": (AND, ["close-down", "regain"], [("close-down", "regain")]),
        "close-down": (OR, ["cd-run", "cd-mark"]),
        "cd-run": (AND, ["run-to-ball"]),
        "cd-mark": (AND, ["mark-player"]),
        "regain": (OR, ["rg-tackle", "rg-intercept"]),
        "rg-tackle": (AND, ["tackle", "turn-away"], [("tackle", "turn-away")]),
        "rg-intercept": (AND, ["intercept"]),
    })
    fall = _lib("fall-back", "fall-back", {
        "fall-back": (OR, ["fk-retreat"]),
        "fk-retreat": (AND, ["run-back", "hold"], [("run-back", "hold")]),
        "hold": (OR, ["hd-mark", "hd-block"]),
        "hd-mark": (AND, ["mark-player"]),
        "hd-block": (AND, ["block", "clear"], [("block", "clear")]),
        "clear": (OR, ["cl-kick", "cl-head"]),
        "cl-kick": (AND, ["kick-away"]),
        "cl-head": (AND, ["header"]),
    })
    return {lib.name: lib for lib in (frontal, flank, fight, fall)}


SOCCER_SEQUENCES = {
    1: ["run-forward", "kick"],
    2: ["run-forward", "turn-to-player", "kick"],
    3: ["run-forward", "turn-away", "kick-short", "run-to-ball", "turn-to-goal", "kick"],
    4: ["kick"] * 5,
}


def _read(name: str) -> str:
    return resources.files("planrec.data").joinpath(name).read_text(encoding="utf-8")


def toy_grammar() -> Grammar:
    return parse_grammar(_read("toy_english.cfg"))


def second_grammar() -> Grammar:
    """Larger English fragment with questions, commands and a wide lexicon."""
    return parse_grammar(_read("second_english.cfg"))


TOY_SENTENCES = [
    "Jack ate my cookie",
    "ran the boy under the hill",
    "Jack my cookie",
    "the boy under the hill with my cookie ran",
]
