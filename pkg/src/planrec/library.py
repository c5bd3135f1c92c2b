"""AND/OR plan libraries and their compilation into STRIPS.

The compiled problem simulates a stack of depth ``N``: ``top__i`` marks
the current level, ``started__n__i`` says node ``n`` is active at level
``i`` and ``finished__n__i`` records that ``n`` completed for its parent
at level ``i``. OR nodes at level ``i`` push one child to ``i+1``; AND
nodes push non-terminal children one at a time, respecting their
partial order, and emit terminal children in place. All actions cost 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .strips import Action, Diagnostic, Plan, PlanningError, StripsProblem, compile_negation

AND, OR, LEAF = "and", "or", "leaf"


class InvalidLibraryError(PlanningError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.message for d in diagnostics))


@dataclass(frozen=True)
class LibraryNode:
    id: str
    kind: str
    children: tuple[str, ...] = ()
    order: frozenset[tuple[str, str]] = frozenset()
    symbol: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", self.kind.lower())
        object.__setattr__(self, "children", tuple(self.children))
        object.__setattr__(self, "order", frozenset(tuple(p) for p in self.order))
        if self.kind == LEAF and self.symbol is None:
            object.__setattr__(self, "symbol", self.id)

    def before(self, child: str) -> list[str]:
        return [a for a, b in sorted(self.order) if b == child]


@dataclass(frozen=True)
class PlanLibrary:
    nodes: Mapping[str, LibraryNode]
    root: str
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.nodes, dict):
            object.__setattr__(self, "nodes", {n.id: n for n in self.nodes})

    def __getitem__(self, node_id: str) -> LibraryNode:
        return self.nodes[node_id]

    def __len__(self):
        return len(self.nodes)

    @property
    def terminals(self) -> set[str]:
        return {n.symbol for n in self.nodes.values() if n.kind == LEAF}

    def depth(self) -> int | None:
        """Maximum stack level reached by any derivation, or None if cyclic."""
        memo: dict[str, int] = {}
        on_path: set[str] = set()

        def visit(nid):
            if nid in memo:
                return memo[nid]
            if nid in on_path:
                raise _Cycle
            on_path.add(nid)
            node = self.nodes[nid]
            best = 0
            for c in node.children:
                if self.nodes[c].kind != LEAF:
                    best = max(best, 1 + visit(c))
            on_path.discard(nid)
            memo[nid] = best
            return best

        try:
            return visit(self.root)
        except _Cycle:
            return None


class _Cycle(Exception):
    pass


def _has_cycle(pairs: Iterable[tuple[str, str]]) -> bool:
    succ: dict[str, set[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    state: dict[str, int] = {}

    def dfs(u):
        state[u] = 1
        for v in succ.get(u, ()):
            if state.get(v) == 1:
                return True
            if state.get(v) is None and dfs(v):
                return True
        state[u] = 2
        return False

    return any(state.get(u) is None and dfs(u) for u in list(succ))


def validate_library(lib: PlanLibrary) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if lib.root not in lib.nodes:
        return [Diagnostic("root-missing", f"root {lib.root!r} is not a node")]
    if lib.nodes[lib.root].kind != OR:
        out.append(Diagnostic("root-not-or", f"root {lib.root!r} must be an OR node"))
    for node in lib.nodes.values():
        if node.kind not in (AND, OR, LEAF):
            out.append(Diagnostic("bad-kind", f"node {node.id!r} has kind {node.kind!r}"))
            continue
        if node.kind == LEAF:
            if node.children:
                out.append(Diagnostic("leaf-has-children", f"leaf {node.id!r} has children"))
            continue
        if len(set(node.children)) != len(node.children):
            out.append(Diagnostic("duplicate-child", f"node {node.id!r} lists a child twice"))
        for c in node.children:
            child = lib.nodes.get(c)
            if child is None:
                out.append(Diagnostic("unknown-child", f"node {node.id!r} refers to missing {c!r}"))
            elif node.kind == OR and child.kind == OR:
                out.append(Diagnostic("or-child-kind", f"OR node {node.id!r} has OR child {c!r}"))
            elif node.kind == AND and child.kind == AND:
                out.append(Diagnostic("and-child-kind", f"AND node {node.id!r} has AND child {c!r}"))
        if node.order:
            if node.kind != AND:
                out.append(Diagnostic("order-on-non-and", f"node {node.id!r} is not AND but has an order"))
            kids = set(node.children)
            for a, b in node.order:
                if a not in kids or b not in kids:
                    out.append(Diagnostic("order-unknown-child",
                                          f"order pair ({a}, {b}) of {node.id!r} names a non-child"))
            if any(a == b for a, b in node.order) or _has_cycle(node.order):
                out.append(Diagnostic("order-cycle", f"order of {node.id!r} is not a strict partial order"))
    return out


# -- compilation --------------------------------------------------------------

def top(i: int) -> str:
    return f"top__{i}"


def started(n: str, i: int) -> str:
    return f"started__{n}__{i}"


def finished(n: str, i: int) -> str:
    return f"finished__{n}__{i}"


@dataclass(frozen=True)
class CompiledLibrary:
    """A compiled library: the STRIPS problem plus the terminal each action emits."""

    problem: StripsProblem
    emits: dict[str, str]
    library: PlanLibrary
    depth: int
    summary: dict = field(default_factory=dict)

    def extract(self, plan: Sequence[str], origin: Mapping[str, str] | None = None) -> list[str]:
        return extract_primitive_sequence(plan, self.emits, origin)

    def emitters(self, symbol: str) -> frozenset[str]:
        return frozenset(a for a, s in self.emits.items() if s == symbol)


def compile_library(lib: PlanLibrary, depth: int, *, negation: bool = True) -> CompiledLibrary:
    """Compile ``lib`` into a zero-cost STRIPS problem with stack levels 0..depth.

    Every action is grounded at each level where its fluents exist; no
    reachability pruning is done. With ``negation`` the negative
    preconditions are compiled into complement fluents.
    """
    diags = validate_library(lib)
    if diags:
        raise InvalidLibraryError(diags)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    N = depth
    nodes = lib.nodes
    levels = range(N + 1)
    zero = Fraction(0)

    def is_leaf(nid):
        return nodes[nid].kind == LEAF

    fluents = [top(i) for i in levels]
    for nid, node in nodes.items():
        for i in levels:
            # leaves are never started; only their completion is recorded
            if node.kind != LEAF:
                fluents.append(started(nid, i))
            fluents.append(finished(nid, i))

    actions: list[Action] = []
    emits: dict[str, str] = {}

    def not_started_above(children, i):
        if i + 1 > N:
            return set()
        return {started(c, i + 1) for c in children if not is_leaf(c)}

    for nid, node in nodes.items():
        if node.kind == AND:
            for c in node.children:
                for i in levels:
                    if not is_leaf(c) and i + 1 > N:
                        continue
                    pre = {top(i), started(nid, i)} | {finished(p, i) for p in node.before(c)}
                    neg = {finished(c, i)} | not_started_above(node.children, i)
                    name = f"start__{nid}__{c}__{i}"
                    if is_leaf(c):
                        actions.append(Action(name, pre, {finished(c, i)}, (), neg, zero))
                        emits[name] = nodes[c].symbol
                    else:
                        actions.append(Action(name, pre, {top(i + 1), started(c, i + 1)},
                                              {top(i)}, neg, zero))
            for i in levels[1:]:
                pre = {top(i), started(nid, i)} | {finished(c, i) for c in node.children}
                actions.append(Action(f"end__{nid}__{i}", pre,
                                      {finished(nid, i - 1), top(i - 1)}, pre, (), zero))
        elif node.kind == OR:
            is_root = nid == lib.root

            def or_guard(i):
                # completed children are recorded at the OR's own level
                return {finished(k, i) for k in node.children} | not_started_above(node.children, i)

            for c in node.children:
                if is_leaf(c):
                    # start and end of an OR -> leaf call fused into one step
                    for i in levels:
                        if i == 0 and not is_root:
                            continue
                        pre = {top(i), started(nid, i)}
                        add = {finished(nid, 0)} if i == 0 else {finished(nid, i - 1), top(i - 1)}
                        name = f"start__{nid}__{c}__{i}"
                        actions.append(Action(name, pre, add, pre, or_guard(i), zero))
                        emits[name] = nodes[c].symbol
                    continue
                for i in levels:
                    if i + 1 > N:
                        continue
                    pre = {top(i), started(nid, i)}
                    neg = or_guard(i)
                    actions.append(Action(f"start__{nid}__{c}__{i}", pre,
                                          {top(i + 1), started(c, i + 1)}, {top(i)}, neg, zero))
                for i in levels:
                    if i == 0 and not is_root:
                        continue
                    pre = {top(i), started(nid, i), finished(c, i)}
                    add = {finished(nid, 0)} if i == 0 else {finished(nid, i - 1), top(i - 1)}
                    actions.append(Action(f"end__{nid}__{c}__{i}", pre, add, pre, (), zero))

    problem = StripsProblem(tuple(fluents), {top(0), started(lib.root, 0)},
                            tuple(actions), {finished(lib.root, 0)})
    if negation:
        problem = compile_negation(problem)
    summary = {"nodes": len(nodes), "fluents": len(problem.fluents),
               "actions": len(problem.actions), "depth": N}
    return CompiledLibrary(problem, emits, lib, N, summary)


def extract_primitive_sequence(plan: Plan | Sequence[str], emits: Mapping[str, str] | CompiledLibrary,
                               origin: Mapping[str, str] | None = None) -> list[str]:
    """Project a plan of a compiled library onto the terminals it emits.

    ``origin`` maps renamed actions (observed variants, counter variants)
    back to the compiled action they derive from.
    """
    if isinstance(emits, CompiledLibrary):
        emits = emits.emits
    origin = origin or {}
    out = []
    for step in plan:
        sym = emits.get(origin.get(step, step))
        if sym is not None:
            out.append(sym)
    return out


# -- derivations ----------------------------------------------------------------

def linearizations(children: Sequence[str], order: Iterable[tuple[str, str]]):
    """All orderings of ``children`` compatible with the precedence pairs."""
    order = list(order)
    for perm in itertools.permutations(children):
        pos = {c: k for k, c in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in order):
            yield perm


def derive_strings(lib: PlanLibrary, depth: int, max_len: int) -> set[tuple[str, ...]]:
    """Terminal strings derivable from the root within the stack-depth bound.

    The root sits at level 0; each OR -> AND and AND -> OR step moves one
    level up and may not exceed ``depth``. Terminals do not consume a level.
    """
    nodes = lib.nodes

    def concat(parts: list[frozenset], cap: int) -> set[tuple]:
        acc = {()}
        for part in parts:
            acc = {a + b for a in acc for b in part if len(a) + len(b) <= cap}
            if not acc:
                break
        return acc

    @lru_cache(maxsize=None)
    def strings(nid: str, level: int) -> frozenset:
        node = nodes[nid]
        if node.kind == LEAF:
            return frozenset({(node.symbol,)}) if max_len >= 1 else frozenset()
        if node.kind == OR:
            out = set()
            for c in node.children:
                if nodes[c].kind == LEAF:
                    out |= strings(c, level)
                elif level + 1 <= depth:
                    out |= strings(c, level + 1)
            return frozenset(out)
        out = set()
        child_sets = {}
        for c in node.children:
            if nodes[c].kind == LEAF:
                child_sets[c] = strings(c, level)
            elif level + 1 <= depth:
                child_sets[c] = strings(c, level + 1)
            else:
                child_sets[c] = frozenset()
        if any(not s for s in child_sets.values()):
            return frozenset()
        for perm in linearizations(node.children, node.order):
            out |= concat([child_sets[c] for c in perm], max_len)
        return frozenset(out)

    return set(strings(lib.root, 0))


def derivation_depths(lib: PlanLibrary, max_len: int, max_depth: int) -> dict[tuple[str, ...], int]:
    """Smallest depth bound at which each string of length <= max_len is derivable."""
    found: dict[tuple[str, ...], int] = {}
    for n in range(1, max_depth + 1):
        for s in derive_strings(lib, n, max_len):
            found.setdefault(s, n)
    return found


# -- (de)serialization ---------------------------------------------------------

def library_from_dict(data: dict, name: str = "") -> PlanLibrary:
    nodes = []
    for raw in data["nodes"]:
        nodes.append(LibraryNode(
            raw["id"], raw["kind"], tuple(raw.get("children", ())),
            frozenset(tuple(p) for p in raw.get("order", ())), raw.get("symbol")))
    return PlanLibrary({n.id: n for n in nodes}, data["root"], data.get("name", name))


def library_to_dict(lib: PlanLibrary) -> dict:
    out = []
    for node in lib.nodes.values():
        entry = {"id": node.id, "kind": node.kind}
        if node.children:
            entry["children"] = list(node.children)
        if node.order:
            entry["order"] = [list(p) for p in sorted(node.order)]
        if node.kind == LEAF:
            entry["symbol"] = node.symbol
        out.append(entry)
    d = {"root": lib.root, "nodes": out}
    if lib.name:
        d["name"] = lib.name
    return d
