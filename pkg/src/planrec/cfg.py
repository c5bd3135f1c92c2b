"""Context-free grammars as plan libraries, and parsing as plan recognition."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .library import AND, LEAF, OR, CompiledLibrary, LibraryNode, PlanLibrary, compile_library
from .observations import Theory, TransformedTheory, compile_observations
from .planner.search import RESOURCE_LIMIT, SOLVED, PlannerConfig, SearchStats, search
from .strips import PlanningError, StripsProblem

ACCEPTED = "accepted"
INTERPOLATED = "accepted-with-interpolation"
REJECTED = "rejected"


class GrammarError(PlanningError):
    pass


@dataclass(frozen=True)
class Grammar:
    start: str
    productions: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        prods = tuple((lhs, tuple(rhs)) for lhs, rhs in self.productions)
        object.__setattr__(self, "productions", prods)
        if not any(lhs == self.start for lhs, _ in prods):
            raise GrammarError(f"start symbol {self.start!r} has no production")
        for lhs, rhs in prods:
            if not rhs:
                raise GrammarError(f"empty production for {lhs!r} is not supported")

    @property
    def nonterminals(self) -> list[str]:
        return list(dict.fromkeys(lhs for lhs, _ in self.productions))

    @property
    def terminals(self) -> list[str]:
        nts = set(self.nonterminals)
        return list(dict.fromkeys(s for _, rhs in self.productions for s in rhs if s not in nts))

    def rules_for(self, lhs: str) -> list[tuple[str, ...]]:
        return [rhs for l, rhs in self.productions if l == lhs]


_NUMBERING = re.compile(r"^\s*\d+[.)]\s*")


def parse_grammar(text: str, start: str | None = None) -> Grammar:
    """Read ``LHS -> A B | C`` lines; '#' starts a comment. Start defaults to the first LHS."""
    prods = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _NUMBERING.sub("", raw.split("#", 1)[0]).strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarError(f"line {lineno}: expected 'LHS -> RHS'")
        lhs, rhs = (part.strip() for part in line.split("->", 1))
        if not lhs or len(lhs.split()) != 1:
            raise GrammarError(f"line {lineno}: bad left-hand side {lhs!r}")
        for alt in rhs.split("|"):
            syms = tuple(alt.split())
            if not syms:
                raise GrammarError(f"line {lineno}: empty alternative for {lhs!r}")
            prods.append((lhs, syms))
    if not prods:
        raise GrammarError("grammar has no productions")
    return Grammar(start or prods[0][0], tuple(prods))


def grammar_to_text(g: Grammar) -> str:
    lines = []
    for nt in g.nonterminals:
        lines.append(f"{nt} -> " + " | ".join(" ".join(r) for r in g.rules_for(nt)))
    return "\n".join(lines) + "\n"


def cfg_to_library(g: Grammar) -> PlanLibrary:
    """OR node per nonterminal, AND node per production, one shared leaf per terminal.

    A symbol repeated inside one right-hand side gets an alias node (a
    second leaf, or an OR node with the same alternatives) because a
    library node may be a child of a given AND node only once.
    """
    nts = set(g.nonterminals)
    nodes: dict[str, LibraryNode] = {}
    and_ids: dict[str, list[str]] = {nt: [] for nt in g.nonterminals}
    counter: dict[str, int] = {}
    aliases: list[tuple[str, str]] = []
    for lhs, rhs in g.productions:
        counter[lhs] = counter.get(lhs, 0) + 1
        aid = f"{lhs}.{counter[lhs]}"
        kids = []
        seen: dict[str, int] = {}
        for sym in rhs:
            seen[sym] = seen.get(sym, 0) + 1
            nid = sym if seen[sym] == 1 else f"{sym}~{seen[sym]}"
            if sym not in nts:
                nodes.setdefault(nid, LibraryNode(nid, LEAF, symbol=sym))
            elif nid != sym:
                aliases.append((nid, sym))
            kids.append(nid)
        order = frozenset(zip(kids, kids[1:]))
        nodes[aid] = LibraryNode(aid, AND, tuple(kids), order)
        and_ids[lhs].append(aid)
    for nt in g.nonterminals:
        nodes[nt] = LibraryNode(nt, OR, tuple(and_ids[nt]))
    for alias, nt in aliases:
        nodes.setdefault(alias, LibraryNode(alias, OR, tuple(and_ids[nt])))
    return PlanLibrary(nodes, g.start, name=g.start)


def earley_accepts(g: Grammar, tokens: Sequence[str]) -> bool:
    """Plain Earley recognizer (no epsilon rules), used as an independent check."""
    tokens = list(tokens)
    nts = set(g.nonterminals)
    rules = {nt: g.rules_for(nt) for nt in nts}
    n = len(tokens)
    chart: list[set] = [set() for _ in range(n + 1)]
    start_item = ("$", (g.start,), 0, 0)
    chart[0].add(start_item)
    for k in range(n + 1):
        agenda = list(chart[k])
        while agenda:
            lhs, rhs, dot, origin = agenda.pop()
            if dot < len(rhs):
                sym = rhs[dot]
                if sym in nts:
                    for alt in rules[sym]:
                        item = (sym, alt, 0, k)
                        if item not in chart[k]:
                            chart[k].add(item)
                            agenda.append(item)
                elif k < n and tokens[k] == sym:
                    chart[k + 1].add((lhs, rhs, dot + 1, origin))
            else:
                for plhs, prhs, pdot, porigin in list(chart[origin]):
                    if pdot < len(prhs) and prhs[pdot] == lhs:
                        item = (plhs, prhs, pdot + 1, porigin)
                        if item not in chart[k]:
                            chart[k].add(item)
                            agenda.append(item)
    return ("$", (g.start,), 1, 0) in chart[n]


def count_fluent(k: int) -> str:
    return f"emitted__{k}"


def cap_yield(tt: TransformedTheory, emits: dict[str, str], m: int) -> TransformedTheory:
    """Allow at most ``m`` terminal emissions by threading a counter through every emitter."""
    counts = [count_fluent(k) for k in range(m + 1)]
    origin = dict(tt.origin)
    observed = dict(tt.observed)
    actions = []
    for a in tt.domain.actions:
        base = origin.get(a.name, a.name)
        if base not in emits:
            actions.append(a)
            continue
        for k in range(m):
            name = f"{a.name}__n{k}"
            actions.append(a.renamed(name, pre=a.pre | {counts[k]},
                                     add=a.add | {counts[k + 1]},
                                     delete=a.delete | {counts[k]}))
            origin[name] = base
            if a.name in observed:
                observed[name] = observed[a.name]
    p = tt.domain
    domain = StripsProblem(tuple(p.fluents) + tuple(counts), p.init | {counts[0]},
                           tuple(actions), None)
    return TransformedTheory(domain, tt.base_goals, tt.goals, tt.marker_fluents,
                             tt.goal_names, origin, observed)


@dataclass
class ParseOutcome:
    verdict: str
    tokens: tuple[str, ...]
    yield_: tuple[str, ...] = ()
    inserted: list[tuple[int, str]] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    plan_length: int | None = None
    diagnostics: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "tokens": list(self.tokens),
            "yield": list(self.yield_),
            "inserted": [{"position": i, "symbol": s} for i, s in self.inserted],
            "plan_length": self.plan_length,
            "diagnostics": self.diagnostics,
            "stats": self.stats.as_dict(),
        }


def recognition_problem(compiled: CompiledLibrary, tokens: Sequence[str],
                        allow_missing: bool = True) -> TransformedTheory:
    """The compiled library with the tokens compiled away as observations."""
    obs = [compiled.emitters(t) for t in tokens]
    theory = Theory(compiled.problem.with_goal(None), (compiled.problem.goal,), obs)
    tt = compile_observations(theory)
    if not allow_missing:
        tt = cap_yield(tt, compiled.emits, len(tokens))
    return tt


def parse(g: Grammar, tokens: Sequence[str] | str, depth: int = 10, allow_missing: bool = False,
          config: PlannerConfig | None = None, compiled: CompiledLibrary | None = None) -> ParseOutcome:
    """Decide whether ``tokens`` is (a subsequence of) a sentence derivable within ``depth``.

    With ``allow_missing`` the planner may insert terminals, and the
    inserted ones are reported with their positions in the yield.
    """
    if isinstance(tokens, str):
        tokens = tokens.split()
    tokens = tuple(tokens)
    terms = set(g.terminals)
    unknown = [t for t in tokens if t not in terms]
    if unknown:
        return ParseOutcome(REJECTED, tokens,
                            diagnostics=[f"unknown-token({t})" for t in dict.fromkeys(unknown)])
    if compiled is None:
        compiled = compile_library(cfg_to_library(g), depth)
    tt = recognition_problem(compiled, tokens, allow_missing)
    cfg = config or PlannerConfig("ehc", "ff", time_limit=600)
    result = search(tt.domain.with_goal(tt.goals[0]), cfg)
    if result.status == RESOURCE_LIMIT:
        return ParseOutcome(RESOURCE_LIMIT, tokens, stats=result.stats)
    if result.status != SOLVED:
        return ParseOutcome(REJECTED, tokens, stats=result.stats)
    steps = list(result.plan)
    yielded = []
    inserted = []
    for step in steps:
        sym = compiled.emits.get(tt.origin.get(step, step))
        if sym is None:
            continue
        if step not in tt.observed:
            inserted.append((len(yielded), sym))
        yielded.append(sym)
    verdict = ACCEPTED if tuple(yielded) == tokens else INTERPOLATED
    return ParseOutcome(verdict, tokens, tuple(yielded), inserted, result.stats, len(steps))
