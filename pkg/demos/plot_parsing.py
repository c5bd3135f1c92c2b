"""
Parsing as plan recognition
===========================

A context-free grammar becomes a plan library, the library a STRIPS
problem, and a sentence a sequence of observations. Words the planner
has to add are the ones the sentence is missing.
"""

import time

from planrec.cfg import cfg_to_library, earley_accepts, grammar_to_text, parse
from planrec.fixtures import TOY_SENTENCES, toy_grammar
from planrec.library import compile_library

g = toy_grammar()
print(grammar_to_text(g))

compiled = compile_library(cfg_to_library(g), 10)
print(compiled.summary)

print(f"{'sentence':45s} {'time':>6s} {'exp':>5s} {'len':>4s}  verdict")
for s in TOY_SENTENCES:
    t0 = time.perf_counter()
    out = parse(g, s, 10, allow_missing=True, compiled=compiled)
    dt = time.perf_counter() - t0
    print(f"{s:45s} {dt:6.2f} {out.stats.expanded:5d} {str(out.plan_length):>4s}  {out.verdict}")
    if out.inserted:
        print(" " * 10, "filled in:", out.inserted, "->", " ".join(out.yield_))

# the last sentence is grammatical but needs 11 stack levels
print(earley_accepts(g, TOY_SENTENCES[3].split()))
print(parse(g, TOY_SENTENCES[3], 11, allow_missing=True).verdict)
