"""
Recognising team plays from plan libraries
==========================================

Four hand-written libraries describe attacking and defending plays. For
each observed action sequence we ask which library has a derivation
that contains the observations, within a stack depth of 6.
"""

from planrec.fixtures import SOCCER_SEQUENCES, soccer_libraries
from planrec.library import compile_library, derive_strings
from planrec.recognizer import recognize_library

libs = soccer_libraries()
for name, lib in libs.items():
    print(f"{name:15s} {len(lib):2d} nodes  {compile_library(lib, 6).summary['actions']:4d} actions")

# everything a library can produce, for a feel of the fixture
print(sorted(derive_strings(libs["fall-back"], 6, 6)))

for k, obs in SOCCER_SEQUENCES.items():
    res = recognize_library(libs, obs, 6)
    print(f"#{k} {' '.join(obs)}")
    for g in res.goals:
        tag = " ".join(g.witness) if g.witness else ""
        print(f"    {g.name:15s} {g.verdict:10s} {tag}")
