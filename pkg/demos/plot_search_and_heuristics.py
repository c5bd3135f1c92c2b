"""
Heuristics and search algorithms
================================

Compare h_max, h_add and the FF relaxed-plan estimate on the same
navigation problem, then solve it with every search algorithm.
"""

from planrec.fixtures import GRID_DOORS, at, navigation_domain
from planrec.planner import PlannerConfig, h_add, h_ff, h_max, search

p = navigation_domain("ABCDEFGHIJK", GRID_DOORS, "A").with_goal({at("K"), at("E")})

# at(K) and at(E) can't both hold, but the delete relaxation doesn't know that
print("h_max", h_max(None, p), " h_add", h_add(None, p), " h_ff", h_ff(None, p))

q = p.with_goal({at("K")})
print("h_max", h_max(None, q), " h_add", h_add(None, q), " h_ff", h_ff(None, q)[0])

for alg, heur in [("astar", "hmax"), ("astar", "blind"), ("gbfs", "ff"), ("ehc", "ff")]:
    r = search(q, PlannerConfig(alg, heur))
    print(f"{alg:5s}/{heur:5s} cost={r.cost} expanded={r.stats.expanded:3d} optimal={r.optimal}")

# the first goal is a dead end for every algorithm
print(search(p, PlannerConfig("gbfs", "ff")).status)
