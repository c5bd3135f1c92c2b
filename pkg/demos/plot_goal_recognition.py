"""
Goal recognition in a small building
====================================

An agent starts in room A. We see it move A->B and later F->G and ask
which destinations are consistent with an optimal route that contains
those moves.
"""

from planrec.fixtures import GRID_MAP, corridor_theory, grid_theory
from planrec.recognizer import optimal_goal_set

print(GRID_MAP)

theory = grid_theory()
result = optimal_goal_set(theory)
for g in result.goals:
    print(f"{g.name:6s} {g.verdict:10s} c*(G)={g.cost_g}  c*(G+O)={g.cost_gprime}")
    if g.witness:
        print("        ", " ".join(g.witness))

# C is cheap to reach from A, but not through F->G, so it drops out
print("optimal goal set:", result.recognized)

# a corridor: moving A->B->C rules out stopping at B
print("corridor:", optimal_goal_set(corridor_theory()).recognized)
