"""
Grounded STRIPS problems
========================

Build a tiny problem by hand, run a plan through it and see what the
validator says when something goes wrong.
"""

from planrec import Action, StripsProblem, compile_negation, validate_plan, validate_problem

# two switches; the lamp needs both on, and switch b only works while the lamp is off
actions = (
    Action("flip_a", add={"a_on"}),
    Action("flip_b", add={"b_on"}, neg_pre={"lamp"}),
    Action("light", pre={"a_on", "b_on"}, add={"lamp"}),
)
p = StripsProblem(("a_on", "b_on", "lamp"), init=set(), actions=actions, goal={"lamp"})
print("diagnostics:", validate_problem(p))

check = validate_plan(p, ["flip_a", "flip_b", "light"])
print("valid:", check.valid, "cost:", check.cost)

check = validate_plan(p, ["light", "flip_a"])
print("valid:", check.valid, "error:", check.error)

# negative preconditions become complement fluents
q = compile_negation(p)
print(q.action("flip_b"))
print("initial state:", sorted(q.init))
