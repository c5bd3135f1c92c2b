"""Plan recognition and parsing compiled to classical STRIPS planning.

The core pieces are

* ``strips``: grounded problems, plan execution and validation;
* ``observations``: compiling observation sequences into a planning problem;
* ``planner``: forward search with delete-relaxation heuristics;
* ``library``: AND/OR plan libraries and their depth-bounded compilation;
* ``cfg``: context-free grammars on top of plan libraries;
* ``recognizer``: goal recognition over theories and libraries.
"""

from .cfg import Grammar, cfg_to_library, earley_accepts, parse, parse_grammar
from .library import (LibraryNode, PlanLibrary, compile_library, derive_strings,
                      extract_primitive_sequence, validate_library)
from .observations import Theory, compile_observations, restore_plan, satisfies
from .planner import PlannerConfig, h_add, h_ff, h_max, optimal_cost, search
from .recognizer import optimal_goal_set, recognize_library
from .strips import (Action, Plan, PlanningError, StripsProblem, apply, compile_negation,
                     validate_plan, validate_problem)

__version__ = "0.1.0"

__all__ = [
    "Action", "StripsProblem", "Plan", "PlanningError", "apply", "validate_plan",
    "validate_problem", "compile_negation", "satisfies", "Theory", "compile_observations",
    "restore_plan", "search", "optimal_cost", "PlannerConfig", "h_max", "h_add", "h_ff",
    "LibraryNode", "PlanLibrary", "validate_library", "compile_library",
    "extract_primitive_sequence", "derive_strings", "Grammar", "parse_grammar",
    "cfg_to_library", "earley_accepts", "parse", "optimal_goal_set", "recognize_library",
]
