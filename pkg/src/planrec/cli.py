"""Command-line entry point: ``planrec {plan,recognize,parse,compile}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .cfg import GrammarError, cfg_to_library, parse, parse_grammar
from .library import InvalidLibraryError, compile_library
from .planner.search import (ALGORITHMS, BOUND_EXCEEDED, HEURISTICS, RESOURCE_LIMIT, SOLVED,
                             PlannerConfig, search)
from .recognizer import optimal_goal_set, recognize_library
from .strips import PlanningError, validate_plan, validate_problem

EXIT_OK, EXIT_FAIL, EXIT_LIMIT = 0, 1, 2
EXIT_USAGE, EXIT_DATA = 64, 65
DEFAULT_TIMEOUT = 600.0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _BadInput(Exception):
    pass


def _num(c):
    if c is None:
        return None
    return int(c) if c.denominator == 1 else str(c)


def _drop_times(obj):
    if isinstance(obj, dict):
        return {k: _drop_times(v) for k, v in obj.items() if k != "time_ms"}
    if isinstance(obj, list):
        return [_drop_times(v) for v in obj]
    return obj


def _emit(args, payload: dict):
    # wall-clock times are opt-in so that default output is byte-stable
    if not getattr(args, "timing", False):
        payload = _drop_times(payload)
    text = io.dump(payload)
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _config(args, default_alg: str, default_h: str) -> PlannerConfig:
    bound = getattr(args, "bound", None)
    return PlannerConfig(args.algorithm or default_alg, args.heuristic or default_h,
                         None if bound is None else Fraction(bound),
                         args.node_limit, args.timeout)


def cmd_plan(args) -> int:
    problem = io.load_problem(args.problem)
    diags = validate_problem(problem)
    if diags or problem.goal is None:
        msgs = [d.message for d in diags] or ["problem has no goal"]
        raise _BadInput("; ".join(msgs))
    if args.check:
        data = io.load_json(args.check)
        steps = data["plan"] if isinstance(data, dict) else data
        chk = validate_plan(problem, steps)
        _emit(args, {"valid": chk.valid, "cost": _num(chk.cost), "error": chk.error})
        return EXIT_OK if chk.valid else EXIT_FAIL
    result = search(problem, _config(args, "astar", "hmax"))
    payload = {"status": result.status, "plan": None, "cost": None,
               "optimal": result.optimal, "stats": result.stats.as_dict()}
    if result.status == SOLVED:
        payload["plan"] = list(result.plan)
        payload["cost"] = _num(result.cost)
    _emit(args, payload)
    if result.status == SOLVED:
        return EXIT_OK
    return EXIT_LIMIT if result.status == RESOURCE_LIMIT else EXIT_FAIL


def _read_obs(path) -> list[str]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return text.split()
    if isinstance(data, dict):
        data = data["observations"]
    return list(data)


def cmd_recognize(args) -> int:
    if args.libraries:
        if not args.obs:
            raise _BadInput("--libraries needs --obs")
        libs = {}
        for f in sorted(Path(args.libraries).glob("*.json")):
            lib = io.load_library(f)
            libs[lib.name or f.stem] = lib
        if not libs:
            raise _BadInput(f"no library files in {args.libraries}")
        result = recognize_library(libs, _read_obs(args.obs), args.depth,
                                   heuristic=args.heuristic or "ff", node_limit=args.node_limit,
                                   time_limit=args.timeout, jobs=args.jobs)
    else:
        if not args.theory:
            raise _BadInput("give a theory file or --libraries/--obs")
        theory = io.load_theory(args.theory)
        result = optimal_goal_set(theory, node_limit=args.node_limit,
                                  time_limit=args.timeout, jobs=args.jobs)
    _emit(args, result.as_dict())
    return EXIT_OK


def cmd_parse(args) -> int:
    grammar = parse_grammar(Path(args.grammar).read_text(encoding="utf-8"))
    outcome = parse(grammar, args.sentence.split(), args.depth, args.allow_missing,
                    _config(args, "ehc", "ff"))
    _emit(args, outcome.as_dict())
    return EXIT_LIMIT if outcome.verdict == RESOURCE_LIMIT else EXIT_OK


def _load_library_or_grammar(path):
    p = Path(path)
    if p.suffix == ".json":
        return io.load_library(p)
    return cfg_to_library(parse_grammar(p.read_text(encoding="utf-8")))


def cmd_compile(args) -> int:
    lib = _load_library_or_grammar(args.source)
    compiled = compile_library(lib, args.depth)
    summary = dict(compiled.summary)
    problem = io.problem_to_dict(compiled.problem)
    if args.output:
        Path(args.output).write_text(io.dump(problem), encoding="utf-8")
        sys.stdout.write(io.dump(summary))
    else:
        sys.stdout.write(io.dump({"summary": summary, "problem": problem}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=10, help="library depth bound N")
    common.add_argument("--heuristic", choices=HEURISTICS)
    common.add_argument("--algorithm", choices=ALGORITHMS)
    common.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, metavar="SECONDS")
    common.add_argument("--node-limit", type=int)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--output", metavar="FILE")
    common.add_argument("--timing", action="store_true", help="include wall-clock times")
    common.add_argument("--seed", type=int,
                        help="seed for fixture generation scripts; search is deterministic")

    parser = _Parser(prog="planrec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("plan", parents=[common], help="solve a STRIPS problem file")
    p.add_argument("problem")
    p.add_argument("--check", metavar="PLAN_FILE", help="validate a plan instead of searching")
    p.add_argument("--bound", help="inclusive cost bound")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("recognize", parents=[common], help="goal recognition")
    p.add_argument("theory", nargs="?")
    p.add_argument("--libraries", metavar="DIR")
    p.add_argument("--obs", metavar="FILE")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("parse", parents=[common], help="parse a sentence as plan recognition")
    p.add_argument("grammar")
    p.add_argument("sentence")
    p.add_argument("--allow-missing", action="store_true")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("compile", parents=[common], help="compile a library or grammar to STRIPS")
    p.add_argument("source")
    p.set_defaults(func=cmd_compile)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_BadInput, io.FormatError, GrammarError, InvalidLibraryError) as exc:
        print(f"planrec: bad input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"planrec: {exc}", file=sys.stderr)
        return EXIT_DATA
    except PlanningError as exc:
        print(f"planrec: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
