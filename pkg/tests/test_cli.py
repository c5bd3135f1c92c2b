import json
import subprocess
import sys
from importlib import resources

import pytest

from planrec import io
from planrec.cli import main
from planrec.fixtures import corridor_theory, soccer_libraries
from planrec.library import library_to_dict
from planrec.strips import validate_plan

DATA = resources.files("planrec.data")


def data(name):
    return str(DATA.joinpath(name))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_plan_solvable(capsys):
    code, out, _ = run(capsys, "plan", data("grid_problem.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "solved" and doc["cost"] == 6
    problem = io.load_problem(data("grid_problem.json"))
    assert validate_plan(problem, doc["plan"]).valid


def test_plan_unreachable(capsys):
    code, out, _ = run(capsys, "plan", data("unreachable_problem.json"))
    assert code == 1
    assert json.loads(out)["status"] == "unsolvable"


def test_plan_node_limit(capsys):
    code, _, _ = run(capsys, "plan", data("grid_problem.json"), "--node-limit", "1")
    assert code == 2


def test_plan_check_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "plan.json"
    assert run(capsys, "plan", data("grid_problem.json"), "--algorithm", "gbfs",
               "--heuristic", "ff", "--output", out_file)[0] == 0
    code, out, _ = run(capsys, "plan", data("grid_problem.json"), "--check", out_file)
    assert code == 0 and json.loads(out)["valid"]
    out_file.write_text(json.dumps({"plan": ["move(A,B)", "move(A,B)"]}))
    code, out, _ = run(capsys, "plan", data("grid_problem.json"), "--check", out_file)
    assert code == 1 and json.loads(out)["error"] == "step-not-applicable(2)"


def test_usage_and_input_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["plan", "x.json", "--heuristic", "nope"])
    assert exc.value.code == 64
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "plan", bad)[0] == 65
    bad.write_text(json.dumps({"fluents": ["p"], "init": ["q"], "actions": [], "goal": ["p"]}))
    assert run(capsys, "plan", bad)[0] == 65
    assert run(capsys, "plan", tmp_path / "missing.json")[0] == 65


def test_recognize_theory(capsys):
    code, out, _ = run(capsys, "recognize", data("corridor.json"))
    assert code == 0
    goals = {g["name"]: g["verdict"] for g in json.loads(out)["goals"]}
    assert goals == {"at(B)": "rejected", "at(D)": "recognized"}


def test_recognize_without_observations(capsys):
    code, out, _ = run(capsys, "recognize", data("corridor_no_obs.json"))
    assert code == 0
    assert all(g["verdict"] == "recognized" for g in json.loads(out)["goals"])


def test_recognize_libraries(capsys):
    code, out, _ = run(capsys, "recognize", "--libraries", data("soccer"),
                       "--obs", data("soccer_obs/seq1.json"))
    assert code == 0
    got = sorted(g["name"] for g in json.loads(out)["goals"] if g["verdict"] == "recognized")
    assert got == ["flank-attack", "frontal-attack"]


def test_recognize_libraries_plain_text_obs(capsys, tmp_path):
    obs = tmp_path / "obs.txt"
    obs.write_text("run-forward kick\n")
    code, out, _ = run(capsys, "recognize", "--libraries", data("soccer"), "--obs", obs, "--jobs", 2)
    assert code == 0 and len(json.loads(out)["goals"]) == 4


def test_parse_commands(capsys):
    code, out, _ = run(capsys, "parse", data("toy_english.cfg"), "Jack ate my cookie")
    assert code == 0 and json.loads(out)["verdict"] == "accepted"
    code, out, _ = run(capsys, "parse", data("toy_english.cfg"), "Jack my cookie", "--allow-missing")
    doc = json.loads(out)
    assert doc["verdict"] == "accepted-with-interpolation"
    assert doc["inserted"][0]["symbol"] in {"saw", "ate", "ran"}
    code, out, _ = run(capsys, "parse", data("toy_english.cfg"), "ate the blorf")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "rejected"
    assert doc["diagnostics"] == ["unknown-token(blorf)"]


def test_compile_single_rule_counts(capsys, tmp_path):
    g = tmp_path / "s.cfg"
    g.write_text("S -> a\n")
    code, out, _ = run(capsys, "compile", g, "--depth", 2)
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"] == {"nodes": 3, "fluents": 25, "actions": 10, "depth": 2}
    problem = io.problem_from_dict(doc["problem"])
    assert len(problem.actions) == 10


def test_compile_library_to_file(capsys, tmp_path):
    lib_file = tmp_path / "lib.json"
    lib_file.write_text(io.dump(library_to_dict(soccer_libraries()["fall-back"])))
    out_file = tmp_path / "problem.json"
    code, out, _ = run(capsys, "compile", lib_file, "--depth", 4, "--output", out_file)
    assert code == 0
    summary = json.loads(out)
    problem = io.load_problem(out_file)
    assert summary["actions"] == len(problem.actions)
    assert summary["fluents"] == len(problem.fluents)


def test_output_is_byte_stable(capsys):
    runs = [run(capsys, "recognize", data("grid.json"))[1] for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [run(capsys, "parse", data("toy_english.cfg"), "Jack my cookie", "--allow-missing")[1]
            for _ in range(2)]
    assert runs[0] == runs[1]


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "plan", data("grid_problem.json"), "--timing")
    assert "time_ms" in json.loads(out)["stats"]


def test_theory_roundtrip():
    t = corridor_theory()
    assert io.theory_from_dict(io.theory_to_dict(t)) == t


def test_problem_roundtrip_keeps_negation_and_costs():
    doc = {"fluents": ["p", "q"], "init": [], "goal": ["q"],
           "actions": [{"name": "a", "pre": ["!p"], "add": ["q"], "cost": 0.5}]}
    p = io.problem_from_dict(doc)
    assert p.actions[0].neg_pre == {"p"}
    assert io.problem_from_dict(io.problem_to_dict(p)) == p


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "planrec", "plan", data("grid_problem.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["status"] == "solved"
