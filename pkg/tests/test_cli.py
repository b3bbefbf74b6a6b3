import json
from pathlib import Path

import pytest

from effectus.cli import main

EXPERIMENTS = Path(__file__).resolve().parent.parent / "scripts" / "experiments"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def write(tmp_path, doc, name="exp.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_hadamard_disturbance_table(capsys):
    code, out = run(capsys, "run-experiment", str(EXPERIMENTS / "hadamard_disturbance.json"))
    assert code == 0
    rows = {tuple(line.split("\t")[:3]): float(line.split("\t")[3])
            for line in out.splitlines() if line.count("\t") == 3 and not line.startswith("o")}
    assert rows[("0", "H", "1")] == pytest.approx(0.25, abs=1e-9)


def test_hadamard_json_output(capsys):
    code, out = run(capsys, "run-experiment", "--format", "json",
                    str(EXPERIMENTS / "hadamard_disturbance.json"))
    doc = json.loads(out)
    assert code == 0 and doc["instance"] == "quantum"
    assert [r["query"] for r in doc["results"]] == ["joint", "marginal:0,2",
                                                    "conditional:2|0=0"]


def test_coin_flip(capsys):
    code, out = run(capsys, "run-experiment", str(EXPERIMENTS / "coin_flip.json"))
    assert code == 0
    assert "heads\t1/2" in out and "tails\t1/2" in out


def test_ill_typed_experiment_exits_3(capsys):
    assert main(["run-experiment", str(EXPERIMENTS / "ill_typed.json")]) == 3


def test_instance_flag_mismatch_exits_3(capsys):
    assert main(["run-experiment", "--instance", "pfn",
                 str(EXPERIMENTS / "coin_flip.json")]) == 3


def test_malformed_json_exits_2(tmp_path):
    assert main(["run-experiment", write(tmp_path, "{not json")]) == 2


def test_missing_key_exits_2(tmp_path):
    assert main(["run-experiment", write(tmp_path, {"instance": "prob", "object": 2})]) == 2


def test_unknown_suite_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["check-laws", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_unnormalized_quantum_channel_exits_4(tmp_path):
    doc = json.loads((EXPERIMENTS / "hadamard_disturbance.json").read_text())
    doc["steps"][1]["kraus"] = [[[[0.7071067811865476 + 1e-5, 0.7071067811865476],
                                  [0.7071067811865476, -0.7071067811865476]]]]
    assert main(["run-experiment", write(tmp_path, doc)]) == 4


def test_output_is_deterministic(capsys):
    args = ["check-laws", "--suite", "duality", "--instance", "prob", "--seed", "7"]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second and first[0] == 0


def test_invalid_algebra_file_exits_1(tmp_path, capsys):
    doc = {"carrier": 4, "zero": 0, "top": 3,
           "sum": [[0, 1, 2, 3], [1, 3, 3, None], [2, 3, None, None], [3, None, None, None]]}
    code, out = run(capsys, "check-laws", "--suite", "algebra",
                    "--algebra-file", write(tmp_path, doc, "alg.json"))
    assert code == 1 and "FAIL" in out


def test_valid_algebra_file_passes(tmp_path, capsys):
    from effectus.algebra import finite
    path = write(tmp_path, finite.grid(3).to_json(), "alg.json")
    code, out = run(capsys, "check-laws", "--suite", "algebra", "--algebra-file", path)
    assert code == 0 and out.strip().endswith("# PASS")


def test_check_laws_json_report(capsys):
    code, out = run(capsys, "check-laws", "--suite", "totalization", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert {"suite", "passed", "laws"} <= set(doc["reports"][0])
