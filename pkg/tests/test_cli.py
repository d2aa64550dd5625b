import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from rosespec.cli import main
from rosespec.graph import build_rose, parse_graph6, write_graph6
from rosespec.invariants import LAPLACIAN, universal_char_poly
from rosespec.report import SCHEMA, Report, exact, parse_exact


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def reports(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_build(capsys):
    code, out = run(["build", "--rose", "3,4"], capsys)
    g = parse_graph6(out.strip())
    assert code == 0 and (g.n, g.m) == (6, 7)
    code, out = run(["build", "--rose", "3,3,3"], capsys)
    assert parse_graph6(out.strip()) == build_rose((3, 3, 3))


def test_usage_errors(capsys):
    for argv in (["build", "--rose", "2,3"], ["build"], ["spectrum", "A_", "--matrix", "1:0"],
                 ["nope"], ["spectrum", "A_", "--roots", "-1"], ["search", "--rose", "3,4", "--jobs", "0"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 64
    assert main(["verify-paper", "--nmax", "4"]) == 64
    assert main(["verify-paper", "--nmax", "10"]) == 64
    assert main(["spectrum", "D?"]) == 64
    assert main(["matchings", "A_", "x"]) == 64
    assert main(["search", "--rose", "5"]) == 64


def test_spectrum_roots(capsys):
    g6 = write_graph6(build_rose((3, 4)))
    code, out = run(["spectrum", g6, "--roots", "4"], capsys)
    (rep,) = reports(out)
    assert code == 0 and rep["schema"] == SCHEMA and rep["status"] == "ok"
    assert [int(c) for c in rep["outputs"]["char_poly"]] == [0, -72, 192, -176, 73, -14, 1]
    vals = [(r["value"], r["multiplicity"]) for r in rep["outputs"]["roots"]]
    assert vals == [("0.0000", "1"), ("0.7639", "1"), ("2.0000", "1"), ("3.0000", "2"), ("5.2360", "1")]


def test_spectrum_fig2_and_adjacency(capsys):
    code, out = run(["spectrum", write_graph6(build_rose((3, 5))), "--roots", "3"], capsys)
    shown = [r["value"] for r in reports(out)[0]["outputs"]["roots"]]
    assert {"0.608", "2.227", "5.164"} <= set(shown)
    code, out = run(["spectrum", "A_", "--matrix", "adjacency"], capsys)
    assert reports(out)[0]["outputs"]["char_poly"] == ["-1", "0", "1"]


def test_rational_matrix(capsys):
    code, out = run(["spectrum", "A_", "--matrix", "1/2:1"], capsys)
    # [[1/2, 1], [1, 1/2]] -> x^2 - x - 3/4
    assert reports(out)[0]["outputs"]["char_poly"] == ["-3/4", "-1", "1"]


def test_stdin_batch(capsys, monkeypatch):
    lines = "\n".join(write_graph6(build_rose(s)) for s in [(3, 3), (3, 4), (4, 4)]) + "\n"
    code, out = run(["spectrum"], capsys, lines, monkeypatch)
    reps = reports(out)
    assert code == 0 and len(reps) == 3
    assert [r["inputs"]["graph6"] for r in reps] == lines.split()


def test_invariants(capsys):
    code, out = run(["invariants", write_graph6(build_rose((3, 5))), "--k", "2"], capsys)
    (rep,) = reports(out)
    assert rep["outputs"]["spanning_trees"] == "15"
    assert rep["outputs"]["trace_check"] is True
    assert rep["outputs"]["degree_identities"]["sum_sq_holds"] is True


def test_sachs(capsys):
    code, out = run(["sachs", write_graph6(build_rose((3, 3)))], capsys)
    (rep,) = reports(out)
    assert code == 0 and rep["outputs"]["coefficients"]["3"] == "-4"
    assert rep["outputs"]["coefficients"]["1"] == "0" and rep["outputs"]["agrees"]


def test_matchings(capsys):
    code, out = run(["matchings", "--rose", "3,3", "2"], capsys)
    (rep,) = reports(out)
    assert code == 0 and rep["outputs"]["count"] == "5" == rep["outputs"]["brute_force"]
    code, out = run(["matchings", "E?~o", "F?~v_", "2"], capsys)
    assert len(reports(out)) == 2


def test_enumerate_pipes_into_spectrum(capsys, monkeypatch):
    code, out = run(["enumerate", "4", "3"], capsys)
    got = [parse_graph6(x) for x in out.split()]
    assert sorted(max(g.degrees) for g in got) == [2, 3]  # P4 and the star
    code, out2 = run(["spectrum"], capsys, out, monkeypatch)
    assert len(reports(out2)) == 2


def test_search(capsys, tmp_path):
    code, out = run(["search", "--rose", "3,4", "--cross-validate", "--checkpoint-dir",
                     str(tmp_path)], capsys)
    (rep,) = reports(out)
    assert code == 0 and rep["outputs"]["cross_validated"] is True
    (mate,) = rep["outputs"]["mates"]
    g = parse_graph6(mate)
    assert universal_char_poly(g, LAPLACIAN) == universal_char_poly(build_rose((3, 4)), LAPLACIAN)
    code, out = run(["search", "--rose", "3,5", "--budget", "0"], capsys)
    assert code == 2 and reports(out)[0]["status"] == "incomplete"
    code, out = run(["search", "--rose", "3,4", "--no-prune"], capsys)
    assert reports(out)[0]["outputs"]["mates"] == [mate]


def test_verify_paper_small(capsys):
    code, out = run(["verify-paper", "--nmax", "5"], capsys)
    (rep,) = reports(out)
    assert code == 0 and rep["status"] == "ok"
    assert rep["outputs"]["determination"]["1:-1"]["nonzero"] == {}
    code, out = run(["verify-paper", "--nmax", "7", "--params", "laplacian,signless"], capsys)
    (rep,) = reports(out)
    assert code == 0
    assert rep["outputs"]["determination"]["1:-1"]["nonzero"] == {"R(3,4)": "1", "R(3,5)": "1"}
    assert rep["outputs"]["determination"]["1:1"]["passed"] is None


def test_verify_paper_budget(capsys):
    code, out = run(["verify-paper", "--nmax", "9", "--budget", "0"], capsys)
    assert code == 2 and reports(out)[0]["status"] == "incomplete"


def test_report_round_trip():
    rep = Report("x", {"graph6": "A_", "n": 2}, {"poly": universal_char_poly(build_rose((3, 4)), LAPLACIAN),
                                                  "r": Fraction(-3, 4), "big": 10 ** 40, "flag": True,
                                                  "nested": [{"a": 1}], "none": None},
                 timing={"seconds": "0.1"})
    back = Report.from_json(rep.to_json())
    assert back == rep and back.to_json() == rep.to_json()
    assert [parse_exact(c) for c in back.outputs["poly"]] == [0, -72, 192, -176, 73, -14, 1]
    assert parse_exact(back.outputs["r"]) == Fraction(-3, 4)
    assert parse_exact(back.outputs["big"]) == 10 ** 40
    with pytest.raises(TypeError):
        exact(0.5)
    with pytest.raises(ValueError):
        Report.from_json(json.dumps({"schema": "other/9"}))
    with pytest.raises(ValueError):
        Report("x", {}, {}, status="maybe")


def test_console_script_exit_codes():
    exe = [sys.executable, "-m", "rosespec.cli"]
    ok = subprocess.run(exe + ["build", "--rose", "3,4"], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout.strip() == write_graph6(build_rose((3, 4)))
    bad = subprocess.run(exe + ["verify-paper", "--nmax", "4"], capture_output=True, text=True)
    assert bad.returncode == 64 and "nmax" in bad.stderr
