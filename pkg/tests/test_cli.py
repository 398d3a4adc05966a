from __future__ import annotations

import json
import shutil
import subprocess
from pathlib import Path

import pytest

from qre import golden
from qre.cli import EXIT_FAIL, EXIT_OK, EXIT_PARSE, EXIT_USAGE, main

DATA = Path(__file__).resolve().parents[1] / "src" / "qre" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hecke_suite(capsys):
    code, out, _ = run(capsys, "hecke")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["schema"] == "1.0" and doc["suite"] == "hecke"
    assert doc["summary"]["fail"] == 0
    assert [c["id"] for c in doc["checks"]] == sorted(c["id"] for c in doc["checks"])


def test_non_hecke_matrix_fails_with_witness(capsys):
    code, out, err = run(capsys, "hecke", "--rmatrix", str(DATA / "flip2.rm"))
    assert code == EXIT_FAIL
    assert "FAIL hecke.hecke" in err and "witness" in err
    doc = json.loads(out)
    failed = [c for c in doc["checks"] if c["status"] == "fail"]
    assert failed and "witness" in failed[0]


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.rm"
    bad.write_text("n = 2\n0 0 = q +\n")
    assert run(capsys, "hecke", "--rmatrix", str(bad))[0] == EXIT_PARSE
    assert run(capsys, "sphere", "--c", "q +")[0] == EXIT_PARSE
    pres = tmp_path / "bad.pres"
    pres.write_text("[generators]\nx\n[relations]\nx*y\n")
    assert run(capsys, "re", "--presentation", str(pres))[0] == EXIT_PARSE


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["hecke", "--bogus"],
    ["re", "--degree", "1"],
    ["forms", "--level", "1"],
    ["hecke", "--rmatrix", "/nonexistent/file.rm"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_reports_are_deterministic(capsys):
    _, a, _ = run(capsys, "re", "--trace", "--ch")
    _, b, _ = run(capsys, "re", "--trace", "--ch")
    assert a == b
    ids = [c["id"] for c in json.loads(a)["checks"]]
    assert ids == ["re.ch", "re.ch_classical", "re.ch_hbar", "re.trace", "re.trace_control"]


def test_timings_are_opt_in(capsys):
    _, plain, _ = run(capsys, "hecke")
    _, timed, _ = run(capsys, "hecke", "--timings")
    assert "seconds" not in plain and "seconds" in timed


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "hecke", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["suite"] == "hecke"


def test_degree_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QRE_DEGREE", "5")
    _, out, _ = run(capsys, "hecke")
    assert json.loads(out)["env"]["degree"] == 5
    _, out, _ = run(capsys, "hecke", "--degree", "7")
    assert json.loads(out)["env"]["degree"] == 7


def test_sphere_selection(capsys):
    code, out, _ = run(capsys, "sphere", "--ch-plus")
    ids = {c["id"] for c in json.loads(out)["checks"]}
    assert code == EXIT_OK
    assert ids and all(i.startswith("sphere.ch_plus") for i in ids)


def test_sphere_ext_profile(capsys):
    code, out, _ = run(capsys, "sphere", "--projectors", "--profile", "ext-roots")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert {c["id"] for c in doc["checks"]} == {"sphere.projectors[c=1]", "sphere.projectors[c=2]"}


def test_module_check_at_non_root(capsys):
    code, out, _ = run(capsys, "sphere", "--module-check", "5")
    assert code == EXIT_FAIL
    check = json.loads(out)["checks"][0]
    assert check["details"]["dims"] == [0, 0, 0, 0]


def test_forms_report_has_level_tables(capsys):
    code, out, _ = run(capsys, "forms", "--decompose", "--omega", "1", "--level", "4", "--cohomology",
                       "--draws", "2")
    doc = json.loads(out)
    assert code == EXIT_OK
    by_id = {c["id"]: c for c in doc["checks"]}
    assert by_id["forms.omega1"]["details"]["levels"][1] == {"1": 1, "2": 1}
    assert by_id["forms.cohomology"]["details"]["dims"] == [1, 0, 1]


def test_presentation_file(capsys):
    code, out, _ = run(capsys, "re", "--presentation", str(DATA / "re2.pres"))
    check = json.loads(out)["checks"][0]
    assert code == EXIT_OK
    assert check["details"]["graded_dims"] == [1, 4, 10, 20, 35, 56, 84]


def test_rtt_powers(capsys):
    code, out, _ = run(capsys, "rtt", "--k", "2")
    ids = {c["id"] for c in json.loads(out)["checks"]}
    assert code == EXIT_OK and "rtt.power_2" in ids and "rtt.power_3" not in ids


def test_n3_skips_n2_only_suites(capsys):
    code, out, _ = run(capsys, "rtt", "--n", "3")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["summary"]["skip"] == 1


def test_golden_update_writes_provenance(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(golden, "GOLDEN_DIR", tmp_path)
    code, out, _ = run(capsys, "re", "--trace", "--golden-update")
    assert code == EXIT_OK
    doc = json.loads((tmp_path / "trace_D.json").read_text())
    assert doc["provenance"] == "linear solve for D, degree 2, n=2"
    assert doc["value"] == ["1", "q^2"]
    assert golden.compare_or_update("trace_D", ["1", "q^2"], "x") == "match"
    assert golden.compare_or_update("trace_D", ["1", "q"], "x") == "mismatch"
    assert golden.compare_or_update("absent", [], "x") == "missing"


def test_golden_mismatch_fails(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(golden, "GOLDEN_DIR", tmp_path)
    golden.write("trace_D", ["1", "q"], "tampered")
    assert run(capsys, "re", "--trace")[0] == EXIT_FAIL


@pytest.mark.skipif(shutil.which("qre") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["qre", "hecke", "--n", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["env"]["n"] == 3


def test_all_suites_pass_and_are_reproducible(capsys):
    code, first, _ = run(capsys, "all", "--n", "2", "--degree", "6")
    _, second, _ = run(capsys, "all", "--n", "2", "--degree", "6")
    doc = json.loads(first)
    assert code == EXIT_OK and doc["summary"]["fail"] == 0
    assert first == second
    ids = [c["id"] for c in doc["checks"]]
    assert len(ids) == len(set(ids))
    refs = {}
    for c in doc["checks"]:
        refs.setdefault(c["id"], set()).add(c["ref"])
    assert all(len(r) == 1 and next(iter(r)) for r in refs.values())
