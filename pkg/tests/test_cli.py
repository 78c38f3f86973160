import json

import pytest

from kappacalc.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from kappacalc.datafiles import bundled_dir
from kappacalc.polytope import cross_polytope, write_points

DATA = bundled_dir()


def run(args, capsys):
    code = main(args)
    return code, capsys.readouterr()


def test_ring_json_roundtrip(tmp_path, capsys):
    out = tmp_path / "ring.json"
    code, _ = run(["campedelli", "ring", "--json", str(out), "--quiet"], capsys)
    assert code == EXIT_OK
    report = json.loads(out.read_text())
    assert report["ok"] and report["results"]["hilbert_vector"][:7] == [1, 7, 29, 64, 29, 7, 1]
    assert all(c["status"] == "PASS" for c in report["checks"])


def test_emit_ideal(tmp_path, capsys):
    out = tmp_path / "ideal.json"
    code, _ = run(["campedelli", "ring", "--emit-ideal", str(out), "--quiet"], capsys)
    assert code == EXIT_OK
    ideal = json.loads(out.read_text())
    assert len(ideal["generators"]) == 224 and "provenance" in ideal


def test_kappa_command(capsys):
    code, cap = run(["campedelli", "kappa", "--max-l", "2"], capsys)
    assert code == EXIT_OK
    assert "2^4 kappa_2 as a class" in cap.out


@pytest.mark.parametrize("args", [
    ["campedelli", "kappa", "--max-l", "7"],
    ["campedelli", "invariants", "--group", "sl2"],
    ["polytope", "stats", "no-such-file.pts"],
    ["frobnicate"],
])
def test_usage_errors(args, capsys):
    assert run(args, capsys)[0] == EXIT_USAGE


def test_parse_error_names_line(tmp_path, capsys):
    bad = tmp_path / "bad.pts"
    bad.write_text("# header follows\ndim 2 count 2\n0 0\n1\n")
    code, cap = run(["polytope", "stats", str(bad)], capsys)
    assert code == EXIT_USAGE and ":4:" in cap.err


def test_polytope_stats_expectation(capsys):
    code, cap = run(["polytope", "stats", str(DATA / "hexagon.pts"), "--expect", "hexagon"], capsys)
    assert code == EXIT_OK and "FAIL" not in cap.out


def test_wrong_expectation_fails(capsys):
    code, _ = run(["polytope", "stats", str(DATA / "simplex4.pts"), "--expect", "cross4", "--quiet"], capsys)
    assert code == EXIT_FAIL


def test_stand_in_p4_data_is_not_accepted(tmp_path, monkeypatch, capsys):
    # a wrong polytope in the P4 slot must make the checks fail, never pass silently
    write_points(tmp_path / "p4.pts", cross_polytope(4).vertices)
    monkeypatch.setenv("KAPPACALC_DATA", str(tmp_path))
    code, _ = run(["polytope", "stats", str(tmp_path / "p4.pts"), "--expect", "p4", "--quiet"], capsys)
    assert code == EXIT_FAIL
    code, _ = run(["burniat", "kappa", "--quiet"], capsys)
    assert code == EXIT_FAIL  # toric quartic now computed from the stand-in volume


def test_minkowski_and_ehrhart(tmp_path, capsys):
    out = tmp_path / "m.json"
    code, _ = run(["polytope", "minkowski", str(DATA / "hexagon.pts"), str(DATA / "hexagon.pts"),
                   "--scale", "3", "--json", str(out), "--quiet"], capsys)
    assert code == EXIT_OK and json.loads(out.read_text())["results"]["f_vector"] == [1, 6, 6, 1]
    code, cap = run(["polytope", "ehrhart", str(DATA / "hexagon.pts"), "--dilation", "2"], capsys)
    assert code == EXIT_OK


def test_burniat_reports_kappa2_skipped(tmp_path, capsys):
    out = tmp_path / "b.json"
    code, _ = run(["burniat", "kappa", "--json", str(out), "--quiet"], capsys)
    assert code == EXIT_OK
    checks = {c["name"]: c["status"] for c in json.loads(out.read_text())["checks"]}
    assert checks["kappa_2"] == "SKIPPED"
    assert checks["kappa_1 degree on a boundary curve"] == "PASS"


def test_burniat_with_ledger(tmp_path, capsys):
    ledger = {"ambient_dim": 4, "base_value": "63/8",
              "steps": [{"codim": 2, "multiplicity": "1/2", "center_numbers": {"2,0": "1"}}]}
    path = tmp_path / "l.json"
    path.write_text(json.dumps(ledger))
    code, cap = run(["burniat", "kappa", "--ledger", str(path)], capsys)
    assert code == EXIT_USAGE and "'1,1'" in cap.err  # missing centre datum is named
    ledger["steps"][0]["center_numbers"].update({"1,1": "0", "0,2": "0"})
    path.write_text(json.dumps(ledger))
    code, cap = run(["burniat", "kappa", "--ledger", str(path)], capsys)
    assert code == EXIT_FAIL  # a made-up chain does not reach 47/4
