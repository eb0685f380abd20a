import io
import json

import pytest

from cpgroups.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_json():
    code, out, err = call("analyze", "--word", "x0 x2 x1^-1", "--n", "12", "--format", "json")
    assert code == 0 and err == ""
    data = json.loads(out)
    assert data["betti"] == 2 and data["gamma"] == "1"
    assert list(data) == sorted(data)


def test_analyze_text_and_matrix():
    code, out, _ = call("analyze", "--word", "x0 x2 x1^-1", "--n", "6", "--dump-matrix")
    assert code == 0 and "Z^2" in out and "  1  -1   1   0   0   0" in out


def test_big_gamma_is_a_decimal_string():
    code, out, _ = call("analyze", "--word", "x0^3", "--n", "40", "--format", "json")
    assert json.loads(out)["gamma"] == str(3**40)


def test_family_hrns():
    code, out, _ = call("family", "hrns", "--r", "2", "--n", "6", "--s", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["gamma"] == "16" and not data["free_abelian"]
    code, out, _ = call("family", "hrns", "--r", "2", "--n", "6", "--s", "4")
    assert "free abelian        no" in out


@pytest.mark.parametrize("argv", [
    ("family", "gnmk", "--n", "7", "--m", "3", "--k", "1"),
    ("family", "gilbert-howie", "--n", "12", "--m", "8"),
    ("family", "prishchepov", "--r", "4", "--n", "10", "--k", "3", "--s", "2", "--q", "7"),
])
def test_family_other(argv):
    code, out, _ = call(*argv, "--format", "json")
    assert code == 0 and json.loads(out)


def test_family_bad_congruence_is_reported():
    code, out, err = call("family", "gnmk", "--n", "6", "--m", "2", "--k", "4")
    assert code == 0 and "irreducible     no" in out
    code, _, err = call("family", "gilbert-howie", "--n", "5", "--m", "7")
    assert code == 1 and "error" in err


def test_scan_conjecture_exit_zero():
    code, out, _ = call("scan", "conjecture53", "--max-n", "36", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["hits"] == [] and data["stats"]["candidates"] == 15


def test_scan_free_abelian_csv():
    code, out, _ = call("--threads", "2", "scan", "free-abelian", "--word", "x0 x1", "--max-n", "6", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,betti,gamma_or_digits,hit" and lines[2] == "2,1,1,1"


def test_scan_text():
    code, out, _ = call("scan", "perfect", "--word", "x0 x2 x1^-1", "--max-n", "12")
    assert "hits: 1, 5, 7, 11" in out and "scanned range only" in out


def test_sieradski_log_formats():
    code, out, _ = call("sieradski-log", "--l", "1")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = call("sieradski-log", "--l", "2", "--format", "json")
    assert len(json.loads(out)["edges"]) == 8


def test_mahler():
    code, out, _ = call("mahler", "--poly", "t^2 - t - 1")
    assert code == 0 and out.startswith("M(t^2 - t - 1) = 1.6180339887")


@pytest.mark.parametrize("argv,grammar", [
    (("analyze", "--word", "x0 y1", "--n", "3"), "word :="),
    (("analyze", "--word", "", "--n", "3"), "word :="),
    (("mahler", "--poly", "t^^2"), "poly :="),
])
def test_parse_errors_echo_grammar(argv, grammar):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and grammar in err


@pytest.mark.parametrize("argv", [
    ("analyze", "--n", "3"),
    ("analyze", "--word", "x0", "--n", "0"),
    ("bogus",),
    ("scan", "conjecture53", "--max-n", "4"),
    ("mahler", "--poly", "5"),
    ("verify", "nope"),
])
def test_usage_errors_exit_one(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err


def test_verify_quick_suites():
    code, out, _ = call("verify", "sieradski")
    assert code == 0 and out.count("PASS") == 2
    code, out, _ = call("verify", "all", "--quick")
    assert code == 0 and "FAIL" not in out


def test_verify_failure_exit_two(monkeypatch):
    from cpgroups import verify
    from cpgroups.verify import CheckResult

    def broken(quick):
        c = CheckResult("always fails")
        c.record(False, "instance")
        return [c]

    monkeypatch.setitem(verify.SUITES, "growth", broken)
    code, out, _ = call("verify", "growth")
    assert code == 2 and "FAIL always fails" in out and "first failure: instance" in out


def test_conjecture_hit_exit_two(monkeypatch):
    from cpgroups import search

    real = search.scan_gilbert_howie_conjecture

    def fake(*a, **kw):
        rep = real(*a, **kw)
        rep.hits = ((12, 8),)
        return rep

    monkeypatch.setattr(search, "scan_gilbert_howie_conjecture", fake)
    code, _, _ = call("scan", "conjecture53", "--max-n", "12")
    assert code == 2


def test_output_file(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = call("-o", str(target), "analyze", "--word", "x0", "--n", "2", "--format", "json")
    assert code == 0 and out == "" and json.loads(target.read_text())["gamma"] == "1"
