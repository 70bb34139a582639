import io
import json
import re

import pytest

from algint.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_decide_pullback_certificate(corpus_dir):
    code, out, _ = call("decide", str(corpus_dir / "x6plus1.prob"))
    assert code == 0
    assert out.startswith("answer: YES\n")
    assert "      coefficient: 1\n" in out
    assert "u = x^2" in out
    assert "  ok: True\n" in out


def test_exact_subcommand():
    assert call("exact", "2*x dx on line")[:2] == (0, "exact: primitive x^2\n")
    code, out, _ = call("exact", "1/x dx on line")
    assert code == 1 and out.startswith("inexact: witness residue")


def test_decide_no_and_budget_exit_codes(corpus_dir):
    assert call("decide", str(corpus_dir / "firstkind_vs_logs.prob"), "--no-check")[0] == 1
    assert call("decide", str(corpus_dir / "x5plus1_elliptic.prob"), "--no-check")[0] == 2


def test_parse_error_location(tmp_path):
    bad = tmp_path / "bad.prob"
    bad.write_text("[curves]\nX: y^2 = x^3 + * 1\n")
    code, _, err = call("decide", str(bad))
    assert code == 3
    assert re.match(rf"error: {re.escape(str(bad))}:2:\d+: ", err)
    assert call("decide", str(tmp_path / "missing.prob"))[0] == 3
    assert call("frobnicate")[0] == 3


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_verify_round_trip_and_tamper(corpus_dir, tmp_path, fmt):
    prob = str(corpus_dir / "x6plus1.prob")
    cert = tmp_path / "cert"
    extra = ["--json"] if fmt == "json" else []
    assert call("decide", prob, "--no-check", "--out", str(cert), *extra)[0] == 0
    code, out, _ = call("verify", prob, str(cert))
    assert (code, out) == (0, "accepted: YES\n")

    doc = cert.read_text()
    if fmt == "json":
        tree = json.loads(doc)
        tree["certificate"]["terms"]["t01"]["coefficient"] = "2"
        cert.write_text(json.dumps(tree))
    else:
        cert.write_text(doc.replace("coefficient: 1", "coefficient: 2"))
    code, out, _ = call("verify", prob, str(cert))
    assert code == 1 and out.startswith("rejected:")


def test_verify_catches_false_identity_with_fresh_hash(corpus_dir, tmp_path):
    from algint.cli.document import replay_hash

    prob = str(corpus_dir / "x6plus1.prob")
    cert = tmp_path / "cert.json"
    call("decide", prob, "--no-check", "--json", "--out", str(cert))
    tree = json.loads(cert.read_text())
    tree["certificate"]["terms"]["t01"]["coefficient"] = "2"
    tree["replay_hash"] = replay_hash(tree)
    cert.write_text(json.dumps(tree))
    code, out, _ = call("verify", prob, str(cert))
    assert code == 1 and "identity" in out


def test_json_matches_text(corpus_dir):
    prob = str(corpus_dir / "log_rational.prob")
    _, text, _ = call("decide", prob, "--no-check")
    _, js, _ = call("decide", prob, "--no-check", "--json")
    tree = json.loads(js)
    assert text.startswith(f"answer: {tree['answer']}\n")
    assert f"replay_hash: {tree['replay_hash']}" in text


def test_trace_residues_mw(corpus_dir):
    code, out, _ = call("trace", str(corpus_dir / "x6plus1.prob"), "--corr", "Z1", "--form", "w1")
    assert code == 0 and out == "(((x)/(x^6 + 1))*y) dx\n"
    code, out, _ = call("residues", "1/(x^2 + 1) dx on line")
    assert code == 0 and "(-1/2*t) in residue field" in out
    code, out, _ = call("mw", "y^2 = x^3 + 1", "--points", "(2,3) (0,1)")
    assert code == 0 and "torsion: (6,)" in out and "status: COMPLETE" in out
    assert call("mw", "y^2 = x^3 + 1", "--points", "(2,4)")[0] == 3


def test_periods_respect_digits(monkeypatch):
    monkeypatch.setenv("ALGINT_DIGITS", "35")
    code, out, _ = call("periods", "1/y dx on y^2 = x^3 - x")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "cycle 1: 5.24411510858423962092967917978"
    assert lines[1] == "cycle 2: (0.0 + 5.24411510858423962092967917978j)"
