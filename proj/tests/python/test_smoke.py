"""Smoke tests for the python module: load systems, check rules, compare
terms, replay certificates."""

import os
import pathlib

import horco

DATA = pathlib.Path(os.environ.get("HORCO_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def load(name, **kwargs):
    return horco.load_system((DATA / name).read_text(), **kwargs)


def test_goedel_oriented():
    sys = load("goedel_t.trs", acc="base")
    report = sys.check()
    assert report["overall"] == "oriented"
    assert len(report["rules"]) == 2
    for entry in report["rules"]:
        assert entry["status"] == "oriented"
        assert entry["certificate"]["root"] == "rule"
        assert entry["certificate"]["nodes"] >= 1


def test_mendler_rejected():
    report = load("mendler.trs").check()
    assert report["overall"] == "not-oriented"
    assert report["rules"][0]["status"] == "not-oriented"


def test_process_depends_on_call_order():
    assert load("process.trs").check()["overall"] == "oriented"
    assert load("process.trs", call_order="subterm").check()["overall"] == "not-oriented"


def test_theory_checks():
    assert load("comm_theory.trs").check()["overall"] == "oriented"
    bad = load("collapsing_theory.trs").check()
    assert any("CollapsingTheoryRule" in issue for issue in bad["issues"])


def test_compare_and_certificates():
    sys = load("goedel_t.trs", acc="base")
    assert sys.compare("horpo", "rec (s x) u v", "v x (rec x u v)") == "yes"
    assert sys.compare("rpo", "s (s x)", "s x") == "yes"
    assert sys.compare("horco", "rec 0 u v", "u") == "yes"
    assert sys.compare("horco", "u", "rec 0 u v") == "no"
    assert sys.validate_rule_certificate(0)
    assert sys.validate_rule_certificate(1)


def test_accessible_args_and_patterns():
    proc = load("process.trs")
    assert proc.accessible_args("choice", "positive") == [1]
    assert proc.accessible_args("choice", "base") == []
    assert proc.accessible_args("seq") == [1, 2]

    diff = load("diff_patterns.trs", patterns=True)
    assert diff.is_miller_pattern("d (\\x. sin (F x))")
    assert not diff.is_miller_pattern("d (\\x. F x x)")
    assert diff.check()["overall"] == "oriented"


def test_pretty_round_trip():
    sys = load("goedel_t.trs")
    text = sys.pretty()
    again = horco.load_system(text)
    assert again.pretty() == text


def test_errors_surface_as_exceptions():
    import pytest

    with pytest.raises(horco.HorcoError):
        horco.load_system("sig\n f : A ->\n")
