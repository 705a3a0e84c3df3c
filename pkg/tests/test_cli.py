import json

import pytest

from sandwich.cli import Report, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_idempotents_is(capsys):
    code, out, _ = run(capsys, "idempotents", "IS", "3", "[2,-,1]")
    assert code == 0
    assert "count: 4" in out and "formula: 4" in out and "verdict: PASS" in out


def test_idempotents_bicyclic_chain(capsys):
    code, out, _ = run(capsys, "idempotents", "B", "b^2 a^1", "--chain", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["payload"]["idempotents"] == ["b^1 a^2", "b^2 a^3", "b^3 a^4"]


def test_idempotents_t(capsys):
    code, out, _ = run(capsys, "--format", "json", "idempotents", "T", "2", "[1,1]")
    assert code == 0
    assert json.loads(out)["payload"]["idempotents"] == ["[1,1]", "[2,2]"]


@pytest.mark.parametrize("fam, n, classes", [("IS", 3, 4), ("T", 3, 3), ("T", 4, 5)])
def test_classify(capsys, fam, n, classes):
    code, out, _ = run(capsys, "classify", fam, str(n), "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["payload"]["classes"] == classes


def test_classify_t3_sizes(capsys):
    _, out, _ = run(capsys, "classify", "T", "3", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "type,partition,representative,elements,count_of_type"
    assert sorted(int(l.split(",")[-2]) for l in lines[1:]) == [3, 6, 18]


def test_witness_ok(capsys):
    code, out, _ = run(capsys, "witness", "IS", "2", "[2,-]", "[-,2]", "--full-check")
    assert code == 0
    assert "tau: [2,1]" in out and "pi: [1,2]" in out
    code, _, _ = run(capsys, "witness", "T", "3", "[1,1,2]", "[3,2,2]", "--full-check")
    assert code == 0


def test_witness_mismatch_exit_code(capsys):
    code, _, err = run(capsys, "witness", "T", "3", "[1,1,2]", "[1,2,3]")
    assert code == 1
    assert "type mismatch (1,1,0) vs (3,0,0)" in err
    code, _, err = run(capsys, "witness", "IS", "2", "[1,-]", "[1,2]")
    assert code == 1 and "rank" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("witness", "T", "3", "[1,1]", "[1,1,1]"),
        ("idempotents", "IS", "3", "[x]"),
        ("idempotents", "B", "c^2"),
        ("verify", "nosuch"),
        ("classify", "T", "7"),
        ("count", "16"),
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["classify", "X", "3"])
    assert e.value.code == 2


def test_cap_override_warns(capsys):
    code, _, err = run(capsys, "classify", "T", "5", "--cap", "6")
    assert code == 0 and "warning" in err


@pytest.mark.parametrize(
    "argv, needle",
    [
        (("verify", "lemma1", "--n", "4"), "[209 checked]"),
        (("verify", "thm3", "--grid", "5"), "36 sandwich elements"),
        (("verify", "type-recovery", "--n", "4"), "256 round-trips"),
        (("verify", "prop2"), "verdict: PASS"),
        (("verify", "thm4", "--samples", "100"), "verdict: PASS"),
        (("verify", "oracle-crosscheck", "--samples", "10"), "verdict: PASS"),
        (("verify", "lemma2-eq1", "--n", "3"), "verdict: PASS"),
        (("verify", "thm1", "--n", "2"), "verdict: PASS"),
        (("verify", "thm2", "--n", "2", "--samples", "2"), "verdict: PASS"),
        (("verify", "prop1", "--n", "4"), "verdict: PASS"),
    ],
)
def test_verify(capsys, argv, needle):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert needle in out


def test_verify_parallel_jobs(capsys):
    code, out, _ = run(capsys, "verify", "type-recovery", "--n", "3", "--jobs", "2")
    assert code == 0 and "27 round-trips" in out


def test_count(capsys):
    code, out, _ = run(capsys, "count", "3", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert [r["count"] for r in rep["rows"]] == [3, 18, 6]
    assert rep["payload"]["total"] == 27 and rep["payload"]["p_n"] == 3
    _, out, _ = run(capsys, "count", "1", "--format", "json")
    assert json.loads(out)["rows"] == [{"partition": "1", "type": "(1)", "count": 1}]
    _, out, _ = run(capsys, "count", "4", "--format", "json")
    assert json.loads(out)["payload"] == {"total": 256, "classes": 5, "p_n": 5}


def test_report_json_round_trip(capsys):
    _, out, _ = run(capsys, "classify", "IS", "2", "--format", "json")
    rep = Report.from_json(out)
    assert Report.from_json(rep.to_json()) == rep
    assert rep.payload["classes"] == 3


def test_text_and_json_carry_same_data(capsys):
    _, js, _ = run(capsys, "count", "4", "--format", "json", "--seed", "1")
    rep = Report.from_json(js)
    text = rep.to_text()
    for row in rep.rows:
        assert row["type"] in text and str(row["count"]) in text
    for c in rep.checks:
        assert c["name"] in text


def test_failing_report_exit_code():
    r = Report("x")
    r.add_check("bad", False, 1, counterexample="here")
    assert not r.passed
    assert "FAIL  bad" in r.to_text() and "counterexample: here" in r.to_text()


def test_verify_failure_exit_code(capsys, monkeypatch):
    from sandwich import cli
    from sandwich.verify import Check

    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: [Check("forced", False, 1, "", "x=1")])
    code, out, _ = run(capsys, "verify", "thm3")
    assert code == 1
    assert "FAIL  forced" in out and "counterexample: x=1" in out
