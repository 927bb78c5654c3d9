import os
import pathlib

import pytest

import logicbench

DATA = pathlib.Path(os.environ.get("LOGICBENCH_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_corpus_is_listed():
    names = logicbench.corpus_names()
    assert {"P1", "P3", "P3_CONTROL", "P31", "P32"} <= set(names)
    assert "sat_cnf([])." in logicbench.corpus_source("P1")
    assert "S3_0" in logicbench.spec_names()


def test_solve_keeps_query_variables():
    out = logicbench.solve("corpus:P1", "sat_cnf([[true-X,false-Y],[false-X]])", max_answers=1)
    assert out["answers"]
    assert "X" in out["answers"][0]["substitution"]


def test_solve_on_program_text():
    out = logicbench.solve("p(a). p(b).", "p(X)")
    assert out["exhaustive"]
    assert len(out["answers"]) == 2


def test_parse_error_is_a_value_error():
    with pytest.raises(ValueError):
        logicbench.solve("p(a", "p(X)")


def test_sat_matches_brute_force():
    text = (DATA / "two_clauses.cnf").read_text()
    for variant in ("p1", "p3", "p3-control", "cssld"):
        assert logicbench.sat(text, variant=variant)["status"] == "SAT"
    assert logicbench.sat("p cnf 1 2\n1 0\n-1 0\n")["status"] == "UNSAT"
    assert logicbench.sat("p cnf 1 2\n1 0\n-1 0\n", variant="brute-force")["status"] == "UNSAT"


def test_bad_dimacs():
    with pytest.raises(ValueError):
        logicbench.sat("p cnf 1 1\n2 0\n")


def test_checks():
    assert logicbench.check("correctness", "corpus:P1", spec="S1")["verdict"] == "PASS"
    assert logicbench.check("correctness", "corpus:P1_BUGGY", spec="S1")["verdict"] == "FAIL"
    assert logicbench.check("coverage", "corpus:P3", spec="S2")["verdict"] == "FAIL"
    assert logicbench.check("recurrence", "corpus:P1", mapping="p1")["verdict"] == "PASS"
    assert logicbench.check("cssld", ["corpus:P31", "corpus:P32"], spec="S3_0")["verdict"] == "PASS"


def test_diagnose():
    d = logicbench.diagnose("wrong-answer", "corpus:P1_BUGGY", "sat_cl([a|true-true])", spec="S1")
    assert d["kind"] == "INCORRECT_INSTANCE"
    assert d["rule"] == "sat_cl/1#2"


def test_tree_and_cli():
    t = logicbench.tree("corpus:P1", "sat_cnf([])")
    assert len(t["nodes"]) == 2
    code, out, _ = logicbench.run_cli(["sat", str(DATA / "contradiction.cnf")])
    assert code == 0
    assert "s UNSAT" in out
