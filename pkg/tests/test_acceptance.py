"""Acceptance criteria.  Each test records one PASS/FAIL line, printed in the
terminal summary (or on stdout when run as ``python tests/test_acceptance.py``).
All comparisons are exact."""

import json
import time

from acceptance_log import criterion
from conftest import CORPUS, SYMMETRIC, corpus_text, load_doc, load_uea
from dgpoisson import (
    MorphismSpec,
    antipode_e,
    check_antipode,
    check_bialgebra,
    check_confluence,
    check_defining_identities,
    check_differential_e,
    check_hopf_e,
    check_induced_morphism,
    check_obstruction,
    check_opposite_uea,
    check_poisson_axioms,
    check_tensor_uea,
    coproduct_e,
    counit_e,
    graded_commutative_count,
    induced_morphism,
    opposite_uea,
    parse_document,
    pbw_count,
    print_document,
    sweedler_obstruction,
    tensor_uea,
)
from dgpoisson.cli import main


def _cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@criterion("char-p example: suites pass at bound 4, obstruction(z) = 2*y, B^e antipode identity fails at h(z)")
def test_char_p_example(capsys):
    start = time.perf_counter()
    code, out = _cli(capsys, "--format", "json", "check", "restricted_B.dgp", "--degree-bound", "4")
    report = json.loads(out)
    assert code == 0
    assert {s["name"] for s in report["suites"]} >= {"poisson", "bialgebra", "antipode"}
    assert all(s["status"] == "pass" for s in report["suites"])
    code, out = _cli(capsys, "obstruction", "restricted_B.dgp", "-e", "z")
    assert (code, out) == (0, "2*y\n")
    code, out = _cli(capsys, "--format", "json", "uea", "check", "restricted_B.dgp", "--len", "3")
    assert code == 1
    suites = {s["name"]: s for s in json.loads(out)["suites"]}
    assert suites["uea bialgebra"]["status"] == "pass"
    v = suites["uea antipode"]["violations"][0]
    assert (v["law"], v["witness"], v["lhs"], v["rhs"]) == ("antipode identity", "h(z)", "2*m(y)", "0")
    assert time.perf_counter() - start < 10


@criterion("S(L) Hopf suite: bound 6 checks pass, obstruction vanishes to degree 4, left/right equivalent")
def test_symmetric_hopf_suite():
    start = time.perf_counter()
    for name in SYMMETRIC:
        H = load_doc(name).hopf
        assert check_poisson_axioms(H.base, 6).passed, name
        assert check_bialgebra(H, 6).passed, name
        assert check_antipode(H, 6).passed, name
        rep = check_obstruction(H, 4, require_vanishing=True)
        assert rep.passed, name
        A = H.algebra
        for u in A.monomials(4):
            left, right = sweedler_obstruction(H, A.monomial(u))
            assert left.is_zero() and right.is_zero()
    assert time.perf_counter() - start < 60


@criterion("A^e Hopf structure: maps respect rules, antipode identity to length 3, (d^e)^2 = 0 to length 4")
def test_uea_hopf_structure():
    for name in SYMMETRIC:
        R = load_uea(name)
        rep = check_hopf_e(R, 3)
        assert rep.passed, (name, rep.to_text())
        assert check_differential_e(R, 4).passed, name
        for g in R.algebra.table.names:
            y = R.h(g)
            T = coproduct_e(R, y).parent
            assert coproduct_e(R, y) == T.pure(y, R.one()) + T.pure(R.one(), y)
            assert counit_e(R, y) == 0
            assert antipode_e(R, y) == -y


@criterion("universal-property identities on generator pairs and 200 seeded random pairs")
def test_defining_identities():
    for name in SYMMETRIC + ["restricted_B.dgp"]:
        R = load_uea(name)
        rep = check_defining_identities(R, 2, seed=0, samples=200)
        assert rep.passed, (name, rep.violations)


@criterion("rewriting: critical pairs to length 3 join, Jacobi violation detected, PBW counts to length 4")
def test_rewriting_soundness():
    for name in CORPUS:
        R = load_uea(name)
        rep = check_confluence(R, 3)
        if name == "jacobi_violation.dgp":
            assert not rep.passed
        else:
            assert rep.passed, name
    for name in ("abelian_1.dgp", "abelian_2.dgp", "abelian_3.dgp", "heisenberg.dgp"):
        R = load_uea(name)
        assert pbw_count(R, 4) == graded_commutative_count(R, 4), name


@criterion("functoriality and tensors: induced maps, tensor maps, structural equalities")
def test_functoriality_and_tensors():
    for name in ("abelian_2.dgp", "abelian_3.dgp"):
        R = load_uea(name)
        P = R.source
        A = P.algebra
        for phi in (MorphismSpec.identity(P), MorphismSpec(P, P, {g: A.gen(g).scale(2) for g in A.table.names})):
            assert check_induced_morphism(induced_morphism(R, R, phi)).passed
    R = load_uea("heisenberg.dgp")
    assert check_induced_morphism(induced_morphism(R, R, MorphismSpec.identity(R.source))).passed
    for left, right in (("heisenberg.dgp", "abelian_2.dgp"), ("graded_ef.dgp", "abelian_1.dgp"),
                        ("heisenberg.dgp", "graded_ef.dgp")):
        TU = tensor_uea(load_uea(left), load_uea(right))
        assert check_tensor_uea(TU, 2, 2).passed, (left, right)
    for name in SYMMETRIC + ["restricted_B.dgp"]:
        R = load_uea(name)
        op = opposite_uea(R)
        assert check_opposite_uea(R, op, 3).passed, name
        assert opposite_uea(op).rules == R.rules


@criterion("parser: corpus round trip and byte-identical golden reports")
def test_parser_and_goldens(capsys):
    from pathlib import Path

    for name in CORPUS:
        doc = parse_document(corpus_text(name))
        text = print_document(doc)
        assert parse_document(text) == doc
        assert print_document(parse_document(text)) == text
    golden = Path(__file__).parent / "golden"
    runs = {
        "check_restricted_B.json": ["--format", "json", "check", "restricted_B.dgp", "--degree-bound", "4"],
        "uea_restricted_B.json": ["--format", "json", "uea", "check", "restricted_B.dgp", "--len", "3"],
        "report_graded_ef.txt": ["report", "graded_ef.dgp"],
    }
    for fname, argv in runs.items():
        first = _cli(capsys, *argv)[1]
        assert first == _cli(capsys, *argv)[1]
        assert first == (golden / fname).read_text()


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
