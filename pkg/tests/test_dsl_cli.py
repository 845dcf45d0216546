import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgpoisson import DSLError, coproduct, evaluate, format_value, parse_document, parse_expression, print_document
from dgpoisson.cli import main
from conftest import CORPUS, corpus_text, load_doc

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", CORPUS)
def test_round_trip(name):
    doc = parse_document(corpus_text(name))
    text = print_document(doc)
    again = parse_document(text)
    assert again == doc
    assert print_document(again) == text


def test_expressions():
    B = load_doc("restricted_B.dgp").structure
    H = load_doc("heisenberg.dgp").structure
    ev = lambda e, s, c="auto": format_value(evaluate(parse_expression(e, c), s, c), s.field)  # noqa: E731
    assert ev("{x, y*z}", B) == "2*y*z"
    assert ev("S(z)", B) == "-z - 2*x*y"
    assert ev("h(x1)*m(x2)", H, "uea") == "m(x3) + m(x2)*h(x1)"
    assert ev("1/2*x", B) == "-2*x"
    assert ev("(x + y)^5", B) == "0"
    assert ev("eps(z + 3)", B) == "-2"  # least absolute residue mod 5
    assert ev("x, {x, y}", B) == "x, y"
    assert ev("Delta(h(x1))", H, "uea") == "1#h(x1) + h(x1)#1"


@pytest.mark.parametrize("expr,context", [
    ("x#y", "algebra"),
    ("m(x)", "tensor"),
    ("Delta(x)", "algebra"),
    ("x*m(x)", "uea"),
    ("x*(x#y)", "auto"),
    ("x +", "auto"),
    ("w", "auto"),
    ("x $ y", "auto"),
    ("x/0", "auto"),
])
def test_expression_errors(expr, context):
    B = load_doc("restricted_B.dgp").structure
    with pytest.raises(DSLError):
        evaluate(parse_expression(expr, context), B, context)


@pytest.mark.parametrize("text,line", [
    ("field GF(2)\n", 1),
    ("gen x deg 0\ngen y deg 0\ngen z deg 1\nbracket {x, y} = z\n", 4),
    ("gen x deg 0\nbracket {x, w} = x\n", 2),
    ("bracket_degree 1\ngen x deg 0\nhopf symmetric\n", 3),
    ("gen x deg 0\ngen x deg 1\n", 2),
    ("gen x deg 0\nfrobnicate x\n", 2),
    ("gen x deg 0\ncoproduct x = x#1 + 1#x\ncounit x = 0\n", 2),
    ("gen x deg 0\nd x = x\n", 2),
])
def test_presentation_errors(text, line):
    with pytest.raises(DSLError) as info:
        parse_document(text)
    assert info.value.line == line


def test_error_column():
    with pytest.raises(DSLError) as info:
        parse_document("gen x deg 0\ngen z deg 1\nbracket {x, x} = x + z\n")
    assert (info.value.line, info.value.col) == (3, 18)


def test_empty_presentation_and_comments():
    doc = parse_document("# nothing here\n\nfield QQ   # rationals\n")
    assert doc.presentation.algebra.n == 0
    assert print_document(doc) == "field QQ\nbracket_degree 0\n"


names = st.sampled_from(["x", "y", "z"])
monomials = st.lists(st.tuples(names, st.integers(1, 4)), max_size=3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-7, 7), monomials), max_size=4))
def test_printed_elements_parse_back(terms):
    B = load_doc("restricted_B.dgp").structure
    A = B.algebra
    e = A.zero()
    for c, word in terms:
        e = e + A.from_word(word, c)
    assert evaluate(parse_expression(str(e), "algebra"), B, "algebra") == A.coerce(e)
    t = coproduct(B, e)
    back = evaluate(parse_expression(str(t), "tensor"), B, "tensor")
    assert back == t or (not t and back == 0)


def test_cli_check_and_obstruction(capsys):
    code, out, _ = run(capsys, "check", "restricted_B.dgp", "--degree-bound", "4")
    assert code == 0 and out.startswith("status: pass")
    code, out, _ = run(capsys, "obstruction", "restricted_B.dgp", "-e", "z")
    assert (code, out) == (0, "2*y\n")
    code, out, _ = run(capsys, "--format", "json", "obstruction", "restricted_B.dgp", "-e", "z")
    payload = json.loads(out)
    assert (payload["left"], payload["right"], payload["vanishes"]) == ("2*y", "2*y", False)


def test_cli_uea(capsys):
    code, out, _ = run(capsys, "uea", "check", "restricted_B.dgp", "--len", "3", "--format", "json")
    report = json.loads(out)
    assert code == 1
    antipode = [s for s in report["suites"] if s["name"] == "uea antipode"][0]
    v = antipode["violations"][0]
    assert (v["law"], v["witness"]) == ("antipode identity", "h(z)")
    code, out, _ = run(capsys, "uea", "nf", "heisenberg.dgp", "-e", "h(x2)*h(x1)")
    assert (code, out) == (0, "-h(x3) + h(x1)*h(x2)\n")


def test_cli_eval_and_errors(capsys, tmp_path):
    code, out, _ = run(capsys, "eval", "restricted_B.dgp", "-e", "{x, y*z}")
    assert (code, out) == (0, "2*y*z\n")
    code, _, err = run(capsys, "eval", "restricted_B.dgp", "-e", "x#y", "--context", "algebra")
    assert code == 2 and "not allowed" in err
    bad = tmp_path / "bad.dgp"
    bad.write_text("gen x deg 0\nbracket {x, y} = x\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "check", str(tmp_path / "missing.dgp"))
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["check"])
    assert info.value.code == 2
    capsys.readouterr()


def test_jacobi_report(capsys):
    code, out, _ = run(capsys, "check", "jacobi_violation.dgp", "--format", "json")
    assert code == 1
    v = json.loads(out)["suites"][0]["violations"][0]
    assert (v["law"], v["witness"], v["lhs"], v["rhs"]) == ("jacobi", "a, b, c", "0", "-c")


def test_witnesses_reproduce(capsys):
    """Every reported witness evaluates; the Jacobi witness reproduces the defect."""
    for args in (["uea", "check", "restricted_B.dgp"], ["check", "jacobi_violation.dgp"],
                 ["uea", "check", "jacobi_violation.dgp"]):
        _, out, _ = run(capsys, "--format", "json", *args)
        for suite in json.loads(out)["suites"]:
            for v in suite["violations"]:
                code, _, err = run(capsys, "eval", args[-1], "-e", v["witness"])
                assert code == 0, err
    code, out, _ = run(capsys, "eval", "jacobi_violation.dgp", "-e",
                       "{a, {b, c}} - {{a, b}, c} - {b, {a, c}}")
    assert (code, out) == (0, "c\n")


GOLDEN_RUNS = {
    "check_restricted_B.json": ["--format", "json", "check", "restricted_B.dgp", "--degree-bound", "4"],
    "uea_restricted_B.json": ["--format", "json", "uea", "check", "restricted_B.dgp", "--len", "3"],
    "check_heisenberg.json": ["--format", "json", "check", "heisenberg.dgp"],
    "check_jacobi_violation.txt": ["check", "jacobi_violation.dgp"],
    "report_graded_ef.txt": ["report", "graded_ef.dgp"],
    "uea_jacobi_violation.json": ["--format", "json", "uea", "check", "jacobi_violation.dgp"],
}


@pytest.mark.parametrize("golden", sorted(GOLDEN_RUNS))
def test_golden_reports(capsys, golden):
    first = run(capsys, *GOLDEN_RUNS[golden])[1]
    second = run(capsys, *GOLDEN_RUNS[golden])[1]
    assert first == second
    assert first == (GOLDEN / golden).read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dgpoisson", "obstruction", "restricted_B.dgp", "-e", "z"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2*y\n"
