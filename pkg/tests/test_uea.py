from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgpoisson import (
    QQ,
    GeneratorTable,
    GradedCommutativeAlgebra,
    MorphismSpec,
    PoissonPresentation,
    UEAError,
    antipode_e,
    build_uea,
    check_confluence,
    check_defining_identities,
    check_differential_e,
    check_hopf_e,
    check_induced_morphism,
    check_opposite_uea,
    check_tensor_uea,
    coproduct_e,
    counit_e,
    d_e,
    graded_commutative_count,
    induced_morphism,
    map_h,
    map_m,
    normal_form,
    opposite_uea,
    pbw_count,
    tensor_uea,
)
from conftest import load_doc, load_uea
from oracles import act, act_word


def shifted_presentation():
    A = GradedCommutativeAlgebra(GeneratorTable([("g", 0), ("k", 1), ("s", -1)]), QQ)
    g, k, s = A.gens()
    return PoissonPresentation(A, 1, {("g", "g"): k, ("s", "g"): g, ("s", "k"): k.scale(2)})


def test_heisenberg_rules():
    R = load_uea("heisenberg.dgp")
    h1, m2 = R.h("x1"), R.m("x2")
    assert str(h1 * m2) == "m(x3) + m(x2)*h(x1)"
    assert str(R.h("x2") * R.h("x1")) == "-h(x3) + h(x1)*h(x2)"
    assert R.m("x2") * R.m("x1") == R.m("x1") * R.m("x2")


def test_restricted_lie_map():
    R = load_uea("restricted_B.dgp")
    y = R.algebra.gen("y")
    assert str(map_h(R, y * y)) == "2*m(y)*h(y)"
    assert map_m(R, y ** 5) == R.zero()
    assert R.m("y") ** 5 == R.zero()


def test_odd_letters():
    R = load_uea("graded_ef.dgp")
    f = R.algebra.gen("f")
    assert R.m("f") * R.m("f") == R.zero()
    # |h(f)| = 1, {f, f} = 0, so h(f)^2 = 0
    assert R.h("f") * R.h("f") == R.zero()
    assert str(d_e(R, R.h("e"))) == "h(f)"
    assert str(map_h(R, R.algebra.gen("e") * f)) == "m(e)*h(f) + m(f)*h(e)"


def test_odd_square_with_shift():
    R = build_uea(shifted_presentation())
    # |h(g)| = |g| + p = 1, so h(g)^2 = 1/2 h({g, g}) = 1/2 h(k)
    assert str(R.h("g") * R.h("g")) == "1/2*h(k)"


def test_pbw_counts():
    one_even = build_uea(PoissonPresentation(GradedCommutativeAlgebra(GeneratorTable([("t", 0)]), QQ)))
    one_odd = build_uea(PoissonPresentation(GradedCommutativeAlgebra(GeneratorTable([("t", 1)]), QQ)))
    assert pbw_count(one_even, 2) == [1, 2, 3]
    assert pbw_count(one_odd, 2) == [1, 2, 1]
    R = load_uea("heisenberg.dgp")
    assert pbw_count(R, 4) == [comb(5 + k, 5) for k in range(5)]
    assert graded_commutative_count(R, 4) == pbw_count(R, 4)


def test_unsupported_truncation():
    A = GradedCommutativeAlgebra(GeneratorTable([("x", 0, 3)]), QQ)
    with pytest.raises(UEAError):
        build_uea(PoissonPresentation(A))


def test_missing_hopf():
    R = build_uea(load_doc("jacobi_violation.dgp").presentation)
    with pytest.raises(UEAError):
        coproduct_e(R, R.h("a"))


def test_dropped_correction_is_detected():
    R = load_uea("heisenberg.dgp")
    rules = dict(R.rules)
    lhs = (R.h_letter("x1"), R.m_letter("x2"))
    rules[lhs] = {(R.m_letter("x2"), R.h_letter("x1")): 1}
    broken = R.with_rules(rules)
    v = check_defining_identities(broken, 2, samples=10).violation("alpha identity")
    assert v.witness == "x1, x2"


def test_jacobi_violation_breaks_confluence():
    R = build_uea(load_doc("jacobi_violation.dgp").presentation)
    rep = check_confluence(R, 3)
    assert not rep.passed


def test_closing_example_tables():
    for name in ("heisenberg.dgp", "sl2.dgp", "abelian_3.dgp", "graded_ef.dgp"):
        R = load_uea(name)
        for g in R.algebra.table.names:
            for letter in (R.m(g), R.h(g)):
                D = coproduct_e(R, letter)
                T = D.parent
                assert D == T.pure(letter, R.one()) + T.pure(R.one(), letter)
                assert counit_e(R, letter) == 0
                assert antipode_e(R, letter) == -letter


def test_restricted_hopf_e():
    R = load_uea("restricted_B.dgp")
    rep = check_hopf_e(R, 3)
    assert rep.suite("uea well-definedness").passed
    assert rep.suite("uea bialgebra").passed
    v = rep.suite("uea antipode").violation("antipode identity")
    assert (v.witness, v.lhs, v.rhs) == ("h(z)", "2*m(y)", "0")
    assert rep.suite("uea antipode").violation("obstruction formula") is None


def test_tensor_uea():
    RH = load_uea("heisenberg.dgp")
    RA = load_uea("abelian_2.dgp")
    TU = tensor_uea(RH, RA)
    assert check_tensor_uea(TU, 2, 2).passed


def test_opposite_uea():
    for name in ("restricted_B.dgp", "graded_ef.dgp", "heisenberg.dgp"):
        R = load_uea(name)
        op = opposite_uea(R)
        assert check_opposite_uea(R, op, 3).passed
        assert opposite_uea(op).rules == R.rules


def test_induced_morphisms():
    R = load_uea("abelian_3.dgp")
    P = R.source
    A = P.algebra
    double = induced_morphism(R, R, MorphismSpec(P, P, {g: A.gen(g).scale(2) for g in A.table.names}))
    assert check_induced_morphism(double).passed
    assert str(double(R.h("x2") * R.m("x1"))) == "4*m(x1)*h(x2)"
    ident = induced_morphism(R, R, MorphismSpec.identity(P))
    assert check_induced_morphism(ident).passed
    H = load_uea("heisenberg.dgp")
    bad = MorphismSpec(H.source, H.source, {g: H.algebra.gen(g).scale(2) for g in H.algebra.table.names})
    with pytest.raises(UEAError):
        induced_morphism(H, H, bad)


def test_inclusion_into_tensor():
    from dgpoisson import tensor_presentation

    L = load_doc("abelian_1.dgp").presentation
    M = load_doc("graded_ef.dgp").presentation
    LM = tensor_presentation(L, M)
    phi = MorphismSpec(L, LM, {"x1": LM.algebra.gen("x1")})
    F = induced_morphism(build_uea(L), build_uea(LM), phi)
    assert check_induced_morphism(F).passed
    assert str(F(F.source.h("x1"))) == "h(x1)"


def test_shifted_fixture_is_poisson():
    from dgpoisson import check_poisson_axioms

    assert check_poisson_axioms(shifted_presentation(), 4).passed


def test_graded_and_shifted_checks():
    for R in (load_uea("graded_ef.dgp"), build_uea(shifted_presentation())):
        assert check_defining_identities(R, 3, samples=50).passed
        assert check_confluence(R, 4).passed
        assert check_differential_e(R, 4).passed
        assert pbw_count(R, 3) == graded_commutative_count(R, 3)


def test_restricted_confluence_with_truncation_overlaps():
    R = load_uea("restricted_B.dgp")
    assert check_confluence(R, 6).passed


# -- the action of A^e on A is an independent model of every relation --

FIXTURES = ["heisenberg.dgp", "sl2.dgp", "graded_ef.dgp", "restricted_B.dgp", "abelian_3.dgp"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIXTURES + ["shifted"]), st.lists(st.integers(0, 5), max_size=5), st.integers(0, 40))
def test_normal_form_acts_like_the_word(name, raw, k):
    R = build_uea(shifted_presentation()) if name == "shifted" else load_uea(name)
    word = tuple(x % (2 * R.n) for x in raw)
    monos = R.algebra.monomials(2)
    f = R.algebra.monomial(monos[k % len(monos)])
    assert act(R, normal_form(R, {word: 1}), f) == act_word(R, word, f)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIXTURES), st.lists(st.integers(0, 5), max_size=3),
       st.lists(st.integers(0, 5), max_size=3), st.lists(st.integers(0, 5), max_size=3))
def test_product_is_associative(name, a, b, c):
    R = load_uea(name)
    x, y, z = (R.word(tuple(v % (2 * R.n) for v in w)) for w in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert normal_form(R, x) == x
