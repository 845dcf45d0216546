import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgpoisson import (
    QQ,
    GeneratorTable,
    GradedCommutativeAlgebra,
    MorphismSpec,
    PoissonPresentation,
    PresentationError,
    bracket,
    check_dgp_morphism,
    check_poisson_axioms,
    check_tensor_formula,
    differential,
    opposite_presentation,
    tensor_presentation,
)
from conftest import load_doc
from oracles import jacobian_bracket


def test_restricted_brackets(B):
    P = B.base
    x, y, z = P.algebra.gens()
    assert bracket(P, x, z) == z
    assert bracket(P, x, y * z) == (y * z).scale(2)
    assert bracket(P, z, x) == -z
    assert bracket(P, y, z) == y * y


def _poly(e):
    return dict(e.terms)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.tuples(*[st.integers(0, 4)] * 3), st.integers(1, 4)), min_size=1, max_size=3),
       st.lists(st.tuples(st.tuples(*[st.integers(0, 4)] * 3), st.integers(1, 4)), min_size=1, max_size=3))
def test_bracket_matches_jacobian_oracle_char5(f, g):
    P = load_doc("restricted_B.dgp").presentation
    A = P.algebra
    a, b = A.element(dict(f)), A.element(dict(g))
    structure = {(i, j): _poly(P.generator_bracket(i, j)) for i in range(3) for j in range(i + 1, 3)}
    expected = jacobian_bracket(structure, _poly(a), _poly(b), 3, modulus=5, bounds=(5, 5, 5))
    assert _poly(bracket(P, a, b)) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-3, 3)), max_size=3),
       st.lists(st.tuples(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-3, 3)), max_size=3))
def test_bracket_matches_jacobian_oracle_sl2(f, g):
    P = load_doc("sl2.dgp").presentation
    A = P.algebra
    a, b = A.element(dict(f)), A.element(dict(g))
    structure = {(i, j): _poly(P.generator_bracket(i, j)) for i in range(3) for j in range(i + 1, 3)}
    assert _poly(bracket(P, a, b)) == jacobian_bracket(structure, _poly(a), _poly(b), 3)


def test_graded_example():
    P = load_doc("graded_ef.dgp").presentation
    e, f = P.algebra.gens()
    assert differential(P, e * e) == (e * f).scale(2)
    assert differential(P, f) == P.algebra.zero()
    assert (e + f) ** 2 == e * e + (e * f).scale(2)
    assert check_poisson_axioms(P, 5).passed


def test_jacobi_violation_detected():
    P = load_doc("jacobi_violation.dgp").presentation
    rep = check_poisson_axioms(P, 3)
    v = rep.violation("jacobi")
    assert v is not None
    assert (v.witness, v.lhs, v.rhs) == ("a, b, c", "0", "-c")


def test_presentation_validation():
    A = GradedCommutativeAlgebra(GeneratorTable([("x", 0), ("y", 0), ("z", 1)]), QQ)
    x, y, z = A.gens()
    with pytest.raises(PresentationError):
        PoissonPresentation(A, 0, {("x", "y"): z})
    with pytest.raises(PresentationError):
        PoissonPresentation(A, 0, {("x", "x"): x})
    with pytest.raises(PresentationError):
        PoissonPresentation(A, 0, {("x", "y"): y, ("y", "x"): -y})
    with pytest.raises(PresentationError):
        PoissonPresentation(A, 0, differentials={"x": y})


def test_empty_presentation():
    A = GradedCommutativeAlgebra(GeneratorTable([]), QQ)
    P = PoissonPresentation(A)
    assert check_poisson_axioms(P, 3).passed
    assert A.monomials(3) == [()]


def test_shifted_bracket():
    A = GradedCommutativeAlgebra(GeneratorTable([("x", 0), ("s", -1), ("t", 1)]), QQ)
    x, s, t = A.gens()
    P = PoissonPresentation(A, 1, {("s", "x"): x, ("s", "t"): t})
    assert check_poisson_axioms(P, 4).passed
    # antisymmetry with |x| + p = 1, |s| + p = 0
    assert bracket(P, x, s) == -x
    G = GradedCommutativeAlgebra(GeneratorTable([("g", 0), ("k", 1)]), QQ)
    Q = PoissonPresentation(G, 1, {("g", "g"): G.gen("k")})
    assert check_poisson_axioms(Q, 4).passed


def test_tensor_and_opposite():
    H = load_doc("heisenberg.dgp").presentation
    G = load_doc("graded_ef.dgp").presentation
    T = tensor_presentation(H, G)
    assert T.algebra.table.names == ("x1", "x2", "x3", "e", "f")
    assert check_tensor_formula(T, 2).passed
    assert check_poisson_axioms(T, 3).passed
    TT = tensor_presentation(H, H)
    assert TT.algebra.table.names[:2] == ("x1_1", "x2_1")
    op = opposite_presentation(G)
    e, f = op.algebra.gens()
    assert bracket(op, e, f) == -f
    assert opposite_presentation(op) == G
    assert check_poisson_axioms(op, 4).passed


def test_morphisms():
    P = load_doc("abelian_3.dgp").presentation
    A = P.algebra
    doubling = MorphismSpec(P, P, {g: A.gen(g).scale(2) for g in A.table.names})
    assert check_dgp_morphism(doubling, 3).passed
    assert check_dgp_morphism(MorphismSpec.identity(P), 3).passed
    H = load_doc("heisenberg.dgp").presentation
    bad = MorphismSpec(H, H, {g: H.algebra.gen(g).scale(2) for g in H.algebra.table.names})
    assert check_dgp_morphism(bad, 2).violation("bracket") is not None
