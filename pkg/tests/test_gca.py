from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgpoisson import (
    GF,
    QQ,
    AlgebraError,
    DegreeMarker,
    Field,
    GeneratorTable,
    GradedCommutativeAlgebra,
    TensorAlgebra,
    normalize_word,
    twist,
)
from oracles import koszul_product


def mixed_algebra(field=QQ):
    return GradedCommutativeAlgebra(GeneratorTable([("a", 0), ("b", 1), ("c", 1), ("e", 2, 3)]), field)


def test_fields():
    F = GF(5)
    assert F.norm(7) == 2
    assert F.format(4) == "-1"
    assert F.format(3) == "-2"
    assert F.inv(2) == 3
    assert QQ.format(Fraction(-3, 6)) == "-1/2"
    with pytest.raises(AlgebraError):
        Field(2)
    with pytest.raises(AlgebraError):
        GF(9)
    with pytest.raises(AlgebraError):
        QQ(0.5)


def test_truncation_example():
    A = GradedCommutativeAlgebra(GeneratorTable([("x", 0, 5), ("y", 0, 5)]), GF(5))
    x, y = A.gens()
    assert (x ** 4) * x == A.zero()
    assert (x + y) ** 5 == A.zero()
    assert str((x + y) ** 2) == "x^2 + 2*x*y + y^2"


def test_odd_generators():
    A = mixed_algebra()
    a, b, c, e = A.gens()
    assert b * b == A.zero()
    assert c * b == -(b * c)
    assert a * b == b * a
    assert e ** 3 == A.zero()
    assert str(c * b * a) == "-a*b*c"


def test_normalize_word():
    A = mixed_algebra()
    assert normalize_word(A.table, [("c", 1), ("b", 1)]) == (-1, (0, 1, 1, 0))
    assert normalize_word(A.table, [("b", 1), ("a", 2), ("b", 1)]) is None
    assert normalize_word(A.table, [("e", 3)]) is None
    with pytest.raises(AlgebraError):
        normalize_word(A.table, [("nope", 1)])


def test_degrees():
    A = mixed_algebra()
    a, b, c, e = A.gens()
    assert (b * c).degree == 2
    assert (a + b).degree is DegreeMarker.MIXED
    assert A.zero().degree is DegreeMarker.ANY


def test_tensor_product_signs():
    A = mixed_algebra()
    a, b, c, e = A.gens()
    T = TensorAlgebra.power(A, 2)
    one = A.one()
    # (1 (x) b)(c (x) 1) = (-1)^{|b||c|} c (x) b
    assert T.pure(one, b) * T.pure(c, one) == -T.pure(c, b)
    assert twist(T.pure(b, c)) == -T.pure(c, b)
    assert twist(T.pure(a, b)) == T.pure(b, a)
    assert str(T.pure(a, one) - T.pure(one, b).scale(2)) == "-2*1#b + a#1"


monomial = st.tuples(st.integers(0, 3), st.integers(0, 1), st.integers(0, 1), st.integers(0, 2))


@given(monomial, monomial)
def test_product_matches_bubble_sort_oracle(u, v):
    A = mixed_algebra()
    expected = koszul_product(A.table.degrees, A.table.bounds, u, v)
    got = A.mono_mul(u, v)
    assert got == expected


coeff = st.integers(-4, 4)
elements = st.lists(st.tuples(monomial, coeff), max_size=4)


def build(A, terms):
    return A.element({u: c for u, c in terms})


@settings(max_examples=60)
@given(elements, elements, elements)
def test_ring_axioms(f, g, h):
    for F in (QQ, GF(7)):
        A = mixed_algebra(F)
        x, y, z = build(A, f), build(A, g), build(A, h)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * A.one() == x


@settings(max_examples=60)
@given(monomial, monomial)
def test_graded_commutativity(u, v):
    A = mixed_algebra()
    x, y = A.monomial(u), A.monomial(v)
    sign = -1 if (A.mono_degree(u) * A.mono_degree(v)) % 2 else 1
    assert x * y == (y * x).scale(sign)
