"""Hopf structure on a DG Poisson presentation.

Coproduct and counit are extended multiplicatively from their generator
tables, the antipode anti-multiplicatively with Koszul signs.  Nothing is
certified at construction time; the checkers do that.
"""

from __future__ import annotations

import random
from typing import Callable, Mapping

from .gca import AlgebraError, Element, TensorAlgebra, TensorElement, contract, twist
from .poisson import (
    PoissonPresentation,
    PresentationError,
    _fmt,
    _sign,
    _tuples,
    _unit,
    bracket,
    differential,
    opposite_presentation,
    random_homogeneous,
    tensor_bracket,
    tensor_presentation,
)
from .report import SuiteReport

__all__ = [
    "HopfConfigurationError",
    "HopfPresentation",
    "symmetric_hopf",
    "coproduct",
    "counit",
    "antipode",
    "check_bialgebra",
    "check_antipode",
    "check_obstruction",
    "sweedler_obstruction",
    "tensor_hopf",
    "opposite_hopf",
]


class HopfConfigurationError(PresentationError):
    """Hopf data attached to a bracket of nonzero degree, or incomplete tables."""


class HopfPresentation:
    def __init__(
        self,
        base: PoissonPresentation,
        coproducts: Mapping[str, TensorElement],
        counits: Mapping[str, object],
        antipodes: Mapping[str, Element],
    ):
        if base.p != 0:
            raise HopfConfigurationError(
                f"Hopf structures are only supported for bracket degree 0 (got p = {base.p})"
            )
        self.base = base
        A = base.algebra
        self.algebra = A
        self.field = A.field
        self.square = TensorAlgebra.power(A, 2)
        names = A.table.names
        for tab, what in ((coproducts, "coproduct"), (counits, "counit"), (antipodes, "antipode")):
            unknown = set(tab) - set(names)
            if unknown:
                raise PresentationError(f"{what} given for undeclared generators {sorted(unknown)}")
            missing = [n for n in names if n not in tab]
            if missing:
                raise HopfConfigurationError(f"{what} missing for {', '.join(missing)}")
        self._delta = []
        self._eps = []
        self._s = []
        for i, g in enumerate(A.table):
            dg = coproducts[g.name]
            if dg.parent != self.square:
                raise AlgebraError(f"coproduct of {g.name} is not in A (x) A")
            for key in dg.terms:
                if self.square.key_degree(key) != g.degree:
                    raise PresentationError(f"coproduct of {g.name}: term of degree "
                                            f"{self.square.key_degree(key)}, expected {g.degree}")
            self._delta.append(dg)
            e = self.field(counits[g.name]) if not isinstance(counits[g.name], Element) else counits[g.name].constant_term()
            if e != 0 and g.degree != 0:
                raise PresentationError(f"counit of {g.name} must vanish (degree {g.degree})")
            self._eps.append(e)
            s = A.coerce(antipodes[g.name])
            PoissonPresentation._check_degree(s, g.degree, f"antipode of {g.name}")
            self._s.append(s)
        self._dcache: dict = {}
        self._scache: dict = {}
        self._ecache: dict = {}

    @property
    def p(self) -> int:
        return 0

    @property
    def name(self):
        return self.base.name

    def coproduct_table(self) -> dict[str, TensorElement]:
        return dict(zip(self.algebra.table.names, self._delta))

    def counit_table(self) -> dict[str, object]:
        return dict(zip(self.algebra.table.names, self._eps))

    def antipode_table(self) -> dict[str, Element]:
        return dict(zip(self.algebra.table.names, self._s))

    def __eq__(self, other):
        return (
            isinstance(other, HopfPresentation)
            and self.base == other.base
            and self._delta == other._delta
            and self._eps == other._eps
            and self._s == other._s
        )

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        return f"HopfPresentation({self.base!r})"

    # -- monomial-level extensions (cached) -----------------------------------
    def _delta_mono(self, u) -> TensorElement:
        hit = self._dcache.get(u)
        if hit is not None:
            return hit
        A = self.algebra
        if not any(u):
            res = self.square.one()
        else:
            i, rest = A.split_first(u)
            res = self._delta[i] * self._delta_mono(rest)
        self._dcache[u] = res
        return res

    def _eps_mono(self, u):
        hit = self._ecache.get(u)
        if hit is not None:
            return hit
        res = self.field.one
        for i, e in enumerate(u):
            if e:
                res = self.field.norm(res * self._eps[i] ** e)
        self._ecache[u] = res
        return res

    def _s_mono(self, u) -> Element:
        hit = self._scache.get(u)
        if hit is not None:
            return hit
        A = self.algebra
        if not any(u):
            res = A.one()
        else:
            i, rest = A.split_first(u)
            # S(g r) = (-1)^{|g||r|} S(r) S(g)
            s = _sign(A.table.degrees[i] * A.mono_degree(rest))
            res = (self._s_mono(rest) * self._s[i]).scale(s)
        self._scache[u] = res
        return res


def symmetric_hopf(P: PoissonPresentation) -> HopfPresentation:
    """The S(L) structure: generators primitive, counit 0, antipode -1 on L.

    Requires a DG Lie presentation: brackets and differentials of generators
    must be linear combinations of generators.
    """
    A = P.algebra
    for what, table in (("bracket", P.bracket_table()), ("differential", P.differential_table())):
        for key, v in table.items():
            if any(sum(u) != 1 for u in v.terms):
                raise PresentationError(f"{what} {key} is not linear: not a DG Lie presentation")
    T = TensorAlgebra.power(A, 2)
    one = A.one()
    cop = {g.name: T.pure(A.gen(g.name), one) + T.pure(one, A.gen(g.name)) for g in A.table}
    return HopfPresentation(P, cop, {g.name: 0 for g in A.table}, {g.name: -A.gen(g.name) for g in A.table})


def coproduct(H: HopfPresentation, a) -> TensorElement:
    a = H.algebra.coerce(a)
    terms: dict = {}
    for u, c in a.terms.items():
        for k, e in H._delta_mono(u).terms.items():
            terms[k] = terms.get(k, 0) + c * e
    return TensorElement(H.square, terms)


def counit(H: HopfPresentation, a):
    a = H.algebra.coerce(a)
    total = H.field.zero
    for u, c in a.terms.items():
        total = H.field.norm(total + c * H._eps_mono(u))
    return total


def antipode(H: HopfPresentation, a) -> Element:
    A = H.algebra
    a = A.coerce(a)
    terms: dict = {}
    for u, c in a.terms.items():
        for w, e in H._s_mono(u).terms.items():
            terms[w] = terms.get(w, 0) + c * e
    return Element(A, terms)


# ---------------------------------------------------------------------------
# leg-wise helpers
# ---------------------------------------------------------------------------


def _expand_leg(t: TensorElement, i: int, f: Callable) -> TensorElement:
    """Apply a degree-0 map  A -> A (x) A  to leg i, producing one more leg."""
    P = t.parent
    Q = TensorAlgebra(P.factors[:i] + (P.factors[i], P.factors[i]) + P.factors[i + 1:])
    terms: dict = {}
    for key, c in t.terms.items():
        for (v, w), e in f(key[i]).terms.items():
            k2 = key[:i] + (v, w) + key[i + 1:]
            terms[k2] = terms.get(k2, 0) + c * e
    return TensorElement(Q, terms)


def _apply_leg(t: TensorElement, i: int, f: Callable, degree: int = 0) -> TensorElement:
    """Apply a linear map of the given degree (monomial -> Element) to leg i, with Koszul sign."""
    P = t.parent
    terms: dict = {}
    for key, c in t.terms.items():
        parity = degree * sum(P.leg_degree(j, key[j]) for j in range(i)) if degree % 2 else 0
        img = f(key[i])
        for w, e in img.terms.items():
            k2 = key[:i] + (w,) + key[i + 1:]
            v = c * e
            terms[k2] = terms.get(k2, 0) + (-v if parity % 2 else v)
    return TensorElement(P, terms)


def _contract_counit(H: HopfPresentation, t: TensorElement, leg: int) -> Element:
    A = H.algebra
    terms: dict = {}
    for key, c in t.terms.items():
        e = H._eps_mono(key[leg])
        if e:
            w = key[1 - leg]
            terms[w] = terms.get(w, 0) + c * e
    return Element(A, terms)


def sweedler_obstruction(H: HopfPresentation, a) -> tuple[Element, Element]:
    """(sum {S(a1), a2}, sum {a1, S(a2)}) from the explicit coproduct of ``a``."""
    A = H.algebra
    P = H.base
    left, right = A.zero(), A.zero()
    for (u, v), c in coproduct(H, a).terms.items():
        a1, a2 = A.monomial(u, c), A.monomial(v)
        left = left + bracket(P, antipode(H, a1), a2)
        right = right + bracket(P, a1, antipode(H, a2))
    return left, right


def _mono_deg(A, x: Element) -> int:
    for u in x.terms:
        return A.mono_degree(u)
    return 0


def check_bialgebra(H: HopfPresentation, degree_bound: int = 3, seed: int = 0, samples: int = 25) -> SuiteReport:
    """Coalgebra, bialgebra, Poisson-compatibility and coderivation laws at bound."""
    A = H.algebra
    P = H.base
    T2 = H.square
    rep = SuiteReport("bialgebra")
    monos = A.monomials(degree_bound, 1)
    one = A.monomial
    D = lambda x: coproduct(H, x)  # noqa: E731
    eps = lambda x: counit(H, x)  # noqa: E731
    dmono = H._delta_mono

    rep.check("coproduct of unit", "1", D(A.one()), T2.one())
    rep.check("counit of unit", "1", eps(A.one()), H.field.one)

    def single(a):
        w = str(a)
        Da = D(a)
        rep.check("coassociativity", w, _expand_leg(Da, 0, dmono), _expand_leg(Da, 1, dmono))
        rep.check("counit (left)", w, _contract_counit(H, Da, 0), a)
        rep.check("counit (right)", w, _contract_counit(H, Da, 1), a)
        rep.check("counit of d", w, eps(differential(P, a)), H.field.zero)
        da = _apply_leg(Da, 0, lambda u: differential(P, one(u)), 1)
        da = da + _apply_leg(Da, 1, lambda u: differential(P, one(u)), 1)
        rep.check("coderivation", w, D(differential(P, a)), da)

    def pair(a, b):
        w = lambda: _fmt(a, b)  # noqa: E731
        rep.check("coproduct multiplicative", w, D(a * b), D(a) * D(b))
        rep.check("counit multiplicative", w, eps(a * b), H.field.norm(eps(a) * eps(b)))
        rep.check("poisson compatibility", w, D(bracket(P, a, b)), tensor_bracket(P, P, D(a), D(b)))
        rep.check("counit of bracket", w, eps(bracket(P, a, b)), H.field.zero)

    for u in monos:
        single(one(u))
    for u, v in _tuples(monos, 2, max(degree_bound, 2)):
        pair(one(u), one(v))
    for i, g in enumerate(A.table):
        if g.bound is not None and not g.odd:
            gi = one(_unit(A, i))
            N = g.bound
            dg = D(gi)
            power = T2.one()
            for _ in range(N):
                power = power * dg
            rep.check("truncation", f"{g.name}^{N}", power, T2.zero())
            rep.check("truncation", f"eps({g.name})^{N}", H.field.norm(eps(gi) ** N), H.field.zero)
    rng = random.Random(seed)
    L = max(1, min(degree_bound, 3))
    for _ in range(samples):
        a, b = random_homogeneous(A, rng, L), random_homogeneous(A, rng, L)
        single(a)
        pair(a, b)
    return rep


def check_antipode(H: HopfPresentation, degree_bound: int = 3, seed: int = 0, samples: int = 25) -> SuiteReport:
    """Antipode identities and the derived antipode properties at bound."""
    A = H.algebra
    P = H.base
    rep = SuiteReport("antipode")
    monos = A.monomials(degree_bound, 1)
    one = A.monomial
    S = lambda x: antipode(H, x)  # noqa: E731
    smono = lambda u: H._s_mono(u)  # noqa: E731

    rep.check("antipode of unit", "1", S(A.one()), A.one())

    def single(a):
        w = str(a)
        Da = coproduct(H, a)
        unit = A.scalar(counit(H, a))
        rep.check("antipode identity (S(x)I)", w, contract(_apply_leg(Da, 0, smono)), unit)
        rep.check("antipode identity (I(x)S)", w, contract(_apply_leg(Da, 1, smono)), unit)
        rep.check("involution", w, S(S(a)), a)
        rep.check("dS=Sd", w, differential(P, S(a)), S(differential(P, a)))
        rep.check("counit of antipode", w, counit(H, S(a)), counit(H, a))
        rep.check(
            "antipode coproduct", w, twist(_apply_leg(_apply_leg(Da, 0, smono), 1, smono)), coproduct(H, S(a))
        )

    def pair(a, b):
        w = lambda: _fmt(a, b)  # noqa: E731
        s = _sign(_mono_deg(A, a) * _mono_deg(A, b))
        rep.check("anti-multiplicative", w, S(a * b), (S(b) * S(a)).scale(s))
        rep.check("antipode of bracket", w, S(bracket(P, a, b)), bracket(P, S(b), S(a)).scale(s))

    for u in monos:
        single(one(u))
    for u, v in _tuples(monos, 2, max(degree_bound, 2)):
        pair(one(u), one(v))
    for i, g in enumerate(A.table):
        if g.bound is not None and not g.odd:
            rep.check("truncation", f"S({g.name})^{g.bound}", S(one(_unit(A, i))) ** g.bound, A.zero())
    rng = random.Random(seed + 1)
    L = max(1, min(degree_bound, 3))
    for _ in range(samples):
        a, b = random_homogeneous(A, rng, L), random_homogeneous(A, rng, L)
        single(a)
        pair(a, b)
    return rep


def check_obstruction(H: HopfPresentation, degree_bound: int = 3, require_vanishing: bool = True) -> SuiteReport:
    """Left and right obstructions vanish together; optionally both must vanish.

    Also confirms right = -S(left) on every monomial up to the bound.
    """
    A = H.algebra
    rep = SuiteReport("obstruction")
    for u in A.monomials(degree_bound):
        a = A.monomial(u)
        left, right = sweedler_obstruction(H, a)
        w = str(a)
        rep.check("left/right equivalence", w, left.is_zero(), right.is_zero())
        rep.check("right = -S(left)", w, right, -antipode(H, left))
        if require_vanishing:
            rep.check("obstruction vanishes", w, left, A.zero())
    return rep


def tensor_hopf(A: HopfPresentation, B: HopfPresentation) -> HopfPresentation:
    """Hopf structure on A (x) B restricted to generators g(x)1 and 1(x)g."""
    P = tensor_presentation(A.base, B.base)
    M = P.algebra
    T = TensorAlgebra.power(M, 2)
    nA, nB = A.algebra.n, B.algebra.n
    left = lambda u: tuple(u) + (0,) * nB  # noqa: E731
    right = lambda u: (0,) * nA + tuple(u)  # noqa: E731
    f = P.factors
    cop, eps, anti = {}, {}, {}
    for names, H, lift in ((f.left_names, A, left), (f.right_names, B, right)):
        for nm, g in zip(names, H.algebra.table):
            dg = H.coproduct_table()[g.name]
            cop[nm] = T.element({(lift(u), lift(v)): c for (u, v), c in dg.terms.items()})
            eps[nm] = H.counit_table()[g.name]
            s = H.antipode_table()[g.name]
            anti[nm] = M.element({lift(u): c for u, c in s.terms.items()})
    return HopfPresentation(P, cop, eps, anti)


def opposite_hopf(H: HopfPresentation) -> HopfPresentation:
    """Negated bracket, twisted coproduct; counit, antipode and d unchanged."""
    P = opposite_presentation(H.base)
    cop = {k: twist(v) for k, v in H.coproduct_table().items()}
    return HopfPresentation(P, cop, H.counit_table(), H.antipode_table())
