"""DG Poisson algebras given by generators, a bracket table and a differential table.

Brackets extend to all elements as biderivations and the differential as a
degree-1 derivation.  The checkers verify the axioms on every monomial
tuple up to a length bound plus a seeded random sample, since the algebras
themselves are usually infinite-dimensional.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .gca import (
    AlgebraError,
    Element,
    Generator,
    GeneratorTable,
    GradedCommutativeAlgebra,
    TensorAlgebra,
    TensorElement,
)
from .report import SuiteReport

__all__ = [
    "PresentationError",
    "PoissonPresentation",
    "MorphismSpec",
    "bracket",
    "differential",
    "check_poisson_axioms",
    "tensor_presentation",
    "tensor_bracket",
    "tensor_differential",
    "embed_tensor",
    "check_tensor_formula",
    "opposite_presentation",
    "apply_morphism",
    "check_dgp_morphism",
    "random_homogeneous",
]


class PresentationError(AlgebraError):
    """Inconsistent presentation data (degrees, duplicate table entries)."""


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class PoissonPresentation:
    """Generators, bracket degree ``p``, bracket and differential tables.

    ``brackets`` maps generator-name pairs to Elements; each unordered pair
    may appear once, in either orientation.  ``differentials`` maps names to
    Elements; missing entries are zero.
    """

    def __init__(
        self,
        algebra: GradedCommutativeAlgebra,
        p: int = 0,
        brackets: Mapping[tuple[str, str], Element] | None = None,
        differentials: Mapping[str, Element] | None = None,
        name: str | None = None,
    ):
        self.algebra = algebra
        self.p = int(p)
        self.name = name
        table = algebra.table
        self.table = table
        self.field = algebra.field
        degs = table.degrees
        store: dict[tuple[int, int], Element] = {}
        for (a, b), value in (brackets or {}).items():
            i, j = table.position(a), table.position(b)
            value = algebra.coerce(value)
            if i > j:
                s = _sign((degs[i] + self.p) * (degs[j] + self.p))
                i, j = j, i
                value = value.scale(-s)
            if (i, j) in store:
                raise PresentationError(f"bracket {{{table.names[i]}, {table.names[j]}}} given twice")
            want = degs[i] + degs[j] + self.p
            self._check_degree(value, want, f"{{{table.names[i]}, {table.names[j]}}}")
            if i == j and (degs[i] + self.p) % 2 == 0 and value:
                raise PresentationError(
                    f"{{{table.names[i]}, {table.names[i]}}} must vanish: |{table.names[i]}|+p is even"
                )
            if value:
                store[(i, j)] = value
        self._brackets = store
        dstore: dict[int, Element] = {}
        for a, value in (differentials or {}).items():
            i = table.position(a)
            value = algebra.coerce(value)
            self._check_degree(value, degs[i] + 1, f"d({table.names[i]})")
            if value:
                dstore[i] = value
        self._diffs = dstore
        self._bcache: dict = {}
        self._gcache: dict = {}
        self._dcache: dict = {}

    @staticmethod
    def _check_degree(value: Element, want: int, what: str) -> None:
        for u in value.terms:
            got = value.algebra.mono_degree(u)
            if got != want:
                raise PresentationError(f"{what}: term of degree {got}, expected {want}")

    # -- table access ---------------------------------------------------
    def bracket_table(self) -> dict[tuple[str, str], Element]:
        n = self.table.names
        return {(n[i], n[j]): v for (i, j), v in sorted(self._brackets.items())}

    def differential_table(self) -> dict[str, Element]:
        n = self.table.names
        return {n[i]: v for i, v in sorted(self._diffs.items())}

    def generator_bracket(self, i: int, j: int) -> Element:
        degs = self.table.degrees
        if i <= j:
            return self._brackets.get((i, j)) or self.algebra.zero()
        v = self._brackets.get((j, i))
        if v is None:
            return self.algebra.zero()
        return v.scale(-_sign((degs[i] + self.p) * (degs[j] + self.p)))

    def generator_differential(self, i: int) -> Element:
        return self._diffs.get(i) or self.algebra.zero()

    def has_zero_differential(self) -> bool:
        return not self._diffs

    def __eq__(self, other):
        return (
            isinstance(other, PoissonPresentation)
            and self.algebra == other.algebra
            and self.p == other.p
            and self._brackets == other._brackets
            and self._diffs == other._diffs
        )

    def __hash__(self):
        return hash((self.algebra, self.p, len(self._brackets)))

    def __repr__(self):
        return f"PoissonPresentation({list(self.table.names)}, p={self.p}, {self.field})"

    # -- structure maps ---------------------------------------------------
    def bracket(self, a, b) -> Element:
        return bracket(self, a, b)

    def d(self, a) -> Element:
        return differential(self, a)

    def _gen_mono(self, i: int, v) -> Element:
        """{g_i, v} for a monomial v, expanding v from its first factor."""
        key = (i, v)
        hit = self._gcache.get(key)
        if hit is not None:
            return hit
        A = self.algebra
        if not any(v):
            res = A.zero()
        else:
            j, rest = A.split_first(v)
            rest_el = A.monomial(rest)
            # {g, g_j r} = {g, g_j} r + (-1)^{(|g|+p)|g_j|} g_j {g, r}
            res = self.generator_bracket(i, j) * rest_el
            inner = self._gen_mono(i, rest)
            if inner:
                s = _sign((self.table.degrees[i] + self.p) * self.table.degrees[j])
                res = res + (A.monomial(_unit(A, j)) * inner).scale(s)
        self._gcache[key] = res
        return res

    def _mono(self, u, v) -> Element:
        key = (u, v)
        hit = self._bcache.get(key)
        if hit is not None:
            return hit
        A = self.algebra
        if not any(u) or not any(v):
            res = A.zero()
        else:
            i, rest = A.split_first(u)
            if not any(rest):
                res = self._gen_mono(i, v)
            else:
                # {g r, c} = g {r, c} + (-1)^{(|c|+p)|r|} {g, c} r
                s = _sign((A.mono_degree(v) + self.p) * A.mono_degree(rest))
                res = A.monomial(_unit(A, i)) * self._mono(rest, v)
                res = res + (self._gen_mono(i, v) * A.monomial(rest)).scale(s)
        self._bcache[key] = res
        return res

    def _d_mono(self, u) -> Element:
        hit = self._dcache.get(u)
        if hit is not None:
            return hit
        A = self.algebra
        if not any(u):
            res = A.zero()
        else:
            i, rest = A.split_first(u)
            # d(g r) = d(g) r + (-1)^{|g|} g d(r)
            res = self.generator_differential(i) * A.monomial(rest)
            dr = self._d_mono(rest)
            if dr:
                res = res + (A.monomial(_unit(A, i)) * dr).scale(_sign(self.table.degrees[i]))
        self._dcache[u] = res
        return res


def _unit(A: GradedCommutativeAlgebra, i: int):
    u = [0] * A.n
    u[i] = 1
    return tuple(u)


def bracket(P: PoissonPresentation, a, b) -> Element:
    """The biderivation extension of the bracket table (bilinear, term by term)."""
    A = P.algebra
    a, b = A.coerce(a), A.coerce(b)
    terms: dict = {}
    for u, c in a.terms.items():
        for v, e in b.terms.items():
            for w, f in P._mono(u, v).terms.items():
                terms[w] = terms.get(w, 0) + c * e * f
    return Element(A, terms)


def differential(P: PoissonPresentation, a) -> Element:
    """The degree-1 derivation extension of the differential table."""
    A = P.algebra
    a = A.coerce(a)
    terms: dict = {}
    for u, c in a.terms.items():
        for w, f in P._d_mono(u).terms.items():
            terms[w] = terms.get(w, 0) + c * f
    return Element(A, terms)


# ---------------------------------------------------------------------------
# sampling helpers shared by the checkers
# ---------------------------------------------------------------------------


def _tuples(monos: list, arity: int, max_length: int) -> Iterable[tuple]:
    """Tuples of monomials whose combined length is at most ``max_length``."""
    for tup in itertools.product(monos, repeat=arity):
        if sum(sum(u) for u in tup) <= max_length:
            yield tup


def random_homogeneous(A: GradedCommutativeAlgebra, rng: random.Random, max_length: int, terms: int = 3) -> Element:
    """A seeded random homogeneous element with small integer coefficients."""
    monos = A.monomials(max_length, 1)
    if not monos:
        return A.scalar(rng.randint(1, 3))
    by_degree: dict[int, list] = {}
    for u in monos:
        by_degree.setdefault(A.mono_degree(u), []).append(u)
    degree = rng.choice(sorted(by_degree))
    pool = by_degree[degree]
    chosen = rng.sample(pool, min(terms, len(pool)))
    res = A.zero()
    for u in chosen:
        c = 0
        while c == 0:
            c = rng.randint(-3, 3)
        res = res + A.monomial(u, c)
    if not res:
        res = A.monomial(pool[0])
    return res


def _deg(A: GradedCommutativeAlgebra, a: Element) -> int:
    for u in a.terms:
        return A.mono_degree(u)
    return 0


def _fmt(*xs) -> str:
    return ", ".join(str(x) for x in xs)


def check_poisson_axioms(
    P: PoissonPresentation, degree_bound: int = 3, seed: int = 0, samples: int = 25
) -> SuiteReport:
    """Bounded verification of the DG Poisson axioms.

    Exhaustive over monomial pairs/triples of combined length <= degree_bound
    (generator triples are always included), then ``samples`` seeded random
    homogeneous triples.  Violations are data, never exceptions.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    A = P.algebra
    p = P.p
    rep = SuiteReport("poisson")
    rep.notes.append(
        f"bounded verification: monomial tuples of combined length <= {degree_bound}, "
        f"{samples} random triples (seed {seed})"
    )
    monos = A.monomials(degree_bound, 1)
    one = A.monomial

    def br(x, y):
        return bracket(P, x, y)

    def d(x):
        return differential(P, x)

    n = A.n
    for i in range(n):
        for j in range(i, n):
            gi, gj = one(_unit(A, i)), one(_unit(A, j))
            rep.check("bracket table", _fmt(gi, gj), br(gi, gj), P.generator_bracket(i, j))

    def pair_laws(a, b):
        da, db = _deg(A, a), _deg(A, b)
        w = lambda: _fmt(a, b)  # noqa: E731
        rep.check("antisymmetry", w, br(a, b), br(b, a).scale(-_sign((da + p) * (db + p))))
        rep.check("compatibility", w, d(br(a, b)), br(d(a), b) + br(a, d(b)).scale(_sign(da + p)))
        rep.check("leibniz", w, d(a * b), d(a) * b + (a * d(b)).scale(_sign(da)))

    def triple_laws(a, b, c):
        da, db = _deg(A, a), _deg(A, b)
        w = lambda: _fmt(a, b, c)  # noqa: E731
        rep.check(
            "jacobi", w, br(a, br(b, c)), br(br(a, b), c) + br(b, br(a, c)).scale(_sign((da + p) * (db + p)))
        )
        rep.check("biderivation", w, br(a, b * c), br(a, b) * c + (b * br(a, c)).scale(_sign((da + p) * db)))

    for u in A.monomials(max(degree_bound, 2), 1):
        a = one(u)
        rep.check("d^2=0", str(a), d(d(a)), A.zero())
    for u, v in _tuples(monos, 2, max(degree_bound, 2)):
        pair_laws(one(u), one(v))
    for u, v, w in _tuples(monos, 3, max(degree_bound, 3)):
        triple_laws(one(u), one(v), one(w))

    # relations g^N = 0 must be killed by every derivation in play
    for i, g in enumerate(A.table):
        N = g.truncation
        if N is None or g.odd:
            continue
        gi = one(_unit(A, i))
        lead = (gi ** (N - 1)).scale(N)
        for j in range(n):
            gj = one(_unit(A, j))
            rep.check("truncation", _fmt(gj, f"{g.name}^{N}"), lead * br(gj, gi), A.zero())
        rep.check("truncation", f"d({g.name}^{N})", lead * d(gi), A.zero())

    rng = random.Random(seed)
    L = max(1, min(degree_bound, 3))
    for _ in range(samples):
        a, b, c = (random_homogeneous(A, rng, L) for _ in range(3))
        pair_laws(a, b)
        triple_laws(a, b, c)
    return rep


# ---------------------------------------------------------------------------
# tensor products and opposites
# ---------------------------------------------------------------------------


def _merged_names(A: GeneratorTable, B: GeneratorTable) -> tuple[list[str], list[str]]:
    left, right = list(A.names), list(B.names)
    if set(left) & set(right):
        left = [f"{n}_1" for n in left]
        right = [f"{n}_2" for n in right]
        if set(left) & set(right) or len(set(left + right)) != len(left) + len(right):
            raise PresentationError("cannot find disjoint generator names for the tensor product")
    return left, right


@dataclass(frozen=True)
class TensorFactors:
    left: PoissonPresentation
    right: PoissonPresentation
    left_names: tuple[str, ...]
    right_names: tuple[str, ...]


def tensor_presentation(A: PoissonPresentation, B: PoissonPresentation) -> PoissonPresentation:
    """A (x) B on the disjoint union of generators; cross brackets vanish on generators.

    Left generators come first in the merged order, so ``a b`` with a from A
    and b from B is already canonical.  Names are kept if disjoint, otherwise
    suffixed ``_1`` / ``_2``.
    """
    if A.p != B.p:
        raise PresentationError(f"bracket degrees differ ({A.p} vs {B.p})")
    if A.field != B.field:
        raise PresentationError(f"fields differ ({A.field} vs {B.field})")
    ln, rn = _merged_names(A.table, B.table)
    gens = [Generator(nm, g.degree, g.truncation) for nm, g in zip(ln, A.table)]
    gens += [Generator(nm, g.degree, g.truncation) for nm, g in zip(rn, B.table)]
    M = GradedCommutativeAlgebra(GeneratorTable(gens), A.field)
    nA = A.algebra.n

    def lift_left(x: Element) -> Element:
        return M.element({tuple(u) + (0,) * B.algebra.n: c for u, c in x.terms.items()})

    def lift_right(x: Element) -> Element:
        return M.element({(0,) * nA + tuple(u): c for u, c in x.terms.items()})

    brackets = {}
    for (a, b), v in A.bracket_table().items():
        brackets[(ln[A.table.position(a)], ln[A.table.position(b)])] = lift_left(v)
    for (a, b), v in B.bracket_table().items():
        brackets[(rn[B.table.position(a)], rn[B.table.position(b)])] = lift_right(v)
    diffs = {}
    for a, v in A.differential_table().items():
        diffs[ln[A.table.position(a)]] = lift_left(v)
    for a, v in B.differential_table().items():
        diffs[rn[B.table.position(a)]] = lift_right(v)
    name = f"{A.name or 'A'} (x) {B.name or 'B'}"
    P = PoissonPresentation(M, A.p, brackets, diffs, name=name)
    P.factors = TensorFactors(A, B, tuple(ln), tuple(rn))
    return P


def embed_tensor(P_AB: PoissonPresentation, t: TensorElement) -> Element:
    """a (x) b  ->  a*b in the merged algebra (no sign: left generators sort first)."""
    M = P_AB.algebra
    terms = {}
    for (u, v), c in t.terms.items():
        key = tuple(u) + tuple(v)
        terms[key] = terms.get(key, 0) + c
    return M.element(terms)


def tensor_bracket(A: PoissonPresentation, B: PoissonPresentation, s: TensorElement, t: TensorElement) -> TensorElement:
    """{a(x)b, a'(x)b'} = (-1)^{(|a'|+p)|b|}{a,a'}(x)bb' + (-1)^{(|b|+p)|a'|} aa'(x){b,b'}."""
    T = s.parent
    if t.parent != T or T.arity != 2 or T.factors != (A.algebra, B.algebra):
        raise AlgebraError("tensor legs do not match the presentations")
    p = A.p
    res = T.zero()
    for (a, b), c1 in s.terms.items():
        db = B.algebra.mono_degree(b)
        ea, eb = A.algebra.monomial(a, c1), B.algebra.monomial(b)
        for (a2, b2), c2 in t.terms.items():
            da2 = A.algebra.mono_degree(a2)
            ea2, eb2 = A.algebra.monomial(a2, c2), B.algebra.monomial(b2)
            first = T.pure(bracket(A, ea, ea2), eb * eb2).scale(_sign((da2 + p) * db))
            second = T.pure(ea * ea2, bracket(B, eb, eb2)).scale(_sign((db + p) * da2))
            res = res + first + second
    return res


def tensor_differential(A: PoissonPresentation, B: PoissonPresentation, s: TensorElement) -> TensorElement:
    """d(a (x) b) = d(a) (x) b + (-1)^{|a|} a (x) d(b)."""
    T = s.parent
    res = T.zero()
    for (a, b), c in s.terms.items():
        ea, eb = A.algebra.monomial(a, c), B.algebra.monomial(b)
        res = res + T.pure(differential(A, ea), eb)
        res = res + T.pure(ea, differential(B, eb)).scale(_sign(A.algebra.mono_degree(a)))
    return res


def check_tensor_formula(P_AB: PoissonPresentation, degree_bound: int = 2) -> SuiteReport:
    """Instance check that the merged presentation realizes the tensor formulas.

    For monomials a, a' of A and b, b' of B (each of length <= degree_bound),
    product, bracket and differential of a(x)b and a'(x)b' computed with the
    explicit tensor formulas agree with the merged presentation.
    """
    f: TensorFactors = P_AB.factors
    A, B = f.left, f.right
    T = TensorAlgebra((A.algebra, B.algebra))
    rep = SuiteReport("tensor formula")
    ma = A.algebra.monomials(degree_bound)
    mb = B.algebra.monomials(degree_bound)
    basis = [T.pure(A.algebra.monomial(u), B.algebra.monomial(v)) for u in ma for v in mb]
    for s in basis:
        rep.check("differential", str(s), embed_tensor(P_AB, tensor_differential(A, B, s)), differential(P_AB, embed_tensor(P_AB, s)))
        for t in basis:
            w = _fmt(s, t)
            es, et = embed_tensor(P_AB, s), embed_tensor(P_AB, t)
            rep.check("product", w, embed_tensor(P_AB, s * t), es * et)
            rep.check("bracket", w, embed_tensor(P_AB, tensor_bracket(A, B, s, t)), bracket(P_AB, es, et))
    return rep


def opposite_presentation(A: PoissonPresentation) -> PoissonPresentation:
    """Same algebra and differential, bracket negated: {a,b}^op = -{a,b}."""
    brackets = {k: -v for k, v in A.bracket_table().items()}
    name = f"{A.name}^op" if A.name else None
    return PoissonPresentation(A.algebra, A.p, brackets, A.differential_table(), name=name)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


class MorphismSpec:
    """A degree-0 algebra map given on generators."""

    def __init__(self, source: PoissonPresentation, target: PoissonPresentation, images: Mapping[str, Element]):
        self.source = source
        self.target = target
        B = target.algebra
        imgs = []
        for g in source.table:
            v = images.get(g.name)
            v = B.zero() if v is None else B.coerce(v)
            PoissonPresentation._check_degree(v, g.degree, f"image of {g.name}")
            imgs.append(v)
        unknown = set(images) - set(source.table.names)
        if unknown:
            raise AlgebraError(f"images given for undeclared generators {sorted(unknown)}")
        self.images = tuple(imgs)
        self._cache: dict = {}

    @classmethod
    def identity(cls, P: PoissonPresentation) -> "MorphismSpec":
        return cls(P, P, {g.name: P.algebra.gen(g.name) for g in P.table})

    def image_of_monomial(self, u) -> Element:
        hit = self._cache.get(u)
        if hit is not None:
            return hit
        res = self.target.algebra.one()
        for i, e in enumerate(u):
            for _ in range(e):
                res = res * self.images[i]
        self._cache[u] = res
        return res

    def __call__(self, a) -> Element:
        return apply_morphism(self, a)


def apply_morphism(phi: MorphismSpec, a) -> Element:
    """Multiplicative, linear extension of the generator images."""
    a = phi.source.algebra.coerce(a)
    res = phi.target.algebra.zero()
    for u, c in a.terms.items():
        res = res + phi.image_of_monomial(u).scale(c)
    return res


def check_dgp_morphism(phi: MorphismSpec, degree_bound: int = 2) -> SuiteReport:
    """phi d = d phi and phi{a,b} = {phi a, phi b} on monomials up to the bound."""
    S, T = phi.source, phi.target
    A = S.algebra
    rep = SuiteReport("morphism")
    monos = A.monomials(max(degree_bound, 1), 1)
    for u in monos:
        a = A.monomial(u)
        rep.check("commutes with d", str(a), phi(differential(S, a)), differential(T, phi(a)))
    for u, v in _tuples(monos, 2, max(degree_bound, 2)):
        a, b = A.monomial(u), A.monomial(v)
        w = _fmt(a, b)
        rep.check("bracket", w, phi(bracket(S, a, b)), bracket(T, phi(a), phi(b)))
        rep.check("multiplicative", w, phi(a * b), phi(a) * phi(b))
    for i, g in enumerate(A.table):
        if g.bound is not None:
            rep.check("truncation", f"{g.name}^{g.bound}", phi.images[i] ** g.bound, T.algebra.zero())
    return rep
