"""Universal enveloping algebras of presented DG Poisson algebras.

A^e is realized as the free algebra on letters m(g), h(g) modulo an
oriented rule set:

* m(g_i) m(g_j) -> +-m(g_j) m(g_i)                               (i > j)
* h(g_i) m(g_j) -> (-1)^{(|g_i|+p)|g_j|} m(g_j) h(g_i) + m({g_i, g_j})
* h(g_i) h(g_j) -> (-1)^{(|g_i|+p)(|g_j|+p)} h(g_j) h(g_i) + h({g_i, g_j})   (i > j)
* m(g)^2 -> 0 for odd g;  h(g)^2 -> 1/2 h({g, g}) when |g|+p is odd
* m(g)^N -> 0 for truncated g

Letters are ints: ``i`` is m(g_i) and ``n + i`` is h(g_i); the integer
order is the PBW order (all m before all h).  Every rule strictly lowers
(number of h letters, inversions), so leftmost reduction terminates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .gca import AlgebraError, Element, GradedCommutativeAlgebra, TensorAlgebra, TensorElement
from .hopf import HopfPresentation, opposite_hopf, tensor_hopf
from .poisson import (
    MorphismSpec,
    PoissonPresentation,
    _fmt,
    _sign,
    _tuples,
    _unit,
    bracket,
    check_dgp_morphism,
    differential,
    opposite_presentation,
    random_homogeneous,
    tensor_bracket,
    tensor_differential,
    tensor_presentation,
)
from .report import Report, SuiteReport

__all__ = [
    "UEAError",
    "RewriteSystem",
    "NCElement",
    "NCTensorAlgebra",
    "NCTensor",
    "build_uea",
    "normal_form",
    "map_m",
    "map_h",
    "d_e",
    "coproduct_e",
    "counit_e",
    "antipode_e",
    "check_defining_identities",
    "check_confluence",
    "check_differential_e",
    "check_hopf_e",
    "check_m_injective",
    "tensor_uea",
    "check_tensor_uea",
    "opposite_uea",
    "check_opposite_uea",
    "induced_morphism",
    "check_induced_morphism",
    "pbw_count",
    "graded_commutative_count",
]

Word = tuple  # tuple of letter codes


class UEAError(AlgebraError):
    """Unsupported configuration or missing Hopf data for an enveloping algebra."""


class RewriteSystem:
    """The rule set for A^e plus memoized normal forms.

    ``rules`` maps left-hand-side words to dicts {word: coefficient}; it is
    normally produced by :func:`build_uea` but may be supplied directly to
    experiment with altered rule sets.
    """

    def __init__(
        self,
        source: PoissonPresentation,
        hopf: HopfPresentation | None = None,
        rules: Mapping[Word, Mapping[Word, object]] | None = None,
        step_budget: int = 2_000_000,
    ):
        if hopf is not None and hopf.base != source:
            raise UEAError("Hopf data does not belong to the source presentation")
        self.source = source
        self.hopf = hopf
        self.algebra = source.algebra
        self.field = source.field
        self.p = source.p
        n = self.algebra.n
        self.n = n
        degs = self.algebra.table.degrees
        self.letter_degrees = tuple(degs) + tuple(d + self.p for d in degs)
        names = self.algebra.table.names
        self.letter_names = tuple(f"m({x})" for x in names) + tuple(f"h({x})" for x in names)
        for g in self.algebra.table:
            N = g.truncation
            char = self.field.characteristic
            if N is not None and not g.odd and (char == 0 or N % char):
                raise UEAError(
                    f"truncation {g.name}^{N}: lifting to A^e is only supported when the "
                    f"characteristic divides {N}"
                )
        self.rules: dict[Word, dict[Word, object]] = (
            {tuple(k): dict(v) for k, v in rules.items()} if rules is not None else self._default_rules()
        )
        self._lengths = sorted({len(k) for k in self.rules})
        self._budget = step_budget
        self._nf: dict[Word, dict[Word, object]] = {}
        self._delta: dict = {}
        self._anti: dict = {}
        self._d: dict = {}

    def __repr__(self):
        return f"RewriteSystem({list(self.algebra.table.names)}, p={self.p}, {len(self.rules)} rules)"

    def with_rules(self, rules: Mapping[Word, Mapping[Word, object]]) -> "RewriteSystem":
        return RewriteSystem(self.source, self.hopf, rules)

    # -- letters and words ------------------------------------------------
    def m_letter(self, name: str) -> int:
        return self.algebra.table.position(name)

    def h_letter(self, name: str) -> int:
        return self.n + self.algebra.table.position(name)

    def is_h(self, letter: int) -> bool:
        return letter >= self.n

    def word_degree(self, w: Word) -> int:
        return sum(self.letter_degrees[x] for x in w)

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for letter, grp in itertools.groupby(w):
            k = len(list(grp))
            nm = self.letter_names[letter]
            parts.append(nm if k == 1 else f"{nm}^{k}")
        return "*".join(parts)

    # -- embeddings of A (no rules needed: images are already normal) -----
    def _m_word(self, u) -> Word:
        return tuple(i for i, e in enumerate(u) for _ in range(e))

    def _h_mono(self, u) -> dict[Word, object]:
        """beta(u) = sum_i e_i (-1)^{|g_i| |later factors|} m(u / g_i) h(g_i)."""
        A = self.algebra
        degs = A.table.degrees
        out: dict[Word, object] = {}
        later = A.mono_degree(u)
        for i, e in enumerate(u):
            if not e:
                continue
            later -= e * degs[i]
            rest = list(u)
            rest[i] -= 1
            sign = _sign(degs[i] * (later + (e - 1) * degs[i]))
            # even generators repeat e times with sign +1; odd ones have e == 1
            w = self._m_word(rest) + (self.n + i,)
            out[w] = out.get(w, 0) + sign * e
        return out

    def M(self, a: Element) -> dict[Word, object]:
        out: dict[Word, object] = {}
        for u, c in a.terms.items():
            w = self._m_word(u)
            out[w] = out.get(w, 0) + c
        return out

    def H(self, a: Element) -> dict[Word, object]:
        out: dict[Word, object] = {}
        for u, c in a.terms.items():
            for w, e in self._h_mono(u).items():
                out[w] = out.get(w, 0) + c * e
        return out

    def _default_rules(self) -> dict[Word, dict[Word, object]]:
        n, p = self.n, self.p
        F = self.field
        A = self.algebra
        degs = A.table.degrees
        P = self.source
        rules: dict[Word, dict[Word, object]] = {}

        def add(lhs, rhs):
            rules[lhs] = {w: F.norm(c) for w, c in rhs.items() if F.norm(c) != 0}

        for i in range(n):
            for j in range(n):
                br = P.generator_bracket(i, j)
                if i > j:
                    add((i, j), {(j, i): _sign(degs[i] * degs[j])})
                    rhs = {(n + j, n + i): _sign((degs[i] + p) * (degs[j] + p))}
                    for w, c in self.H(br).items():
                        rhs[w] = rhs.get(w, 0) + c
                    add((n + i, n + j), rhs)
                elif i == j:
                    if degs[i] % 2:
                        add((i, i), {})
                    if (degs[i] + p) % 2:
                        half = F.inv(F.norm(2))
                        add((n + i, n + i), {w: c * half for w, c in self.H(br).items()})
                rhs = {(j, n + i): _sign((degs[i] + p) * degs[j])}
                for w, c in self.M(br).items():
                    rhs[w] = rhs.get(w, 0) + c
                add((n + i, j), rhs)
        for i, g in enumerate(A.table):
            if g.truncation is not None and not g.odd:
                add((i,) * g.truncation, {})
        return rules

    # -- rewriting --------------------------------------------------------
    def first_redex(self, w: Word):
        rules = self.rules
        for k in range(len(w)):
            for ell in self._lengths:
                if k + ell > len(w):
                    break
                lhs = w[k:k + ell]
                if lhs in rules:
                    return k, lhs
        return None

    def redexes(self, w: Word) -> list[tuple[int, Word]]:
        out = []
        for k in range(len(w)):
            for ell in self._lengths:
                if k + ell <= len(w) and w[k:k + ell] in self.rules:
                    out.append((k, w[k:k + ell]))
        return out

    def is_normal(self, w: Word) -> bool:
        return self.first_redex(w) is None

    def rewrite_at(self, w: Word, k: int, lhs: Word) -> dict[Word, object]:
        """One rewrite step at position k (the caller guarantees a redex there)."""
        out: dict[Word, object] = {}
        pre, post = w[:k], w[k + len(lhs):]
        for r, c in self.rules[lhs].items():
            v = pre + r + post
            out[v] = out.get(v, 0) + c
        return out

    def nf_word(self, w: Word) -> dict[Word, object]:
        hit = self._nf.get(w)
        if hit is not None:
            return hit
        if len(self._nf) > self._budget:
            raise UEAError("normal form step budget exhausted (non-terminating rule set?)")
        red = self.first_redex(w)
        if red is None:
            res = {w: self.field.one}
        else:
            k, lhs = red
            acc: dict[Word, object] = {}
            for v, c in self.rewrite_at(w, k, lhs).items():
                for x, e in self.nf_word(v).items():
                    acc[x] = acc.get(x, 0) + c * e
            norm = self.field.norm
            res = {}
            for x, c in acc.items():
                c = norm(c)
                if c != 0:
                    res[x] = c
        self._nf[w] = res
        return res

    def nf_combination(self, terms: Mapping[Word, object]) -> dict[Word, object]:
        acc: dict[Word, object] = {}
        for w, c in terms.items():
            for x, e in self.nf_word(tuple(w)).items():
                acc[x] = acc.get(x, 0) + c * e
        return acc

    # -- element constructors ---------------------------------------------
    def element(self, terms: Mapping[Word, object] | None = None, normalize: bool = True) -> "NCElement":
        terms = terms or {}
        return NCElement(self, self.nf_combination(terms) if normalize else terms)

    def zero(self) -> "NCElement":
        return NCElement(self, {})

    def one(self) -> "NCElement":
        return NCElement(self, {(): self.field.one})

    def scalar(self, c) -> "NCElement":
        return NCElement(self, {(): self.field(c)})

    def word(self, letters: Iterable[int]) -> "NCElement":
        return self.element({tuple(letters): 1})

    def m(self, name: str) -> "NCElement":
        return self.word((self.m_letter(name),))

    def h(self, name: str) -> "NCElement":
        return self.word((self.h_letter(name),))

    def normal_words(self, max_length: int, min_length: int = 0) -> list[Word]:
        """Irreducible words up to the given length, shortest first."""
        out = []
        letters = range(2 * self.n)
        for length in range(min_length, max_length + 1):
            for w in itertools.combinations_with_replacement(letters, length):
                if self.is_normal(w):
                    out.append(w)
        return out


class NCElement:
    __slots__ = ("system", "terms")

    def __init__(self, system: RewriteSystem, terms: Mapping[Word, object]):
        self.system = system
        norm = system.field.norm
        clean = {}
        for w, c in terms.items():
            c = norm(c)
            if c != 0:
                clean[tuple(w)] = c
        self.terms = clean

    def _other(self, other):
        if isinstance(other, NCElement):
            if other.system is not self.system:
                raise AlgebraError("elements of different enveloping algebras")
            return other
        return self.system.scalar(other)

    def __add__(self, other):
        other = self._other(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return NCElement(self.system, t)

    __radd__ = __add__

    def __neg__(self):
        return NCElement(self.system, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCElement":
        c = self.system.field.norm(c)
        return NCElement(self.system, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCElement):
            return self.scale(self.system.field(other))
        other = self._other(other)
        R = self.system
        acc: dict[Word, object] = {}
        for u, c in self.terms.items():
            for v, e in other.terms.items():
                for w, f in R.nf_word(u + v).items():
                    acc[w] = acc.get(w, 0) + c * e * f
        return NCElement(R, acc)

    def __rmul__(self, other):
        return self.scale(self.system.field(other))

    def __pow__(self, k: int):
        res = self.system.one()
        for _ in range(k):
            res = res * self
        return res

    def __eq__(self, other):
        if isinstance(other, NCElement):
            return self.system is other.system and self.terms == other.terms
        if isinstance(other, int):
            return self == self.system.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        from .gca import _format_sum

        R = self.system
        return _format_sum([(R.format_word(w), c) for w, c in self.sorted_terms()], R.field)

    def __repr__(self):
        return f"NCElement({self})"


def build_uea(A: PoissonPresentation, hopf: HopfPresentation | None = None) -> RewriteSystem:
    """The rule set presenting A^e (with Hopf data attached when given)."""
    return RewriteSystem(A, hopf)


def normal_form(R: RewriteSystem, e: NCElement | Mapping[Word, object]) -> NCElement:
    terms = e.terms if isinstance(e, NCElement) else e
    return NCElement(R, R.nf_combination(terms))


def map_m(R: RewriteSystem, a) -> NCElement:
    """The algebra embedding m: A -> A^e."""
    return R.element(R.M(R.algebra.coerce(a)))


def map_h(R: RewriteSystem, a) -> NCElement:
    """The Lie map h: A -> A^e, h(ab) = m(a)h(b) + (-1)^{|a||b|} m(b)h(a), h(1) = 0."""
    return R.element(R.H(R.algebra.coerce(a)))


# ---------------------------------------------------------------------------
# structure maps on words
# ---------------------------------------------------------------------------


def _letter_value(R: RewriteSystem, letter: int, f: Callable[[Element], Element]) -> NCElement:
    """Image of a letter under (m f, h f) for a map f on A."""
    A = R.algebra
    i = letter % R.n
    g = A.monomial(_unit(A, i))
    return map_h(R, f(g)) if R.is_h(letter) else map_m(R, f(g))


def _d_word(R: RewriteSystem, w: Word) -> NCElement:
    hit = R._d.get(w)
    if hit is not None:
        return hit
    if not w:
        res = R.zero()
    else:
        x, rest = w[0], w[1:]
        dx = _letter_value(R, x, lambda g: differential(R.source, g))
        res = dx * R.word(rest)
        drest = _d_word(R, rest)
        if drest:
            res = res + (R.word((x,)) * drest).scale(_sign(R.letter_degrees[x]))
    R._d[w] = res
    return res


def d_e(R: RewriteSystem, e: NCElement) -> NCElement:
    """The degree-1 derivation with d(m(g)) = m(dg), d(h(g)) = h(dg)."""
    res = R.zero()
    for w, c in e.terms.items():
        res = res + _d_word(R, w).scale(c)
    return res


def _need_hopf(R: RewriteSystem) -> HopfPresentation:
    if R.hopf is None:
        raise UEAError("this operation needs Hopf data on the source presentation")
    return R.hopf


class NCTensorAlgebra:
    """Tensor products of enveloping algebras with the Koszul-signed product."""

    def __init__(self, systems):
        self.systems = tuple(systems)
        self.field = self.systems[0].field

    def __eq__(self, other):
        return isinstance(other, NCTensorAlgebra) and all(
            a is b for a, b in zip(self.systems, other.systems)
        ) and len(self.systems) == len(other.systems)

    def __hash__(self):
        return hash(tuple(id(s) for s in self.systems))

    @property
    def arity(self):
        return len(self.systems)

    def zero(self) -> "NCTensor":
        return NCTensor(self, {})

    def one(self) -> "NCTensor":
        return NCTensor(self, {((),) * self.arity: self.field.one})

    def pure(self, *legs: NCElement) -> "NCTensor":
        terms: dict = {(): self.field.one}
        for leg in legs:
            new: dict = {}
            for key, c in terms.items():
                for w, e in leg.terms.items():
                    k2 = key + (w,)
                    new[k2] = new.get(k2, 0) + c * e
            terms = new
        return NCTensor(self, terms)


class NCTensor:
    __slots__ = ("parent", "terms")

    def __init__(self, parent: NCTensorAlgebra, terms):
        self.parent = parent
        norm = parent.field.norm
        clean = {}
        for k, c in terms.items():
            c = norm(c)
            if c != 0:
                clean[tuple(k)] = c
        self.terms = clean

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return NCTensor(self.parent, t)

    def __neg__(self):
        return NCTensor(self.parent, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NCTensor":
        c = self.parent.field.norm(c)
        return NCTensor(self.parent, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "NCTensor") -> "NCTensor":
        P = self.parent
        Rs = P.systems
        k = P.arity
        acc: dict = {}
        for key1, c1 in self.terms.items():
            d1 = [Rs[i].word_degree(key1[i]) for i in range(k)]
            for key2, c2 in other.terms.items():
                parity = 0
                suffix = 0
                for j in range(k - 1, -1, -1):
                    parity += Rs[j].word_degree(key2[j]) * suffix
                    suffix += d1[j]
                partial: dict = {(): -(c1 * c2) if parity % 2 else c1 * c2}
                for i in range(k):
                    nfs = Rs[i].nf_word(key1[i] + key2[i])
                    new: dict = {}
                    for kk, cc in partial.items():
                        for w, e in nfs.items():
                            new[kk + (w,)] = cc * e
                    partial = new
                    if not partial:
                        break
                for kk, cc in partial.items():
                    acc[kk] = acc.get(kk, 0) + cc
        return NCTensor(P, acc)

    def __eq__(self, other):
        if not isinstance(other, NCTensor):
            return NotImplemented
        return self.parent == other.parent and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: tuple((len(w), w) for w in kv[0]))

    def __str__(self):
        from .gca import _format_sum

        Rs = self.parent.systems
        items = [("#".join(R.format_word(w) for R, w in zip(Rs, k)), c) for k, c in self.sorted_terms()]
        return _format_sum(items, self.parent.field)

    def __repr__(self):
        return f"NCTensor({self})"


def _square(R: RewriteSystem) -> NCTensorAlgebra:
    sq = getattr(R, "_square", None)
    if sq is None:
        sq = R._square = NCTensorAlgebra((R, R))
    return sq


def _letter_coproduct(R: RewriteSystem, letter: int) -> NCTensor:
    H = _need_hopf(R)
    A = R.algebra
    T = _square(R)
    i = letter % R.n
    dg = H.coproduct_table()[A.table.names[i]]
    res = T.zero()
    for (u, v), c in dg.terms.items():
        a1, a2 = A.monomial(u), A.monomial(v)
        if R.is_h(letter):
            res = res + T.pure(map_m(R, a1), map_h(R, a2)).scale(c) + T.pure(map_h(R, a1), map_m(R, a2)).scale(c)
        else:
            res = res + T.pure(map_m(R, a1), map_m(R, a2)).scale(c)
    return res


def _coproduct_word(R: RewriteSystem, w: Word) -> NCTensor:
    hit = R._delta.get(w)
    if hit is not None:
        return hit
    if not w:
        res = _square(R).one()
    else:
        res = _letter_coproduct(R, w[0]) * _coproduct_word(R, w[1:])
    R._delta[w] = res
    return res


def coproduct_e(R: RewriteSystem, e: NCElement) -> NCTensor:
    """Delta^e m = (m(x)m) Delta,  Delta^e h = (m(x)h + h(x)m) Delta, extended multiplicatively."""
    res = _square(R).zero()
    for w, c in e.terms.items():
        res = res + _coproduct_word(R, w).scale(c)
    return res


def _counit_word(R: RewriteSystem, w: Word):
    H = _need_hopf(R)
    F = R.field
    val = F.one
    eps = H.counit_table()
    names = R.algebra.table.names
    for x in w:
        if R.is_h(x):
            return F.zero
        val = F.norm(val * eps[names[x]])
    return val


def counit_e(R: RewriteSystem, e: NCElement):
    """epsilon^e m = epsilon, epsilon^e h = 0."""
    F = R.field
    total = F.zero
    for w, c in e.terms.items():
        total = F.norm(total + c * _counit_word(R, w))
    return total


def _antipode_word(R: RewriteSystem, w: Word) -> NCElement:
    hit = R._anti.get(w)
    if hit is not None:
        return hit
    H = _need_hopf(R)
    if not w:
        res = R.one()
    else:
        x, rest = w[0], w[1:]
        sx = _letter_value(R, x, lambda g: _antipode_A(H, g))
        s = _sign(R.letter_degrees[x] * R.word_degree(rest))
        res = (_antipode_word(R, rest) * sx).scale(s)
    R._anti[w] = res
    return res


def _antipode_A(H: HopfPresentation, g: Element) -> Element:
    from .hopf import antipode

    return antipode(H, g)


def antipode_e(R: RewriteSystem, e: NCElement) -> NCElement:
    """S^e m = m S, S^e h = h S, extended anti-multiplicatively with Koszul signs."""
    res = R.zero()
    for w, c in e.terms.items():
        res = res + _antipode_word(R, w).scale(c)
    return res


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def _homog_deg(A: GradedCommutativeAlgebra, a: Element) -> int:
    for u in a.terms:
        return A.mono_degree(u)
    return 0


def check_defining_identities(
    R: RewriteSystem, degree_bound: int = 2, seed: int = 0, samples: int = 200
) -> SuiteReport:
    """Both universal-property identities, the Lie-map law, multiplicativity of m
    and d-compatibility, on generator pairs, monomial pairs up to the bound and
    ``samples`` seeded random homogeneous pairs."""
    A = R.algebra
    P = R.source
    p = R.p
    rep = SuiteReport("defining identities")
    m = lambda a: map_m(R, a)  # noqa: E731
    h = lambda a: map_h(R, a)  # noqa: E731

    def pair(a, b):
        da, db = _homog_deg(A, a), _homog_deg(A, b)
        w = lambda: _fmt(a, b)  # noqa: E731
        br = bracket(P, a, b)
        ha, hb, ma, mb = h(a), h(b), m(a), m(b)
        rep.check("alpha identity", w, m(br), ha * mb - (mb * ha).scale(_sign((da + p) * db)))
        rep.check("beta identity", w, h(a * b), ma * hb + (mb * ha).scale(_sign(da * db)))
        rep.check("beta lie map", w, h(br), ha * hb - (hb * ha).scale(_sign((da + p) * (db + p))))
        rep.check("alpha multiplicative", w, m(a * b), ma * mb)

    def single(a):
        w = str(a)
        rep.check("d commutes with m", w, d_e(R, m(a)), m(differential(P, a)))
        rep.check("d commutes with h", w, d_e(R, h(a)), h(differential(P, a)))

    gens = [A.monomial(_unit(A, i)) for i in range(A.n)]
    for a in gens:
        single(a)
        for b in gens:
            pair(a, b)
    monos = A.monomials(degree_bound, 1)
    for u in monos:
        single(A.monomial(u))
    for u, v in _tuples(monos, 2, degree_bound):
        pair(A.monomial(u), A.monomial(v))
    rng = random.Random(seed)
    L = max(1, min(degree_bound, 3))
    for _ in range(samples):
        a, b = random_homogeneous(A, rng, L), random_homogeneous(A, rng, L)
        pair(a, b)
    rep.merge(check_m_injective(R, degree_bound))
    return rep


def check_m_injective(R: RewriteSystem, degree_bound: int) -> SuiteReport:
    """m sends distinct basis monomials to distinct nonzero normal forms (at bound)."""
    A = R.algebra
    rep = SuiteReport("m injective")
    seen: dict = {}
    for u in A.monomials(degree_bound):
        img = map_m(R, A.monomial(u))
        key = frozenset(img.terms.items())
        w = A.format_monomial(u)
        rep.check("m injective", w, bool(img) and key not in seen, True)
        seen[key] = u
    return rep


def _overlaps(lhs_list: list[Word], bound: int) -> Iterable[tuple[Word, tuple[int, Word], tuple[int, Word]]]:
    for l1 in lhs_list:
        for l2 in lhs_list:
            # l2 overlapping the tail of l1
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if len(w) <= bound:
                        yield w, (0, l1), (len(l1) - k, l2)
            # l2 strictly inside l1
            if len(l2) < len(l1):
                for s in range(len(l1) - len(l2) + 1):
                    if l1[s:s + len(l2)] == l2 and len(l1) <= bound:
                        yield l1, (0, l1), (s, l2)


def check_confluence(R: RewriteSystem, overlap_length_bound: int = 3) -> SuiteReport:
    """Resolve every critical pair up to the length bound; report non-joinable ones."""
    rep = SuiteReport("confluence")
    lhs_list = sorted(R.rules, key=lambda w: (len(w), w))
    for w, (k1, l1), (k2, l2) in _overlaps(lhs_list, overlap_length_bound):
        left = normal_form(R, R.rewrite_at(w, k1, l1))
        right = normal_form(R, R.rewrite_at(w, k2, l2))
        rep.check("critical pair", R.format_word(w), left, right)
    return rep


def _rule_instances(R: RewriteSystem):
    for lhs in sorted(R.rules, key=lambda w: (len(w), w)):
        yield lhs, R.rules[lhs]


def _free_eval(R: RewriteSystem, terms: Mapping[Word, object], f: Callable[[Word], object], zero):
    res = zero
    for w, c in terms.items():
        res = res + f(w).scale(c)
    return res


def check_differential_e(R: RewriteSystem, length: int = 4) -> SuiteReport:
    """d^e respects every rule, and (d^e)^2 = 0 on normal words up to ``length``."""
    rep = SuiteReport("uea differential")
    for lhs, rhs in _rule_instances(R):
        rep.check(
            "d^e well-defined", R.format_word(lhs), _d_word(R, lhs), _free_eval(R, rhs, lambda w: _d_word(R, w), R.zero())
        )
    for w in R.normal_words(length, 1):
        x = R.word(w)
        rep.check("(d^e)^2=0", R.format_word(w), d_e(R, d_e(R, x)), R.zero())
    return rep


def _expand_nc_leg(t: NCTensor, i: int, f: Callable[[Word], NCTensor]) -> NCTensor:
    P = t.parent
    Q = NCTensorAlgebra(P.systems[:i] + (P.systems[i], P.systems[i]) + P.systems[i + 1:])
    acc: dict = {}
    for key, c in t.terms.items():
        for (v, w), e in f(key[i]).terms.items():
            k2 = key[:i] + (v, w) + key[i + 1:]
            acc[k2] = acc.get(k2, 0) + c * e
    return NCTensor(Q, acc)


def _apply_nc_leg(t: NCTensor, i: int, f: Callable[[Word], NCElement], degree: int = 0) -> NCTensor:
    P = t.parent
    acc: dict = {}
    for key, c in t.terms.items():
        parity = degree * sum(P.systems[j].word_degree(key[j]) for j in range(i))
        for w, e in f(key[i]).terms.items():
            k2 = key[:i] + (w,) + key[i + 1:]
            v = c * e
            acc[k2] = acc.get(k2, 0) + (-v if parity % 2 else v)
    return NCTensor(P, acc)


def _contract_nc(t: NCTensor) -> NCElement:
    R = t.parent.systems[0]
    acc: dict = {}
    for key, c in t.terms.items():
        w = sum(key, ())
        for x, e in R.nf_word(w).items():
            acc[x] = acc.get(x, 0) + c * e
    return NCElement(R, acc)


def _counit_contract(R: RewriteSystem, t: NCTensor, leg: int) -> NCElement:
    acc: dict = {}
    for key, c in t.terms.items():
        e = _counit_word(R, key[leg])
        if e:
            w = key[1 - leg]
            acc[w] = acc.get(w, 0) + c * e
    return NCElement(R, acc)


def check_hopf_e(R: RewriteSystem, word_length_bound: int = 3, obstruction_bound: int | None = None) -> Report:
    """Well-definedness, DG bialgebra axioms and the antipode identity for A^e.

    The antipode suite also confirms, for each monomial a of A up to the
    bound, that u(S^e(x)I)Delta^e h(a) equals m of the Sweedler obstruction
    of a, so the identity fails exactly where the obstruction is nonzero.
    """
    from .hopf import sweedler_obstruction

    H = _need_hopf(R)
    A = R.algebra
    L = word_length_bound
    wd = SuiteReport("uea well-definedness")
    zero2 = _square(R).zero()
    for lhs, rhs in _rule_instances(R):
        w = R.format_word(lhs)
        wd.check("Delta^e well-defined", w, _coproduct_word(R, lhs),
                 _free_eval(R, rhs, lambda v: _coproduct_word(R, v), zero2))
        wd.check("epsilon^e well-defined", w, _counit_word(R, lhs),
                 R.field.norm(sum((c * _counit_word(R, v) for v, c in rhs.items()), R.field.zero)))
        wd.check("S^e well-defined", w, _antipode_word(R, lhs),
                 _free_eval(R, rhs, lambda v: _antipode_word(R, v), R.zero()))
        wd.check("d^e well-defined", w, _d_word(R, lhs), _free_eval(R, rhs, lambda v: _d_word(R, v), R.zero()))

    bi = SuiteReport("uea bialgebra")
    anti = SuiteReport("uea antipode")
    for w in R.normal_words(L):
        x = R.word(w)
        ws = R.format_word(w)
        D = _coproduct_word(R, w)
        bi.check("coassociativity", ws, _expand_nc_leg(D, 0, lambda v: _coproduct_word(R, v)),
                 _expand_nc_leg(D, 1, lambda v: _coproduct_word(R, v)))
        bi.check("counit (left)", ws, _counit_contract(R, D, 0), x)
        bi.check("counit (right)", ws, _counit_contract(R, D, 1), x)
        dx = d_e(R, x)
        bi.check("counit of d^e", ws, counit_e(R, dx), R.field.zero)
        rhs = _apply_nc_leg(D, 0, lambda v: _d_word(R, v), 1) + _apply_nc_leg(D, 1, lambda v: _d_word(R, v), 1)
        bi.check("coderivation", ws, coproduct_e(R, dx), rhs)
        unit = R.scalar(counit_e(R, x))
        anti.check("antipode identity", ws, _contract_nc(_apply_nc_leg(D, 0, lambda v: _antipode_word(R, v))), unit)
        anti.check("antipode identity (I(x)S)", ws,
                   _contract_nc(_apply_nc_leg(D, 1, lambda v: _antipode_word(R, v))), unit)

    ob = obstruction_bound if obstruction_bound is not None else L
    for u in A.monomials(ob, 1):
        a = A.monomial(u)
        D = coproduct_e(R, map_h(R, a))
        residual = _contract_nc(_apply_nc_leg(D, 0, lambda v: _antipode_word(R, v)))
        left, _ = sweedler_obstruction(H, a)
        anti.check("obstruction formula", f"h({a})", residual, map_m(R, left))
        anti.check("obstruction equivalence", f"h({a})", residual.is_zero(), left.is_zero())
    return Report([wd, bi, anti])


# ---------------------------------------------------------------------------
# tensor products, opposites, morphisms
# ---------------------------------------------------------------------------


@dataclass
class TensorUEA:
    """(A (x) B)^e together with the target A^e (x) B^e and the tensor maps."""

    left: RewriteSystem
    right: RewriteSystem
    merged: RewriteSystem
    target: NCTensorAlgebra

    @property
    def p(self) -> int:
        return self.left.p

    def m(self, t: TensorElement) -> NCTensor:
        """m_A (x) m_B."""
        res = self.target.zero()
        A, B = self.left.algebra, self.right.algebra
        for (a, b), c in t.terms.items():
            res = res + self.target.pure(map_m(self.left, A.monomial(a)), map_m(self.right, B.monomial(b))).scale(c)
        return res

    def h(self, t: TensorElement) -> NCTensor:
        """m_A (x) h_B + (-1)^{p|b|} h_A (x) m_B on a (x) b."""
        res = self.target.zero()
        A, B = self.left.algebra, self.right.algebra
        for (a, b), c in t.terms.items():
            ea, eb = A.monomial(a), B.monomial(b)
            res = res + self.target.pure(map_m(self.left, ea), map_h(self.right, eb)).scale(c)
            s = _sign(self.p * B.mono_degree(b))
            res = res + self.target.pure(map_h(self.left, ea), map_m(self.right, eb)).scale(c * s)
        return res

    def d(self, t: NCTensor) -> NCTensor:
        return _apply_nc_leg(t, 0, lambda w: _d_word(self.left, w), 1) + _apply_nc_leg(
            t, 1, lambda w: _d_word(self.right, w), 1
        )

    def letter_image(self, letter: int) -> NCTensor:
        """The comparison map (A (x) B)^e -> A^e (x) B^e on a letter of the merged system."""
        nA = self.left.n
        n = self.merged.n
        i, is_h = letter % n, letter >= n
        one_l, one_r = self.left.one(), self.right.one()
        if i < nA:
            x = self.left.word((nA + i if is_h else i,))
            return self.target.pure(x, one_r)
        j = i - nA
        y = self.right.word((self.right.n + j if is_h else j,))
        return self.target.pure(one_l, y)

    def word_image(self, w: Word) -> NCTensor:
        res = self.target.one()
        for x in w:
            res = res * self.letter_image(x)
        return res


def tensor_uea(R_A: RewriteSystem, R_B: RewriteSystem) -> TensorUEA:
    """Build (A (x) B)^e and the target A^e (x) B^e with its two tensor maps."""
    if R_A.p != R_B.p or R_A.field != R_B.field:
        raise UEAError("tensor factors must share bracket degree and field")
    P = tensor_presentation(R_A.source, R_B.source)
    hopf = None
    if R_A.hopf is not None and R_B.hopf is not None:
        hopf = tensor_hopf(R_A.hopf, R_B.hopf)
        P = hopf.base
    return TensorUEA(R_A, R_B, RewriteSystem(P, hopf), NCTensorAlgebra((R_A, R_B)))


def check_tensor_uea(TU: TensorUEA, degree_bound: int = 2, word_length_bound: int = 2) -> SuiteReport:
    """Universal-property identities for the tensor maps, and the structural
    comparison (A (x) B)^e = A^e (x) B^e (rules respected, PBW words matched,
    coproducts intertwined when Hopf data is present)."""
    RA, RB = TU.left, TU.right
    A, B = RA.algebra, RB.algebra
    PA, PB = RA.source, RB.source
    p = TU.p
    T = TensorAlgebra((A, B))
    rep = SuiteReport("tensor uea")
    basis = [
        T.pure(A.monomial(u), B.monomial(v))
        for u in A.monomials(degree_bound)
        for v in B.monomials(degree_bound)
        if sum(u) + sum(v) >= 1 and sum(u) + sum(v) <= degree_bound
    ]

    def deg(t: TensorElement) -> int:
        for key in t.terms:
            return T.key_degree(key)
        return 0

    for s in basis:
        ws = str(s)
        rep.check("d commutes with m", ws, TU.d(TU.m(s)), TU.m(tensor_differential(PA, PB, s)))
        rep.check("d commutes with h", ws, TU.d(TU.h(s)), TU.h(tensor_differential(PA, PB, s)))
        for t in basis:
            ds, dt = deg(s), deg(t)
            w = lambda: _fmt(s, t)  # noqa: E731
            br = tensor_bracket(PA, PB, s, t)
            hs, ht, ms, mt = TU.h(s), TU.h(t), TU.m(s), TU.m(t)
            rep.check("alpha identity", w, TU.m(br), hs * mt - (mt * hs).scale(_sign((ds + p) * dt)))
            rep.check("beta identity", w, TU.h(s * t), ms * ht + (mt * hs).scale(_sign(ds * dt)))
            rep.check("beta lie map", w, TU.h(br), hs * ht - (ht * hs).scale(_sign((ds + p) * (dt + p))))
            rep.check("alpha multiplicative", w, TU.m(s * t), ms * mt)

    R = TU.merged
    for lhs, rhs in _rule_instances(R):
        img = TU.word_image(lhs)
        other = TU.target.zero()
        for v, c in rhs.items():
            other = other + TU.word_image(v).scale(c)
        rep.check("rule respected", R.format_word(lhs), img, other)
    seen = set()
    for w in R.normal_words(word_length_bound):
        img = TU.word_image(w)
        ok = len(img.terms) == 1 and all(
            TU.left.is_normal(k[0]) and TU.right.is_normal(k[1]) for k in img.terms
        )
        key = next(iter(img.terms)) if img.terms else None
        rep.check("PBW words matched", R.format_word(w), ok and key not in seen, True)
        seen.add(key)
    count = sum(1 for a in RA.normal_words(word_length_bound) for b in RB.normal_words(word_length_bound)
                if len(a) + len(b) <= word_length_bound)
    rep.check("PBW count", str(word_length_bound), len(seen), count)

    if R.hopf is not None:
        quad = NCTensorAlgebra((RA, RB, RA, RB))
        for x in range(2 * R.n):
            D = _coproduct_word(R, (x,))
            lhs = quad.zero()
            for (w1, w2), c in D.terms.items():
                i1, i2 = TU.word_image(w1), TU.word_image(w2)
                for (a1, b1), e1 in i1.terms.items():
                    for (a2, b2), e2 in i2.terms.items():
                        lhs = lhs + NCTensor(quad, {(a1, b1, a2, b2): c * e1 * e2})
            rhs = quad.zero()
            for (a, b), c in TU.word_image((x,)).terms.items():
                for (a1, a2), e1 in _coproduct_word(RA, a).terms.items():
                    for (b1, b2), e2 in _coproduct_word(RB, b).terms.items():
                        s = _sign(RA.word_degree(a2) * RB.word_degree(b1))
                        rhs = rhs + NCTensor(quad, {(a1, b1, a2, b2): c * e1 * e2 * s})
            rep.check("coproduct intertwined", R.letter_names[x], lhs, rhs)
    return rep


def opposite_uea(R: RewriteSystem) -> RewriteSystem:
    """The enveloping algebra of the opposite presentation."""
    hopf = opposite_hopf(R.hopf) if R.hopf is not None else None
    P = hopf.base if hopf is not None else opposite_presentation(R.source)
    return RewriteSystem(P, hopf)


def _op_image(R: RewriteSystem, w: Word) -> NCElement:
    """w = x1...xk  ->  x1 o ... o xk in (A^e)^op, i.e. the Koszul-signed reversed word."""
    parity = 0
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            parity += R.letter_degrees[w[i]] * R.letter_degrees[w[j]]
    return R.word(tuple(reversed(w))).scale(_sign(parity))


def _rank(vectors: list[dict], field) -> int:
    rows = [dict(v) for v in vectors if v]
    rank = 0
    norm = field.norm
    while rows:
        pivot_row = rows.pop()
        if not pivot_row:
            continue
        col = min(pivot_row)
        inv = field.inv(pivot_row[col])
        rank += 1
        new_rows = []
        for r in rows:
            c = r.get(col)
            if c:
                f = norm(c * inv)
                r = dict(r)
                for k, v in pivot_row.items():
                    r[k] = norm(r.get(k, 0) - f * v)
                r = {k: v for k, v in r.items() if v != 0}
            if r:
                new_rows.append(r)
        rows = new_rows
    return rank


def check_opposite_uea(R: RewriteSystem, R_op: RewriteSystem, word_length_bound: int = 3) -> SuiteReport:
    """(A^op)^e = (A^e)^op: the letter map into the opposite algebra respects
    every rule of R_op, is bijective on PBW words at the bound, and (with Hopf
    data) carries the coproduct of (A^op)^e to the twisted coproduct of A^e."""
    rep = SuiteReport("opposite uea")
    for lhs, rhs in _rule_instances(R_op):
        other = R.zero()
        for v, c in rhs.items():
            other = other + _op_image(R, v).scale(c)
        rep.check("rule respected", R_op.format_word(lhs), _op_image(R, lhs), other)
    words = R_op.normal_words(word_length_bound)
    images = [_op_image(R, w).terms for w in words]
    rep.check("PBW bijection", str(word_length_bound), _rank(images, R.field),
              len(R.normal_words(word_length_bound)))
    rep.check("PBW count", str(word_length_bound), len(words), len(R.normal_words(word_length_bound)))
    if R.hopf is not None and R_op.hopf is not None:
        T = _square(R)
        for w in R_op.normal_words(min(word_length_bound, 2), 1):
            D = _coproduct_word(R_op, w)
            lhs = T.zero()
            for (w1, w2), c in D.terms.items():
                lhs = lhs + T.pure(_op_image(R, w1), _op_image(R, w2)).scale(c)
            rhs = T.zero()
            for (a, b), c in coproduct_e(R, _op_image(R, w)).terms.items():
                s = _sign(R.word_degree(a) * R.word_degree(b))
                rhs = rhs + NCTensor(T, {(b, a): c * s})
            ws = R_op.format_word(w)
            rep.check("coproduct is twisted", ws, lhs, rhs)
            rep.check("counit preserved", ws, counit_e(R_op, R_op.word(w)), counit_e(R, _op_image(R, w)))
            op_s = R.zero()
            for v, c in antipode_e(R_op, R_op.word(w)).terms.items():
                op_s = op_s + _op_image(R, v).scale(c)
            rep.check("antipode preserved", ws, op_s, antipode_e(R, _op_image(R, w)))
    return rep


class InducedMorphism:
    """phi^e: A^e -> B^e with phi^e m = m phi and phi^e h = h phi."""

    def __init__(self, R_A: RewriteSystem, R_B: RewriteSystem, phi: MorphismSpec):
        self.source, self.target, self.phi = R_A, R_B, phi
        self._cache: dict = {}

    def letter(self, x: int) -> NCElement:
        R_A = self.source
        A = R_A.algebra
        g = A.monomial(_unit(A, x % R_A.n))
        img = self.phi(g)
        return map_h(self.target, img) if R_A.is_h(x) else map_m(self.target, img)

    def word(self, w: Word) -> NCElement:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        res = self.target.one()
        for x in w:
            res = res * self.letter(x)
        self._cache[w] = res
        return res

    def __call__(self, e: NCElement) -> NCElement:
        res = self.target.zero()
        for w, c in e.terms.items():
            res = res + self.word(w).scale(c)
        return res


def induced_morphism(R_A: RewriteSystem, R_B: RewriteSystem, phi: MorphismSpec, degree_bound: int = 2) -> InducedMorphism:
    rep = check_dgp_morphism(phi, degree_bound)
    if not rep.passed:
        v = rep.violations[0]
        raise UEAError(f"not a DG Poisson morphism ({v.law} fails at {v.witness})")
    return InducedMorphism(R_A, R_B, phi)


def check_induced_morphism(F: InducedMorphism, degree_bound: int = 2) -> SuiteReport:
    R_A, R_B, phi = F.source, F.target, F.phi
    A = R_A.algebra
    rep = SuiteReport("induced morphism")
    for lhs, rhs in _rule_instances(R_A):
        other = R_B.zero()
        for v, c in rhs.items():
            other = other + F.word(v).scale(c)
        rep.check("rule respected", R_A.format_word(lhs), F.word(lhs), other)
    for u in A.monomials(degree_bound):
        a = A.monomial(u)
        w = str(a)
        rep.check("phi^e m = m phi", w, F(map_m(R_A, a)), map_m(R_B, phi(a)))
        rep.check("phi^e h = h phi", w, F(map_h(R_A, a)), map_h(R_B, phi(a)))
    for x in range(2 * R_A.n):
        e = R_A.word((x,))
        rep.check("commutes with d^e", R_A.letter_names[x], F(d_e(R_A, e)), d_e(R_B, F(e)))
    return rep


def pbw_count(R: RewriteSystem, length_bound: int) -> list[int]:
    """Number of irreducible words of each length 0..length_bound (all words enumerated)."""
    counts = []
    letters = range(2 * R.n)
    for length in range(length_bound + 1):
        counts.append(sum(1 for w in itertools.product(letters, repeat=length) if R.is_normal(w)))
    return counts


def graded_commutative_count(R: RewriteSystem, length_bound: int) -> list[int]:
    """Monomial counts of the graded-commutative algebra on the doubled alphabet.

    m(g) has the parity and truncation of g; h(g) has parity |g|+p and no
    truncation.  Odd letters appear at most once.
    """
    caps = []
    for g in R.algebra.table:
        caps.append(g.bound)
    for g in R.algebra.table:
        caps.append(2 if (g.degree + R.p) % 2 else None)
    counts = [0] * (length_bound + 1)
    counts[0] = 1
    for cap in caps:
        new = [0] * (length_bound + 1)
        for length, c in enumerate(counts):
            if not c:
                continue
            top = length_bound - length if cap is None else min(cap - 1, length_bound - length)
            for e in range(top + 1):
                new[length + e] += c
        counts = new
    return counts
