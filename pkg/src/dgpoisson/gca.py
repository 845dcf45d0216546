"""Graded-commutative polynomial arithmetic over exact fields.

Everything here is immutable once built.  Monomials are dense exponent
tuples indexed by the generator table, so equality of elements is plain
dict equality of their term maps.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "AlgebraError",
    "Field",
    "QQ",
    "GF",
    "Generator",
    "GeneratorTable",
    "GradedCommutativeAlgebra",
    "Element",
    "TensorAlgebra",
    "TensorElement",
    "DegreeMarker",
    "koszul_sign",
    "normalize_word",
    "homogeneous_degree",
    "tensor_multiply",
    "twist",
]


class AlgebraError(ValueError):
    """Malformed algebraic input (bad field, unknown generator, mismatched parents)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """The rationals (characteristic 0) or a prime field of odd characteristic.

    Values are ``Fraction`` for QQ and ints in ``range(q)`` for GF(q).  The
    field object only normalizes and inverts; ``+``/``*`` are Python's own.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        characteristic = int(characteristic)
        if characteristic == 2:
            raise AlgebraError("characteristic 2 is not supported (odd squares would not vanish)")
        if characteristic != 0 and not _is_prime(characteristic):
            raise AlgebraError(f"GF({characteristic}): characteristic must be 0 or an odd prime")
        self.characteristic = characteristic

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    __str__ = __repr__

    @property
    def zero(self):
        return self.norm(0)

    @property
    def one(self):
        return self.norm(1)

    def norm(self, v):
        q = self.characteristic
        if q:
            if isinstance(v, Fraction):
                return (v.numerator * pow(v.denominator, -1, q)) % q
            return v % q
        return v if isinstance(v, Fraction) else Fraction(v)

    def __call__(self, value) -> object:
        """Coerce an int, Fraction or decimal/fraction string into the field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, float):
            raise AlgebraError("floating-point coefficients are not allowed")
        if isinstance(value, Fraction) and self.characteristic and value.denominator % self.characteristic == 0:
            raise AlgebraError(f"{value} has no image in {self}")
        return self.norm(value)

    def inv(self, v):
        if v == 0:
            raise ZeroDivisionError("inverse of zero")
        q = self.characteristic
        if q:
            return pow(int(v), -1, q)
        return 1 / Fraction(v)

    def sign(self, exponent: int):
        return self.norm(-1 if exponent % 2 else 1)

    def format(self, v) -> str:
        """Reduced fraction, or least absolute residue for prime fields."""
        q = self.characteristic
        if q:
            v = int(v) % q
            if v > q // 2:
                v -= q
            return str(v)
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def signed(self, v) -> int | Fraction:
        """The value as a signed rational (least absolute residue in GF(q))."""
        q = self.characteristic
        if q:
            v = int(v) % q
            return v - q if v > q // 2 else v
        return Fraction(v)


QQ = Field(0)


def GF(q: int) -> Field:
    return Field(q)


def koszul_sign(field: Field, deg_left: int, deg_right: int):
    """(-1)^(deg_left * deg_right) as a scalar of ``field``."""
    return field.sign(deg_left * deg_right)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    truncation: int | None = None

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    @property
    def bound(self) -> int | None:
        """Smallest exponent that vanishes (2 for odd generators)."""
        if self.odd:
            return 2 if self.truncation is None else min(2, self.truncation)
        return self.truncation


class GeneratorTable:
    """Ordered, named, graded generators.  Declaration order is the monomial order."""

    def __init__(self, generators: Iterable[Generator | tuple]):
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g)
            if not g.name.isidentifier():
                raise AlgebraError(f"bad generator name {g.name!r}")
            if g.truncation is not None and g.truncation < 2:
                raise AlgebraError(f"truncation of {g.name} must be >= 2")
            gens.append(g)
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise AlgebraError("duplicate generator names")
        self.degrees = tuple(g.degree for g in self.generators)
        self.bounds = tuple(g.bound for g in self.generators)
        self.names = tuple(g.name for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __eq__(self, other):
        return isinstance(other, GeneratorTable) and other.generators == self.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"GeneratorTable({list(self.generators)!r})"

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None


Monomial = tuple  # dense exponent vector over the generator table


class DegreeMarker(enum.Enum):
    MIXED = "mixed"
    ANY = "any"  # the zero element is homogeneous of every degree


def normalize_word(table: GeneratorTable, word: Sequence[tuple[str, int]]):
    """Sort a word of (generator, exponent) factors into canonical order.

    Returns ``(sign, monomial)`` with ``sign`` in {+1, -1}, or ``None`` when
    the word vanishes (odd square, or a truncation bound reached).
    """
    counts = [0] * len(table)
    sign = 1
    # inversions are counted between odd factors only
    odd_stream: list[int] = []
    for name, exp in word:
        i = table.position(name)
        if exp < 0:
            raise AlgebraError("negative exponent")
        if exp == 0:
            continue
        counts[i] += exp
        if table.generators[i].odd:
            odd_stream.extend([i] * exp)
    for i, c in enumerate(counts):
        b = table.bounds[i]
        if b is not None and c >= b:
            return None
    inversions = sum(1 for a, b in itertools.combinations(odd_stream, 2) if a > b)
    if inversions % 2:
        sign = -1
    return sign, tuple(counts)


class GradedCommutativeAlgebra:
    """k[generators] with graded commutativity and pure-power truncations."""

    def __init__(self, table: GeneratorTable, field: Field = QQ):
        self.table = table
        self.field = field
        self.n = len(table)
        self._one_mono = (0,) * self.n
        self._mul_cache: dict = {}

    def __eq__(self, other):
        return (
            isinstance(other, GradedCommutativeAlgebra)
            and other.table == self.table
            and other.field == self.field
        )

    def __hash__(self):
        return hash((self.table, self.field))

    def __repr__(self):
        return f"GradedCommutativeAlgebra({list(self.table.names)}, {self.field})"

    # -- monomials --------------------------------------------------------
    def mono_degree(self, u: Monomial) -> int:
        return sum(e * d for e, d in zip(u, self.table.degrees))

    @staticmethod
    def mono_length(u: Monomial) -> int:
        return sum(u)

    def mono_mul(self, u: Monomial, v: Monomial):
        """(sign, u*v) with sign an int in {+1,-1}, or None if the product vanishes."""
        key = (u, v)
        hit = self._mul_cache.get(key, False)
        if hit is not False:
            return hit
        degs = self.table.degrees
        bounds = self.table.bounds
        out = []
        for i in range(self.n):
            e = u[i] + v[i]
            b = bounds[i]
            if b is not None and e >= b:
                self._mul_cache[key] = None
                return None
            out.append(e)
        # v's odd factors move left past u's odd factors of larger index
        parity = 0
        odd_u_after = 0
        for i in range(self.n - 1, -1, -1):
            if degs[i] % 2:
                parity += v[i] * odd_u_after
                odd_u_after += u[i]
        res = (-1 if parity % 2 else 1, tuple(out))
        self._mul_cache[key] = res
        return res

    def monomials(self, max_length: int, min_length: int = 0) -> list[Monomial]:
        """All nonzero monomials with total exponent in [min_length, max_length], ordered."""
        out = []
        for length in range(min_length, max_length + 1):
            out.extend(self._monomials_of_length(length))
        return out

    def _monomials_of_length(self, length: int) -> list[Monomial]:
        res = []

        def rec(i, remaining, acc):
            if i == self.n:
                if remaining == 0:
                    res.append(tuple(acc))
                return
            b = self.table.bounds[i]
            top = remaining if b is None else min(remaining, b - 1)
            for e in range(top, -1, -1):
                acc.append(e)
                rec(i + 1, remaining - e, acc)
                acc.pop()

        rec(0, length, [])
        return res

    def split_first(self, u: Monomial) -> tuple[int, Monomial]:
        """u = g_i * rest with g_i the first generator present (no sign)."""
        for i, e in enumerate(u):
            if e:
                rest = list(u)
                rest[i] -= 1
                return i, tuple(rest)
        raise ValueError("cannot split the unit monomial")

    def mono_factors(self, u: Monomial) -> list[int]:
        return [i for i, e in enumerate(u) for _ in range(e)]

    # -- elements ---------------------------------------------------------
    def element(self, terms: Mapping[Monomial, object] | None = None) -> "Element":
        return Element(self, terms or {})

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self._one_mono: self.field.one})

    def scalar(self, c) -> "Element":
        c = self.field(c)
        return Element(self, {self._one_mono: c} if c != 0 else {})

    def monomial(self, u: Monomial, coeff=1) -> "Element":
        for i, e in enumerate(u):
            b = self.table.bounds[i]
            if b is not None and e >= b:
                return self.zero()
        c = self.field(coeff)
        return Element(self, {tuple(u): c} if c != 0 else {})

    def gen(self, name: str) -> "Element":
        i = self.table.position(name)
        u = [0] * self.n
        u[i] = 1
        return self.monomial(tuple(u))

    def gens(self) -> list["Element"]:
        return [self.gen(n) for n in self.table.names]

    def from_word(self, word: Sequence[tuple[str, int]], coeff=1) -> "Element":
        res = normalize_word(self.table, word)
        if res is None:
            return self.zero()
        sign, mono = res
        return self.monomial(mono, self.field(coeff) * sign)

    def coerce(self, x) -> "Element":
        if isinstance(x, Element):
            if x.algebra != self:
                raise AlgebraError("elements belong to different algebras")
            return x
        return self.scalar(x)

    def format_monomial(self, u: Monomial) -> str:
        parts = []
        for name, e in zip(self.table.names, u):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def sort_key(self, u: Monomial):
        return (sum(u), tuple(-e for e in u))


def _format_sum(items: list[tuple[str, object]], field: Field) -> str:
    """Render [(basis-string, coeff)] as ``a - 2*b + 1/2*c``; '1' basis means scalar."""
    if not items:
        return "0"
    out = []
    for k, (basis, c) in enumerate(items):
        s = field.signed(c)
        neg = s < 0
        mag = -s if neg else s
        if basis == "1":
            body = field.format(mag)
        elif mag == 1:
            body = basis
        else:
            body = f"{field.format(mag)}*{basis}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class Element:
    """A finite sum of monomials with nonzero coefficients."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: GradedCommutativeAlgebra, terms: Mapping[Monomial, object]):
        self.algebra = algebra
        norm = algebra.field.norm
        clean = {}
        for u, c in terms.items():
            c = norm(c)
            if c != 0:
                clean[u] = c
        self.terms = clean
        self._hash = None

    # -- arithmetic -------------------------------------------------------
    def _other(self, other):
        if isinstance(other, Element):
            if other.algebra != self.algebra:
                raise AlgebraError("elements belong to different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for u, c in other.terms.items():
            terms[u] = terms.get(u, 0) + c
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = self.algebra.field(c) if not isinstance(c, int) else self.algebra.field.norm(c)
        if c == 0:
            return self.algebra.zero()
        return Element(self.algebra, {u: v * c for u, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._other(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        res = self.algebra.one()
        for _ in range(k):
            res = res * self
        return res

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, u: Monomial):
        return self.terms.get(u, self.algebra.field.zero)

    def constant_term(self):
        return self.coefficient(self.algebra._one_mono)

    def homogeneous_parts(self) -> dict[int, "Element"]:
        parts: dict[int, dict] = {}
        for u, c in self.terms.items():
            parts.setdefault(self.algebra.mono_degree(u), {})[u] = c
        return {d: Element(self.algebra, t) for d, t in sorted(parts.items())}

    @property
    def degree(self):
        return homogeneous_degree(self)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        key = self.algebra.sort_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def __str__(self):
        A = self.algebra
        return _format_sum([(A.format_monomial(u), c) for u, c in self.sorted_terms()], A.field)

    def __repr__(self):
        return f"Element({self})"


def multiply(a: Element, b: Element) -> Element:
    """Bilinear product with Koszul signs from reordering odd generators."""
    if a.algebra != b.algebra:
        raise AlgebraError("mismatched generator tables")
    A = a.algebra
    terms: dict = {}
    for u, c in a.terms.items():
        for v, e in b.terms.items():
            r = A.mono_mul(u, v)
            if r is None:
                continue
            s, w = r
            terms[w] = terms.get(w, 0) + (c * e if s > 0 else -(c * e))
    return Element(A, terms)


def homogeneous_degree(a: Element):
    """Common degree of all terms, ``DegreeMarker.MIXED``, or ``DegreeMarker.ANY`` for zero."""
    degs = {a.algebra.mono_degree(u) for u in a.terms}
    if not degs:
        return DegreeMarker.ANY
    if len(degs) > 1:
        return DegreeMarker.MIXED
    return degs.pop()


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------


class TensorAlgebra:
    """A_1 (x) ... (x) A_k with the Koszul-signed componentwise product."""

    def __init__(self, factors: Sequence[GradedCommutativeAlgebra]):
        self.factors = tuple(factors)
        if not self.factors:
            raise AlgebraError("empty tensor product")
        fields = {f.field for f in self.factors}
        if len(fields) != 1:
            raise AlgebraError("tensor factors over different fields")
        self.field = self.factors[0].field

    @classmethod
    def power(cls, A: GradedCommutativeAlgebra, k: int = 2) -> "TensorAlgebra":
        return cls([A] * k)

    def __eq__(self, other):
        return isinstance(other, TensorAlgebra) and other.factors == self.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def arity(self) -> int:
        return len(self.factors)

    def element(self, terms=None) -> "TensorElement":
        return TensorElement(self, terms or {})

    def zero(self) -> "TensorElement":
        return TensorElement(self, {})

    def one(self) -> "TensorElement":
        return TensorElement(self, {tuple(A._one_mono for A in self.factors): self.field.one})

    def pure(self, *legs: Element) -> "TensorElement":
        """legs[0] (x) legs[1] (x) ... as a tensor element (bilinear expansion)."""
        if len(legs) != self.arity:
            raise AlgebraError("wrong number of tensor legs")
        terms: dict = {(): self.field.one}
        for A, leg in zip(self.factors, legs):
            if leg.algebra != A:
                raise AlgebraError("tensor leg over the wrong algebra")
            new: dict = {}
            for key, c in terms.items():
                for u, e in leg.terms.items():
                    k2 = key + (u,)
                    new[k2] = new.get(k2, 0) + c * e
            terms = new
        return TensorElement(self, terms)

    def leg_degree(self, i: int, u: Monomial) -> int:
        return self.factors[i].mono_degree(u)

    def key_degree(self, key) -> int:
        return sum(A.mono_degree(u) for A, u in zip(self.factors, key))

    def format_key(self, key) -> str:
        return "#".join(A.format_monomial(u) for A, u in zip(self.factors, key))

    def sort_key(self, key):
        return tuple(A.sort_key(u) for A, u in zip(self.factors, key))


class TensorElement:
    __slots__ = ("parent", "terms")

    def __init__(self, parent: TensorAlgebra, terms):
        self.parent = parent
        norm = parent.field.norm
        clean = {}
        for k, c in terms.items():
            c = norm(c)
            if c != 0:
                clean[tuple(k)] = c
        self.terms = clean

    def _check(self, other):
        if not isinstance(other, TensorElement) or other.parent != self.parent:
            raise AlgebraError("tensor elements over different tensor algebras")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return TensorElement(self.parent, terms)

    def __neg__(self):
        return TensorElement(self.parent, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = self.parent.field.norm(c)
        return TensorElement(self.parent, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return tensor_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.parent == other.parent and self.terms == other.terms

    def __hash__(self):
        return hash((self.parent, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def sorted_terms(self):
        key = self.parent.sort_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def __str__(self):
        P = self.parent
        return _format_sum([(P.format_key(k), c) for k, c in self.sorted_terms()], P.field)

    def __repr__(self):
        return f"TensorElement({self})"


def tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    """(a(x)b)(a'(x)b') = (-1)^{|a'||b|} aa' (x) bb', generalized to k legs."""
    s._check(t)
    P = s.parent
    k = P.arity
    terms: dict = {}
    for key1, c1 in s.terms.items():
        d1 = [P.leg_degree(i, key1[i]) for i in range(k)]
        for key2, c2 in t.terms.items():
            parity = 0
            # leg j of t moves left past legs i > j of s
            suffix = 0
            for j in range(k - 1, -1, -1):
                parity += P.leg_degree(j, key2[j]) * suffix
                suffix += d1[j]
            coeff = c1 * c2
            out = []
            for i in range(k):
                r = P.factors[i].mono_mul(key1[i], key2[i])
                if r is None:
                    break
                sgn, w = r
                if sgn < 0:
                    parity += 1
                out.append(w)
            else:
                key = tuple(out)
                terms[key] = terms.get(key, 0) + (-coeff if parity % 2 else coeff)
    return TensorElement(P, terms)


def twist(t: TensorElement) -> TensorElement:
    """T(v (x) w) = (-1)^{|v||w|} w (x) v."""
    P = t.parent
    if P.arity != 2:
        raise AlgebraError("twist needs a two-leg tensor")
    Q = TensorAlgebra((P.factors[1], P.factors[0]))
    terms = {}
    for (u, v), c in t.terms.items():
        s = P.leg_degree(0, u) * P.leg_degree(1, v)
        terms[(v, u)] = -c if s % 2 else c
    return TensorElement(Q, terms)


def leg_map(t: TensorElement, maps: Sequence, target: TensorAlgebra | None = None) -> TensorElement:
    """Apply degree-0 linear maps (monomial -> Element) leg-wise."""
    P = t.parent
    out = None
    for key, c in t.terms.items():
        images = [f(P.factors[i].monomial(u)) for i, (f, u) in enumerate(zip(maps, key))]
        Q = target or TensorAlgebra([im.algebra for im in images])
        piece = Q.pure(*images).scale(c)
        out = piece if out is None else out + piece
    if out is None:
        return (target or P).zero()
    return out


def contract(t: TensorElement) -> Element:
    """u: A (x) A -> A, (a (x) b) -> ab (no sign)."""
    P = t.parent
    A = P.factors[0]
    res = A.zero()
    for key, c in t.terms.items():
        piece = A.monomial(key[0], c)
        for i in range(1, P.arity):
            piece = piece * P.factors[i].monomial(key[i])
        res = res + piece
    return res
