"""Line-oriented text format for presentations, plus an expression language.

File format (``#`` starts a comment)::

    field GF(5)                 # or: field QQ
    bracket_degree 0
    gen x, y, z deg 0 pow 5
    bracket {x, y} = y          # comments need whitespace around '#'
    d e = f
    coproduct z = z#1 + 1#z - 2*x#y
    counit z = 0
    antipode z = -z - 2*x*y
    hopf symmetric              # instead of explicit tables: primitive generators

Expressions: ``+ -`` bind loosest, then ``#`` (tensor), then ``* /``, then
``^``.  Atoms are numbers, generator names, parentheses, ``{a, b}``, and
calls ``d() S() eps() Delta() m() h()``.  A top-level comma list evaluates
each item.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .gca import (
    QQ,
    AlgebraError,
    Element,
    Field,
    Generator,
    GeneratorTable,
    GradedCommutativeAlgebra,
    TensorAlgebra,
    TensorElement,
)
from .hopf import HopfPresentation, antipode, coproduct, counit, symmetric_hopf
from .poisson import PoissonPresentation, bracket, differential, tensor_bracket, tensor_differential

__all__ = [
    "DSLError",
    "Node",
    "PresentationDocument",
    "parse_document",
    "parse_presentation",
    "print_document",
    "parse_expression",
    "evaluate",
    "format_value",
    "CONTEXTS",
]

CONTEXTS = ("auto", "algebra", "tensor", "uea")
FUNCTIONS = ("d", "S", "eps", "Delta", "m", "h")


class DSLError(ValueError):
    """Input error with a 1-based source position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message, self.line, self.col = message, line, col
        where = ""
        if line is not None:
            where = f"line {line}, col {col or 1}: "
        elif col is not None:
            where = f"col {col}: "
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# tokens and expression syntax
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass
class Token:
    kind: str  # num, name, op, end
    text: str
    col: int


def _tokenize(text: str, line: int | None = None, offset: int = 0) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, op = m.groups()
        col = m.start(m.lastindex) + 1 + offset
        if num is not None:
            out.append(Token("num", num, col))
        elif name is not None:
            out.append(Token("name", name, col))
        elif op is not None:
            if op not in "+-*/^#(){},":
                raise DSLError(f"unexpected character {op!r}", line, col)
            out.append(Token("op", op, col))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1 + offset))
    return out


@dataclass
class Node:
    kind: str
    args: tuple
    col: int


class _Parser:
    def __init__(self, text: str, line: int | None = None, offset: int = 0):
        self.toks = _tokenize(text, line, offset)
        self.i = 0
        self.line = line

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        return DSLError(msg, self.line, tok.col)

    def expect(self, op: str) -> Token:
        t = self.peek()
        if t.kind != "op" or t.text != op:
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise self.error(f"expected {op!r}, found {found}")
        return self.take()

    def at(self, op: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text == op

    def parse_all(self) -> Node:
        first = self.peek()
        items = [self.sum()]
        while self.at(","):
            self.take()
            items.append(self.sum())
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return items[0] if len(items) == 1 else Node("list", tuple(items), first.col)

    def sum(self) -> Node:
        first = self.peek()
        terms = []
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take().text == "-" else 1
        terms.append((sign, self.tensor()))
        while self.at("+") or self.at("-"):
            sign = -1 if self.take().text == "-" else 1
            terms.append((sign, self.tensor()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Node("sum", tuple(terms), first.col)

    def tensor(self) -> Node:
        first = self.peek()
        legs = [self.product()]
        while self.at("#"):
            self.take()
            legs.append(self.product())
        return legs[0] if len(legs) == 1 else Node("tensor", tuple(legs), first.col)

    def product(self) -> Node:
        first = self.peek()
        factors = [("*", self.power())]
        while self.at("*") or self.at("/"):
            op = self.take().text
            factors.append((op, self.power()))
        return factors[0][1] if len(factors) == 1 else Node("product", tuple(factors), first.col)

    def power(self) -> Node:
        base = self.atom()
        if self.at("^"):
            tok = self.take()
            e = self.peek()
            if e.kind != "num":
                raise self.error("exponent must be a non-negative integer")
            self.take()
            return Node("pow", (base, int(e.text)), tok.col)
        return base

    def atom(self) -> Node:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Node("num", (Fraction(int(t.text)),), t.col)
        if t.kind == "name":
            self.take()
            if t.text in FUNCTIONS and self.at("("):
                self.take()
                arg = self.sum()
                self.expect(")")
                return Node("call", (t.text, arg), t.col)
            return Node("name", (t.text,), t.col)
        if self.at("("):
            self.take()
            inner = self.sum()
            self.expect(")")
            return inner
        if self.at("{"):
            self.take()
            a = self.sum()
            self.expect(",")
            b = self.sum()
            self.expect("}")
            return Node("bracket", (a, b), t.col)
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise self.error(f"expected an expression, found {found}")


def parse_expression(text: str, context: str = "auto", *, line: int | None = None, offset: int = 0) -> Node:
    """Parse to an AST.  Context restrictions are enforced here (syntax) and in :func:`evaluate` (types)."""
    if context not in CONTEXTS:
        raise DSLError(f"unknown context {context!r} (choose from {', '.join(CONTEXTS)})")
    node = _Parser(text, line, offset).parse_all()
    _check_context(node, context, line)
    return node


def _check_context(node: Node, context: str, line: int | None) -> None:
    if context in ("auto", "uea"):
        return
    banned = {"algebra": {"#", "Delta", "m", "h"}, "tensor": {"m", "h"}}[context]
    stack = [node]
    while stack:
        n = stack.pop()
        if n.kind == "tensor" and "#" in banned:
            raise DSLError(f"'#' is not allowed in {context} context", line, n.col)
        if n.kind == "call" and n.args[0] in banned:
            raise DSLError(f"{n.args[0]}() is not allowed in {context} context", line, n.col)
        for a in n.args:
            if isinstance(a, Node):
                stack.append(a)
            elif isinstance(a, tuple):
                stack.extend(x for x in a if isinstance(x, Node))
                stack.extend(x[1] for x in a if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], Node))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _kind(v) -> str:
    from .uea import NCElement, NCTensor

    if isinstance(v, (int, Fraction)):
        return "scalar"
    if isinstance(v, Element):
        return "algebra element"
    if isinstance(v, TensorElement):
        return "tensor"
    if isinstance(v, NCElement):
        return "enveloping algebra element"
    if isinstance(v, NCTensor):
        return "enveloping algebra tensor"
    if isinstance(v, tuple):
        return "list"
    return type(v).__name__


class _Evaluator:
    def __init__(self, algebra: GradedCommutativeAlgebra, presentation=None, hopf=None, uea=None,
                 context: str = "auto", line: int | None = None):
        self.A = algebra
        self.F = algebra.field
        self.P = presentation
        self.H = hopf
        self._uea = uea
        self.context = context
        self.line = line

    def err(self, msg: str, node: Node):
        return DSLError(msg, self.line, node.col)

    @property
    def uea(self):
        if self._uea is None:
            if self.P is None:
                raise DSLError("enveloping algebra letters need a presentation", self.line)
            from .uea import build_uea

            self._uea = build_uea(self.P, self.H)
        return self._uea

    def ev(self, node: Node):
        try:
            return getattr(self, "_" + node.kind)(node)
        except DSLError:
            raise
        except AlgebraError as exc:
            raise self.err(str(exc), node) from None

    def _num(self, node):
        return self.F.norm(node.args[0]) if self.F.characteristic else node.args[0]

    def _name(self, node):
        name = node.args[0]
        if name not in self.A.table.index:
            raise self.err(f"undeclared name {name!r}", node)
        return self.A.gen(name)

    def _list(self, node):
        return tuple(self.ev(n) for n in node.args)

    def _sum(self, node):
        total = None
        for sign, term in node.args:
            v = self.ev(term)
            if sign < 0:
                v = self._neg(v, term)
            total = v if total is None else self.add(total, v, term)
        return total

    def _neg(self, v, node):
        if isinstance(v, (int, Fraction)):
            return self.F.norm(-v)
        if isinstance(v, tuple):
            raise self.err("cannot negate a list", node)
        return -v

    def _promote(self, scalar, like):
        """A scalar as the unit multiple in the space of ``like``."""
        from .uea import NCElement, NCTensor

        if isinstance(like, Element):
            return like.algebra.scalar(scalar)
        if isinstance(like, TensorElement):
            return like.parent.one().scale(scalar)
        if isinstance(like, NCElement):
            return like.system.scalar(scalar)
        if isinstance(like, NCTensor):
            return like.parent.one().scale(scalar)
        return None

    def add(self, a, b, node):
        sa, sb = isinstance(a, (int, Fraction)), isinstance(b, (int, Fraction))
        if sa and sb:
            return self.F.norm(a + b)
        if sa:
            a = self._promote(a, b)
        if sb:
            b = self._promote(b, a)
        if a is None or b is None or type(a) is not type(b):
            raise self.err(f"cannot add {_kind(a)} and {_kind(b)}", node)
        return a + b

    def mul(self, a, b, node):
        sa, sb = isinstance(a, (int, Fraction)), isinstance(b, (int, Fraction))
        if sa and sb:
            return self.F.norm(a * b)
        if sa:
            return b.scale(a)
        if sb:
            return a.scale(b)
        if type(a) is not type(b):
            raise self.err(f"cannot multiply {_kind(a)} and {_kind(b)}", node)
        return a * b

    def _product(self, node):
        acc = None
        for op, f in node.args:
            v = self.ev(f)
            if op == "/":
                if not isinstance(v, (int, Fraction)):
                    raise self.err("can only divide by a scalar", f)
                if self.F.norm(v) == 0:
                    raise self.err("division by zero", f)
                v = self.F.inv(self.F.norm(v)) if self.F.characteristic else Fraction(1) / v
            acc = v if acc is None else self.mul(acc, v, f)
        return acc

    def _pow(self, node):
        base, e = node.args
        v = self.ev(base)
        if isinstance(v, (int, Fraction)):
            return self.F.norm(v ** e)
        res = self._promote(1, v)
        if res is None:
            raise self.err(f"cannot raise {_kind(v)} to a power", node)
        for _ in range(e):
            res = res * v
        return res

    def _tensor(self, node):
        from .uea import NCElement, NCTensorAlgebra

        legs = [self.ev(n) for n in node.args]
        if any(isinstance(v, NCElement) for v in legs):
            R = self.uea
            out = []
            for v, n in zip(legs, node.args):
                if isinstance(v, (int, Fraction)):
                    v = R.scalar(v)
                if not isinstance(v, NCElement):
                    raise self.err(f"cannot tensor {_kind(v)} with enveloping algebra elements", n)
                out.append(v)
            return NCTensorAlgebra((R,) * len(out)).pure(*out)
        out = []
        for v, n in zip(legs, node.args):
            if isinstance(v, (int, Fraction)):
                v = self.A.scalar(v)
            if not isinstance(v, Element):
                raise self.err(f"tensor legs must be algebra elements, got {_kind(v)}", n)
            out.append(v)
        return TensorAlgebra.power(self.A, len(out)).pure(*out)

    def _need_p(self, node):
        if self.P is None:
            raise self.err("brackets and structure maps are not available here", node)
        return self.P

    def _need_h(self, node):
        if self.H is None:
            raise self.err("this presentation has no Hopf structure", node)
        return self.H

    def _bracket(self, node):
        P = self._need_p(node)
        a, b = (self.ev(n) for n in node.args)
        if isinstance(a, (int, Fraction)):
            a = self.A.scalar(a)
        if isinstance(b, (int, Fraction)):
            b = self.A.scalar(b)
        if isinstance(a, Element) and isinstance(b, Element):
            return bracket(P, a, b)
        if isinstance(a, TensorElement) and isinstance(b, TensorElement) and a.parent.arity == 2:
            return tensor_bracket(P, P, a, b)
        raise self.err(f"bracket of {_kind(a)} and {_kind(b)} is not defined", node)

    def _call(self, node):
        from .uea import NCElement, antipode_e, coproduct_e, counit_e, d_e, map_h, map_m

        fname, argn = node.args
        v = self.ev(argn)
        if fname in ("m", "h"):
            if isinstance(v, (int, Fraction)):
                v = self.A.scalar(v)
            if not isinstance(v, Element):
                raise self.err(f"{fname}() takes an algebra element, got {_kind(v)}", node)
            return (map_m if fname == "m" else map_h)(self.uea, v)
        if fname == "d":
            if isinstance(v, (int, Fraction)):
                return 0
            P = self._need_p(node)
            if isinstance(v, Element):
                return differential(P, v)
            if isinstance(v, TensorElement) and v.parent.arity == 2:
                return tensor_differential(P, P, v)
            if isinstance(v, NCElement):
                return d_e(self.uea, v)
            raise self.err(f"d() is not defined on {_kind(v)}", node)
        H = self._need_h(node)
        if isinstance(v, (int, Fraction)):
            v = self.A.scalar(v)
        if isinstance(v, Element):
            return {"S": antipode, "eps": counit, "Delta": coproduct}[fname](H, v)
        if isinstance(v, NCElement):
            return {"S": antipode_e, "eps": counit_e, "Delta": coproduct_e}[fname](self.uea, v)
        raise self.err(f"{fname}() is not defined on {_kind(v)}", node)


def evaluate(node: Node, presentation, context: str = "auto", uea=None, line: int | None = None):
    """Evaluate against a PoissonPresentation, HopfPresentation or bare algebra."""
    if isinstance(presentation, HopfPresentation):
        P, H, A = presentation.base, presentation, presentation.algebra
    elif isinstance(presentation, PoissonPresentation):
        P, H, A = presentation, None, presentation.algebra
    else:
        P, H, A = None, None, presentation
    _check_context(node, context, line)
    ev = _Evaluator(A, P, H, uea, context, line)
    value = ev.ev(node)
    items = value if isinstance(value, tuple) else (value,)
    for v in items:
        if context == "algebra" and not isinstance(v, (int, Fraction, Element)):
            raise DSLError(f"algebra context produced a {_kind(v)}", line, node.col)
        if context == "tensor" and not isinstance(v, (int, Fraction, Element, TensorElement)):
            raise DSLError(f"tensor context produced a {_kind(v)}", line, node.col)
    return value


def format_value(value, field: Field = QQ) -> str:
    if isinstance(value, tuple):
        return ", ".join(format_value(v, field) for v in value)
    if isinstance(value, (int, Fraction)):
        return field.format(field.norm(value))
    return str(value)


# ---------------------------------------------------------------------------
# presentation files
# ---------------------------------------------------------------------------


@dataclass
class PresentationDocument:
    """A parsed presentation file.  ``hopf_mode`` is None, 'symmetric' or 'explicit'."""

    presentation: PoissonPresentation
    hopf: HopfPresentation | None = None
    hopf_mode: str | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def structure(self):
        return self.hopf if self.hopf is not None else self.presentation

    def __eq__(self, other):
        if not isinstance(other, PresentationDocument):
            return NotImplemented
        return (self.presentation == other.presentation and self.hopf_mode == other.hopf_mode
                and (self.hopf == other.hopf if self.hopf is not None else other.hopf is None))


_INT = r"-?\d+"
_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_FIELD_RE = re.compile(r"field\s+(?:(QQ)|GF\(\s*(\d+)\s*\))\s*$")
_P_RE = re.compile(rf"bracket_degree\s+({_INT})\s*$")
_GEN_RE = re.compile(rf"gen\s+({_NAME}(?:\s*,\s*{_NAME})*)\s+deg\s+({_INT})(?:\s+pow\s+(\d+))?\s*$")
_BRACKET_RE = re.compile(rf"bracket\s*\{{\s*({_NAME})\s*,\s*({_NAME})\s*\}}\s*=")
_TABLE_RE = re.compile(rf"(d|coproduct|counit|antipode)\s+({_NAME})\s*=")
_HOPF_RE = re.compile(r"hopf\s+symmetric\s*$")


_COMMENT = re.compile(r"^\s*#|\s#(\s|$)")


def _strip_comment(line: str) -> str:
    """Drop a comment: '#' opening the line, or '#' with whitespace on both sides.

    Inside expressions the tensor symbol is written without surrounding spaces.
    """
    m = _COMMENT.search(line)
    return line if m is None else line[:m.start()]


def parse_document(text: str) -> PresentationDocument:
    """Parse a presentation file; raises :class:`DSLError` with line/column on bad input."""
    fld: Field | None = None
    p: int | None = None
    gens: list[Generator] = []
    gen_lines: dict[str, int] = {}
    brackets: dict[tuple[str, str], tuple[Node, int, int]] = {}
    tables: dict[str, dict[str, tuple[Node, int, int]]] = {k: {} for k in ("d", "coproduct", "counit", "antipode")}
    hopf_symmetric: int | None = None
    state = "header"

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        col = indent + 1
        m = re.match(r"[A-Za-z_]+", stripped)
        word = m.group() if m else stripped[:1]
        if word == "field":
            if fld is not None:
                raise DSLError("field given twice", lineno, col)
            if gens or state != "header":
                raise DSLError("field must precede generators", lineno, col)
            m = _FIELD_RE.match(stripped)
            if not m:
                raise DSLError("expected 'field QQ' or 'field GF(q)'", lineno, col)
            try:
                fld = QQ if m.group(1) else Field(int(m.group(2)))
            except AlgebraError as exc:
                raise DSLError(str(exc), lineno, col) from None
        elif word == "bracket_degree":
            if p is not None:
                raise DSLError("bracket_degree given twice", lineno, col)
            if gens or state != "header":
                raise DSLError("bracket_degree must precede generators", lineno, col)
            m = _P_RE.match(stripped)
            if not m:
                raise DSLError("expected 'bracket_degree INT'", lineno, col)
            p = int(m.group(1))
        elif word == "gen":
            if state != "header":
                raise DSLError("generators must be declared before tables", lineno, col)
            m = _GEN_RE.match(stripped)
            if not m:
                raise DSLError("expected 'gen NAME[, NAME...] deg INT [pow N]'", lineno, col)
            deg = int(m.group(2))
            pw = int(m.group(3)) if m.group(3) else None
            if pw is not None and pw < 2:
                raise DSLError("pow must be at least 2", lineno, indent + m.start(3) + 1)
            for nm in (s.strip() for s in m.group(1).split(",")):
                if nm in gen_lines:
                    raise DSLError(f"generator {nm!r} declared twice (first on line {gen_lines[nm]})", lineno, col)
                if nm in FUNCTIONS:
                    raise DSLError(f"{nm!r} is reserved", lineno, col)
                gen_lines[nm] = lineno
                gens.append(Generator(nm, deg, pw))
        elif word == "bracket":
            state = "tables"
            m = _BRACKET_RE.match(stripped)
            if not m:
                raise DSLError("expected 'bracket {a, b} = EXPR'", lineno, col)
            a, b = m.group(1), m.group(2)
            for nm, g in ((a, 1), (b, 2)):
                if nm not in gen_lines:
                    raise DSLError(f"undeclared name {nm!r}", lineno, indent + m.start(g) + 1)
            key = (a, b) if (a, b) not in brackets and (b, a) not in brackets else None
            if key is None:
                raise DSLError(f"bracket {{{a}, {b}}} given twice", lineno, col)
            rhs_off = indent + m.end()
            brackets[(a, b)] = (parse_expression(stripped[m.end():], "algebra", line=lineno, offset=rhs_off),
                                lineno, rhs_off + 1)
        elif word in tables:
            state = "tables"
            m = _TABLE_RE.match(stripped)
            if not m:
                raise DSLError(f"expected '{word} NAME = EXPR'", lineno, col)
            nm = m.group(2)
            if nm not in gen_lines:
                raise DSLError(f"undeclared name {nm!r}", lineno, indent + m.start(2) + 1)
            if nm in tables[word]:
                raise DSLError(f"{word} of {nm} given twice", lineno, col)
            if word != "d" and hopf_symmetric is not None:
                raise DSLError("explicit Hopf tables conflict with 'hopf symmetric'", lineno, col)
            ctx = "tensor" if word == "coproduct" else "algebra"
            rhs_off = indent + m.end()
            tables[word][nm] = (parse_expression(stripped[m.end():], ctx, line=lineno, offset=rhs_off),
                                lineno, rhs_off + 1)
        elif word == "hopf":
            state = "tables"
            if not _HOPF_RE.match(stripped):
                raise DSLError("expected 'hopf symmetric'", lineno, col)
            if any(tables[k] for k in ("coproduct", "counit", "antipode")):
                raise DSLError("'hopf symmetric' conflicts with explicit Hopf tables", lineno, col)
            hopf_symmetric = lineno
        else:
            raise DSLError(f"unknown directive {word!r}", lineno, col)

    fld = fld or QQ
    p = 0 if p is None else p
    try:
        A = GradedCommutativeAlgebra(GeneratorTable(gens), fld)
    except AlgebraError as exc:
        raise DSLError(str(exc), 1, 1) from None
    degs = dict(zip(A.table.names, A.table.degrees))

    def value(entry, ctx, want=None, what=""):
        node, lineno, _ = entry
        col = node.col
        v = evaluate(node, A, ctx, line=lineno)
        if ctx == "algebra":
            v = A.coerce(v) if not isinstance(v, Element) else v
            if want is not None:
                for u in v.terms:
                    if A.mono_degree(u) != want:
                        raise DSLError(f"degree mismatch in {what}: term {A.format_monomial(u)} has degree "
                                       f"{A.mono_degree(u)}, expected {want}", lineno, col)
        return v

    bvals = {}
    for (a, b), entry in brackets.items():
        want = degs[a] + degs[b] + p
        bvals[(a, b)] = value(entry, "algebra", want, f"{{{a}, {b}}}")
    dvals = {nm: value(e, "algebra", degs[nm] + 1, f"d({nm})") for nm, e in tables["d"].items()}
    try:
        P = PoissonPresentation(A, p, bvals, dvals)
    except AlgebraError as exc:
        raise DSLError(str(exc), _first_line(brackets, tables), 1) from None

    hopf = None
    mode = None
    hopf_lines = [e[1] for k in ("coproduct", "counit", "antipode") for e in tables[k].values()]
    try:
        if hopf_symmetric is not None:
            mode = "symmetric"
            hopf = symmetric_hopf(P)
        elif hopf_lines:
            mode = "explicit"
            T = TensorAlgebra.power(A, 2)
            cop = {}
            for nm, e in tables["coproduct"].items():
                v = value(e, "tensor")
                if isinstance(v, (int, Fraction)) or isinstance(v, Element):
                    raise DSLError(f"coproduct of {nm} must be a 2-fold tensor", e[1], e[0].col)
                if v.parent != T:
                    raise DSLError(f"coproduct of {nm} must be a 2-fold tensor", e[1], e[0].col)
                for key in v.terms:
                    if T.key_degree(key) != degs[nm]:
                        raise DSLError(f"degree mismatch in coproduct of {nm}: expected {degs[nm]}", e[1], e[0].col)
                cop[nm] = v
            cnt = {}
            for nm, e in tables["counit"].items():
                v = value(e, "algebra", 0 if degs[nm] == 0 else None, f"counit of {nm}")
                if any(sum(u) for u in v.terms):
                    raise DSLError(f"counit of {nm} must be a scalar", e[1], e[0].col)
                cnt[nm] = v.constant_term()
            ant = {nm: value(e, "algebra", degs[nm], f"antipode of {nm}") for nm, e in tables["antipode"].items()}
            hopf = HopfPresentation(P, cop, cnt, ant)
    except DSLError:
        raise
    except AlgebraError as exc:
        line = hopf_symmetric if hopf_symmetric is not None else min(hopf_lines)
        raise DSLError(str(exc), line, 1) from None
    return PresentationDocument(P, hopf, mode)


def _first_line(brackets, tables) -> int:
    lines = [e[1] for e in brackets.values()] + [e[1] for e in tables["d"].values()]
    return min(lines) if lines else 1


def parse_presentation(text: str):
    """A HopfPresentation when the file has Hopf data, else a PoissonPresentation."""
    return parse_document(text).structure


def print_document(doc: PresentationDocument | PoissonPresentation | HopfPresentation) -> str:
    """Canonical text: header, one generator per line, tables in generator order."""
    if isinstance(doc, HopfPresentation):
        doc = PresentationDocument(doc.base, doc, "explicit")
    elif isinstance(doc, PoissonPresentation):
        doc = PresentationDocument(doc)
    P = doc.presentation
    A = P.algebra
    F = A.field
    out = [f"field {'QQ' if F.characteristic == 0 else f'GF({F.characteristic})'}", f"bracket_degree {P.p}"]
    for g in A.table:
        out.append(f"gen {g.name} deg {g.degree}" + (f" pow {g.truncation}" if g.truncation is not None else ""))
    for (a, b), v in P.bracket_table().items():
        out.append(f"bracket {{{a}, {b}}} = {v}")
    for nm, v in P.differential_table().items():
        out.append(f"d {nm} = {v}")
    if doc.hopf_mode == "symmetric":
        out.append("hopf symmetric")
    elif doc.hopf is not None:
        H = doc.hopf
        for nm, v in H.coproduct_table().items():
            out.append(f"coproduct {nm} = {v}")
        for nm, v in H.counit_table().items():
            out.append(f"counit {nm} = {F.format(v)}")
        for nm, v in H.antipode_table().items():
            out.append(f"antipode {nm} = {v}")
    return "\n".join(out) + "\n"
