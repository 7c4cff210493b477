"""Expressions over the generators ``x y h A B C`` and module elements ``f ; g``.

Precedence, tightest first: ``^`` (non-negative integer exponent), unary
minus, ``*`` (left-associative, order preserved), ``+``/``-``. Scalar
literals are integers, fractions ``p/q`` and ``i``; ``A`` is read as ``h``.

The constructors fold scalar-only pieces as they go (``3/2*i`` becomes one
scalar, ``-2`` is the scalar minus two), so printing and re-parsing a tree
gives the same tree back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .enveloping import ExprSum
from .module import ModuleElement
from .poly import Poly
from .scalars import MINUS, GaussianRational, I, ScalarLike, format_scalar

GEN_NAMES = frozenset("xyhABC")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        exp = f"; expected one of {', '.join(sorted(expected))}" if expected else ""
        super().__init__(f"{line}:{column}: {message}{exp}")


class UnknownIdentifierError(ParseError):
    pass


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scalar:
    value: GaussianRational


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Mul:
    factors: tuple  # at least two, never two adjacent Scalars


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Scalar, Gen, Add, Sub, Neg, Mul, Pow]


def make_add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return Scalar(a.value + b.value)
    return Add(a, b)


def make_sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return Scalar(a.value - b.value)
    return Sub(a, b)


def make_neg(a: Expr) -> Expr:
    if isinstance(a, Scalar):
        return Scalar(-a.value)
    return Neg(a)


def make_mul(factors: list) -> Expr:
    out: list = []
    for f in factors:
        if out and isinstance(f, Scalar) and isinstance(out[-1], Scalar):
            out[-1] = Scalar(out[-1].value * f.value)
        else:
            out.append(f)
    return out[0] if len(out) == 1 else Mul(tuple(out))


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # NUM IDENT OP EOF
    text: str
    line: int
    column: int


_OPS = {"+": "+", "-": "-", MINUS: "-", "*": "*", "^": "^", "/": "/", "(": "(", ")": ")", ";": ";"}


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    line, col, k = 1, 1, 0
    while k < len(src):
        ch = src[k]
        if ch == "\n":
            line, col, k = line + 1, 1, k + 1
            continue
        if ch.isspace():
            col, k = col + 1, k + 1
            continue
        if ch.isdigit():
            j = k
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(Token("NUM", src[k:j], line, col))
            col, k = col + (j - k), j
            continue
        if ch.isalpha() or ch == "_":
            j = k
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(Token("IDENT", src[k:j], line, col))
            col, k = col + (j - k), j
            continue
        if ch in _OPS:
            toks.append(Token("OP", _OPS[ch], line, col))
            col, k = col + 1, k + 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("EOF", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_ATOM_START = frozenset({"number", "i", "x", "y", "h", "A", "B", "C", "(", "-"})


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def take(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def at_op(self, op: str) -> bool:
        t = self.peek()
        return t.kind == "OP" and t.text == op

    def fail(self, message: str, expected: frozenset[str]) -> ParseError:
        t = self.peek()
        return ParseError(message, t.line, t.column, expected)

    def parse_all(self) -> Expr:
        e = self.expr()
        t = self.peek()
        if t.kind != "EOF":
            raise self.fail(f"unexpected {t.text!r}", frozenset({"+", "-", "*", "^", "end of input"}))
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.at_op("+") or self.at_op("-"):
            op = self.take().text
            right = self.term()
            left = make_add(left, right) if op == "+" else make_sub(left, right)
        return left

    def term(self) -> Expr:
        factors = [self.unary()]
        while self.at_op("*"):
            self.take()
            factors.append(self.unary())
        return make_mul(factors)

    def unary(self) -> Expr:
        if self.at_op("-"):
            self.take()
            return make_neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.at_op("^"):
            self.take()
            t = self.peek()
            if t.kind != "NUM":
                raise self.fail("exponent must be a non-negative integer", frozenset({"number"}))
            self.take()
            return Pow(base, int(t.text))
        return base

    def atom(self) -> Expr:
        t = self.peek()
        if t.kind == "NUM":
            self.take()
            value = Fraction(int(t.text))
            if self.at_op("/"):
                self.take()
                d = self.peek()
                if d.kind != "NUM":
                    raise self.fail("denominator must be an integer", frozenset({"number"}))
                self.take()
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.line, d.column)
                value = Fraction(int(t.text), int(d.text))
            return Scalar(GaussianRational(value))
        if t.kind == "IDENT":
            self.take()
            if t.text == "i":
                return Scalar(I)
            if t.text in GEN_NAMES:
                return Gen("h" if t.text == "A" else t.text)
            raise UnknownIdentifierError(
                f"unknown identifier {t.text!r}", t.line, t.column, frozenset(GEN_NAMES | {"i"})
            )
        if self.at_op("("):
            self.take()
            e = self.expr()
            if not self.at_op(")"):
                raise self.fail("unclosed parenthesis", frozenset({")", "+", "-", "*"}))
            self.take()
            return e
        what = "end of input" if t.kind == "EOF" else repr(t.text)
        raise self.fail(f"unexpected {what}", _ATOM_START)


def parse_expr(src: str) -> Expr:
    """Parse an expression; raises :class:`ParseError` with line/column."""
    if not src.strip():
        raise ParseError("empty expression", 1, 1, _ATOM_START)
    return _Parser(src).parse_all()


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

_ADD, _MUL, _NEG, _POW, _ATOM = 1, 2, 3, 4, 5


def _scalar_level(c: GaussianRational) -> int:
    if c.re and c.im:
        return _ATOM  # printed in parentheses
    if (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0):
        return _NEG
    if c.im or c.re.denominator != 1:
        return _MUL
    return _ATOM


def _level(e: Expr) -> int:
    if isinstance(e, Scalar):
        return _scalar_level(e.value)
    if isinstance(e, Gen):
        return _ATOM
    if isinstance(e, (Add, Sub)):
        return _ADD
    if isinstance(e, Mul):
        return _MUL
    if isinstance(e, Neg):
        return _NEG
    return _POW


def _wrap(e: Expr, min_level: int) -> str:
    s = format_expr(e)
    return f"({s})" if _level(e) < min_level else s


def format_expr(e: Expr) -> str:
    """Text form that :func:`parse_expr` reads back to the same tree."""
    if isinstance(e, Scalar):
        return format_scalar(e.value)
    if isinstance(e, Gen):
        return e.name
    if isinstance(e, Add):
        return f"{_wrap(e.left, _ADD)} + {_wrap(e.right, _MUL)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.left, _ADD)} {MINUS} {_wrap(e.right, _MUL)}"
    if isinstance(e, Neg):
        return MINUS + _wrap(e.operand, _NEG)
    if isinstance(e, Mul):
        # a scalar factor never needs parentheses: "x*1/2*i" reads back as x times i/2
        return "*".join(format_scalar(f.value) if isinstance(f, Scalar) else _wrap(f, _NEG) for f in e.factors)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _ATOM)}^{e.exponent}"
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# Lowering
# ---------------------------------------------------------------------------


def lower(e: Expr) -> ExprSum:
    """Expand into a sum of words with scalar coefficients (order of letters kept)."""
    if isinstance(e, Scalar):
        return ExprSum.scalar(e.value)
    if isinstance(e, Gen):
        return ExprSum.word(e.name)
    if isinstance(e, Add):
        return lower(e.left) + lower(e.right)
    if isinstance(e, Sub):
        return lower(e.left) - lower(e.right)
    if isinstance(e, Neg):
        return -lower(e.operand)
    if isinstance(e, Mul):
        out = lower(e.factors[0])
        for f in e.factors[1:]:
            out = out * lower(f)
        return out
    if isinstance(e, Pow):
        return lower(e.base) ** e.exponent
    raise TypeError(f"not an expression node: {e!r}")


def parse_scalar(src: str) -> GaussianRational:
    """A scalar-valued expression such as ``-1/2``, ``3/2*i`` or ``1 + 2*i``."""
    s = lower(parse_expr(src))
    bad = [w for w in s.terms if w]
    if bad:
        raise ParseError(f"expected a scalar, found generator word {bad[0]!r}", 1, 1)
    return s.terms.get("", GaussianRational(0))


def _as_poly(s: ExprSum, line: int, column: int) -> Poly:
    coeffs: dict[int, GaussianRational] = {}
    for w, c in s.terms.items():
        if set(w) - {"h"}:
            raise ParseError(f"polynomial in h expected, found word {w!r}", line, column)
        coeffs[len(w)] = coeffs.get(len(w), GaussianRational(0)) + c
    if not coeffs:
        return Poly()
    return Poly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])


def parse_poly(src: str) -> Poly:
    return _as_poly(lower(parse_expr(src)), 1, 1)


def parse_element(src: str, lam: ScalarLike) -> ModuleElement:
    """``"f ; g"`` is the coset ``f(h) + g(h) B``; a missing ``; g`` means ``g = 0``."""
    parts = src.split(";")
    if len(parts) > 2:
        col = src.index(";", src.index(";") + 1) + 1
        raise ParseError("at most one ';' is allowed", 1, col)
    f = parse_poly(parts[0])
    g = Poly()
    if len(parts) == 2:
        offset = len(parts[0]) + 1
        try:
            g = parse_poly(parts[1])
        except ParseError as exc:
            column = exc.column + offset if exc.line == 1 else exc.column
            raise ParseError(exc.message, exc.line, column, exc.expected) from None
    return ModuleElement(GaussianRational.coerce(lam), f, g)
