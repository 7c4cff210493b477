"""Dense univariate polynomials in ``h`` over the Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .scalars import MINUS, ONE, RATIONAL_TYPES, ZERO, GaussianRational, ScalarLike, format_scalar

#: Degree reported for the zero polynomial. Deliberately not an integer.
DEG_ZERO = float("-inf")


def _strip(coeffs: list[GaussianRational]) -> tuple[GaussianRational, ...]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial ``sum(coeffs[k] * h**k)``; trailing zeros are always stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        self.coeffs = _strip([GaussianRational.coerce(c) for c in coeffs])

    @classmethod
    def _wrap(cls, coeffs: list[GaussianRational]) -> Poly:
        p = object.__new__(cls)
        p.coeffs = _strip(coeffs)
        return p

    @classmethod
    def constant(cls, c: ScalarLike) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: ScalarLike = 1) -> Poly:
        return cls([0] * k + [c])

    # -- structure ------------------------------------------------------

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lead(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def monic(self) -> Poly:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic normalisation")
        return self.scale(self.lead().inverse())

    def even_part(self) -> Poly:
        return Poly._wrap([c if k % 2 == 0 else ZERO for k, c in enumerate(self.coeffs)])

    def odd_part(self) -> Poly:
        return Poly._wrap([c if k % 2 == 1 else ZERO for k, c in enumerate(self.coeffs)])

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = _as_poly(other)
            if other is None:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = _as_poly(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c: ScalarLike) -> Poly:
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return ZERO_POLY
        return Poly._wrap([c * a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (GaussianRational, *RATIONAL_TYPES)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._wrap(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int) -> Poly:
        result = ONE_POLY
        for _ in range(k):
            result = result * self
        return result

    def mul_h(self, k: int = 1) -> Poly:
        """Multiply by ``h**k``."""
        if not self.coeffs:
            return self
        return Poly._wrap([ZERO] * k + list(self.coeffs))

    def divmod(self, divisor: Poly) -> tuple[Poly, Poly]:
        """Exact Euclidean division: ``self == q*divisor + r`` with ``deg r < deg divisor``."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = len(divisor.coeffs) - 1
        inv = divisor.lead().inverse()
        quot = [ZERO] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            q = c * inv
            quot[k - dd] = q
            for j, d in enumerate(divisor.coeffs):
                rem[k - dd + j] = rem[k - dd + j] - q * d
        return Poly._wrap(quot), Poly._wrap(rem[:dd] if dd > 0 else [])

    def divides(self, other: Poly) -> bool:
        """True iff ``self`` divides ``other``."""
        return other.divmod(self)[1].is_zero()

    def __call__(self, x: ScalarLike) -> GaussianRational:
        x = GaussianRational.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- comparison / text ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> Poly:
        return cls(GaussianRational.from_json(pair) for pair in data)


def _as_poly(value) -> Poly | None:
    try:
        return Poly.constant(GaussianRational.coerce(value))
    except TypeError:
        return None


HALF = Fraction(1, 2)
ZERO_POLY = Poly()
ONE_POLY = Poly([1])
H = Poly([0, 1])


def _binomial_sums(f: Poly, a: int, parity: int | None) -> list[GaussianRational]:
    """Coefficients of ``f(h + a)`` for integer ``a``, optionally keeping only
    the contributions ``c_k h^j`` with ``k - j`` of the given parity.

    Real and imaginary parts are accumulated separately (hot path).
    """
    coeffs = f.coeffs
    n = len(coeffs)
    re = [0] * n
    im = [0] * n
    for k, c in enumerate(coeffs):
        cr, ci = c.re, c.im
        if not cr and not ci:
            continue
        for j in range(k + 1):
            if parity is not None and (k - j) % 2 != parity:
                continue
            w = comb(k, j) * a ** (k - j)
            if cr:
                re[j] += cr * w
            if ci:
                im[j] += ci * w
    return [GaussianRational(x, y) for x, y in zip(re, im)]


def poly_shift(f: Poly, a: ScalarLike) -> Poly:
    """Return ``f(h + a)``."""
    a = GaussianRational.coerce(a)
    if a.is_zero() or f.is_constant():
        return f
    if a.is_real() and a.re.denominator == 1:
        return Poly._wrap(_binomial_sums(f, int(a.re), None))
    acc: list[GaussianRational] = []
    for c in reversed(f.coeffs):
        # Horner: acc <- acc * (h + a) + c
        nxt = [ZERO] * (len(acc) + 1)
        for k, x in enumerate(acc):
            nxt[k + 1] = nxt[k + 1] + x
            nxt[k] = nxt[k] + x * a
        nxt[0] = nxt[0] + c
        acc = nxt
    return Poly._wrap(acc)


def shift_avg(f: Poly) -> Poly:
    """``(f(h-2) + f(h+2)) / 2``; fixes degree and parity of ``f``.

    Only the even-order terms of the binomial expansion survive.
    """
    return Poly._wrap(_binomial_sums(f, 2, 0))


def shift_diff(f: Poly) -> Poly:
    """``(f(h-2) - f(h+2)) / 2``; lowers degree by one, leading coefficient ``-2*deg*lead``."""
    return Poly._wrap(_binomial_sums(f, -2, 1))


def format_poly(f: Poly, var: str = "h") -> str:
    """Text form, highest degree first: ``h^3 − 16*h``, ``1/2*i*h``, ``(1 + i)*h^2``."""
    if f.is_zero():
        return "0"
    parts: list[tuple[bool, str]] = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c.is_zero():
            continue
        negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        mag = -c if negative else c
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = format_scalar(mag)
        elif mag == ONE:
            body = mono
        else:
            body = f"{format_scalar(mag)}*{mono}"
        parts.append((negative, body))
    first_neg, first = parts[0]
    out = (MINUS if first_neg else "") + first
    for neg, body in parts[1:]:
        out += f" {MINUS if neg else '+'} {body}"
    return out
