"""Exact arithmetic in the Gaussian rationals Q(i)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

from gmpy2 import mpq

ScalarLike = Union["GaussianRational", int, Fraction]

#: Rational types accepted wherever a scalar is expected.
RATIONAL_TYPES = (int, Fraction, type(mpq(0)))
_QZERO = mpq(0)


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts.

    Both parts are GMP rationals (``gmpy2.mpq``), always in lowest terms with a
    positive denominator, so equality is structural. Plain ``int`` and
    ``Fraction`` values are accepted everywhere and compare equal.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int | str = 0, im: Rational | int | str = 0):
        self.re = mpq(re)
        self.im = mpq(im)

    @classmethod
    def _raw(cls, re, im) -> GaussianRational:
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value: ScalarLike) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, RATIONAL_TYPES):
            return cls(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_even_integer(self) -> bool:
        """True iff the value lies in 2Z (imaginary part 0, integral, even)."""
        return not self.im and self.re.denominator == 1 and self.re.numerator % 2 == 0

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            if not self.im and not other.im:
                return GaussianRational._raw(self.re + other.re, self.im)
            return _R(self.re + other.re, self.im + other.im)
        if isinstance(other, RATIONAL_TYPES):
            return _R(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _R(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return _R(self.re - other.re, self.im - other.im)
        if isinstance(other, RATIONAL_TYPES):
            return _R(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return _R(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational._raw(a * c, b)
            return _R(a * c - b * d, a * d + b * c)
        if isinstance(other, RATIONAL_TYPES):
            return _R(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return _R(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        if not self.im:
            return _R(1 / self.re)
        n = self.norm()
        return _R(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            if not other:
                raise ZeroDivisionError("division by zero")
            return _R(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return GaussianRational(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, RATIONAL_TYPES):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    # -- text forms -----------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        return format_scalar(self)

    def to_json(self) -> list[str]:
        return [str(self.re), str(self.im)]

    @classmethod
    def from_json(cls, pair) -> GaussianRational:
        re, im = pair
        return cls(mpq(re), mpq(im))


def _R(re, im=_QZERO) -> GaussianRational:
    # callers pass mpq values only: mpq combined with int, Fraction or mpq stays mpq
    obj = _new(GaussianRational)
    obj.re = re
    obj.im = im
    return obj


_new = object.__new__


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

MINUS = "−"


def gr(value: ScalarLike | str, im: ScalarLike | str = 0) -> GaussianRational:
    """Shorthand constructor: ``gr(1, 2)`` is ``1 + 2i``; ``gr("3/4")`` is 3/4."""
    if isinstance(value, GaussianRational):
        return value + GaussianRational.coerce(im) * I if im else value
    return GaussianRational(mpq(value), mpq(im))


def format_scalar(c: GaussianRational) -> str:
    """Render ``c`` in the ``p/q`` / ``p/q*i`` literal syntax.

    Values with both parts nonzero are parenthesised, e.g. ``(1 + 2*i)``.
    """
    if not c.im:
        return _signed(c.re)
    if not c.re:
        mag = abs(c.im)
        body = "i" if mag == 1 else f"{mag}*i"
        return body if c.im > 0 else MINUS + body
    mag = abs(c.im)
    imag = "i" if mag == 1 else f"{mag}*i"
    sign = "+" if c.im > 0 else MINUS
    return f"({_signed(c.re)} {sign} {imag})"


def _signed(q) -> str:
    return str(q) if q >= 0 else MINUS + str(-q)
