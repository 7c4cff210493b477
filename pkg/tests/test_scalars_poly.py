from fractions import Fraction

import pytest
from conftest import nonzero_scalars, polys, scalars, small_polys
from hypothesis import given

from sl2graded.poly import DEG_ZERO, H, Poly, format_poly, poly_shift, shift_avg, shift_diff
from sl2graded.scalars import ONE, ZERO, GaussianRational, I, format_scalar, gr


# -- GaussianRational ---------------------------------------------------------


def test_lowest_terms_and_structural_equality():
    a = GaussianRational(Fraction(6, 8), Fraction(-4, -2))
    assert (a.re.numerator, a.re.denominator) == (3, 4)
    assert a == gr(Fraction(3, 4), 2)
    assert hash(gr(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert gr(3) == 3 and gr(Fraction(1, 2)) == Fraction(1, 2)


def test_imaginary_unit():
    assert I * I == -1
    assert (1 + I) ** 2 == 2 * I
    assert (1 + I).inverse() == gr(Fraction(1, 2), Fraction(-1, 2))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@pytest.mark.parametrize(
    "value, text",
    [(gr(Fraction(3, 4)), "3/4"), (gr(-2), "−2"), (I, "i"), (gr(0, Fraction(1, 2)), "1/2*i"), (-I, "−i"), (gr(1, 2), "(1 + 2*i)")],
)
def test_scalar_text(value, text):
    assert format_scalar(value) == text


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(nonzero_scalars)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE


@given(scalars)
def test_json_round_trip(a):
    assert GaussianRational.from_json(a.to_json()) == a
    assert all(isinstance(s, str) for s in a.to_json())


def test_even_integer_predicate():
    assert gr(-6).is_even_integer() and gr(0).is_even_integer()
    assert not gr(3).is_even_integer()
    assert not gr(Fraction(4, 3)).is_even_integer()
    assert not gr(2, 1).is_even_integer()


# -- Poly ---------------------------------------------------------------------


def test_zero_polynomial_degree_is_not_an_integer():
    assert Poly([0, 0]).degree == DEG_ZERO
    assert not isinstance(Poly().degree, int)
    assert Poly([0, 0]).coeffs == ()


def test_shift_examples():
    assert poly_shift(H ** 2, -2) == Poly([4, -4, 1])
    f = Poly([0, -16, 0, 1])
    assert poly_shift(f, 0) == f
    assert poly_shift(f, -2) == Poly([24, -4, -6, 1])


def test_shift_avg_examples():
    assert shift_avg(Poly([1])) == Poly([1])
    assert shift_avg(H) == H
    assert shift_avg(H ** 2) == Poly([4, 0, 1])


def test_shift_diff_examples():
    assert shift_diff(Poly([1])).is_zero()
    assert shift_diff(H) == Poly([-2])
    for n in range(1, 9):
        d = shift_diff(H ** n)
        assert d.degree == n - 1 and d.lead() == -2 * n


def test_shift_matches_direct_expansion():
    # f(h + a) by repeated multiplication, independent of the binomial routine
    f = Poly([3, gr(1, 1), 0, Fraction(-2, 3), 5])
    for a in (-2, 2, 3, Fraction(1, 2), I):
        direct = Poly()
        for k, c in enumerate(f.coeffs):
            direct = direct + Poly([a, 1]) ** k * c
        assert poly_shift(f, a) == direct


@given(polys, scalars, scalars)
def test_shift_composes(f, a, b):
    assert poly_shift(poly_shift(f, a), b) == poly_shift(f, a + b)


@given(small_polys, small_polys, scalars)
def test_shift_is_ring_homomorphism(f, g, a):
    assert poly_shift(f + g, a) == poly_shift(f, a) + poly_shift(g, a)
    assert poly_shift(f * g, a) == poly_shift(f, a) * poly_shift(g, a)


@given(polys)
def test_avg_and_diff_recombine(f):
    assert shift_avg(f) + shift_diff(f) == poly_shift(f, -2)
    assert shift_avg(f) - shift_diff(f) == poly_shift(f, 2)


@given(polys)
def test_avg_keeps_degree_and_parity(f):
    assert shift_avg(f).degree == f.degree
    assert shift_avg(f.even_part()).odd_part().is_zero()
    assert shift_avg(f.odd_part()).even_part().is_zero()


@given(polys, polys)
def test_canonical_form_closure(f, g):
    for p in (f + g, f - g, f * g, shift_diff(f)):
        assert not p.coeffs or not p.coeffs[-1].is_zero()
        for c in p.coeffs:
            assert c.re.denominator > 0 and c.im.denominator > 0


@given(polys, small_polys.filter(lambda p: not p.is_zero()))
def test_divmod(f, d):
    q, r = f.divmod(d)
    assert q * d + r == f
    assert r.is_zero() or r.degree < d.degree


def test_poly_text():
    assert format_poly(Poly([-4, 0, 1])) == "h^2 − 4"
    assert format_poly(Poly([0, gr(0, Fraction(1, 2))])) == "1/2*i*h"
    assert format_poly(Poly()) == "0"
    assert format_poly(Poly([0, -16, 0, 1])) == "h^3 − 16*h"
