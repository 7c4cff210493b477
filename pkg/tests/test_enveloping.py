import random
from fractions import Fraction

import pytest
from conftest import lambdas, words
from hypothesis import given
from hypothesis import strategies as st
from oracles import cartan_nf_as_dict, cartan_oracle, pauli_nf_as_dict, pauli_oracle

from sl2graded.enveloping import (
    CartanNF,
    ExprSum,
    PauliNF,
    cartan_to_pauli,
    casimir_nf,
    grade_components_z,
    grade_components_z2sq,
    mu_of,
    nf_multiply,
    normalize_cartan,
    normalize_pauli,
    pauli_to_cartan,
)
from sl2graded.errors import ParameterMismatchError
from sl2graded.grading import Z, Z2, Z2sq, grade_coarsen_z2, pauli_label
from sl2graded.poly import H, Poly
from sl2graded.scalars import GaussianRational, I, gr


def test_expr_alias_and_unit():
    e = ExprSum({"AB": 2, "": 1})
    assert e.terms == {"hB": 2, "": 1}
    with pytest.raises(ValueError):
        ExprSum.word("z")


# -- Pauli normal form ----------------------------------------------------------


def test_c_squared_at_lambda_2():
    u = normalize_pauli("CC", 2)
    assert u.entries == {(0, 0): Poly([-8, 0, 1]), (2, 0): Poly([1])}
    assert str(u) == "(h^2 − 8) + (1)*B^2"


@pytest.mark.parametrize("lam", [0, 3, gr(1, 1)])
def test_cb_and_bh_rules(lam):
    assert normalize_pauli("CB", lam).entries == {(1, 1): Poly([1]), (0, 0): Poly([0, 2])}
    assert normalize_pauli("Bh", lam).entries == {(1, 0): H, (0, 1): Poly([-2])}


@pytest.mark.parametrize("lam", [0, 1, 2, -2, 4, Fraction(1, 2), I])
@pytest.mark.parametrize("word", ["CC", "CCC", "BhC", "CBhCB", "xyyx", "ChhBCh", "yxhxCy"])
def test_pauli_matches_pair_rewriting_oracle(lam, word):
    lam = GaussianRational.coerce(lam)
    assert pauli_nf_as_dict(normalize_pauli(word, lam)) == pauli_oracle(word, mu_of(lam))


@given(words, lambdas)
def test_pauli_oracle_random(word, lam):
    lam = GaussianRational.coerce(lam)
    assert pauli_nf_as_dict(normalize_pauli(word, lam)) == pauli_oracle(word, mu_of(lam))


@given(words, words, lambdas)
def test_homomorphism(w1, w2, lam):
    assert normalize_pauli(w1 + w2, lam) == nf_multiply(normalize_pauli(w1, lam), normalize_pauli(w2, lam))


@given(words, words, st.integers(-3, 3), lambdas)
def test_linearity(w1, w2, c, lam):
    e = ExprSum({w1: 1}) + ExprSum({w2: c})
    assert normalize_pauli(e, lam) == normalize_pauli(w1, lam) + normalize_pauli(w2, lam).scale(c)


@given(words, lambdas)
def test_idempotence(word, lam):
    u = normalize_pauli(word, lam)
    again = PauliNF(lam)
    for (l, m), p in u.entries.items():
        for k, c in enumerate(p.coeffs):
            again = again + normalize_pauli(ExprSum({"h" * k + "B" * l + "C" * m: c}), lam)
    assert again == u


@given(words, words, words, lambdas)
def test_associativity(w1, w2, w3, lam):
    a, b, c = (normalize_pauli(w, lam) for w in (w1, w2, w3))
    assert nf_multiply(nf_multiply(a, b), c) == nf_multiply(a, nf_multiply(b, c))


def test_multiply_examples():
    b = normalize_pauli("B", 1)
    assert nf_multiply(b, b).entries == {(2, 0): Poly([1])}
    c = normalize_pauli("C", 0)
    assert nf_multiply(c, c).entries == {(0, 0): Poly([0, 0, 1]), (2, 0): Poly([1])}


def test_lambda_mismatch():
    with pytest.raises(ParameterMismatchError):
        nf_multiply(normalize_pauli("B", 1), normalize_pauli("B", 2))


@pytest.mark.parametrize("lam, value", [(0, 1), (1, 4), (2, 9), (-2, 1), (4, 25), (Fraction(1, 2), Fraction(9, 4)), (I, 2 * I)])
def test_casimir_is_scalar(lam, value):
    assert casimir_nf(lam) == PauliNF.scalar(lam, value)


@pytest.mark.parametrize("lam", [0, 1, 2, I])
def test_casimir_central(lam):
    c = casimir_nf(lam)
    for w in ("B", "C", "h", "x", "BhC", "yyh"):
        u = normalize_pauli(w, lam)
        assert nf_multiply(c, u) == nf_multiply(u, c)


def test_filtration_count():
    # h^k B^l C^m with m <= 1 and k + l + m <= n
    for n in range(9):
        count = sum(1 for k in range(n + 1) for l in range(n + 1) for m in (0, 1) if k + l + m <= n)
        assert count == sum(2 * i + 1 for i in range(n + 1))


# -- Cartan normal form ---------------------------------------------------------


def test_cartan_examples():
    assert normalize_cartan("yx", 0).h_part == Poly([0, Fraction(-1, 2), Fraction(-1, 4)])
    assert normalize_cartan("xy", 0).h_part == Poly([0, Fraction(1, 2), Fraction(-1, 4)])
    assert normalize_cartan("h", 5).h_part == H
    diff = normalize_cartan("xy", 3) - normalize_cartan("yx", 3)
    assert diff == CartanNF(3, {0: H})


@given(words, lambdas)
def test_cartan_matches_pair_rewriting_oracle(word, lam):
    lam = GaussianRational.coerce(lam)
    assert cartan_nf_as_dict(normalize_cartan(word, lam)) == cartan_oracle(word, mu_of(lam))


@given(words, lambdas)
def test_basis_round_trip(word, lam):
    u = normalize_cartan(word, lam)
    assert pauli_to_cartan(cartan_to_pauli(u)) == u
    v = normalize_pauli(word, lam)
    assert cartan_to_pauli(pauli_to_cartan(v)) == v
    assert cartan_to_pauli(u) == v


def test_change_of_basis_examples():
    assert cartan_to_pauli(normalize_cartan("x", 0)).entries == {(1, 0): Poly([Fraction(1, 2)]), (0, 1): Poly([Fraction(1, 2)])}
    assert pauli_to_cartan(normalize_pauli("B", 0)).terms == {1: Poly([1]), -1: Poly([1])}
    u = normalize_cartan("yyh", 1)
    assert pauli_to_cartan(cartan_to_pauli(u)) == u


# -- gradings -------------------------------------------------------------------


def test_pauli_grading_examples():
    assert set(grade_components_z2sq(normalize_pauli("C", 0))) == {Z2sq(1, 1)}
    assert set(grade_components_z2sq(normalize_pauli("", 0))) == {Z2sq(0, 0)}
    assert set(grade_components_z2sq(normalize_pauli("hhB", 0))) == {Z2sq(0, 1)}
    assert set(grade_components_z2sq(normalize_pauli("hBC", 0))) == {Z2sq(0, 0)}


def test_cartan_grading_examples():
    assert set(grade_components_z(normalize_cartan("x", 0))) == {Z(1)}
    assert set(grade_components_z(normalize_cartan("hhhhh", 0))) == {Z(0)}
    assert set(grade_components_z(normalize_cartan("xy", 2))) == {Z(0)}
    assert set(grade_components_z(normalize_cartan("y", 2))) == {Z(-1)}


def test_coarsening():
    assert grade_coarsen_z2(Z2sq(1, 0)) == Z2(0)
    assert grade_coarsen_z2(Z2sq(0, 0)) == Z2(0)
    assert grade_coarsen_z2(Z2sq(1, 1)) == Z2(1)
    assert grade_coarsen_z2(Z2sq(0, 1)) == Z2(1)


def test_label_arithmetic():
    assert Z2sq(1, 0) + Z2sq(0, 1) == Z2sq(1, 1)
    assert Z2sq(1, 1) + Z2sq(1, 1) == Z2sq(0, 0)
    assert Z(2) + Z(-3) == Z(-1)
    assert Z2(1) + Z2(1) == Z2(0)
    with pytest.raises(ValueError):
        Z2sq(2, 0)


@given(words, words, lambdas)
def test_grading_additive(w1, w2, lam):
    u, v = normalize_pauli(w1, lam), normalize_pauli(w2, lam)
    for a, ua in grade_components_z2sq(u).items():
        for b, vb in grade_components_z2sq(v).items():
            prod = nf_multiply(ua, vb)
            for (l, m), p in prod.entries.items():
                for k, c in enumerate(p.coeffs):
                    if not c.is_zero():
                        assert pauli_label(k, l, m) == a + b


@given(words, lambdas)
def test_components_sum_back(word, lam):
    u = normalize_pauli(word, lam)
    total = PauliNF(lam)
    for part in grade_components_z2sq(u).values():
        total = total + part
    assert total == u
    c = normalize_cartan(word, lam)
    total_c = CartanNF(lam)
    for part in grade_components_z(c).values():
        total_c = total_c + part
    assert total_c == c


def test_casimir_label():
    for lam in (0, 2, I):
        assert set(grade_components_z2sq(casimir_nf(lam))) <= {Z2sq(0, 0)}


def test_json_round_trip():
    u = normalize_pauli("CBhx", gr(1, 2))
    assert PauliNF.from_json(u.to_json()) == u


def test_words_of_length_six_deterministic_sample():
    rng = random.Random(11)
    for _ in range(50):
        w = "".join(rng.choice("xyhABC") for _ in range(rng.randint(0, 6)))
        lam = rng.choice([0, 1, 2, I])
        assert pauli_nf_as_dict(normalize_pauli(w, lam)) == pauli_oracle(w, mu_of(GaussianRational.coerce(lam)))
