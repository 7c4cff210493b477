import random
from dataclasses import replace
from fractions import Fraction

import pytest
from conftest import polys, small_polys
from hypothesis import given
from hypothesis import strategies as st
from oracles import in_span, r_closed_form, recurrence_b_nm2_c2, recurrence_b_nm2_cb, span_images

from sl2graded.enveloping import PauliNF, normalize_pauli
from sl2graded.errors import DomainError, InternalInconsistencyError, ParameterMismatchError
from sl2graded.module import ModuleElement, act_generator, act_nf, z2sq_split
from sl2graded.poly import H, Poly, poly_shift
from sl2graded.scalars import GaussianRational, I, gr
from sl2graded.submodules import (
    SubmoduleId,
    classify_generated,
    compute_r,
    generator_of,
    graded_simplicity_probe,
    join,
    membership,
    quotient_dim,
    rank2_n,
    special_vector,
    split_pq,
)

EVEN = [0, 2, -2, 4, -4, 6, -6, 8, -8, 10, -10, 12, -12]
FULL, N, P, Q, ZERO = SubmoduleId.FULL, SubmoduleId.N, SubmoduleId.P, SubmoduleId.Q, SubmoduleId.ZERO


def el(lam, f=(), g=()):
    return ModuleElement(GaussianRational.coerce(lam), Poly(f), Poly(g))


# -- n and r ------------------------------------------------------------------------


@pytest.mark.parametrize("lam, n", [(2, 2), (0, 1), (-6, 3), (-2, 1), (4, 3), (-4, 2)])
def test_rank2_n(lam, n):
    assert rank2_n(lam) == n
    assert lam * lam + 2 * lam == 4 * (n * n - n)


@pytest.mark.parametrize("lam", [1, Fraction(1, 2), I, gr(2, 1), -3])
def test_rank2_n_domain(lam):
    with pytest.raises(DomainError):
        rank2_n(lam)
    with pytest.raises(DomainError):
        compute_r(lam)


@pytest.mark.parametrize(
    "lam, r, rstar",
    [(0, [0, 1], [1]), (-2, [0, 1], [1]), (2, [-4, 0, 1], [0, 1]), (-4, [-4, 0, 1], [0, 1]), (4, [0, -16, 0, 1], [-4, 0, 1])],
)
def test_r_table(lam, r, rstar):
    info = compute_r(lam)
    assert info.r == Poly(r) and info.rstar == Poly(rstar)
    assert info.c_r_factor == -2 * info.n


def test_r_at_zero_by_hand():
    # C^2 . (h + a) = -4(h + a) forces a = 0
    for a in (0, 1, -3):
        v = el(0, [a, 1])
        lhs = act_nf(normalize_pauli("CC", 0), v)
        assert (lhs == v.scale(-4)) == (a == 0)


@pytest.mark.parametrize("lam", EVEN)
def test_r_against_recurrences_and_closed_form(lam):
    info = compute_r(lam)
    n, mu = info.n, lam * lam + 2 * lam
    assert info.r.coeff(n - 1) == 0
    if n >= 2:
        assert info.r.coeff(n - 2) == recurrence_b_nm2_c2(n, mu)
        assert info.r.coeff(n - 2) == recurrence_b_nm2_cb(n, mu)
    assert info.r == r_closed_form(n)


def test_recurrence_specialisations():
    assert recurrence_b_nm2_c2(2, 8) == -4  # -mu/2
    assert recurrence_b_nm2_cb(2, 8) == -4  # 4 - mu
    assert recurrence_b_nm2_c2(3, 24) == Fraction(8 - 72, 4)
    assert recurrence_b_nm2_c2(4, 48) == recurrence_b_nm2_cb(4, 48) == -40


@pytest.mark.parametrize("lam", EVEN)
def test_eigen_relations(lam):
    info = compute_r(lam)
    n = info.n
    r = el(lam, info.r.coeffs)

    def act(w):
        return act_nf(normalize_pauli(w, lam), r)

    assert act("CC") == r.scale(-4 * n * n)
    assert act("CB") == r.poly_mul(H.scale(2 * (n + 1)))
    # the other two relations follow and are checked as such
    assert act("BC") == r.poly_mul(H.scale(2 * n))
    assert act("BB") == r.poly_mul(Poly([-4 * n, 0, -1]))
    assert Poly([2 * n, 1]) * poly_shift(info.r, -2) == Poly([-2 * n, 1]) * poly_shift(info.r, 2)
    c_r = act_generator("C", r)
    assert act_generator("B", r) == c_r.poly_mul(H.scale(Fraction(-1, 2 * n)))
    assert c_r == el(lam, [], info.rstar.scale(-2 * n).coeffs)
    parity = info.r.odd_part() if n % 2 == 0 else info.r.even_part()
    assert parity.is_zero()


@pytest.mark.parametrize("lam", EVEN)
def test_special_vector_eigen_relations(lam):
    info = compute_r(lam)
    n = info.n
    for a1, a2 in [(1, 0), (0, 1), (2, gr(1, 3)), (1, I / (2 * n))]:
        u = special_vector(lam, a1, a2)
        for w, scale_poly in (("CC", Poly([-4 * n * n])), ("BC", H.scale(2 * n)), ("CB", H.scale(2 * (n + 1))), ("BB", Poly([-4 * n, 0, -1]))):
            assert act_nf(normalize_pauli(w, lam), u) == u.poly_mul(scale_poly)


def test_special_vector_examples():
    assert special_vector(2, 1, 0) == el(2, [-4, 0, 1])
    assert special_vector(2, 0, 1) == el(2, [], [0, -4])
    assert special_vector(2, 1, I / 4) == generator_of(2, P)
    with pytest.raises(DomainError):
        special_vector(3, 1, 0)


@pytest.mark.parametrize("lam", [0, 2, -2, 4, -4, 6])
def test_pq_eigenstructure(lam):
    # C acts on the P generator by -2ni (the sign is fixed by direct computation)
    n = compute_r(lam).n
    gp, gq = generator_of(lam, P), generator_of(lam, Q)
    assert act_generator("C", gp) == gp.scale(-2 * n * I)
    assert act_generator("C", gq) == gq.scale(2 * n * I)
    assert act_generator("B", gp) == gp.poly_mul(H.scale(I))
    assert act_generator("B", gq) == gq.poly_mul(H.scale(-I))
    assert act_generator("C", gp) != gp.scale(2 * n * I)


# -- membership -----------------------------------------------------------------------


def test_membership_examples():
    assert membership(2, el(2, [0, -4, 0, 1]), N)
    assert not membership(2, el(2, [0, 1]), N)
    assert membership(2, el(2, [-4, 0, 1], [0, -I]), P)
    assert not membership(2, el(2, [-4, 0, 1], [0, -I]), Q)


def test_membership_errors():
    with pytest.raises(DomainError):
        membership(2, el(2, [1]), FULL)
    with pytest.raises(DomainError):
        membership(1, el(1, [1]), N)
    with pytest.raises(ParameterMismatchError):
        membership(2, el(4, [1]), N)


@pytest.mark.parametrize("lam", [0, 2, -4, 4])
@pytest.mark.parametrize("which", [N, P, Q])
def test_membership_against_span_oracle(lam, which):
    """Divisibility characterisation vs. the span of Pauli monomials applied to the generator."""
    gen = generator_of(lam, which)
    spanning = span_images(gen, 7)
    # soundness: everything reached from the generator passes the divisibility test
    assert all(membership(lam, v, which) for v in spanning)
    # completeness on low degrees: the divisibility basis lies in the span
    info = compute_r(lam)
    if which is N:
        basis = [el(lam, (info.r * H ** j).coeffs) for j in range(3)]
        basis += [el(lam, [], (info.rstar * H ** j).coeffs) for j in range(3)]
    else:
        basis = [gen.poly_mul(H ** j) for j in range(3)]
    assert all(in_span(b, spanning) for b in basis)
    # and elements failing the test are not in the span
    outside = [el(lam, [1]), el(lam, (info.r + Poly([1])).coeffs)]
    if which is not N:
        outside.append(generator_of(lam, Q if which is P else P))
    for m in outside:
        assert not membership(lam, m, which)
        assert not in_span(m, spanning)


@given(small_polys, small_polys, st.sampled_from([0, 2, -4, 4]))
def test_direct_sum(a, b, lam):
    info = compute_r(lam)
    m = el(lam, (a * info.r).coeffs, (b * info.rstar).coeffs)
    assert membership(lam, m, N)
    p, q = split_pq(lam, m)
    assert membership(lam, p, P) and membership(lam, q, Q)
    assert p + q == m
    if membership(lam, m, P) and membership(lam, m, Q):
        assert m.is_zero()


@pytest.mark.parametrize("lam", [0, 2, -2, 4, -4])
def test_n_closed_under_generators(lam):
    info = compute_r(lam)
    basis = [el(lam, (info.r * H ** j).coeffs) for j in range(10 - info.n + 1)]
    basis += [el(lam, [], (info.rstar * H ** j).coeffs) for j in range(10 - info.n + 2)]
    for m in basis:
        for g in "hBCxy":
            assert membership(lam, act_generator(g, m), N)
    for which in (P, Q):
        gen = generator_of(lam, which)
        for g in "hBC":
            assert membership(lam, act_generator(g, gen), which)


# -- classification -------------------------------------------------------------------


def test_classify_examples():
    v, cert = classify_generated(1, [el(1, [2, 0, 0, 1])])
    assert v is FULL and cert.is_valid()
    v, cert = classify_generated(2, [el(2, [-4, 0, 1])])
    assert v is N and cert.is_valid()
    assert classify_generated(2, [el(2, [1])])[0] is FULL
    assert classify_generated(2, [special_vector(2, 1, I / 4)])[0] is P
    assert classify_generated(2, [special_vector(2, 1, -I / 4)])[0] is Q


def test_r_generates_exactly_n_by_span():
    # <r> contains C.r and stays inside N: checked on the span up to degree 10
    spanning = span_images(el(2, [-4, 0, 1]), 6)
    assert in_span(act_generator("C", el(2, [-4, 0, 1])), spanning)
    assert not in_span(el(2, [1]), spanning)


def test_zero_and_mixed_generators():
    assert classify_generated(2, [el(2)])[0] is ZERO
    assert classify_generated(2, [el(2), generator_of(2, P)])[0] is P
    v, cert = classify_generated(2, [generator_of(2, P), generator_of(2, Q)])
    assert v is N and cert.is_valid()
    assert classify_generated(2, [generator_of(2, P), el(2, [1])])[0] is FULL
    with pytest.raises(ValueError):
        classify_generated(2, [])
    with pytest.raises(ParameterMismatchError):
        classify_generated(2, [el(4, [1])])


def test_join_lattice():
    assert join(P, Q) is N
    assert join(P, N) is N
    assert join(ZERO, Q) is Q
    assert join(N, FULL) is FULL
    assert join(P, P) is P


@pytest.mark.parametrize("lam", [1, 3, -1, Fraction(1, 2), Fraction(5, 2), I])
def test_simplicity_sweep(lam):
    rng = random.Random(f"simple-{lam}")
    for _ in range(12):
        f = Poly([gr(rng.randint(-4, 4), rng.choice([0, 1])) for _ in range(rng.randint(0, 8))])
        g = Poly([gr(rng.randint(-4, 4)) for _ in range(rng.randint(0, 8))])
        m = ModuleElement(GaussianRational.coerce(lam), f, g)
        if m.is_zero():
            continue
        v, cert = classify_generated(lam, [m])
        assert v is FULL
        assert cert.is_valid() and cert.replay() == cert.terminal == el(lam, [1])


@given(polys, polys, st.sampled_from([0, 2, -2, 4, -4]))
def test_classification_agrees_with_membership(f, g, lam):
    m = ModuleElement(gr(lam), f, g)
    if m.is_zero():
        return
    v, cert = classify_generated(lam, [m])
    assert cert.is_valid()
    if membership(lam, m, P):
        assert v is P
    elif membership(lam, m, Q):
        assert v is Q
    elif membership(lam, m, N):
        assert v is N
    else:
        assert v is FULL


@given(small_polys, small_polys, st.sampled_from([0, 2, 4]))
def test_elements_of_n_generate_n_or_summand(a, b, lam):
    info = compute_r(lam)
    m = el(lam, (a * info.r).coeffs, (b * info.rstar).coeffs)
    if m.is_zero():
        return
    v, cert = classify_generated(lam, [m])
    assert v in (N, P, Q) and cert.is_valid()


def test_combination_branch_certificate():
    # h*gP + gQ lies in N but in neither summand; the first reduction lands on a summand
    gp, gq = generator_of(2, P), generator_of(2, Q)
    m = gp.poly_mul(H) + gq
    v, cert = classify_generated(2, [m])
    assert v is N
    assert cert.is_valid()
    assert cert.terminal == generator_of(2, N)


def test_certificate_tampering_is_detected():
    v, cert = classify_generated(3, [el(3, [1, 0, 1], [0, 1])])
    assert cert.is_valid()
    first = cert.steps[0]
    bad = replace(cert, steps=(replace(first, op=first.op + PauliNF.scalar(3, 1)), *cert.steps[1:]))
    assert not bad.is_valid()
    bad_terminal = replace(cert, terminal=el(3, [2]))
    assert not bad_terminal.is_valid()


def test_reduction_bound(monkeypatch):
    import sl2graded.submodules as sm

    monkeypatch.setattr(sm, "_ops", lambda lam, d: (PauliNF.scalar(lam, 1), PauliNF.scalar(lam, 1)))
    with pytest.raises(InternalInconsistencyError):
        sm.classify_generated(1, [el(1, [0, 0, 1])])


def test_canonical_scaling_is_recorded():
    v, cert = classify_generated(2, [el(2, [-12, 0, 3])])
    assert v is N
    assert cert.steps[0].op == PauliNF.scalar(2, Fraction(1, 3))


# -- quotient and graded simplicity -------------------------------------------------------


@pytest.mark.parametrize("lam, d", [(2, 3), (0, 1), (-6, 5), (-2, 1), (4, 5), (-4, 3), (6, 7)])
def test_quotient_dim(lam, d):
    assert quotient_dim(lam) == d
    info = compute_r(lam)
    assert d == info.r.degree + info.rstar.degree == 2 * info.n - 1


def test_quotient_basis_count():
    # h^j (j < n) and h^j B (j < n-1) are independent modulo N
    for lam in (0, 2, -4, 4):
        info = compute_r(lam)
        n = info.n
        reps = [el(lam, (H ** j).coeffs) for j in range(n)] + [el(lam, [], (H ** j).coeffs) for j in range(n - 1)]
        assert len(reps) == quotient_dim(lam)
        for m in reps:
            assert not membership(lam, m, N)


@pytest.mark.parametrize("lam, deg", [(2, 6), (0, 4), (-4, 6)])
def test_graded_simplicity(lam, deg):
    rep = graded_simplicity_probe(lam, deg)
    assert rep.passed, rep.violations
    assert rep.samples > 0 and rep.components >= rep.samples


def test_split_of_p_generator():
    parts = z2sq_split(special_vector(2, 1, I / 4))
    assert set(parts.values()) == {el(2, [-4, 0, 1]), el(2, [], [0, -I])}
    for part in parts.values():
        assert classify_generated(2, [part])[0] is N
