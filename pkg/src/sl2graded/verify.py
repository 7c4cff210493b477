"""Named verification suites over concrete lambda.

Each suite returns a list of :class:`Check`; a suite passes iff every check
passes. Samples are drawn from a PRNG seeded by the suite name, lambda and
degree, so reruns are identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .enveloping import (
    PauliNF,
    casimir_nf,
    grade_components_z,
    grade_components_z2sq,
    nf_multiply,
    normalize_cartan,
    normalize_pauli,
)
from .errors import DomainError, InternalInconsistencyError
from .grading import Z2sq
from .module import (
    ModuleElement,
    act_generator,
    act_nf,
    casimir_scalar_check,
    kernel_truncated,
    z2sq_split,
)
from .poly import H, Poly, poly_shift
from .scalars import GaussianRational, ScalarLike
from .submodules import (
    SubmoduleId,
    classify_generated,
    compute_r,
    generator_of,
    graded_simplicity_probe,
    membership,
    quotient_dim,
    split_pq,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    lam: GaussianRational
    degree: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


# ---------------------------------------------------------------------------
# Deterministic samples
# ---------------------------------------------------------------------------


def _rng(*parts) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))


def random_scalar(rng: random.Random, complex_ok: bool = True) -> GaussianRational:
    re = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    im = Fraction(rng.randint(-3, 3), rng.randint(1, 2)) if complex_ok and rng.random() < 0.25 else 0
    return GaussianRational(re, im)


def random_poly(rng: random.Random, max_deg: int) -> Poly:
    if rng.random() < 0.15:
        return Poly()
    return Poly([random_scalar(rng) for _ in range(rng.randint(0, max_deg) + 1)])


def sample_elements(lam: ScalarLike, count: int, max_deg: int, seed: str = "") -> list[ModuleElement]:
    """``count`` nonzero elements with component degrees <= ``max_deg``."""
    lam = GaussianRational.coerce(lam)
    rng = _rng("elements", seed, lam, max_deg)
    out = []
    while len(out) < count:
        m = ModuleElement(lam, random_poly(rng, max_deg), random_poly(rng, max_deg))
        if not m.is_zero():
            out.append(m)
    return out


def random_word(rng: random.Random, max_len: int, alphabet: str = "xyhABC") -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def random_pauli(lam: GaussianRational, rng: random.Random, terms: int = 3, max_deg: int = 3) -> PauliNF:
    entries = {}
    for _ in range(terms):
        key = (rng.randint(0, max_deg), rng.randint(0, 1))
        entries[key] = random_poly(rng, max_deg)
    return PauliNF(lam, entries)


def _count(name: str, failures: list, total: int) -> Check:
    detail = f"{total - len(failures)}/{total} ok"
    if failures:
        detail += f"; first failure: {failures[0]}"
    return Check(name, not failures, detail)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_brackets(lam: GaussianRational, deg: int, count: int = 100) -> list[Check]:
    """Commutators of generators act on M as the Lie bracket."""
    elems = sample_elements(lam, count, deg, "brackets")
    act = act_generator
    identities = [
        ("[B,C] = -2h", "B", "C", "h", -2),
        ("[h,B] = 2C", "h", "B", "C", 2),
        ("[h,C] = 2B", "h", "C", "B", 2),
        ("[x,y] = h", "x", "y", "h", 1),
        ("[h,x] = 2x", "h", "x", "x", 2),
        ("[h,y] = -2y", "h", "y", "y", -2),
    ]
    failures: dict[str, list] = {name: [] for name, *_ in identities}
    for m in elems:
        once = {g: act(g, m) for g in "hxyBC"}
        for name, a, b, c, k in identities:
            lhs = act(a, once[b]) - act(b, once[a])
            if lhs != once[c].scale(k):
                failures[name].append(str(m))
    return [_count(name, bad, len(elems)) for name, bad in failures.items()]


def suite_casimir(lam: GaussianRational, deg: int) -> list[Check]:
    target = (lam + 1) * (lam + 1)
    c = casimir_nf(lam)
    checks = [Check("normal form of B^2 - C^2 + h^2 + 1 is (lambda+1)^2", c == PauliNF.scalar(lam, target), str(c))]
    bad = []
    elems = sample_elements(lam, 20, deg, "casimir")
    for m in elems:
        try:
            s = casimir_scalar_check(m)
        except InternalInconsistencyError as exc:
            bad.append(str(exc))
            continue
        if s != target:
            bad.append(f"{m}: {s}")
    checks.append(_count("Casimir acts on M by (lambda+1)^2", bad, len(elems)))
    rng = _rng("casimir-central", lam)
    us = [random_pauli(lam, rng) for _ in range(10)]
    bad = [str(u) for u in us if nf_multiply(c, u) != nf_multiply(u, c)]
    checks.append(_count("Casimir is central", bad, len(us)))
    return checks


def suite_grading(lam: GaussianRational, deg: int) -> list[Check]:
    rng = _rng("grading", lam, deg)
    bad_alg, bad_mod, bad_z = [], [], []
    for _ in range(15):
        u, v = random_pauli(lam, rng), random_pauli(lam, rng)
        for a, ua in grade_components_z2sq(u).items():
            for b, vb in grade_components_z2sq(v).items():
                prod = nf_multiply(ua, vb)
                labels = set(grade_components_z2sq(prod))
                if labels - {a + b}:
                    bad_alg.append(f"{a}*{b} -> {sorted(map(str, labels))}")
    elems = sample_elements(lam, 10, deg, "grading")
    for m in elems:
        u = random_pauli(lam, rng)
        for a, ua in grade_components_z2sq(u).items():
            for b, mb in z2sq_split(m).items():
                labels = set(z2sq_split(act_nf(ua, mb)))
                if labels - {a + b}:
                    bad_mod.append(f"{a}.{b} -> {sorted(map(str, labels))}")
    for _ in range(15):
        w1, w2 = random_word(rng, 4, "xyh"), random_word(rng, 4, "xyh")
        u, v = normalize_cartan(w1, lam), normalize_cartan(w2, lam)
        for a, ua in grade_components_z(u).items():
            for b, vb in grade_components_z(v).items():
                labels = set(grade_components_z(ua * vb))
                if labels - {a + b}:
                    bad_z.append(f"{w1}, {w2}")
    casimir_labels = set(grade_components_z2sq(casimir_nf(lam)))
    return [
        _count("Pauli grading is multiplicative", bad_alg, 15),
        _count("M is a Z2 x Z2-graded module", bad_mod, len(elems)),
        _count("Cartan grading is multiplicative", bad_z, 15),
        Check("Casimir has label (0,0)", casimir_labels <= {Z2sq(0, 0)}, str(sorted(map(str, casimir_labels)))),
    ]


def _require_odd(lam: GaussianRational) -> None:
    if lam.is_even_integer():
        raise DomainError(f"M is not simple for lambda = {lam} in 2Z; use the maximality suite")


def _require_even(lam: GaussianRational) -> None:
    if not lam.is_even_integer():
        raise DomainError(f"lambda = {lam} is not an even integer")


def suite_simplicity(lam: GaussianRational, deg: int, count: int = 50) -> list[Check]:
    """Every nonzero element generates M (lambda outside 2Z)."""
    _require_odd(lam)
    elems = sample_elements(lam, count, deg, "simplicity")
    elems += [ModuleElement(lam, H ** deg), ModuleElement(lam, Poly(), H ** deg)]
    not_full, bad_cert = [], []
    for m in elems:
        verdict, cert = classify_generated(lam, [m])
        if verdict is not SubmoduleId.FULL:
            not_full.append(f"{m} -> {verdict}")
        if not cert.is_valid():
            bad_cert.append(str(m))
    return [
        _count("every sampled element generates M", not_full, len(elems)),
        _count("certificates replay", bad_cert, len(elems)),
    ]


def n_basis(lam: GaussianRational, deg: int) -> list[ModuleElement]:
    info = compute_r(lam)
    base = ModuleElement(lam, info.r)
    c_r = act_generator("C", base)
    return [base.poly_mul(H ** j) for j in range(deg - info.n + 1)] + [
        c_r.poly_mul(H ** j) for j in range(deg - info.n + 2)
    ]


def suite_maximality(lam: GaussianRational, deg: int, count: int = 40) -> list[Check]:
    """Submodule lattice for lambda in 2Z: N = P + Q is the unique maximal submodule."""
    _require_even(lam)
    checks = []
    cases = [
        ("(r, 0) generates N", generator_of(lam, SubmoduleId.N), SubmoduleId.N),
        ("r + (i/2n) C.r generates P", generator_of(lam, SubmoduleId.P), SubmoduleId.P),
        ("r - (i/2n) C.r generates Q", generator_of(lam, SubmoduleId.Q), SubmoduleId.Q),
        ("(1, 0) generates M", ModuleElement(lam, Poly([1])), SubmoduleId.FULL),
    ]
    for name, m, want in cases:
        got, cert = classify_generated(lam, [m])
        checks.append(Check(name, got is want and cert.is_valid(), f"got {got}"))
    gp, gq = generator_of(lam, SubmoduleId.P), generator_of(lam, SubmoduleId.Q)
    got, _ = classify_generated(lam, [gp, gq])
    checks.append(Check("P and Q together generate N", got is SubmoduleId.N, f"got {got}"))

    basis = n_basis(lam, deg)
    bad = [f"{g}.{m}" for m in basis for g in "hBC" if not membership(lam, act_generator(g, m), SubmoduleId.N)]
    checks.append(_count("N is closed under h, B, C", bad, 3 * len(basis)))

    rng = _rng("maximality-n", lam, deg)
    n_elems = []
    for _ in range(count):
        m = ModuleElement(lam)
        for b in basis:
            if rng.random() < 0.5:
                m = m + b.scale(random_scalar(rng))
        if not m.is_zero():
            n_elems.append(m)
    bad_split, bad_meet = [], []
    for m in n_elems:
        p, q = split_pq(lam, m)
        if not (membership(lam, p, SubmoduleId.P) and membership(lam, q, SubmoduleId.Q) and p + q == m):
            bad_split.append(str(m))
        if membership(lam, m, SubmoduleId.P) and membership(lam, m, SubmoduleId.Q):
            bad_meet.append(str(m))
    checks.append(_count("N = P + Q (each sample splits)", bad_split, len(n_elems)))
    checks.append(_count("P and Q meet only in 0", bad_meet, len(n_elems)))

    outside = [m for m in sample_elements(lam, count, deg, "maximality") if not membership(lam, m, SubmoduleId.N)]
    bad_full, bad_cert = [], []
    for m in outside:
        verdict, cert = classify_generated(lam, [m])
        if verdict is not SubmoduleId.FULL:
            bad_full.append(f"{m} -> {verdict}")
        if not cert.is_valid():
            bad_cert.append(str(m))
    checks.append(_count("every element outside N generates M", bad_full, len(outside)))
    checks.append(_count("certificates replay", bad_cert, len(outside)))
    return checks


def suite_rpoly(lam: GaussianRational, deg: int) -> list[Check]:
    _require_even(lam)
    info = compute_r(lam)
    n, r, rstar = info.n, info.r, info.rstar
    base = ModuleElement(lam, r)

    def acts(word: str, m: ModuleElement) -> ModuleElement:
        return act_nf(normalize_pauli(word, lam), m)

    c_r = act_generator("C", base)
    return [
        Check("r monic of degree n", r.lead() == 1 and r.degree == n, str(r)),
        Check("r* monic of degree n-1", rstar.lead() == 1 and rstar.degree == n - 1, str(rstar)),
        Check("C.r = -2n r* B", c_r == ModuleElement(lam, Poly(), rstar.scale(-2 * n)), str(c_r)),
        Check("C^2.r = -4n^2 r", acts("CC", base) == base.scale(-4 * n * n)),
        Check("CB.r = 2(n+1) h r", acts("CB", base) == base.poly_mul(H.scale(2 * (n + 1)))),
        Check("BC.r = 2n h r", acts("BC", base) == base.poly_mul(H.scale(2 * n))),
        Check("B^2.r = (-h^2 - 4n) r", acts("BB", base) == base.poly_mul(Poly([-4 * n, 0, -1]))),
        Check(
            "(h+2n) r(h-2) = (h-2n) r(h+2)",
            Poly([2 * n, 1]) * poly_shift(r, -2) == Poly([-2 * n, 1]) * poly_shift(r, 2),
        ),
        Check("B.r = -(1/2n) h C.r", act_generator("B", base) == c_r.poly_mul(H.scale(Fraction(-1, 2 * n)))),
        Check("r has the parity of h^n", (r.odd_part() if n % 2 == 0 else r.even_part()).is_zero()),
        Check("dim M/N = 2n - 1", quotient_dim(lam) == 2 * n - 1, str(quotient_dim(lam))),
    ]


def suite_graded_simple(lam: GaussianRational, deg: int) -> list[Check]:
    _require_even(lam)
    rep = graded_simplicity_probe(lam, deg)
    detail = f"{rep.samples} samples, {rep.components} homogeneous components"
    return [
        Check("homogeneous elements of N generate N", not rep.violations, detail + ("; " + rep.violations[0] if rep.violations else "")),
        Check("generators of P and Q are not homogeneous", rep.pq_nonhomogeneous),
    ]


def suite_no_z_grading(lam: GaussianRational, deg: int) -> list[Check]:
    """No nonzero element is killed by x or y, so M has no highest or lowest vector."""
    return [
        Check(f"x kills nothing up to degree {deg}", not kernel_truncated(lam, "x", deg)),
        Check(f"y kills nothing up to degree {deg}", not kernel_truncated(lam, "y", deg)),
    ]


SUITES: dict[str, Callable[[GaussianRational, int], list]] = {
    "brackets": suite_brackets,
    "casimir": suite_casimir,
    "grading": suite_grading,
    "simplicity": suite_simplicity,
    "maximality": suite_maximality,
    "rpoly": suite_rpoly,
    "graded-simple": suite_graded_simple,
    "no-z-grading": suite_no_z_grading,
}

DEFAULT_DEG = {"brackets": 12, "graded-simple": 6}


def run_suite(name: str, lam: ScalarLike, deg: int | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    lam = GaussianRational.coerce(lam)
    deg = DEFAULT_DEG.get(name, 8) if deg is None else deg
    return SuiteReport(name, lam, deg, SUITES[name](lam, deg))


def applicable_suites(lam: ScalarLike) -> list[str]:
    lam = GaussianRational.coerce(lam)
    skip = {"maximality", "rpoly", "graded-simple"} if not lam.is_even_integer() else {"simplicity"}
    return [s for s in SUITES if s not in skip]
