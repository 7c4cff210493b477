"""The rank-2 torsion-free module M = U(I_lambda) / U(I_lambda) C = C[h] + C[h] B."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .enveloping import ExprSum, PauliNF, casimir_nf, mu_of
from .errors import InternalInconsistencyError, ParameterMismatchError
from .grading import Z2sq
from .linalg import nullspace
from .poly import H, ZERO_POLY, Poly, format_poly, poly_shift, shift_avg, shift_diff
from .scalars import ZERO, GaussianRational, ScalarLike

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Mu:
    value: GaussianRational


def mu(lam: ScalarLike) -> Mu:
    """``mu = lambda^2 + 2*lambda``, the scalar with ``B^2 = mu - h^2`` in M."""
    return Mu(mu_of(GaussianRational.coerce(lam)))


@dataclass(frozen=True)
class ModuleElement:
    """The coset ``f(h) + g(h) B``."""

    lam: GaussianRational
    f: Poly = ZERO_POLY
    g: Poly = ZERO_POLY

    def __post_init__(self):
        object.__setattr__(self, "lam", GaussianRational.coerce(self.lam))

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()

    def _same(self, other: ModuleElement) -> None:
        if self.lam != other.lam:
            raise ParameterMismatchError(f"lambda mismatch: {self.lam} vs {other.lam}")

    def __add__(self, other: ModuleElement) -> ModuleElement:
        self._same(other)
        return ModuleElement(self.lam, self.f + other.f, self.g + other.g)

    def __sub__(self, other: ModuleElement) -> ModuleElement:
        self._same(other)
        return ModuleElement(self.lam, self.f - other.f, self.g - other.g)

    def __neg__(self) -> ModuleElement:
        return ModuleElement(self.lam, -self.f, -self.g)

    def scale(self, c: ScalarLike) -> ModuleElement:
        return ModuleElement(self.lam, self.f.scale(c), self.g.scale(c))

    def poly_mul(self, q: Poly) -> ModuleElement:
        """``q(h) . m``; the C[h]-structure is coefficientwise."""
        return ModuleElement(self.lam, q * self.f, q * self.g)

    def __str__(self):
        return f"{format_poly(self.f)} ; {format_poly(self.g)}"

    def to_json(self) -> dict:
        return {"lambda": self.lam.to_json(), "f": self.f.to_json(), "g": self.g.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> ModuleElement:
        return cls(
            GaussianRational.from_json(data["lambda"]),
            Poly.from_json(data["f"]),
            Poly.from_json(data["g"]),
        )


def _xb_poly(m: GaussianRational) -> Poly:
    """``2 * xB`` reduced in M: ``mu - h^2 + 2h``."""
    return Poly([m, 2, -1])


def _yb_poly(m: GaussianRational) -> Poly:
    """``2 * yB`` reduced in M: ``mu - h^2 - 2h``."""
    return Poly([m, -2, -1])


def act_generator(gen: str, m: ModuleElement) -> ModuleElement:
    """Action of one generator (``h A x y B C``) on ``f + gB``.

    ``B . f = f'(h) B`` and ``C . f = f''(h) B`` with ``f'``/``f''`` the shift
    average/difference; on ``gB`` the actions come from ``xB`` and ``yB``.
    """
    if gen in ("h", "A"):
        return ModuleElement(m.lam, H * m.f, H * m.g)
    mu_v = mu_of(m.lam)
    if gen in ("x", "y"):
        b = act_generator("B", m)
        c = act_generator("C", m)
        sign = 1 if gen == "x" else -1
        return ModuleElement(m.lam, (b.f + c.f.scale(sign)).scale(HALF), (b.g + c.g.scale(sign)).scale(HALF))
    g_minus = _xb_poly(mu_v) * poly_shift(m.g, -2)
    g_plus = _yb_poly(mu_v) * poly_shift(m.g, 2)
    if gen == "B":
        return ModuleElement(m.lam, (g_minus + g_plus).scale(HALF), shift_avg(m.f))
    if gen == "C":
        return ModuleElement(m.lam, (g_minus - g_plus).scale(HALF), shift_diff(m.f))
    raise ValueError(f"unknown generator {gen!r}")


def act_word(word: str, m: ModuleElement) -> ModuleElement:
    """Act by a raw word, rightmost letter first."""
    for g in reversed(word):
        m = act_generator(g, m)
    return m


def act_expr(e: ExprSum, m: ModuleElement) -> ModuleElement:
    """Act by an unreduced expression, letter by letter."""
    out = ModuleElement(m.lam)
    for word, c in e.terms.items():
        out = out + act_word(word, m).scale(c)
    return out


def act_nf(u: PauliNF, m: ModuleElement) -> ModuleElement:
    """Action of a Pauli normal form ``sum p(h) B^l C^k`` on ``m``."""
    if u.lam != m.lam:
        raise ParameterMismatchError(f"lambda mismatch: {u.lam} vs {m.lam}")
    f, g = ZERO_POLY, ZERO_POLY
    if not u.entries:
        return ModuleElement(m.lam)
    max_l = max(l for l, _ in u.entries)
    for c_exp in (0, 1):
        if not any(k == c_exp for _, k in u.entries):
            continue
        cur = act_generator("C", m) if c_exp else m
        for l in range(max_l + 1):
            p = u.entries.get((l, c_exp))
            if p is not None:
                f = f + p * cur.f
                g = g + p * cur.g
            if l < max_l:
                cur = act_generator("B", cur)
    return ModuleElement(m.lam, f, g)


def _proportionality(result: ModuleElement, m: ModuleElement) -> GaussianRational:
    """The scalar ``s`` with ``result == s*m``, or raise."""
    src = m.f if not m.f.is_zero() else m.g
    dst = result.f if not m.f.is_zero() else result.g
    s = dst.lead() / src.lead() if not dst.is_zero() else ZERO
    if result != m.scale(s):
        raise InternalInconsistencyError(f"Casimir does not act by a scalar on {m}: got {result}")
    return s


def casimir_scalar_check(m: ModuleElement) -> GaussianRational:
    """Scalar by which the Casimir element acts on ``m`` (must be ``(lambda+1)^2``).

    The scalar is measured twice: through the normal form of the Casimir and
    through the raw word ``BB - CC + hh + 1`` applied generator by generator.
    """
    if m.is_zero():
        raise ValueError("casimir_scalar_check needs a nonzero element")
    s_nf = _proportionality(act_nf(casimir_nf(m.lam), m), m)
    raw = ExprSum({"BB": 1, "CC": -1, "hh": 1, "": 1})
    s_raw = _proportionality(act_expr(raw, m), m)
    if s_nf != s_raw:
        raise InternalInconsistencyError(f"Casimir scalars disagree: {s_nf} vs {s_raw}")
    return s_raw


def z2sq_split(m: ModuleElement) -> dict[Z2sq, ModuleElement]:
    """Z2 x Z2 components: ``h^k`` has label (k mod 2, 0) and ``h^k B`` has (k mod 2, 1)."""
    parts = {
        Z2sq(0, 0): ModuleElement(m.lam, m.f.even_part()),
        Z2sq(1, 0): ModuleElement(m.lam, m.f.odd_part()),
        Z2sq(0, 1): ModuleElement(m.lam, ZERO_POLY, m.g.even_part()),
        Z2sq(1, 1): ModuleElement(m.lam, ZERO_POLY, m.g.odd_part()),
    }
    return {k: v for k, v in parts.items() if not v.is_zero()}


def is_homogeneous(m: ModuleElement) -> bool:
    return len(z2sq_split(m)) == 1


def basis_elements(lam: ScalarLike, degree: int) -> list[ModuleElement]:
    """``h^j`` then ``h^j B`` for ``j <= degree``."""
    lam = GaussianRational.coerce(lam)
    out = [ModuleElement(lam, Poly.monomial(j)) for j in range(degree + 1)]
    out += [ModuleElement(lam, ZERO_POLY, Poly.monomial(j)) for j in range(degree + 1)]
    return out


def kernel_truncated(lam: ScalarLike, gen: str, D: int) -> list[ModuleElement]:
    """Basis of ``{m : deg f, deg g <= D, gen.m = 0}`` by exact linear algebra.

    The images of ``gen`` on the ``2(D+1)`` basis elements form the columns.
    """
    lam = GaussianRational.coerce(lam)
    basis = basis_elements(lam, D)
    images = [act_generator(gen, b) for b in basis]
    width = D + 3  # B, C, x, y raise the h-side degree by 2
    rows = []
    for k in range(width):
        rows.append([img.f.coeff(k) for img in images])
        rows.append([img.g.coeff(k) for img in images])
    out = []
    for vec in nullspace(rows, len(basis)):
        f = Poly(vec[: D + 1])
        g = Poly(vec[D + 1:])
        out.append(ModuleElement(lam, f, g))
    return out


def x_kernel_truncated(lam: ScalarLike, D: int) -> list[ModuleElement]:
    """Elements of degree <= D killed by ``x``; empty because M has no highest vector."""
    return kernel_truncated(lam, "x", D)


def elements_from(lam: ScalarLike, pairs: Iterable[tuple[Poly, Poly]]) -> list[ModuleElement]:
    lam = GaussianRational.coerce(lam)
    return [ModuleElement(lam, f, g) for f, g in pairs]
