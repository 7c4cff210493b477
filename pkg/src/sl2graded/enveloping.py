"""Normal forms in U(I_lambda), the enveloping algebra of sl2 modulo the Casimir ideal.

Two bases are supported:

* Cartan basis ``h^k x^l`` / ``h^k y^l`` (:class:`CartanNF`), homogeneous for
  the Z-grading with ``deg x = +1``, ``deg y = -1``.
* Pauli basis ``h^k B^l C^m`` with ``m in {0, 1}`` (:class:`PauliNF`),
  homogeneous for the Z2 x Z2 grading with ``A = h``, ``B``, ``C`` of degrees
  (1,0), (0,1), (1,1).

The generators satisfy ``B = x + y``, ``C = x - y``, ``[x, y] = h``,
``[h, x] = 2x``, ``[h, y] = -2y`` and, in the quotient, ``yx = p(h)`` with
``p(t) = (mu - 2t - t^2)/4`` and ``mu = lambda^2 + 2*lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import ParameterMismatchError
from .grading import Z, Z2sq, pauli_label
from .poly import H, ONE_POLY, Poly, poly_shift
from .scalars import ONE, GaussianRational, ScalarLike

GENERATORS = "xyhABC"
HALF = Fraction(1, 2)

Entries = dict


def mu_of(lam: GaussianRational) -> GaussianRational:
    return lam * lam + 2 * lam


def p_poly(lam: GaussianRational) -> Poly:
    """``p(t) = (mu - 2t - t^2) / 4``, so that ``yx = p(h)`` in U(I_lambda)."""
    return Poly([mu_of(lam), -2, -1]).scale(Fraction(1, 4))


def _check_same_lambda(a: GaussianRational, b: GaussianRational) -> None:
    if a != b:
        raise ParameterMismatchError(f"lambda mismatch: {a} vs {b}")


def _accumulate(target: dict, key, poly: Poly) -> None:
    if poly.is_zero():
        return
    cur = target.get(key)
    new = poly if cur is None else cur + poly
    if new.is_zero():
        target.pop(key, None)
    else:
        target[key] = new


def _combine(*pairs: tuple[ScalarLike | Poly, Mapping]) -> dict:
    """Linear combination ``sum(c * entries)`` with scalar or polynomial ``c``."""
    out: dict = {}
    for c, entries in pairs:
        for key, p in entries.items():
            _accumulate(out, key, p * c)
    return out


# ---------------------------------------------------------------------------
# Free expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExprSum:
    """A finite sum of ``coefficient * word`` over the alphabet ``x y h A B C``.

    ``A`` is stored as ``h``; the empty word is the unit.
    """

    terms: Mapping[str, GaussianRational] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[str, GaussianRational] = {}
        for word, c in self.terms.items():
            bad = set(word) - set(GENERATORS)
            if bad:
                raise ValueError(f"unknown generator(s) {sorted(bad)} in word {word!r}")
            word = word.replace("A", "h")
            c = GaussianRational.coerce(c) + clean.get(word, 0)
            if c.is_zero():
                clean.pop(word, None)
            else:
                clean[word] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def word(cls, w: str, c: ScalarLike = 1) -> ExprSum:
        return cls({w: GaussianRational.coerce(c)})

    @classmethod
    def scalar(cls, c: ScalarLike) -> ExprSum:
        return cls({"": GaussianRational.coerce(c)})

    def __add__(self, other: ExprSum) -> ExprSum:
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged.get(w, 0) + c
        return ExprSum(merged)

    def __neg__(self) -> ExprSum:
        return ExprSum({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: ExprSum) -> ExprSum:
        return self + (-other)

    def scale(self, c: ScalarLike) -> ExprSum:
        c = GaussianRational.coerce(c)
        return ExprSum({w: c * a for w, a in self.terms.items()})

    def __mul__(self, other: ExprSum) -> ExprSum:
        out: dict[str, GaussianRational] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return ExprSum(out)

    def __pow__(self, k: int) -> ExprSum:
        result = ExprSum.scalar(1)
        for _ in range(k):
            result = result * self
        return result


# ---------------------------------------------------------------------------
# Pauli basis
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pauli_step(mu: GaussianRational, l: int, m: int, gen: str) -> tuple:
    """Normal form of ``B^l C^m * gen`` for ``gen`` in ``h B C``.

    Rules: Bh -> hB - 2C, Ch -> hC - 2B, CB -> BC + 2h, CC -> h^2 + B^2 - mu.
    """
    if gen == "B":
        if m == 0:
            out = {(l + 1, 0): ONE_POLY}
        else:
            out = _combine((1, {(l + 1, 1): ONE_POLY}), (2, _b_pow_h(mu, l)))
    elif gen == "C":
        if m == 0:
            out = {(l, 1): ONE_POLY}
        else:
            out = _combine(
                (1, _pauli_times(_b_pow_h(mu, l), "h", mu)),
                (1, {(l + 2, 0): ONE_POLY}),
                (-mu, {(l, 0): ONE_POLY}),
            )
    elif gen == "h":
        if m == 0:
            if l == 0:
                out = {(0, 0): H}
            else:
                out = _combine(
                    (1, _pauli_times(_b_pow_h(mu, l - 1), "B", mu)),
                    (-2, {(l - 1, 1): ONE_POLY}),
                )
        else:
            out = _combine(
                (1, _pauli_times(_b_pow_h(mu, l), "C", mu)),
                (-2, {(l + 1, 0): ONE_POLY}),
            )
    else:
        raise ValueError(f"not a Pauli generator: {gen!r}")
    return tuple(sorted(out.items()))


def _b_pow_h(mu: GaussianRational, l: int) -> dict:
    return dict(_pauli_step(mu, l, 0, "h"))


def _pauli_times(entries: Mapping, gen: str, mu: GaussianRational) -> dict:
    """Right-multiply a Pauli normal form by one generator (any of ``x y h A B C``)."""
    if gen == "A":
        gen = "h"
    if gen == "x":
        return _combine((HALF, _pauli_times(entries, "B", mu)), (HALF, _pauli_times(entries, "C", mu)))
    if gen == "y":
        return _combine((HALF, _pauli_times(entries, "B", mu)), (-HALF, _pauli_times(entries, "C", mu)))
    out: dict = {}
    for (l, m), p in entries.items():
        for key, q in _pauli_step(mu, l, m, gen):
            _accumulate(out, key, p * q)
    return out


class PauliNF:
    """Element ``sum(poly_{l,m}(h) * B^l * C^m)`` of U(I_lambda), ``m in {0, 1}``."""

    __slots__ = ("lam", "entries")

    def __init__(self, lam: ScalarLike, entries: Mapping[tuple[int, int], Poly] | None = None):
        self.lam = GaussianRational.coerce(lam)
        clean = {}
        for (l, m), p in (entries or {}).items():
            if m not in (0, 1) or l < 0:
                raise ValueError(f"invalid Pauli monomial index {(l, m)}")
            if not p.is_zero():
                clean[(l, m)] = p
        self.entries = clean

    @classmethod
    def scalar(cls, lam: ScalarLike, c: ScalarLike) -> PauliNF:
        return cls(lam, {(0, 0): Poly.constant(c)})

    @classmethod
    def monomial(cls, lam: ScalarLike, l: int, m: int, poly: Poly = ONE_POLY) -> PauliNF:
        return cls(lam, {(l, m): poly})

    @property
    def mu(self) -> GaussianRational:
        return mu_of(self.lam)

    def is_zero(self) -> bool:
        return not self.entries

    def times_gen(self, gen: str) -> PauliNF:
        return PauliNF(self.lam, _pauli_times(self.entries, gen, self.mu))

    def left_poly(self, q: Poly) -> PauliNF:
        """``q(h) * self``."""
        return PauliNF(self.lam, {k: q * p for k, p in self.entries.items()})

    def __add__(self, other: PauliNF) -> PauliNF:
        _check_same_lambda(self.lam, other.lam)
        return PauliNF(self.lam, _combine((1, self.entries), (1, other.entries)))

    def __sub__(self, other: PauliNF) -> PauliNF:
        _check_same_lambda(self.lam, other.lam)
        return PauliNF(self.lam, _combine((1, self.entries), (-1, other.entries)))

    def __neg__(self) -> PauliNF:
        return self.scale(-1)

    def scale(self, c: ScalarLike) -> PauliNF:
        return PauliNF(self.lam, {k: p.scale(c) for k, p in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, PauliNF):
            return nf_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PauliNF):
            return NotImplemented
        return self.lam == other.lam and self.entries == other.entries

    def __hash__(self):
        return hash((self.lam, tuple(sorted(self.entries.items()))))

    def __repr__(self):
        return f"PauliNF(lambda={self.lam}, {self})"

    def __str__(self):
        return format_pauli(self)

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "terms": [{"l": l, "m": m, "poly": p.to_json()} for (l, m), p in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> PauliNF:
        lam = GaussianRational.from_json(data["lambda"])
        return cls(lam, {(t["l"], t["m"]): Poly.from_json(t["poly"]) for t in data["terms"]})


def _pauli_mono_name(l: int, m: int) -> str:
    parts = []
    if l == 1:
        parts.append("B")
    elif l > 1:
        parts.append(f"B^{l}")
    if m:
        parts.append("C")
    return "*".join(parts)


def format_pauli(u: PauliNF) -> str:
    if u.is_zero():
        return "0"
    out = []
    for (l, m), p in sorted(u.entries.items()):
        name = _pauli_mono_name(l, m)
        out.append(f"({p})" + (f"*{name}" if name else ""))
    return " + ".join(out)


def normalize_pauli(e: ExprSum | str, lam: ScalarLike) -> PauliNF:
    """Pauli normal form of ``e`` in U(I_lambda).

    Words are read left to right; at each step the prefix is already normal,
    so the only reducible pair is at the junction with the next letter, and
    it is rewritten by one of the four rules (``x``, ``y`` are replaced by
    ``(B +- C)/2`` first).
    """
    lam = GaussianRational.coerce(lam)
    if isinstance(e, str):
        e = ExprSum.word(e)
    mu = mu_of(lam)
    out: dict = {}
    for word, c in e.terms.items():
        entries: dict = {(0, 0): ONE_POLY}
        for g in word:
            entries = _pauli_times(entries, g, mu)
        for key, p in entries.items():
            _accumulate(out, key, p.scale(c))
    return PauliNF(lam, out)


def nf_multiply(u: PauliNF, v: PauliNF) -> PauliNF:
    """Normal form of the product ``u * v``."""
    _check_same_lambda(u.lam, v.lam)
    mu = u.mu
    # u * h^k, computed lazily and shared across the terms of v
    u_h = [u.entries]
    out: dict = {}
    for (l, m), p in v.entries.items():
        while len(u_h) < len(p.coeffs):
            u_h.append(_pauli_times(u_h[-1], "h", mu))
        acc = _combine(*((c, u_h[k]) for k, c in enumerate(p.coeffs) if not c.is_zero()))
        for _ in range(l):
            acc = _pauli_times(acc, "B", mu)
        if m:
            acc = _pauli_times(acc, "C", mu)
        for key, q in acc.items():
            _accumulate(out, key, q)
    return PauliNF(u.lam, out)


def casimir_nf(lam: ScalarLike) -> PauliNF:
    """Normal form of ``c = B^2 - C^2 + h^2 + 1``; equals ``(lambda+1)^2``."""
    c = ExprSum({"BB": 1, "CC": -1, "hh": 1, "": 1})
    return normalize_pauli(c, lam)


def grade_components_z2sq(u: PauliNF) -> dict[Z2sq, PauliNF]:
    """Split ``u`` into Z2 x Z2-homogeneous components (zero ones omitted)."""
    parts: dict[Z2sq, dict] = {}
    for (l, m), p in u.entries.items():
        for poly, k_parity in ((p.even_part(), 0), (p.odd_part(), 1)):
            if poly.is_zero():
                continue
            label = pauli_label(k_parity, l, m)
            parts.setdefault(label, {})[(l, m)] = poly
    return {label: PauliNF(u.lam, e) for label, e in sorted(parts.items())}


# ---------------------------------------------------------------------------
# Cartan basis
# ---------------------------------------------------------------------------


def _cartan_times(terms: Mapping[int, Poly], gen: str, lam: GaussianRational) -> dict:
    """Right-multiply a Cartan normal form by one generator.

    A key ``l > 0`` stands for ``x^l``, ``l < 0`` for ``y^(-l)``, ``0`` for 1.
    """
    if gen == "A":
        gen = "h"
    if gen == "B":
        return _combine((1, _cartan_times(terms, "x", lam)), (1, _cartan_times(terms, "y", lam)))
    if gen == "C":
        return _combine((1, _cartan_times(terms, "x", lam)), (-1, _cartan_times(terms, "y", lam)))
    p = p_poly(lam)
    out: dict = {}
    for l, q in terms.items():
        if gen == "h":
            # x^l h = (h - 2l) x^l, and y^j h = (h + 2j) y^j
            _accumulate(out, l, q * (H - 2 * l))
        elif gen == "x":
            if l >= 0:
                _accumulate(out, l + 1, q)
            else:
                # y^j x = p(h + 2(j-1)) y^(j-1)
                _accumulate(out, l + 1, q * poly_shift(p, 2 * (-l - 1)))
        elif gen == "y":
            if l <= 0:
                _accumulate(out, l - 1, q)
            else:
                # x^l y = p(h - 2l) x^(l-1)
                _accumulate(out, l - 1, q * poly_shift(p, -2 * l))
        else:
            raise ValueError(f"not a generator: {gen!r}")
    return out


class CartanNF:
    """Element ``sum(poly_l(h) * x^l) + poly_0(h) + sum(poly_{-l}(h) * y^l)``."""

    __slots__ = ("lam", "terms")

    def __init__(self, lam: ScalarLike, terms: Mapping[int, Poly] | None = None):
        self.lam = GaussianRational.coerce(lam)
        self.terms = {l: p for l, p in (terms or {}).items() if not p.is_zero()}

    @classmethod
    def from_parts(cls, lam, h_part: Poly | None = None, x_part=None, y_part=None) -> CartanNF:
        terms: dict[int, Poly] = {}
        if h_part is not None:
            terms[0] = h_part
        for l, p in (x_part or {}).items():
            terms[l] = p
        for l, p in (y_part or {}).items():
            terms[-l] = p
        return cls(lam, terms)

    @property
    def h_part(self) -> Poly:
        return self.terms.get(0, Poly())

    @property
    def x_part(self) -> dict[int, Poly]:
        return {l: p for l, p in self.terms.items() if l > 0}

    @property
    def y_part(self) -> dict[int, Poly]:
        return {-l: p for l, p in self.terms.items() if l < 0}

    def is_zero(self) -> bool:
        return not self.terms

    def times_gen(self, gen: str) -> CartanNF:
        return CartanNF(self.lam, _cartan_times(self.terms, gen, self.lam))

    def __add__(self, other: CartanNF) -> CartanNF:
        _check_same_lambda(self.lam, other.lam)
        return CartanNF(self.lam, _combine((1, self.terms), (1, other.terms)))

    def __sub__(self, other: CartanNF) -> CartanNF:
        _check_same_lambda(self.lam, other.lam)
        return CartanNF(self.lam, _combine((1, self.terms), (-1, other.terms)))

    def scale(self, c: ScalarLike) -> CartanNF:
        return CartanNF(self.lam, {l: p.scale(c) for l, p in self.terms.items()})

    def __mul__(self, other: CartanNF) -> CartanNF:
        _check_same_lambda(self.lam, other.lam)
        out: dict = {}
        for l, q in other.terms.items():
            # self * q(h): x^l' q(h) = q(h - 2l') x^l'
            acc = {l2: t * poly_shift(q, -2 * l2) for l2, t in self.terms.items()}
            gen = "x" if l > 0 else "y"
            for _ in range(abs(l)):
                acc = _cartan_times(acc, gen, self.lam)
            for key, p in acc.items():
                _accumulate(out, key, p)
        return CartanNF(self.lam, out)

    def __eq__(self, other):
        if not isinstance(other, CartanNF):
            return NotImplemented
        return self.lam == other.lam and self.terms == other.terms

    def __hash__(self):
        return hash((self.lam, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"CartanNF(lambda={self.lam}, {self})"

    def __str__(self):
        return format_cartan(self)

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "terms": [{"l": l, "poly": p.to_json()} for l, p in sorted(self.terms.items(), key=_cartan_order)],
        }


def _cartan_order(item) -> tuple:
    l = item[0]
    return (0 if l == 0 else 1 if l > 0 else 2, abs(l))


def format_cartan(u: CartanNF) -> str:
    if u.is_zero():
        return "0"
    out = []
    for l, p in sorted(u.terms.items(), key=_cartan_order):
        if l == 0:
            out.append(f"({p})")
        else:
            g = "x" if l > 0 else "y"
            out.append(f"({p})*{g}" + (f"^{abs(l)}" if abs(l) > 1 else ""))
    return " + ".join(out)


def normalize_cartan(e: ExprSum | str, lam: ScalarLike) -> CartanNF:
    """Cartan normal form of ``e`` in U(I_lambda) (B, C expand to x +- y)."""
    lam = GaussianRational.coerce(lam)
    if isinstance(e, str):
        e = ExprSum.word(e)
    out: dict = {}
    for word, c in e.terms.items():
        terms: dict = {0: ONE_POLY}
        for g in word:
            terms = _cartan_times(terms, g, lam)
        for key, p in terms.items():
            _accumulate(out, key, p.scale(c))
    return CartanNF(lam, out)


def grade_components_z(u: CartanNF) -> dict[Z, CartanNF]:
    """Split ``u`` by Z-degree: ``+l`` on ``h^k x^l``, ``-l`` on ``h^k y^l``."""
    return {Z(l): CartanNF(u.lam, {l: p}) for l, p in sorted(u.terms.items())}


# ---------------------------------------------------------------------------
# Change of basis
# ---------------------------------------------------------------------------


def cartan_to_pauli(u: CartanNF) -> PauliNF:
    """Rewrite ``x = (B + C)/2``, ``y = (B - C)/2``."""
    mu = mu_of(u.lam)
    out: dict = {}
    for l, q in u.terms.items():
        gen = "x" if l > 0 else "y"
        entries: dict = {(0, 0): ONE_POLY}
        for _ in range(abs(l)):
            entries = _pauli_times(entries, gen, mu)
        for key, p in entries.items():
            _accumulate(out, key, q * p)
    return PauliNF(u.lam, out)


def pauli_to_cartan(u: PauliNF) -> CartanNF:
    """Rewrite ``B = x + y``, ``C = x - y``."""
    out: dict = {}
    for (l, m), q in u.entries.items():
        terms: dict = {0: ONE_POLY}
        for g in "B" * l + "C" * m:
            terms = _cartan_times(terms, g, u.lam)
        for key, p in terms.items():
            _accumulate(out, key, q * p)
    return CartanNF(u.lam, out)


def expr_from_words(words: Iterable[str]) -> ExprSum:
    """Sum of the given words with coefficient 1 each."""
    out = ExprSum()
    for w in words:
        out = out + ExprSum.word(w)
    return out
