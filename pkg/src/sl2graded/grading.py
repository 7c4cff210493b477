"""Group labels for the Cartan (Z) and Pauli (Z2 x Z2) gradings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, order=True)
class Z:
    k: int

    def __add__(self, other: Z) -> Z:
        return Z(self.k + other.k)

    def __str__(self):
        return str(self.k)


@dataclass(frozen=True, order=True)
class Z2sq:
    a: int
    b: int

    def __post_init__(self):
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError(f"Z2^2 label needs bits, got ({self.a}, {self.b})")

    def __add__(self, other: Z2sq) -> Z2sq:
        return Z2sq((self.a + other.a) % 2, (self.b + other.b) % 2)

    def __str__(self):
        return f"({self.a},{self.b})"


@dataclass(frozen=True, order=True)
class Z2:
    c: int

    def __post_init__(self):
        if self.c not in (0, 1):
            raise ValueError(f"Z2 label needs a bit, got {self.c}")

    def __add__(self, other: Z2) -> Z2:
        return Z2((self.c + other.c) % 2)

    def __str__(self):
        return str(self.c)


GradeLabel = Union[Z, Z2sq, Z2]

# Pauli degrees of the generators: A = h, B, C.
DEG_H = Z2sq(1, 0)
DEG_B = Z2sq(0, 1)
DEG_C = Z2sq(1, 1)


def pauli_label(k: int, l: int, m: int) -> Z2sq:
    """Label of the monomial ``h^k B^l C^m``."""
    return Z2sq((k + m) % 2, (l + m) % 2)


def grade_coarsen_z2(label: Z2sq) -> Z2:
    """Project a Z2^2 label to Z2: (0,0),(1,0) -> 0 and (0,1),(1,1) -> 1."""
    if not isinstance(label, Z2sq):
        raise TypeError(f"expected a Z2^2 label, got {label!r}")
    return Z2(label.b)
