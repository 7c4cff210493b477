"""Exact Gaussian elimination over Q(i)."""

from __future__ import annotations

from typing import Sequence

from .scalars import ONE, ZERO, GaussianRational

Matrix = list[list[GaussianRational]]


def rref(rows: Sequence[Sequence[GaussianRational]], ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        if inv != ONE:
            m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b if not b.is_zero() else a for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[GaussianRational]], ncols: int) -> Matrix:
    """A basis of ``{v : rows @ v == 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[GaussianRational]], rhs: Sequence[GaussianRational]):
    """One solution of ``rows @ x == rhs`` (free variables set to 0), or ``None``.

    Also returns the nullity so callers can check uniqueness.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None, ncols - (len(pivots) - 1)
    x = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x, ncols - len(pivots)


def rank(rows: Sequence[Sequence[GaussianRational]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])
