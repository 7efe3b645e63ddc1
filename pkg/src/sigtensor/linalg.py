"""Exact rational linear algebra: matrix rank, reduced row echelon form, subspaces.

Everything works over Q with `fractions.Fraction` entries and never rounds.
Rank uses fraction-free (Bareiss) elimination on integer-scaled rows so
intermediate values stay integral and small; RREF stays in Fraction because
subspace bases are tiny.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
MatrixRows = Sequence[Sequence[Fraction]]


def as_fraction(x) -> Fraction:
    """Coerce an int, string ("p/q" or "p"), or Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def as_vector(entries: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in entries)


def _integer_rows(rows: MatrixRows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; preserves row space."""
    out = []
    for row in rows:
        fracs = [as_fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
        out.append([int(f * scale) for f in fracs])
    return out


def matrix_rank(rows: MatrixRows) -> int:
    """Exact rank over Q (hence over R and C) by Bareiss elimination."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    if any(len(r) != n_cols for r in m):
        raise ValueError("ragged matrix")
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        # Sylvester's identity keeps every division below exact, provided all
        # rows are updated each step (including rows with a zero in this column).
        for i in range(rank + 1, n_rows):
            f = m[i][col]
            row_i, row_r = m[i], m[rank]
            for j in range(col + 1, n_cols):
                row_i[j] = (row_i[j] * p - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def rref(rows: MatrixRows) -> list[list[Fraction]]:
    """Reduced row echelon form over Fraction; zero rows are dropped."""
    m = [[as_fraction(x) for x in row] for row in rows]
    if not m:
        return []
    n_cols = len(m[0])
    if any(len(r) != n_cols for r in m):
        raise ValueError("ragged matrix")
    out: list[list[Fraction]] = []
    n_rows = len(m)
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    for row in m:
        if any(x != 0 for x in row):
            out.append(row)
    return out


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^d in canonical form.

    The basis rows are the RREF of any spanning set, so two subspaces are
    equal exactly when their dataclass fields are equal.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @staticmethod
    def span(vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        """Incremental elimination: each vector is reduced against the rows
        collected so far, so long fiber lists cost little and a full-rank
        span exits early."""
        rows: list[tuple[int, list[Fraction]]] = []  # (pivot col, unit-pivot row)
        for v in vectors:
            cur = [as_fraction(x) for x in v]
            if len(cur) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
            for pc, row in rows:
                f = cur[pc]
                if f != 0:
                    cur = [a - f * b for a, b in zip(cur, row)]
            pivot = next((j for j, x in enumerate(cur) if x != 0), None)
            if pivot is None:
                continue
            pv = cur[pivot]
            rows.append((pivot, [x / pv for x in cur]))
            rows.sort(key=lambda item: item[0])
            if len(rows) == ambient_dim:
                return Subspace.full(ambient_dim)
        for i in reversed(range(len(rows))):
            pc, row = rows[i]
            for j in range(i):
                f = rows[j][1][pc]
                if f != 0:
                    rows[j] = (rows[j][0], [a - f * b for a, b in zip(rows[j][1], row)])
        return Subspace(ambient_dim, tuple(tuple(row) for _, row in rows))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        eye = [[Fraction(int(i == j)) for j in range(ambient_dim)] for i in range(ambient_dim)]
        return Subspace(ambient_dim, tuple(tuple(r) for r in eye))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, vector: Sequence) -> bool:
        v = as_vector(vector)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        residual = list(v)
        for row in self.basis:
            lead = next(j for j, x in enumerate(row) if x != 0)
            if residual[lead] != 0:
                f = residual[lead]
                residual = [a - f * b for a, b in zip(residual, row)]
        return all(x == 0 for x in residual)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)
