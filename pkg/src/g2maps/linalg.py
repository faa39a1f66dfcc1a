"""Small exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .polynomials import _coerce


def span_dimension(vectors: Iterable[Sequence]) -> int:
    """Dimension of the span of the given vectors (exact Gaussian elimination).

    The empty list spans the zero space.  All vectors must have equal length;
    zero vectors are allowed and contribute nothing.
    """
    rows = [[_coerce(x) for x in v] for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise ValueError("vectors of mixed lengths")
    rank = 0
    col = 0
    while rank < len(rows) and col < width:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def det3(m: Sequence[Sequence]) -> Fraction:
    """Determinant of a 3x3 matrix."""
    a = [[_coerce(x) for x in row] for row in m]
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def adjugate3(m: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Adjugate (classical adjoint) of a 3x3 matrix: adj(M) * M = det(M) * I."""
    a = [[_coerce(x) for x in row] for row in m]

    def cof(i, j):
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        minor = a[rows[0]][cols[0]] * a[rows[1]][cols[1]] - a[rows[0]][cols[1]] * a[rows[1]][cols[0]]
        return minor if (i + j) % 2 == 0 else -minor

    # adjugate = transpose of cofactor matrix
    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))


def mat_vec3(m: Sequence[Sequence], v: Sequence) -> tuple[Fraction, ...]:
    mm = [[_coerce(x) for x in row] for row in m]
    vv = [_coerce(x) for x in v]
    return tuple(sum(mm[i][j] * vv[j] for j in range(3)) for i in range(3))
