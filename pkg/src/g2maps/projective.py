"""Exact projective geometry in P^1 and P^2 over the rationals.

Points, lines and conics are stored with canonical representatives (first
nonzero coordinate scaled to 1), so equality really is equality of projective
classes.  The point at infinity of P^1 is always (1:0).

The cross-ratio convention used everywhere:

    cr(p1, p2, p3, p4) = det(p1,p3) det(p2,p4) / ( det(p1,p4) det(p2,p3) )

with det((a:b),(c:d)) = a d - b c, so cr((0:1),(1:1),(1:0),(lam:1))
equals (lam-1)/lam.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import adjugate3, det3, mat_vec3, span_dimension
from .markers import INFINITY, Infinity
from .polynomials import _coerce


class DegenerateConfiguration(ValueError):
    """A geometric precondition failed (coincident points, degenerate conic...)."""


class IncidenceError(ValueError):
    """A required incidence (point on line, line through point) does not hold."""


def _canonical(coords: Sequence) -> tuple[Fraction, ...]:
    cs = tuple(_coerce(x) for x in coords)
    lead = next((c for c in cs if c != 0), None)
    if lead is None:
        raise ValueError("all-zero homogeneous coordinates")
    return tuple(c / lead for c in cs)


class ProjPoint:
    """A point of P^1 or P^2 (dimension read off from the coordinate count)."""

    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) not in (2, 3):
            raise ValueError("expected 2 (P^1) or 3 (P^2) homogeneous coordinates")
        object.__setattr__(self, "coords", _canonical(coords))

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @classmethod
    def infinity(cls) -> "ProjPoint":
        """The point at infinity of P^1, uniformly (1:0)."""
        return cls(1, 0)

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def vector(self) -> tuple[Fraction, ...]:
        return self.coords

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"


class ProjLine2:
    """A line a x + b y + c z = 0 in P^2, stored up to scale."""

    __slots__ = ("coeffs",)

    def __init__(self, *coeffs):
        if len(coeffs) == 1 and isinstance(coeffs[0], (tuple, list)):
            coeffs = tuple(coeffs[0])
        if len(coeffs) != 3:
            raise ValueError("a line needs 3 coefficients")
        object.__setattr__(self, "coeffs", _canonical(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("ProjLine2 is immutable")

    def contains(self, p: ProjPoint) -> bool:
        if p.dim != 2:
            raise ValueError("expected a point of P^2")
        return sum(a * x for a, x in zip(self.coeffs, p.coords)) == 0

    def __eq__(self, other):
        if not isinstance(other, ProjLine2):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("line", self.coeffs))

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coeffs) + "]"


def _cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine2:
    if p == q:
        raise DegenerateConfiguration("no unique line through a repeated point")
    return ProjLine2(_cross(p.vector(), q.vector()))


def line_intersection(l1: ProjLine2, l2: ProjLine2) -> ProjPoint:
    if l1 == l2:
        raise DegenerateConfiguration("coincident lines have no unique intersection")
    return ProjPoint(_cross(l1.coeffs, l2.coeffs))


class Conic2:
    """A conic in P^2 given by a symmetric 3x3 matrix, up to scale.

    `from_coefficients` takes [xx, yy, zz, xy, xz, yz] for
    a x^2 + b y^2 + c z^2 + d xy + e xz + f yz = 0.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence]):
        rows = [tuple(_coerce(x) for x in row) for row in matrix]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 3x3 matrix")
        for i in range(3):
            for j in range(3):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("conic matrix must be symmetric")
        flat = [c for row in rows for c in row]
        lead = next((c for c in flat if c != 0), None)
        if lead is None:
            raise ValueError("zero conic")
        rows = [tuple(c / lead for c in row) for row in rows]
        object.__setattr__(self, "matrix", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("Conic2 is immutable")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "Conic2":
        if len(coeffs) != 6:
            raise ValueError("expected 6 coefficients [xx, yy, zz, xy, xz, yz]")
        a, b, c, d, e, f = (_coerce(x) for x in coeffs)
        h = Fraction(1, 2)
        return cls([[a, d * h, e * h], [d * h, b, f * h], [e * h, f * h, c]])

    def is_nondegenerate(self) -> bool:
        return det3(self.matrix) != 0

    def contains(self, p: ProjPoint) -> bool:
        if p.dim != 2:
            raise ValueError("expected a point of P^2")
        v = p.vector()
        mv = mat_vec3(self.matrix, v)
        return sum(a * b for a, b in zip(v, mv)) == 0

    def polar_line(self, p: ProjPoint) -> ProjLine2:
        """The polar line of p; for p on the conic this is the tangent there."""
        return ProjLine2(mat_vec3(self.matrix, p.vector()))

    def tangent_line_at(self, p: ProjPoint) -> ProjLine2:
        if not self.contains(p):
            raise IncidenceError(f"{p} does not lie on the conic")
        return self.polar_line(p)

    def __eq__(self, other):
        if not isinstance(other, Conic2):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(("conic", self.matrix))

    def __repr__(self):
        return f"Conic2({self.matrix})"


def _det2(p: ProjPoint, q: ProjPoint) -> Fraction:
    (a, b), (c, d) = p.vector(), q.vector()
    return a * d - b * c


def cross_ratio(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint):
    """Cross-ratio of four points of P^1; Fraction or INFINITY.

    At least three of the four points must be pairwise distinct.
    """
    pts = (p1, p2, p3, p4)
    for p in pts:
        if p.dim != 1:
            raise ValueError("cross_ratio expects points of P^1")
    distinct = len(set(pts))
    if distinct < 3:
        raise DegenerateConfiguration(
            f"cross-ratio needs at least 3 distinct points, got {distinct}"
        )
    num = _det2(p1, p3) * _det2(p2, p4)
    den = _det2(p1, p4) * _det2(p2, p3)
    if den == 0:
        return INFINITY
    return num / den


def pencil_coordinate(base: ProjPoint, line: ProjLine2) -> ProjPoint:
    """Coordinate of `line` in the pencil of lines through `base`, as a P^1 point.

    The pencil is identified with P(Q^3 / <base>): pick the second point
    line x base on the line, reduce it modulo base, and drop the coordinate
    of base's first nonzero entry.  Two concurrent lines get equal P^1 points
    iff they are equal.  Raises IncidenceError if the line misses the base.
    """
    if base.dim != 2:
        raise ValueError("base must be a point of P^2")
    if not line.contains(base):
        raise IncidenceError(f"line {line} does not pass through {base}")
    b = base.vector()
    v = _cross(line.coeffs, b)
    i = next(i for i, c in enumerate(b) if c != 0)
    scale = v[i] / b[i]
    w = [x - scale * y for x, y in zip(v, b)]
    reduced = [w[j] for j in range(3) if j != i]
    return ProjPoint(reduced)


def line_tangent_to_conic(line: ProjLine2, conic: Conic2) -> bool:
    """Whether the line is tangent to a nondegenerate conic: L^T adj(C) L = 0."""
    if not conic.is_nondegenerate():
        raise DegenerateConfiguration("tangency test needs a nondegenerate conic")
    adj = adjugate3(conic.matrix)
    l = line.coeffs
    al = mat_vec3(adj, l)
    return sum(a * b for a, b in zip(l, al)) == 0


def tangency_point(line: ProjLine2, conic: Conic2) -> ProjPoint:
    """The point of tangency of a tangent line (the pole of the line)."""
    if not line_tangent_to_conic(line, conic):
        raise IncidenceError("line is not tangent to the conic")
    adj = adjugate3(conic.matrix)
    return ProjPoint(mat_vec3(adj, line.coeffs))


def directions_span_dimension(directions: Sequence[Sequence]) -> int:
    """Span dimension of pencil-direction representatives (zero vectors allowed)."""
    return span_dimension([tuple(_coerce(x) for x in d) for d in directions])
