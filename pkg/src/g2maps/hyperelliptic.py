"""Genus-2 hyperelliptic curves y^2 = f(x) over the rationals.

A genus-2 curve carries a unique degree-2 map to the line; this module
tracks that structure exactly: points (including the one or two points over
x = infinity), the hyperelliptic involution, Weierstrass points, and the
image on the target line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .polynomials import _coerce
from .projective import ProjPoint


class PointNotOnCurve(ValueError):
    pass


def _eval_poly(coeffs: tuple[Fraction, ...], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _derivative(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    return tuple(i * c for i, c in enumerate(coeffs))[1:]


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_mod(a: tuple[Fraction, ...], b: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    a = list(a)
    lead = b[-1]
    while len(a) >= len(b) and any(c != 0 for c in a):
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] / lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
    return _trim(a)


def is_squarefree(coeffs: Iterable[Fraction | int | str]) -> bool:
    """Whether the univariate polynomial (ascending coefficients) has no
    repeated roots, via gcd with its derivative."""
    f = _trim(_coerce(c) for c in coeffs)
    if len(f) < 2:
        return bool(f)  # nonzero constants are vacuously squarefree
    g = _trim(_derivative(f))
    while g:
        f, g = g, _poly_mod(f, g)
    return len(f) == 1


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 = f(x) with f squarefree of degree 5 or 6 (so genus 2).

    `coefficients` are ascending: coefficients[i] multiplies x^i.  Degree 5
    puts a single (Weierstrass) point over x = infinity; degree 6 puts two,
    swapped by the involution.
    """

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[Fraction | int | str]):
        coeffs = _trim(_coerce(c) for c in coefficients)
        if len(coeffs) not in (6, 7):
            raise ValueError(
                f"genus 2 needs deg f in {{5, 6}}, got degree {len(coeffs) - 1}"
            )
        if not is_squarefree(coeffs):
            raise ValueError("f must be squarefree (the curve must be smooth)")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x) -> Fraction:
        return _eval_poly(self.coefficients, _coerce(x))

    def point(self, x, y) -> "CurvePoint":
        x = _coerce(x)
        y = _coerce(y)
        if y * y != self.evaluate(x):
            raise PointNotOnCurve(f"({x}, {y}) does not satisfy y^2 = f(x)")
        return CurvePoint(self, x, y, None)

    def weierstrass_point(self, x) -> "CurvePoint":
        x = _coerce(x)
        if self.evaluate(x) != 0:
            raise PointNotOnCurve(f"f({x}) != 0, not a branch point")
        return CurvePoint(self, x, Fraction(0), None)

    def points_at_infinity(self) -> tuple["CurvePoint", ...]:
        if self.degree == 5:
            return (CurvePoint(self, None, None, 0),)
        return (CurvePoint(self, None, None, 0), CurvePoint(self, None, None, 1))


@dataclass(frozen=True)
class CurvePoint:
    curve: HyperellipticCurve
    x: Fraction | None
    y: Fraction | None
    infinity_branch: int | None

    @property
    def at_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        if self.at_infinity:
            return f"CurvePoint(oo[{self.infinity_branch}])"
        return f"CurvePoint({self.x}, {self.y})"


def involution(p: CurvePoint) -> CurvePoint:
    """The hyperelliptic involution: y -> -y over each x."""
    if p.at_infinity:
        if p.curve.degree == 5:
            return p
        return CurvePoint(p.curve, None, None, 1 - p.infinity_branch)
    return CurvePoint(p.curve, p.x, -p.y, None)


def is_weierstrass(p: CurvePoint) -> bool:
    """Fixed points of the involution: y = 0, plus infinity when deg f = 5."""
    if p.at_infinity:
        return p.curve.degree == 5
    return p.y == 0


def are_conjugate(p: CurvePoint, q: CurvePoint) -> bool:
    """Distinct points exchanged by the involution (same image, not fixed)."""
    if p.curve != q.curve:
        raise ValueError("points live on different curves")
    return p != q and involution(p) == q


def hyperelliptic_image(p: CurvePoint) -> ProjPoint:
    """Image on the target line P^1: (x : 1) for affine points, (1 : 0)
    over infinity."""
    if p.at_infinity:
        return ProjPoint((1, 0))
    return ProjPoint((p.x, 1))
