"""Exact multivariate polynomials over the rationals.

Coefficients are `fractions.Fraction` throughout; there is no floating point
anywhere in this module.  A polynomial stores an ordered tuple of variable
names and a map from exponent vectors to nonzero coefficients.  Binary
operations align variable sets by name, so ``x * y`` works even when the two
operands were built over different variable tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .markers import INFINITY

Exponents = tuple[int, ...]


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact rational coefficient")


class Polynomial:
    """A polynomial in named variables with Fraction coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponents, object] | None = None):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate variable names in {vs}")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vs):
                raise ValueError(f"exponent vector {exps} does not match variables {vs}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _coerce(coeff)
            if c != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # ---------------------------------------------------------------- helpers

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, value, variables: Iterable[str] = ()) -> "Polynomial":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): _coerce(value)})

    @classmethod
    def variable(cls, name: str, variables: Iterable[str] | None = None) -> "Polynomial":
        vs = tuple(variables) if variables is not None else (name,)
        if name not in vs:
            raise ValueError(f"{name!r} not among {vs}")
        exps = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {exps: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Exponents) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self) -> int | None:
        """Maximum total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    # ------------------------------------------------------------- arithmetic

    def _aligned(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if self.variables == other.variables:
            return self, other
        merged = tuple(sorted(set(self.variables) | set(other.variables)))
        return self._embed(merged), other._embed(merged)

    def _embed(self, variables: tuple[str, ...]) -> "Polynomial":
        if variables == self.variables:
            return self
        positions = [variables.index(v) for v in self.variables]
        terms: dict[Exponents, Fraction] = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for pos, e in zip(positions, exps):
                new[pos] = e
            terms[tuple(new)] = c
        return Polynomial(variables, terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.variables)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return Polynomial(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.variables)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            return Polynomial(self.variables, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._aligned(other)
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return Polynomial(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.variables)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -------------------------------------------------------------- structure

    def evaluate(self, assignment: Mapping[str, object]):
        """Evaluate in any commutative ring.

        Every variable must be assigned.  Values may be Fractions, ints,
        Polynomials, truncated series, or multi-branch elements -- anything
        supporting +, * and ** with the usual ring semantics.  The unit of the
        target ring is taken from a value's ``one_like`` method when present,
        else `Fraction(1)`.
        """
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise ValueError(f"unassigned variables: {missing}")
        one = Fraction(1)
        for v in self.variables:
            candidate = assignment[v]
            maker = getattr(candidate, "one_like", None)
            if maker is not None:
                one = maker()
                break
        total = None
        for exps, coeff in self.terms.items():
            term = coeff * one
            for v, e in zip(self.variables, exps):
                if e:
                    term = term * assignment[v] ** e
            total = term if total is None else total + term
        if total is None:
            return Fraction(0) * one
        return total

    def degree_in(self, var: str) -> int | None:
        """Degree in one variable; None for the zero polynomial."""
        if not self.terms:
            return None
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def coefficients_in(self, var: str) -> list["Polynomial"]:
        """Coefficient list [c_0, ..., c_d] of this polynomial viewed in `var`.

        Each c_i is a polynomial in the remaining variables.
        """
        i = self.variables.index(var)
        rest = tuple(v for v in self.variables if v != var)
        d = self.degree_in(var)
        if d is None:
            return [Polynomial.zero(rest)]
        buckets: list[dict[Exponents, Fraction]] = [dict() for _ in range(d + 1)]
        for exps, c in self.terms.items():
            key = tuple(e for j, e in enumerate(exps) if j != i)
            buckets[exps[i]][key] = c
        return [Polynomial(rest, b) for b in buckets]

    def order(self) -> object:
        """Smallest total degree of a nonzero term; INFINITY for zero."""
        if not self.terms:
            return INFINITY
        return min(sum(e) for e in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, exps)
                if e
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits)


def determinant(rows: list[list[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Expansion by minors along the first available column, memoised on the set
    of remaining rows.  Fine for the small Sylvester matrices used here.
    """
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if n == 0:
        return Polynomial.constant(1)
    cache: dict[tuple[int, ...], Polynomial] = {}

    def minor(row_ids: tuple[int, ...]) -> Polynomial:
        if not row_ids:
            return Polynomial.constant(1)
        if row_ids in cache:
            return cache[row_ids]
        col = n - len(row_ids)
        acc: Polynomial | None = None
        for pos, r in enumerate(row_ids):
            entry = rows[r][col]
            if entry.is_zero():
                continue
            sub = minor(row_ids[:pos] + row_ids[pos + 1:])
            piece = entry * sub
            if pos % 2:
                piece = -piece
            acc = piece if acc is None else acc + piece
        result = acc if acc is not None else Polynomial.zero()
        cache[row_ids] = result
        return result

    return minor(tuple(range(n)))


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Resultant of f and g with respect to `var` (Sylvester determinant).

    Returns a polynomial in the remaining variables.  Degenerate degrees are
    handled by the usual conventions: Res(c, g) = c^deg(g) for constant c,
    and the resultant involving a zero polynomial is zero (unless both are
    nonzero constants, which gives 1).
    """
    if var not in f.variables:
        f = f._embed(tuple(sorted(set(f.variables) | {var})))
    if var not in g.variables:
        g = g._embed(tuple(sorted(set(g.variables) | {var})))
    f, g = f._aligned(g)
    rest = tuple(v for v in f.variables if v != var)
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(rest)
    fc = f.coefficients_in(var)
    gc = g.coefficients_in(var)
    m = len(fc) - 1
    n = len(gc) - 1
    if m == 0 and n == 0:
        return Polynomial.constant(1, rest)
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    size = m + n
    zero = Polynomial.zero(rest)
    rows: list[list[Polynomial]] = []
    for shift in range(n):
        row = [zero] * size
        for j, c in enumerate(fc):
            row[shift + (m - j)] = c
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for j, c in enumerate(gc):
            row[shift + (n - j)] = c
        rows.append(row)
    return determinant(rows)
