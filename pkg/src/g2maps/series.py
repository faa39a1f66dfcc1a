"""Truncated power series and branchwise ring elements.

A `TruncatedSeries` is a class in Q[t]/(t^N): it keeps the coefficients of
t^0 .. t^(N-1) and silently re-truncates products.  A `MultiBranchElement`
is a tuple of such series, one per branch of a curve germ, all sharing the
same truncation order; ring operations act componentwise.  These are the
values taken by the local generators of the genus-2 singularity
presentations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .markers import INFINITY
from .polynomials import Polynomial, _coerce


class TruncationMismatch(ValueError):
    """Raised when elements with different truncation orders are combined."""


class TruncatedSeries:
    __slots__ = ("order_cap", "coeffs", "name")

    def __init__(self, coeffs: Iterable, order_cap: int, name: str = "t"):
        if order_cap < 1:
            raise ValueError("truncation order must be at least 1")
        cs = [_coerce(c) for c in coeffs]
        if len(cs) > order_cap:
            cs = cs[:order_cap]
        cs += [Fraction(0)] * (order_cap - len(cs))
        object.__setattr__(self, "order_cap", order_cap)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def zero(cls, order_cap: int, name: str = "t") -> "TruncatedSeries":
        return cls((), order_cap, name)

    @classmethod
    def one(cls, order_cap: int, name: str = "t") -> "TruncatedSeries":
        return cls((1,), order_cap, name)

    @classmethod
    def monomial(cls, power: int, order_cap: int, name: str = "t", coeff=1) -> "TruncatedSeries":
        """The class of coeff*t^power (zero if power >= order_cap)."""
        if power < 0:
            raise ValueError("power must be non-negative")
        if power >= order_cap:
            return cls.zero(order_cap, name)
        cs = [Fraction(0)] * power + [_coerce(coeff)]
        return cls(cs, order_cap, name)

    def one_like(self) -> "TruncatedSeries":
        return TruncatedSeries.one(self.order_cap, self.name)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def order(self):
        """Smallest power with nonzero coefficient; INFINITY for the zero class."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return INFINITY

    def _check(self, other: "TruncatedSeries"):
        if self.order_cap != other.order_cap:
            raise TruncationMismatch(
                f"mixed truncation orders {self.order_cap} and {other.order_cap}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries((other,), self.order_cap, self.name)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return TruncatedSeries(
            (a + b for a, b in zip(self.coeffs, other.coeffs)), self.order_cap, self.name
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries((-c for c in self.coeffs), self.order_cap, self.name)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries((other,), self.order_cap, self.name)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            return TruncatedSeries((c * a for a in self.coeffs), self.order_cap, self.name)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        n = self.order_cap
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out, n, self.name)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = TruncatedSeries.one(self.order_cap, self.name)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order_cap == other.order_cap and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order_cap, self.coeffs))

    def __repr__(self):
        bits = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                bits.append(str(c))
            elif i == 1:
                bits.append(f"{c}*{self.name}" if c != 1 else self.name)
            else:
                bits.append(f"{c}*{self.name}^{i}" if c != 1 else f"{self.name}^{i}")
        body = " + ".join(bits) if bits else "0"
        return f"({body} + O({self.name}^{self.order_cap}))"


class MultiBranchElement:
    """An element of a product of truncated series rings, one factor per branch."""

    __slots__ = ("branches",)

    def __init__(self, branches: Iterable[TruncatedSeries]):
        bs = tuple(branches)
        if not bs:
            raise ValueError("need at least one branch")
        cap = bs[0].order_cap
        for b in bs:
            if b.order_cap != cap:
                raise TruncationMismatch("all branches must share one truncation order")
        object.__setattr__(self, "branches", bs)

    def __setattr__(self, name, value):
        raise AttributeError("MultiBranchElement is immutable")

    @classmethod
    def zero(cls, branch_count: int, order_cap: int) -> "MultiBranchElement":
        return cls(TruncatedSeries.zero(order_cap, f"t{i+1}") for i in range(branch_count))

    @classmethod
    def from_monomials(cls, powers: Iterable[int | None], order_cap: int) -> "MultiBranchElement":
        """Branchwise monomials: entry i is t_i^powers[i]; None means the zero branch."""
        out = []
        for i, p in enumerate(powers):
            name = f"t{i+1}"
            if p is None:
                out.append(TruncatedSeries.zero(order_cap, name))
            else:
                out.append(TruncatedSeries.monomial(p, order_cap, name))
        return cls(out)

    @property
    def order_cap(self) -> int:
        return self.branches[0].order_cap

    @property
    def branch_count(self) -> int:
        return len(self.branches)

    def one_like(self) -> "MultiBranchElement":
        return MultiBranchElement(
            TruncatedSeries.one(b.order_cap, b.name) for b in self.branches
        )

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.branches)

    def _check(self, other: "MultiBranchElement"):
        if self.branch_count != other.branch_count:
            raise ValueError("branch counts differ")
        if self.order_cap != other.order_cap:
            raise TruncationMismatch(
                f"mixed truncation orders {self.order_cap} and {other.order_cap}"
            )

    def _zip(self, other, op):
        self._check(other)
        return MultiBranchElement(op(a, b) for a, b in zip(self.branches, other.branches))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiBranchElement(b + other for b in self.branches)
        if not isinstance(other, MultiBranchElement):
            return NotImplemented
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __neg__(self):
        return MultiBranchElement(-b for b in self.branches)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiBranchElement(b - other for b in self.branches)
        if not isinstance(other, MultiBranchElement):
            return NotImplemented
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiBranchElement(b * other for b in self.branches)
        if not isinstance(other, MultiBranchElement):
            return NotImplemented
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return MultiBranchElement(b ** k for b in self.branches)

    def __eq__(self, other):
        if not isinstance(other, MultiBranchElement):
            return NotImplemented
        return self.branches == other.branches

    def __hash__(self):
        return hash(self.branches)

    def __repr__(self):
        return " (+) ".join(repr(b) for b in self.branches)


def evaluate_polynomial_on_branches(
    p: Polynomial, assignment: Mapping[str, MultiBranchElement]
) -> MultiBranchElement:
    """Evaluate p with multi-branch values; a ring homomorphism in each branch.

    Every variable of p must be assigned and all values must share branch
    count and truncation order.
    """
    values = list(assignment.values())
    if not values:
        raise ValueError("empty assignment")
    first = values[0]
    for v in values[1:]:
        first._check(v)
    result = p.evaluate(assignment)
    if isinstance(result, MultiBranchElement):
        return result
    # Constant polynomial: promote to the common ring.
    return first.one_like() * result
