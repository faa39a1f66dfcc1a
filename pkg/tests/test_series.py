from fractions import Fraction

import pytest

from g2maps.markers import INFINITY
from g2maps.polynomials import Polynomial
from g2maps.series import (
    MultiBranchElement,
    TruncatedSeries,
    TruncationMismatch,
    evaluate_polynomial_on_branches,
)


def test_monomial_and_order():
    t2 = TruncatedSeries.monomial(2, 6)
    assert t2.order() == 2
    assert TruncatedSeries.zero(6).order() is INFINITY
    assert TruncatedSeries.one(6).order() == 0


def test_truncation_drops_high_terms():
    t = TruncatedSeries.monomial(1, 3)
    assert (t * t * t).is_zero()  # t^3 == 0 mod t^3
    assert not (t * t).is_zero()


def test_arithmetic():
    t = TruncatedSeries.monomial(1, 5)
    s = (TruncatedSeries.one(5) + t) * (TruncatedSeries.one(5) - t)
    assert s == TruncatedSeries.one(5) - t * t


def test_cap_mismatch_raises():
    with pytest.raises(TruncationMismatch):
        TruncatedSeries.one(4) + TruncatedSeries.one(5)


def test_one_like():
    t = TruncatedSeries.monomial(3, 7)
    assert t.one_like() == TruncatedSeries.one(7)


def test_multibranch_from_monomials():
    # None encodes the zero restriction on that branch
    e = MultiBranchElement.from_monomials([1, None, 2], 4)
    assert e.branch_count == 3
    assert not e.is_zero()
    assert MultiBranchElement.zero(3, 4).is_zero()


def test_multibranch_componentwise_product():
    a = MultiBranchElement.from_monomials([1, 2], 4)
    b = MultiBranchElement.from_monomials([2, 2], 4)
    prod = a * b
    assert prod == MultiBranchElement.from_monomials([3, None], 4)


def test_multibranch_mismatch():
    with pytest.raises(ValueError):
        MultiBranchElement.zero(2, 4) + MultiBranchElement.zero(3, 4)
    with pytest.raises(TruncationMismatch):
        MultiBranchElement.zero(2, 4) + MultiBranchElement.zero(2, 5)


def test_evaluate_polynomial_on_branches():
    # x = t, y = t^2 on a single branch kills y - x^2
    names = ("x", "y")
    xv = Polynomial.variable("x", names)
    yv = Polynomial.variable("y", names)
    gens = {
        "x": MultiBranchElement.from_monomials([1], 6),
        "y": MultiBranchElement.from_monomials([2], 6),
    }
    assert evaluate_polynomial_on_branches(yv - xv * xv, gens).is_zero()
    assert not evaluate_polynomial_on_branches(yv - xv, gens).is_zero()


def test_evaluate_respects_truncation():
    # y - x^3 with x = t dies once the cap reaches the exponent
    names = ("x",)
    xv = Polynomial.variable("x", names)
    gens = {"x": MultiBranchElement.from_monomials([1], 3)}
    assert evaluate_polynomial_on_branches(xv ** 3, gens).is_zero()
    assert not evaluate_polynomial_on_branches(xv ** 2, gens).is_zero()
