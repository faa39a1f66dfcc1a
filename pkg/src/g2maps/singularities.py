"""Genus-2 Gorenstein singularities and planar germ classification.

This module houses

* the two families of non-planar genus-2 Gorenstein singularities through
  which non-smoothable-looking boundary maps factor, presented by branchwise
  power-series generators and defining equations checked modulo a truncation
  ideal;
* the local ideal and arithmetic genus of tailed ribbons;
* exact planar branch germs (parametrized), their pairwise contact orders via
  resultants, and an ADE classifier driven by the resulting signature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .markers import INFINITY
from .polynomials import Polynomial, resultant, _coerce
from .series import MultiBranchElement, evaluate_polynomial_on_branches


# --------------------------------------------------------------------------
# singularity type vocabulary
# --------------------------------------------------------------------------

_ADE_LETTERS = ("A", "D", "E")


@dataclass(frozen=True)
class SingularityType:
    """Tagged union of the singularity types this package talks about.

    kinds: "ade" (A_n / D_n / E_n planar), "elliptic-mfold" (Gorenstein
    genus-1 m-fold point), "genus2-I" / "genus2-II" (the two genus-2 tables),
    "tailed-ribbon" (ribbon glued to rational m_i-fold tails) and
    "planar-mfold" (ordinary planar m-fold point).
    """

    kind: str
    data: tuple

    @classmethod
    def ade(cls, letter: str, index: int) -> "SingularityType":
        if letter not in _ADE_LETTERS:
            raise ValueError(f"unknown ADE letter {letter!r}")
        if index < 1:
            raise ValueError("ADE index must be positive")
        if letter == "D" and index < 4:
            raise ValueError("D-types start at D4")
        if letter == "E" and index not in (6, 7, 8):
            raise ValueError("E-types here are E6, E7, E8")
        return cls("ade", (letter, index))

    @classmethod
    def elliptic_m_fold(cls, m: int) -> "SingularityType":
        if m < 1:
            raise ValueError("m must be positive")
        return cls("elliptic-mfold", (m,))

    @classmethod
    def genus_two(cls, table: str, m: int) -> "SingularityType":
        if table not in ("I", "II"):
            raise ValueError("table must be 'I' or 'II'")
        if m < 1 or (table == "II" and m < 2):
            raise ValueError(f"bad branch count {m} for type {table}")
        return cls(f"genus2-{table}", (m,))

    @classmethod
    def tailed_ribbon(cls, tails: int, multiplicities: Sequence[int]) -> "SingularityType":
        ms = tuple(int(x) for x in multiplicities)
        if len(ms) != tails or any(x < 1 for x in ms):
            raise ValueError("need one positive multiplicity per tail")
        return cls("tailed-ribbon", (tails, ms))

    @classmethod
    def planar_m_fold(cls, m: int) -> "SingularityType":
        if m < 3:
            raise ValueError("ordinary planar m-fold points start at m = 3")
        return cls("planar-mfold", (m,))

    @property
    def label(self) -> str:
        if self.kind == "ade":
            return f"{self.data[0]}{self.data[1]}"
        if self.kind == "elliptic-mfold":
            return f"elliptic-{self.data[0]}-fold"
        if self.kind == "genus2-I":
            return f"genus2-I({self.data[0]})"
        if self.kind == "genus2-II":
            return f"genus2-II({self.data[0]})"
        if self.kind == "tailed-ribbon":
            k, ms = self.data
            return f"ribbon({k};{','.join(str(m) for m in ms)})"
        if self.kind == "planar-mfold":
            return f"{self.data[0]}-fold"
        raise AssertionError(self.kind)

    @property
    def milnor(self) -> int:
        """Milnor number, defined for the planar kinds (ADE index, (m-1)^2)."""
        if self.kind == "ade":
            return self.data[1]
        if self.kind == "planar-mfold":
            return (self.data[0] - 1) ** 2
        raise ValueError(f"no Milnor number for kind {self.kind!r}")

    def __repr__(self):
        return self.label


def parse_singularity_label(token: str) -> SingularityType:
    """Parse compact labels like "A4", "D5", "E7", "4-fold"."""
    token = token.strip()
    if token.endswith("-fold"):
        return SingularityType.planar_m_fold(int(token[: -len("-fold")]))
    if token[:1] in _ADE_LETTERS and token[1:].isdigit():
        return SingularityType.ade(token[0], int(token[1:]))
    raise ValueError(f"cannot parse singularity label {token!r}")


# --------------------------------------------------------------------------
# genus-2 Gorenstein presentations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GorensteinPresentation:
    """Branchwise presentation of a genus-2 Gorenstein singularity.

    Generators assign to each variable name a multi-branch truncated series;
    equations are polynomials in those names that must vanish modulo the
    truncation ideal <t_i^N>.  Branch indices are 1-based; `special_branches`
    marks the distinguished branches of the table (the cusp branch of
    table I, the tacnodal pair of table II).
    """

    table: str
    branch_count: int
    truncation_order: int
    generators: dict[str, MultiBranchElement]
    equations: tuple[Polynomial, ...]
    special_branches: tuple[int, ...]

    @property
    def singularity_type(self) -> SingularityType:
        return SingularityType.genus_two(self.table, self.branch_count)

    def with_equations(self, equations: Iterable[Polynomial]) -> "GorensteinPresentation":
        return GorensteinPresentation(
            self.table,
            self.branch_count,
            self.truncation_order,
            dict(self.generators),
            tuple(equations),
            self.special_branches,
        )


def _mbe(powers: Sequence[int | None], cap: int) -> MultiBranchElement:
    return MultiBranchElement.from_monomials(powers, cap)


def type_I_presentation(m: int) -> GorensteinPresentation:
    """The m-branch singularity from the first genus-2 table.

    For m >= 2 the generators are x_i = t_i on branch i plus t_m^3 on the
    last branch (i < m) and x_m = t_m^2 on the last branch, taken modulo
    <t_i^4>.  The pattern does not specialize to m = 1, where we use the
    classical one-branch model x = t^2, y = t^5 with equation x^5 - y^2; a
    faithful check of that equation needs terms up to t^10, so this single
    case carries a larger truncation order.
    """
    if m < 1:
        raise ValueError("branch count must be positive")
    if m == 1:
        cap = 11
        gens = {
            "x": _mbe([2], cap),
            "y": _mbe([5], cap),
        }
        x = Polynomial.variable("x", ("x", "y"))
        y = Polynomial.variable("y", ("x", "y"))
        eqs = (x ** 5 - y ** 2,)
        return GorensteinPresentation("I", 1, cap, gens, eqs, (1,))

    cap = 4
    names = tuple(f"x{i}" for i in range(1, m + 1))
    gens: dict[str, MultiBranchElement] = {}
    for i in range(1, m):
        powers: list[int | None] = [None] * m
        powers[i - 1] = 1
        powers[m - 1] = 3
        gens[f"x{i}"] = _mbe(powers, cap)
    last: list[int | None] = [None] * m
    last[m - 1] = 2
    gens[f"x{m}"] = _mbe(last, cap)

    v = {n: Polynomial.variable(n, names) for n in names}
    if m == 2:
        eqs = (v["x2"] * (v["x2"] ** 3 - v["x1"] ** 2),)
    elif m == 3:
        eqs = (
            v["x3"] * (v["x1"] - v["x2"]),
            v["x3"] ** 3 - v["x1"] * v["x2"],
        )
    else:
        eqs_list = [v[f"x{m}"] ** 3 - v["x1"] * v["x2"]]
        for i in range(1, m + 1):
            others = [j for j in range(1, m) if j != i]
            for a in range(len(others)):
                for b in range(a + 1, len(others)):
                    j, k = others[a], others[b]
                    eqs_list.append(v[f"x{i}"] * (v[f"x{j}"] - v[f"x{k}"]))
        eqs = tuple(eqs_list)
    return GorensteinPresentation("I", m, cap, gens, eqs, (m,))


def type_II_presentation(m: int) -> GorensteinPresentation:
    """The m-branch singularity from the second genus-2 table (m >= 2).

    Generators modulo <t_i^3>: x_1 restricts to t_1 on the first branch and
    to t_m (order one!) on the last; x_i (2 <= i <= m-1) restricts to t_i on
    branch i and t_m^2 on the last.  For m = 2 there is an extra generator
    y = t_2^3 on the second branch, which the truncation kills; the tacnodal
    special-branch pair {1, m} only exists for m >= 3 and the list is left
    empty at m = 2.
    """
    if m < 2:
        raise ValueError("table II starts at two branches")
    cap = 3
    gens: dict[str, MultiBranchElement] = {}
    first: list[int | None] = [None] * m
    first[0] = 1
    first[m - 1] = 1
    gens["x1"] = _mbe(first, cap)
    for i in range(2, m):
        powers: list[int | None] = [None] * m
        powers[i - 1] = 1
        powers[m - 1] = 2
        gens[f"x{i}"] = _mbe(powers, cap)

    if m == 2:
        gens["y"] = _mbe([None, 3], cap)
        x1 = Polynomial.variable("x1", ("x1", "y"))
        y = Polynomial.variable("y", ("x1", "y"))
        eqs = (y * (y - x1 ** 3),)
        return GorensteinPresentation("II", 2, cap, gens, eqs, ())

    names = tuple(f"x{i}" for i in range(1, m))
    v = {n: Polynomial.variable(n, names) for n in names}
    if m == 3:
        eqs = (v["x1"] * v["x2"] * (v["x2"] - v["x1"] ** 2),)
    else:
        eqs_list = [v["x3"] * (v["x1"] ** 2 - v["x2"])]
        for i in range(1, m):
            others = [j for j in range(1, m) if j != i]
            for a in range(len(others)):
                for b in range(a + 1, len(others)):
                    j, k = others[a], others[b]
                    eqs_list.append(v[f"x{i}"] * (v[f"x{j}"] - v[f"x{k}"]))
        eqs = tuple(eqs_list)
    return GorensteinPresentation("II", m, cap, gens, eqs, (1, m))


def verify_presentation(p: GorensteinPresentation) -> bool:
    """Check that every equation vanishes on the generators mod <t_i^N>."""
    for eq in p.equations:
        value = evaluate_polynomial_on_branches(eq, p.generators)
        if not value.is_zero():
            return False
    return True


def presentation_residues(p: GorensteinPresentation) -> list[MultiBranchElement]:
    """The branchwise value of every equation (all zero iff the check passes)."""
    return [evaluate_polynomial_on_branches(eq, p.generators) for eq in p.equations]


# --------------------------------------------------------------------------
# tailed ribbons
# --------------------------------------------------------------------------


def tailed_ribbon_local_ideal(m: int) -> list[Polynomial]:
    """Generators of the local ideal where a rational m-fold tail meets a ribbon.

    In variables x_1..x_m (tail branches) and y (ribbon direction):
    x_i x_j and (x_i - x_j) y for all i < j.  For m = 1 the point is a
    plain node on the ribbon and the list is empty.
    """
    if m < 1:
        raise ValueError("tail multiplicity must be positive")
    names = tuple(f"x{i}" for i in range(1, m + 1)) + ("y",)
    v = {n: Polynomial.variable(n, names) for n in names}
    gens: list[Polynomial] = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            gens.append(v[f"x{i}"] * v[f"x{j}"])
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            gens.append((v[f"x{i}"] - v[f"x{j}"]) * v["y"])
    return gens


def ribbon_genus(tails: int, multiplicities: Sequence[int]) -> int:
    """Arithmetic genus of a tailed ribbon, via Euler characteristics.

    A ribbon of genus 2-k sits in an extension of the structure sheaf of a
    line by O(k-3), so chi(O_ribbon) = (k-2) + 1.  Gluing k rational tails
    with multiplicities m_i subtracts m_i - 1 + 2 per tail after adding the
    tails' own chi = m_i.  The total is always -1, i.e. genus 2, whatever
    the multiplicities: the construction trades ribbon genus for tails.
    """
    ms = [int(x) for x in multiplicities]
    if len(ms) != tails:
        raise ValueError("need one multiplicity per tail")
    if any(x < 1 for x in ms):
        raise ValueError("multiplicities must be positive")
    chi_ribbon = (tails - 2) + 1
    chi_curve = chi_ribbon + sum(ms) - sum(m - 1 + 2 for m in ms)
    return 1 - chi_curve


# --------------------------------------------------------------------------
# planar branches and germ classification
# --------------------------------------------------------------------------


class UnclassifiedGermError(ValueError):
    """The germ is outside the supported catalog; carries the computed signature."""

    def __init__(self, message: str, signature: "GermSignature"):
        super().__init__(message)
        self.signature = signature


def _order_of(coeffs: tuple[Fraction, ...]):
    for i, c in enumerate(coeffs):
        if c != 0:
            return i
    return INFINITY


@dataclass(frozen=True)
class PlanarBranch:
    """One analytic branch of a plane curve germ at the origin.

    Given by a polynomial parametrization t -> (x(t), y(t)) with zero
    constant terms, as coefficient tuples indexed by the power of t.
    """

    x_coeffs: tuple[Fraction, ...]
    y_coeffs: tuple[Fraction, ...]

    def __init__(self, x_coeffs: Sequence, y_coeffs: Sequence):
        xc = tuple(_coerce(c) for c in x_coeffs)
        yc = tuple(_coerce(c) for c in y_coeffs)
        if (xc and xc[0] != 0) or (yc and yc[0] != 0):
            raise ValueError("branch must pass through the origin (zero constant terms)")
        if all(c == 0 for c in xc) and all(c == 0 for c in yc):
            raise ValueError("branch parametrization is identically zero")
        object.__setattr__(self, "x_coeffs", xc)
        object.__setattr__(self, "y_coeffs", yc)

    def as_polynomials(self, var: str) -> tuple[Polynomial, Polynomial]:
        def build(coeffs):
            return Polynomial((var,), {(i,): c for i, c in enumerate(coeffs) if c != 0})

        return build(self.x_coeffs), build(self.y_coeffs)

    def orders(self):
        return _order_of(self.x_coeffs), _order_of(self.y_coeffs)

    def branch_type(self) -> tuple[str, tuple[int, ...], int]:
        """(label, characteristic orders, delta) after linear normalization.

        A linear coordinate change is applied to maximize the larger of the
        two coordinate orders (tie-breaking subtracts a multiple of one
        coordinate from the other); the resulting order pair (a, b) with
        a < b decides the type: a = 1 is smooth, (2, odd) and (3, 4) are the
        catalog cusps.  Anything else raises UnclassifiedGermError -- full
        Puiseux analysis is out of scope.
        """
        xc = list(self.x_coeffs)
        yc = list(self.y_coeffs)
        ox, oy = _order_of(tuple(xc)), _order_of(tuple(yc))
        while ox == oy and ox is not INFINITY:
            lam = yc[oy] / xc[ox]
            width = max(len(xc), len(yc))
            yc = [
                (yc[i] if i < len(yc) else Fraction(0))
                - lam * (xc[i] if i < len(xc) else Fraction(0))
                for i in range(width)
            ]
            oy = _order_of(tuple(yc))
            if oy is INFINITY or oy > ox:
                break
        ox, oy = _order_of(tuple(xc)), _order_of(tuple(yc))
        if oy is not INFINITY and (ox is INFINITY or oy < ox):
            ox, oy = oy, ox
        a, b = ox, oy
        if a == 1:
            return "smooth", (1,), 0
        if a == 2 and b is not INFINITY and b % 2 == 1:
            return f"cusp(2,{b})", (2, b), (b - 1) // 2
        if a == 3 and b == 4:
            return "cusp(3,4)", (3, 4), 3
        pretty = (a, "oo" if b is INFINITY else b)
        raise UnclassifiedGermError(
            f"branch with normalized orders {pretty} is outside the catalog",
            GermSignature((f"unknown{pretty}",), (), None, None),
        )


def intersection_multiplicity(b1: PlanarBranch, b2: PlanarBranch):
    """Contact order of two branches at the origin.

    The t-adic order of the resultant in s of (x1(t) - x2(s), y1(t) - y2(s));
    INFINITY when the branches trace the same germ (vanishing resultant).
    """
    x1, y1 = b1.as_polynomials("t")
    x2, y2 = b2.as_polynomials("s")
    f = x1 - x2
    g = y1 - y2
    res = resultant(f, g, "s")
    if res.is_zero():
        return INFINITY
    return res.order()


@dataclass(frozen=True)
class GermSignature:
    """Classification data of a planar germ.

    branch_types are normalized labels, contacts is the sorted multiset of
    pairwise intersection multiplicities, delta the total delta-invariant.
    The Milnor number mu = 2 delta - r + 1 when delta is finite.
    """

    branch_types: tuple[str, ...]
    contacts: tuple
    delta: int | None
    milnor: int | None

    @property
    def branch_count(self) -> int:
        return len(self.branch_types)


def germ_signature(branches: Sequence[PlanarBranch]) -> GermSignature:
    if not branches:
        raise ValueError("a germ needs at least one branch")
    types: list[str] = []
    deltas: list[int] = []
    unknown = False
    for b in branches:
        try:
            label, _orders, delta = b.branch_type()
        except UnclassifiedGermError as err:
            types.append(err.signature.branch_types[0])
            deltas.append(0)
            unknown = True
            continue
        types.append(label)
        deltas.append(delta)
    contacts = []
    infinite = False
    n = len(branches)
    for i in range(n):
        for j in range(i + 1, n):
            c = intersection_multiplicity(branches[i], branches[j])
            contacts.append(c)
            if c is INFINITY:
                infinite = True
    contacts_sorted = tuple(
        sorted(contacts, key=lambda c: (c is INFINITY, c if c is not INFINITY else 0))
    )
    if unknown or infinite:
        return GermSignature(tuple(types), contacts_sorted, None, None)
    delta = sum(deltas) + sum(contacts)
    milnor = 2 * delta - n + 1
    return GermSignature(tuple(types), contacts_sorted, delta, milnor)


def classify_germ(branches: Sequence[PlanarBranch]) -> SingularityType:
    """Match a planar germ against the ADE / ordinary-m-fold catalog.

    Raises UnclassifiedGermError (carrying the signature) outside the
    catalog; the Milnor number of the returned type always equals
    2 delta - r + 1 of the signature.
    """
    sig = germ_signature(branches)
    if sig.delta is None:
        raise UnclassifiedGermError(
            f"germ signature {sig} has unknown branches or infinite contact", sig
        )
    types = sig.branch_types
    contacts = sig.contacts
    r = sig.branch_count

    def fail() -> SingularityType:
        raise UnclassifiedGermError(f"germ signature {sig} matches no catalog type", sig)

    if r == 1:
        t = types[0]
        if t.startswith("cusp(2,"):
            b = int(t[len("cusp(2,"):-1])
            return SingularityType.ade("A", b - 1)
        if t == "cusp(3,4)":
            return SingularityType.ade("E", 6)
        return fail()

    smooth = [t == "smooth" for t in types]
    cusps23 = [t == "cusp(2,3)" for t in types]
    if r == 2:
        c = contacts[0]
        if all(smooth):
            return SingularityType.ade("A", 2 * c - 1)
        if sum(cusps23) == 1 and sum(smooth) == 1:
            if c == 2:
                return SingularityType.ade("D", 5)
            if c == 3:
                return SingularityType.ade("E", 7)
            return fail()
        return fail()

    if not all(smooth):
        return fail()
    if r == 3:
        if contacts == (1, 1, 1):
            return SingularityType.ade("D", 4)
        if contacts == (1, 1, 2):
            return SingularityType.ade("D", 6)
        return fail()
    if all(c == 1 for c in contacts):
        return SingularityType.planar_m_fold(r)
    return fail()
