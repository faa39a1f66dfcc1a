"""Smoothability of boundary maps: generic criteria and per-family deciders.

A map in a boundary family lies in the closure of the main component exactly
when it factors through a map from a curve with one of the genus-2 (or
genus-1) Gorenstein singularities replacing the contracted subcurve.  The
criteria split into a handful of exact linear-algebra / incidence predicates
(tangent-span bounds, section-descent codimension, a cross-ratio match) plus
a per-family case analysis at (r, d) = (2, 4).  `decide` runs the case
analysis for one instance and reports a verdict with a full predicate trace;
`intersection_catalog` is the golden table of intersection dimensions that
the deciders' witnesses must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .components import (
    BrE,
    ComponentFamily,
    D,
    E,
    EE,
    HypD,
    Main,
    is_degenerate_bridge,
    reduction_target,
)
from .hyperelliptic import (
    CurvePoint,
    HyperellipticCurve,
    are_conjugate,
    hyperelliptic_image,
    is_weierstrass,
)
from .linalg import span_dimension
from .polynomials import Polynomial, _coerce
from .projective import (
    Conic2,
    DegenerateConfiguration,
    IncidenceError,
    ProjLine2,
    ProjPoint,
    cross_ratio,
    line_intersection,
    line_tangent_to_conic,
    pencil_coordinate,
    tangency_point,
)
from .singularities import (
    PlanarBranch,
    SingularityType,
    UnclassifiedGermError,
    classify_germ,
)


class InstanceValidationError(ValueError):
    """The instance payload does not fit its family."""


# --------------------------------------------------------------------------
# generic criteria
# --------------------------------------------------------------------------


def _direction_vector(d) -> tuple[Fraction, Fraction]:
    if isinstance(d, ProjPoint):
        if d.dim != 1:
            raise ValueError("pencil directions must be points of P^1")
        return d.vector()
    a, b = d
    return (_coerce(a), _coerce(b))


@dataclass(frozen=True)
class TangentConfiguration:
    """Directions of tails in the 2-dimensional tangent space at a point.

    Each direction is a pencil representative (a pair of rationals); the
    zero pair encodes a tail whose differential vanishes at the attaching
    point (a ramified cover).  An optional distinguished line through the
    base supports the hyperelliptic descent mode.
    """

    base: ProjPoint
    directions: tuple[tuple[Fraction, Fraction], ...]
    line: ProjLine2 | None = None

    def __init__(self, base: ProjPoint, directions: Iterable, line: ProjLine2 | None = None):
        object.__setattr__(self, "base", base)
        object.__setattr__(
            self, "directions", tuple(_direction_vector(d) for d in directions)
        )
        object.__setattr__(self, "line", line)

    @classmethod
    def from_lines(
        cls, base: ProjPoint, lines: Iterable[ProjLine2], line: ProjLine2 | None = None
    ) -> "TangentConfiguration":
        return cls(base, [pencil_coordinate(base, l) for l in lines], line)


def genus1_tails_condition(tc: TangentConfiguration, k: int) -> bool:
    """Tangent-span criterion for a contracted genus-1 subcurve with k tails:
    the tail directions must span dimension at most k - 1."""
    if k < 1 or len(tc.directions) != k:
        raise ValueError(f"need exactly k = {k} >= 1 directions")
    return span_dimension(tc.directions) <= k - 1


def unobstructed_isolated(genus1_degrees: Iterable[int], genus2_degrees: Iterable[int]) -> bool:
    """Obstructions vanish when the map has positive degree on every genus-1
    subcurve and degree at least three on every genus-2 subcurve."""
    return all(d >= 1 for d in genus1_degrees) and all(d >= 3 for d in genus2_degrees)


def ribbon_descent_condition(tc: TangentConfiguration, k: int, mode: str) -> bool:
    """Span criterion for sections to descend to a ribbon.

    contracted: the k tail directions span dimension at most k - 2.
    hyperelliptic: after projecting the tangent space away from the
    distinguished line's direction, the images span at most k - 1.  (The
    quotient is a line, so only k = 1 bites: the single tail must be
    tangent to — or ramified over — the distinguished line.)
    """
    if mode == "contracted":
        if k < 2:
            return False
        return span_dimension(tc.directions) <= k - 2
    if mode == "hyperelliptic":
        if tc.line is None:
            raise ValueError("hyperelliptic mode needs the distinguished line")
        lv = pencil_coordinate(tc.base, tc.line).vector()
        images = [(lv[0] * v[1] - lv[1] * v[0],) for v in tc.directions]
        return span_dimension(images) <= k - 1
    raise ValueError(f"unknown mode {mode!r}")


def section_descent_codim(k: int, directions: Sequence) -> int:
    """Codimension, inside the k-dimensional space of sections vanishing on
    the core (one per tail), of the subspace that descends to the image
    configuration: k minus the rank of the direction representatives."""
    if k < 1:
        raise ValueError("need at least one tail")
    vecs = [_direction_vector(d) for d in directions]
    if len(vecs) != k:
        raise ValueError(f"need exactly k = {k} directions")
    return k - span_dimension(vecs)


def _pencil_points_of_lines(lines: Sequence[ProjLine2]) -> tuple[ProjPoint, list[ProjPoint]]:
    distinct = []
    for l in lines:
        if l not in distinct:
            distinct.append(l)
    if len(distinct) < 2:
        raise DegenerateConfiguration("need two distinct lines to locate the pencil")
    base = line_intersection(distinct[0], distinct[1])
    return base, [pencil_coordinate(base, l) for l in lines]


def cross_ratio_match(
    lines: Sequence[ProjLine2],
    curve: HyperellipticCurve,
    attach: Sequence[CurvePoint],
) -> bool:
    """Whether the cross-ratio of four concurrent lines equals that of the
    four attaching points after the degree-2 map to the line, matched in
    label order (lines[i] with attach[i])."""
    if len(lines) != 4 or len(attach) != 4:
        raise ValueError("need exactly four labeled lines and four attach points")
    if len(set(lines)) != 4:
        raise DegenerateConfiguration("the four lines must be pairwise distinct")
    _, pencil = _pencil_points_of_lines(lines)
    images = [hyperelliptic_image(p) for p in attach]
    if len(set(images)) != 4:
        raise DegenerateConfiguration(
            "attach points share a fiber of the degree-2 map"
        )
    for p in attach:
        if p.curve != curve:
            raise ValueError("attach points must lie on the given curve")
    return cross_ratio(*pencil) == cross_ratio(*images)


def cross_ratio_permutation_sweep(
    lines: Sequence[ProjLine2],
    curve: HyperellipticCurve,
    attach: Sequence[CurvePoint],
) -> list[tuple[tuple[int, ...], bool]]:
    """Diagnostic: the fixed-bijection match under every relabeling of the
    lines against the fixed attach order."""
    out = []
    for perm in permutations(range(4)):
        permuted = [lines[i] for i in perm]
        out.append((perm, cross_ratio_match(permuted, curve, attach)))
    return out


# --------------------------------------------------------------------------
# instances
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoveredLine:
    """A line doubly covered by some component, with the branch points of
    the cover (2 for a rational cover, 4 for an elliptic one)."""

    line: ProjLine2
    branch_points: tuple[ProjPoint, ...]

    def __init__(self, line: ProjLine2, branch_points: Iterable[ProjPoint]):
        pts = tuple(branch_points)
        if len(set(pts)) != len(pts):
            raise InstanceValidationError("branch points must be distinct")
        for p in pts:
            if not line.contains(p):
                raise InstanceValidationError(f"branch point {p} is off the line")
        object.__setattr__(self, "line", line)
        object.__setattr__(self, "branch_points", pts)


@dataclass(frozen=True)
class AttachPoint:
    """A tail's attaching point on the genus-2 core: an explicit curve
    point, a genericity flag, or both (cross-checked)."""

    label: str
    point: CurvePoint | None = None
    generic: bool = False


@dataclass(frozen=True)
class ImageData:
    """Per-family geometric payload; only the fields a family's rules read
    need to be present."""

    germs: tuple[tuple[str, tuple[PlanarBranch, ...]], ...] | None = None
    base: ProjPoint | None = None
    lines: tuple[tuple[str, ProjLine2], ...] | None = None
    conic: Conic2 | None = None
    covered_line: CoveredLine | None = None
    cubic: Polynomial | None = None
    e1_point: ProjPoint | None = None
    e2_point: ProjPoint | None = None
    core_line: ProjLine2 | None = None

    def line_for(self, label: str) -> ProjLine2 | None:
        for lab, l in self.lines or ():
            if lab == label:
                return l
        return None


@dataclass(frozen=True)
class SmoothabilityInstance:
    family: ComponentFamily
    curve: HyperellipticCurve | None = None
    attach: tuple[AttachPoint, ...] = ()
    image: ImageData = field(default_factory=ImageData)


SMOOTHABLE = "smoothable"
NOT_SMOOTHABLE = "not-smoothable"
CONTAINED_IN_MAIN = "contained-in-main"
REDUCES_TO = "reduces-to"


@dataclass(frozen=True)
class Verdict:
    outcome: str
    trace: tuple[tuple[str, object], ...]
    witness: SingularityType | None = None
    condition: str | None = None
    failed: str | None = None
    reduces_to: ComponentFamily | None = None


# ---- ternary forms (for the cubic payload) -------------------------------


def form_exponents(degree: int) -> list[tuple[int, int, int]]:
    """Monomial exponents of a ternary form, x-major lexicographic order."""
    return [
        (i, j, degree - i - j)
        for i in range(degree, -1, -1)
        for j in range(degree - i, -1, -1)
    ]


def ternary_form(degree: int, coeffs: Sequence) -> Polynomial:
    exps = form_exponents(degree)
    if len(coeffs) != len(exps):
        raise ValueError(f"a degree-{degree} form takes {len(exps)} coefficients")
    result = Polynomial.zero(("x", "y", "z"))
    x = Polynomial.variable("x", ("x", "y", "z"))
    y = Polynomial.variable("y", ("x", "y", "z"))
    z = Polynomial.variable("z", ("x", "y", "z"))
    for c, (i, j, k) in zip(coeffs, exps):
        result = result + Polynomial.constant(_coerce(c), ("x", "y", "z")) * x**i * y**j * z**k
    return result


def evaluate_form(form: Polynomial, p: ProjPoint) -> Fraction:
    px, py, pz = p.vector()
    return form.evaluate({"x": px, "y": py, "z": pz})


def contact_order_on_line(form: Polynomial, point: ProjPoint, line: ProjLine2):
    """Vanishing order of the form along the line at the point (INFINITY if
    the line is a component of the form's zero locus)."""
    if not line.contains(point):
        raise IncidenceError("the point is not on the line")
    candidates = []
    l = line.coeffs
    for i in range(3):
        e = [Fraction(0)] * 3
        e[i] = Fraction(1)
        v = (
            l[1] * e[2] - l[2] * e[1],
            l[2] * e[0] - l[0] * e[2],
            l[0] * e[1] - l[1] * e[0],
        )
        if any(c != 0 for c in v):
            candidates.append(v)
    other = next(v for v in candidates if ProjPoint(v) != point)
    t = Polynomial.variable("t", ("t",))
    px, py, pz = point.vector()
    assignment = {
        var: Polynomial.constant(pc, ("t",)) + Polynomial.constant(oc, ("t",)) * t
        for var, pc, oc in zip(("x", "y", "z"), (px, py, pz), other)
    }
    return form.evaluate(assignment).order()


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------


def _tail_labels(family: ComponentFamily) -> tuple[str, ...]:
    if isinstance(family, (D, HypD)):
        k = len(family.mu)
    elif isinstance(family, (E, BrE)):
        k = len(family.mu)
    elif isinstance(family, EE):
        k = len(family.mu1) + len(family.mu2)
    else:
        k = 0
    return tuple(f"T{i}" for i in range(1, k + 1))


def _require(cond: bool, message: str):
    if not cond:
        raise InstanceValidationError(message)


def _check_attach(inst: SmoothabilityInstance):
    labels = _tail_labels(inst.family)
    _require(
        tuple(a.label for a in inst.attach) == labels,
        f"attach labels must be {list(labels)} in order",
    )
    supplied = []
    for a in inst.attach:
        _require(a.point is not None or a.generic, f"attach {a.label}: give a point or mark it generic")
        if a.point is not None:
            _require(a.point.curve == inst.curve, f"attach {a.label}: point is not on the core curve")
            supplied.append(a)
    for a in supplied:
        if a.generic and is_weierstrass(a.point):
            raise InstanceValidationError(
                f"attach {a.label}: marked generic but the point is Weierstrass"
            )
    for i, a in enumerate(supplied):
        for b in supplied[i + 1:]:
            if a.point == b.point:
                raise InstanceValidationError(
                    f"attach {a.label},{b.label}: same point used twice"
                )
            if (a.generic or b.generic) and are_conjugate(a.point, b.point):
                raise InstanceValidationError(
                    f"attach {a.label},{b.label}: marked generic but the points are conjugate"
                )


def _check_lines_through(img: ImageData, labels: Iterable[str], point: ProjPoint, what: str):
    for lab in labels:
        l = img.line_for(lab)
        _require(l is not None, f"missing line for tail {lab}")
        _require(l.contains(point), f"line for {lab} must pass through the {what}")


def validate_instance(inst: SmoothabilityInstance) -> None:
    """Check the payload against the family shape; raises
    InstanceValidationError with a plain-language message."""
    fam = inst.family
    if isinstance(fam, Main):
        raise InstanceValidationError("the main family has no boundary decision")
    if fam.total_degree(4) != 4:
        raise InstanceValidationError(
            f"family {fam.spec_string()} has total degree {fam.total_degree(4)}, not 4"
        )
    img = inst.image

    if isinstance(fam, D):
        _require(inst.curve is not None, "D families need the genus-2 core curve")
        _check_attach(inst)
        if fam.mu == (4,) or fam.mu == (3, 1):
            _require(img.germs is not None, "this family's rules read image germs")
        elif fam.mu == (2, 2):
            _require(
                img.germs is not None or (img.covered_line is not None and img.conic is not None),
                "give image germs, or a doubly covered line plus a conic",
            )
            if img.conic is not None:
                _require(img.conic.is_nondegenerate(), "the conic must be nondegenerate")
        elif fam.mu == (2, 1, 1):
            _require(img.base is not None, "need the concurrency point")
            _require(
                img.conic is not None or img.covered_line is not None,
                "need the degree-2 tail's image (conic or doubly covered line)",
            )
            _check_lines_through(img, ("T2", "T3"), img.base, "concurrency point")
            if img.conic is not None:
                _require(img.conic.is_nondegenerate(), "the conic must be nondegenerate")
                _require(img.conic.contains(img.base), "the conic must pass through the concurrency point")
            if img.covered_line is not None:
                _require(
                    img.covered_line.line.contains(img.base),
                    "the doubly covered line must pass through the concurrency point",
                )
        elif fam.mu == (1, 1, 1, 1):
            for a in inst.attach:
                _require(a.point is not None, f"attach {a.label}: the cross-ratio test needs explicit points")
            images = [hyperelliptic_image(a.point) for a in inst.attach]
            _require(
                len(set(images)) == 4,
                "attach points must have pairwise distinct images under the degree-2 map",
            )
            base = img.base
            lines = [img.line_for(lab) for lab in ("T1", "T2", "T3", "T4")]
            _require(all(l is not None for l in lines), "need one line per tail")
            if base is None:
                distinct = []
                for l in lines:
                    if l not in distinct:
                        distinct.append(l)
                _require(len(distinct) >= 2, "with coincident lines, supply the base point")
                base = line_intersection(distinct[0], distinct[1])
            for lab, l in zip(("T1", "T2", "T3", "T4"), lines):
                _require(l.contains(base), f"line for {lab} must pass through the base point")
        return

    if isinstance(fam, HypD):
        _require(img.core_line is not None, "need the line doubly covered by the core")
        if inst.curve is not None:
            _check_attach(inst)
        if fam.mu == (2,):
            _require(img.base is not None, "need the attaching node's image")
            _require(img.core_line.contains(img.base), "the node must lie on the covered line")
            _require(
                img.covered_line is not None or img.conic is not None,
                "need the tail's image (doubly covered line or conic)",
            )
            if img.covered_line is not None:
                _require(
                    img.covered_line.line.contains(img.base),
                    "the tail's line must pass through the node",
                )
            if img.conic is not None:
                _require(img.conic.is_nondegenerate(), "the conic must be nondegenerate")
                _require(img.conic.contains(img.base), "the conic must pass through the node")
        return

    _require(inst.curve is None, "only D and hypD families carry the genus-2 core")
    _require(inst.attach == (), "attach points only apply to a genus-2 core")

    if isinstance(fam, E):
        if fam == E(4):
            _require(img.germs is not None, "this family's rules read image germs")
        elif fam == E(3, (1,)):
            _require(img.cubic is not None, "need the cubic image of the degree-3 curve")
            _require(img.e2_point is not None, "need the contracted curve's image point")
            line = img.line_for("T1")
            _require(line is not None, "need the tail's image line")
            _require(line.contains(img.e2_point), "the line must pass through the contracted point")
            _require(
                evaluate_form(img.cubic, img.e2_point) == 0,
                "the contracted point must lie on the cubic",
            )
        elif fam == E(2, (2,)):
            _require(img.covered_line is not None, "need the line doubly covered by the positive-degree curve")
            _require(len(img.covered_line.branch_points) == 4, "an elliptic double cover has four branch points")
            _require(img.conic is not None and img.conic.is_nondegenerate(), "need the tail's conic")
            _require(img.e2_point is not None, "need the contracted curve's image point")
            _require(img.covered_line.line.contains(img.e2_point), "the contracted point lies on the covered line")
            _require(img.conic.contains(img.e2_point), "the conic must pass through the contracted point")
        else:  # E(2, (1,1)) — contained in main
            if img.e2_point is not None and img.lines is not None:
                _check_lines_through(img, [lab for lab, _ in img.lines], img.e2_point, "contracted point")
        return

    if isinstance(fam, EE):
        if is_degenerate_bridge(fam):
            return
        if fam == EE((), 4, ()):
            _require(img.germs is not None, "this family's rules read image germs")
        elif fam == EE((), 3, (1,)):
            _require(img.germs is not None, "this family's rules read image germs")
        elif fam == EE((), 2, (2,)):
            _require(img.covered_line is not None, "need the bridge's doubly covered line")
            _require(len(img.covered_line.branch_points) == 2, "a rational double cover has two branch points")
            _require(img.e1_point is not None and img.e2_point is not None, "need both contracted image points")
            _require(img.covered_line.line.contains(img.e1_point), "first contracted point lies on the line")
            _require(img.covered_line.line.contains(img.e2_point), "second contracted point lies on the line")
            _require(img.conic is not None and img.conic.is_nondegenerate(), "need the tail's conic")
            _require(img.conic.contains(img.e2_point), "the conic must pass through its attaching image")
        elif fam == EE((), 2, (1, 1)):
            _require(img.covered_line is not None, "need the bridge's doubly covered line")
            _require(len(img.covered_line.branch_points) == 2, "a rational double cover has two branch points")
            _require(img.e1_point is not None and img.e2_point is not None, "need both contracted image points")
            _require(img.covered_line.line.contains(img.e1_point), "first contracted point lies on the line")
            _require(img.covered_line.line.contains(img.e2_point), "second contracted point lies on the line")
            _check_lines_through(img, ("T1", "T2"), img.e2_point, "contracted point")
        elif fam == EE((1,), 2, (1,)):
            _require(img.covered_line is not None, "need the bridge's doubly covered line")
            _require(len(img.covered_line.branch_points) == 2, "a rational double cover has two branch points")
            _require(img.e1_point is not None and img.e2_point is not None, "need both contracted image points")
            _require(img.covered_line.line.contains(img.e1_point), "first contracted point lies on the line")
            _require(img.covered_line.line.contains(img.e2_point), "second contracted point lies on the line")
            _require(img.e1_point != img.e2_point, "the two contracted points must differ")
            for lab, pt in (("T1", img.e1_point), ("T2", img.e2_point)):
                l = img.line_for(lab)
                _require(l is not None, f"missing line for tail {lab}")
                _require(l.contains(pt), f"line for {lab} must pass through its attaching image")
        return

    if isinstance(fam, BrE):
        if is_degenerate_bridge(fam):
            return
        if fam == BrE(4):
            _require(img.germs is not None, "this family's rules read image germs")
        # BrE(3,(1)), BrE(2,(2)), BrE(2,(1,1)) are contained in main; nothing to read.
        return

    raise InstanceValidationError(f"unsupported family {fam!r}")


# --------------------------------------------------------------------------
# decision machinery
# --------------------------------------------------------------------------


class _Trace:
    def __init__(self):
        self.entries: list[tuple[str, object]] = []

    def record(self, name: str, result):
        self.entries.append((name, result))
        return result

    def first_failure(self) -> str | None:
        for name, result in self.entries:
            if result is False or (isinstance(result, str) and result.startswith("error:")):
                return name
        return None


_PREDICATE_ERRORS = (DegenerateConfiguration, IncidenceError, UnclassifiedGermError)


def _evaluate_cases(tr: _Trace, cases):
    """cases: [(condition name, witness, [(predicate name, thunk), ...])].
    Returns (condition, witness) of the first case whose predicates all
    hold; predicates short-circuit and errors are recorded, not raised."""
    for condition, witness, predicates in cases:
        ok = True
        for name, thunk in predicates:
            try:
                result = bool(thunk())
            except _PREDICATE_ERRORS as exc:
                tr.record(name, f"error:{type(exc).__name__}")
                ok = False
                break
            tr.record(name, result)
            if not result:
                ok = False
                break
        if ok:
            return condition, witness
    return None


def _classified_germ_labels(inst: SmoothabilityInstance, tr: _Trace) -> list[str] | None:
    labels = []
    for name, branches in inst.image.germs or ():
        try:
            sing = classify_germ(branches)
        except UnclassifiedGermError:
            tr.record(f"classify-germ[{name}]", "error:UnclassifiedGermError")
            return None
        tr.record(f"classify-germ[{name}]", sing.label)
        labels.append(sing.label)
    return sorted(labels)


def _attach_entry(inst: SmoothabilityInstance, label: str) -> AttachPoint:
    for a in inst.attach:
        if a.label == label:
            return a
    raise InstanceValidationError(f"no attach entry {label}")


def _attach_is_generic(inst: SmoothabilityInstance, label: str) -> bool:
    a = _attach_entry(inst, label)
    if a.generic:
        return True
    if a.point is None:
        return False
    if is_weierstrass(a.point):
        return False
    for b in inst.attach:
        if b.label != label and b.point is not None and are_conjugate(a.point, b.point):
            return False
    return True


def _all_attach_generic(inst: SmoothabilityInstance) -> bool:
    return all(_attach_is_generic(inst, a.label) for a in inst.attach)


def _attach_is_weierstrass(inst: SmoothabilityInstance, label: str) -> bool:
    a = _attach_entry(inst, label)
    return a.point is not None and is_weierstrass(a.point)


def _conjugate_attach_pair(inst: SmoothabilityInstance) -> tuple[str, str] | None:
    pts = [a for a in inst.attach if a.point is not None]
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if are_conjugate(a.point, b.point):
                return a.label, b.label
    return None


# witnesses used by the (2,4) rules
_A4 = SingularityType.ade("A", 4)
_A5 = SingularityType.ade("A", 5)
_D5 = SingularityType.ade("D", 5)
_II3 = SingularityType.genus_two("II", 3)
_II4 = SingularityType.genus_two("II", 4)
_EM1 = SingularityType.elliptic_m_fold(1)
_EM2 = SingularityType.elliptic_m_fold(2)
_RIBBON_1 = SingularityType.tailed_ribbon(1, (1,))
_RIBBON_3 = SingularityType.tailed_ribbon(3, (1, 1, 1))
_RIBBON_4 = SingularityType.tailed_ribbon(4, (1, 1, 1, 1))


def _smoothable(tr, condition, witness):
    return Verdict(SMOOTHABLE, tuple(tr.entries), witness=witness, condition=condition)


def _not_smoothable(tr):
    return Verdict(NOT_SMOOTHABLE, tuple(tr.entries), failed=tr.first_failure())


def _finish(tr, hit):
    if hit is None:
        return _not_smoothable(tr)
    condition, witness = hit
    return _smoothable(tr, condition, witness)


def _rule_D4(inst, tr):
    types = _classified_germ_labels(inst, tr)
    if types is None:
        return _not_smoothable(tr)
    cases = [
        (
            "generic-attach+E6-image",
            _A5,
            [
                ("attach-generic[T1]", lambda: _attach_is_generic(inst, "T1")),
                ("image-has-E6", lambda: "E6" in types),
            ],
        ),
        (
            "weierstrass-attach+A4A1-image",
            _A4,
            [
                ("attach-weierstrass[T1]", lambda: _attach_is_weierstrass(inst, "T1")),
                ("image-has-A4", lambda: "A4" in types),
                ("image-has-A1", lambda: "A1" in types),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_D31(inst, tr):
    types = _classified_germ_labels(inst, tr)
    if types is None:
        return _not_smoothable(tr)
    pair = _conjugate_attach_pair(inst)
    cases = [
        (
            "generic-attach+E7-image",
            _II3,
            [
                ("attach-generic[all]", lambda: _all_attach_generic(inst)),
                ("image-has-E7", lambda: "E7" in types),
            ],
        ),
        (
            "weierstrass-T1+D5-image",
            _D5,
            [
                ("attach-weierstrass[T1]", lambda: _attach_is_weierstrass(inst, "T1")),
                ("image-has-D5", lambda: "D5" in types),
            ],
        ),
        (
            "conjugate-attach+A1A5-image",
            _A5,
            [
                ("attach-conjugate-pair", lambda: pair is not None),
                ("image-has-A1", lambda: "A1" in types),
                ("image-has-A5", lambda: "A5" in types),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_D22(inst, tr):
    img = inst.image
    types = _classified_germ_labels(inst, tr)
    if types is None:
        return _not_smoothable(tr)
    pair = _conjugate_attach_pair(inst)

    def tangent_at_branch_point():
        line = img.covered_line.line
        conic = img.conic
        if not line_tangent_to_conic(line, conic):
            return False
        return tangency_point(line, conic) in img.covered_line.branch_points

    cases = [
        (
            "conjugate-attach+A1A5-image",
            _A5,
            [
                ("attach-conjugate-pair", lambda: pair is not None),
                ("image-has-A1", lambda: "A1" in types),
                ("image-has-A5", lambda: "A5" in types),
            ],
        ),
        (
            "conic-tangent-at-branch-point",
            _II3,
            [
                ("attach-generic[all]", lambda: _all_attach_generic(inst)),
                (
                    "covered-line+conic-data",
                    lambda: img.covered_line is not None and img.conic is not None,
                ),
                ("conic-tangent-at-branch-point", tangent_at_branch_point),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_D211(inst, tr):
    img = inst.image
    base = img.base
    conj = _conjugate_attach_pair(inst)
    conj_line_label = None
    if conj is not None and "T1" in conj:
        conj_line_label = conj[0] if conj[1] == "T1" else conj[1]

    def tangent_line_at_base():
        l = img.line_for(conj_line_label)
        if not line_tangent_to_conic(l, img.conic):
            return False
        return tangency_point(l, img.conic) == base

    def ribbon_descent():
        tc = TangentConfiguration(
            base,
            [
                pencil_coordinate(base, img.conic.tangent_line_at(base)),
                pencil_coordinate(base, img.line_for("T2")),
                pencil_coordinate(base, img.line_for("T3")),
            ],
        )
        return ribbon_descent_condition(tc, 3, "contracted")

    cases = [
        (
            "conjugate-pair+line-tangent-at-base",
            _II3,
            [
                ("attach-conjugate-with-T1", lambda: conj_line_label is not None),
                ("conic-data", lambda: img.conic is not None),
                ("conjugate-line-tangent-at-base", tangent_line_at_base),
            ],
        ),
        (
            "double-line-ramified-over-base",
            _II4,
            [
                ("attach-generic[all]", lambda: _all_attach_generic(inst)),
                ("covered-line-data", lambda: img.covered_line is not None),
                ("base-is-branch-point", lambda: base in img.covered_line.branch_points),
            ],
        ),
        (
            "contracted-ribbon-descent",
            _RIBBON_3,
            [
                ("attach-generic[all]", lambda: _all_attach_generic(inst)),
                ("conic-data", lambda: img.conic is not None),
                ("ribbon-descent-contracted", ribbon_descent),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_D1111(inst, tr):
    img = inst.image
    labels = ("T1", "T2", "T3", "T4")
    lines = [img.line_for(lab) for lab in labels]
    base = img.base
    if base is None:
        base, _ = _pencil_points_of_lines(lines)
    points = [_attach_entry(inst, lab).point for lab in labels]

    def codim_two():
        dirs = [pencil_coordinate(base, l) for l in lines]
        return section_descent_codim(4, dirs) == 2

    cases = [
        (
            "ribbon-with-matching-cross-ratio",
            _RIBBON_4,
            [
                ("section-descent-codim-2", codim_two),
                ("cross-ratio-match", lambda: cross_ratio_match(lines, inst.curve, points)),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_E4(inst, tr):
    types = _classified_germ_labels(inst, tr)
    if types is None:
        return _not_smoothable(tr)
    cases = [
        (
            "cuspidal-image",
            _EM1,
            [
                ("image-has-A2", lambda: "A2" in types),
                ("image-has-A1", lambda: "A1" in types),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_E31(inst, tr):
    img = inst.image

    def tangent():
        order = contact_order_on_line(img.cubic, img.e2_point, img.line_for("T1"))
        return order is not None and (not isinstance(order, int) or order >= 2)

    cases = [
        (
            "line-tangent-to-cubic",
            _EM2,
            [("line-cubic-contact>=2", tangent)],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_E22(inst, tr):
    img = inst.image
    cases = [
        (
            "line-tangent-to-conic",
            _EM2,
            [
                (
                    "line-tangent-to-conic",
                    lambda: line_tangent_to_conic(img.covered_line.line, img.conic),
                ),
            ],
        ),
        (
            "conic-through-branch-point",
            _EM1,
            [
                (
                    "contracted-point-is-branch-point",
                    lambda: img.e2_point in img.covered_line.branch_points,
                ),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_EE_4(inst, tr):
    types = _classified_germ_labels(inst, tr)
    if types is None:
        return _not_smoothable(tr)
    cases = [
        (
            "two-cusps-image",
            _EM1,
            [("image-type-A1A2A2", lambda: types == ["A1", "A2", "A2"])],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_EE_31(inst, tr):
    types = _classified_germ_labels(inst, tr)
    if types is None:
        return _not_smoothable(tr)
    cases = [
        (
            "cuspidal-cubic-with-tangent-line",
            _EM2,
            [("image-type-A1A2A3", lambda: types == ["A1", "A2", "A3"])],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_EE_22(inst, tr):
    img = inst.image

    def other_branch_point():
        return next(
            p for p in img.covered_line.branch_points if p != img.e1_point
        )

    e1_ram = ("e1-at-ramification", lambda: img.e1_point in img.covered_line.branch_points)
    cases = [
        (
            "tacnode-conic-tangent",
            _EM2,
            [
                e1_ram,
                (
                    "conic-tangent-to-line",
                    lambda: line_tangent_to_conic(img.covered_line.line, img.conic),
                ),
            ],
        ),
        (
            "conic-through-second-ramification",
            _EM1,
            [
                e1_ram,
                (
                    "conic-through-other-branch-point",
                    lambda: img.conic.contains(other_branch_point()),
                ),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_EE_211(inst, tr):
    img = inst.image
    cases = [
        (
            "e1-at-ramification",
            _EM1,
            [
                (
                    "e1-at-branch-point",
                    lambda: img.e1_point in img.covered_line.branch_points,
                ),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_EE_121(inst, tr):
    img = inst.image
    L = img.covered_line.line
    bp = img.covered_line.branch_points
    l1 = img.line_for("T1")
    l2 = img.line_for("T2")
    cases = [
        (
            "both-lines-equal-covered-line",
            _EM2,
            [
                ("line[T1]-equals-covered-line", lambda: l1 == L),
                ("line[T2]-equals-covered-line", lambda: l2 == L),
            ],
        ),
        (
            "one-line-equal-other-at-branch-point",
            _EM2,
            [
                (
                    "mixed-equal-line-and-branch-point",
                    lambda: (l1 == L and img.e2_point in bp)
                    or (l2 == L and img.e1_point in bp),
                ),
            ],
        ),
        (
            "both-lines-at-branch-points",
            _EM1,
            [
                ("e1-at-branch-point", lambda: img.e1_point in bp),
                ("e2-at-branch-point", lambda: img.e2_point in bp),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_BrE4(inst, tr):
    types = _classified_germ_labels(inst, tr)
    if types is None:
        return _not_smoothable(tr)
    cases = [
        (
            "tacnodal-image",
            _EM2,
            [
                ("image-has-A3", lambda: "A3" in types),
                ("image-has-A1", lambda: "A1" in types),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _rule_HypD2(inst, tr):
    img = inst.image

    def descent():
        covered = img.covered_line
        if covered is not None and img.base in covered.branch_points:
            direction = (Fraction(0), Fraction(0))  # ramified: the differential dies
        elif covered is not None:
            direction = pencil_coordinate(img.base, covered.line)
        else:
            direction = pencil_coordinate(img.base, img.conic.tangent_line_at(img.base))
        tc = TangentConfiguration(img.base, [direction], line=img.core_line)
        return ribbon_descent_condition(tc, 1, "hyperelliptic")

    cases = [
        (
            "tail-doubly-covers-line-ramified-at-node",
            _RIBBON_1,
            [
                ("tail-doubly-covers-line", lambda: img.covered_line is not None),
                ("node-is-branch-point", lambda: img.base in img.covered_line.branch_points),
                ("ribbon-descent-hyperelliptic", descent),
            ],
        ),
    ]
    return _finish(tr, _evaluate_cases(tr, cases))


def _contained(tr):
    tr.record("contained-in-main", True)
    return Verdict(CONTAINED_IN_MAIN, tuple(tr.entries))


def decide(inst: SmoothabilityInstance) -> Verdict:
    """Run the (2,4) case analysis for one instance.

    The verdict's trace lists every predicate evaluated, in order, with its
    result; errors raised by geometric predicates (degenerate configurations,
    unclassifiable germs) are recorded in the trace and fail the case rather
    than propagating.
    """
    validate_instance(inst)
    fam = inst.family
    tr = _Trace()

    if is_degenerate_bridge(fam):
        tr.record("degree-one-bridge", True)
        target = reduction_target(fam)
        return Verdict(REDUCES_TO, tuple(tr.entries), reduces_to=target)

    if isinstance(fam, D):
        rule = {
            (4,): _rule_D4,
            (3, 1): _rule_D31,
            (2, 2): _rule_D22,
            (2, 1, 1): _rule_D211,
            (1, 1, 1, 1): _rule_D1111,
        }[fam.mu]
        return rule(inst, tr)
    if isinstance(fam, HypD):
        if fam.mu == (2,):
            return _rule_HypD2(inst, tr)
        return _contained(tr)  # hypD (1,1): the image fixes the ribbon
    if isinstance(fam, E):
        if fam == E(4):
            return _rule_E4(inst, tr)
        if fam == E(3, (1,)):
            return _rule_E31(inst, tr)
        if fam == E(2, (2,)):
            return _rule_E22(inst, tr)
        return _contained(tr)  # E(2,(1,1)): the image fixes the 3-fold point
    if isinstance(fam, EE):
        if fam == EE((), 4, ()):
            return _rule_EE_4(inst, tr)
        if fam == EE((), 3, (1,)):
            return _rule_EE_31(inst, tr)
        if fam == EE((), 2, (2,)):
            return _rule_EE_22(inst, tr)
        if fam == EE((), 2, (1, 1)):
            return _rule_EE_211(inst, tr)
        if fam == EE((1,), 2, (1,)):
            return _rule_EE_121(inst, tr)
    if isinstance(fam, BrE):
        if fam == BrE(4):
            return _rule_BrE4(inst, tr)
        return _contained(tr)  # brE with d0 in {2,3}: image determines the singularity
    raise InstanceValidationError(f"no rule for family {fam.spec_string()}")


# --------------------------------------------------------------------------
# golden intersection catalog
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionComponent:
    description: str
    dimension: int
    witness: SingularityType | None


@dataclass(frozen=True)
class IntersectionRecord:
    family: ComponentFamily
    family_dimension: int
    contained_in_main: bool
    components: tuple[IntersectionComponent, ...]


def _rec(family, fdim, *comps, contained=False):
    return IntersectionRecord(family, fdim, contained, tuple(
        IntersectionComponent(d, dim, w) for d, dim, w in comps
    ))


def intersection_catalog() -> tuple[IntersectionRecord, ...]:
    """The golden intersection-with-main table at (2,4): each boundary
    family's dimension and the dimensions of the components of its
    intersection with the main component, with the singularity witnessing
    factorization.  Degree-1-bridge families are omitted (they intersect
    inside the corresponding D family)."""
    return (
        _rec(D((4,)), 16,
             ("image with an E6 point, core contracted onto it", 12, _A5),
             ("image of type A1-A4, tail attached at a Weierstrass point", 12, _A4)),
        _rec(D((3, 1)), 15,
             ("image with an E7 point (cuspidal cubic with its tangent cone)", 12, _II3),
             ("image with a D5 point, degree-3 tail attached at a Weierstrass point", 12, _D5),
             ("image of type A1-A5 (nodal cubic with a flex line), conjugate attach points", 12, _A5)),
        _rec(D((2, 2)), 15,
             ("conics meeting with multiplicities one and three, conjugate attach points", 12, _A5),
             ("doubly covered line with a conic tangent at a branch point", 12, _II3)),
        _rec(D((2, 1, 1)), 14,
             ("line tangent to the conic at the concurrency point, conjugate attach pair", 12, _II3),
             ("three concurrent lines, one doubly covered and ramified over the base", 12, _II4),
             ("conic with a tangent line (the two degree-1 tails share their image)", 12, _RIBBON_3)),
        _rec(D((1, 1, 1, 1)), 13,
             ("four concurrent lines whose cross-ratio matches the attach points", 12, _RIBBON_4)),
        _rec(E(4), 14,
             ("cuspidal image, type A1-A2", 12, _EM1)),
        _rec(E(3, (1,)), 13,
             ("line tangent to the cubic", 12, _EM2)),
        _rec(E(2, (2,)), 13,
             ("line tangent to the conic", 12, _EM2),
             ("conic through a branch point of the double cover", 12, _EM1)),
        _rec(E(2, (1, 1)), 12, contained=True),
        _rec(EE((), 4, ()), 15,
             ("both contracted curves at cusps, image type A1-A2-A2", 11, _EM1)),
        _rec(EE((), 3, (1,)), 14,
             ("cuspidal cubic with a tangent line, image type A1-A2-A3", 11, _EM2)),
        _rec(EE((), 2, (2,)), 14,
             ("bridge doubly covers a line, conic tangent to it (tacnode)", 11, _EM2),
             ("bridge doubly covers a line, conic through the second ramification point", 11, _EM1)),
        _rec(EE((), 2, (1, 1)), 13,
             ("bridge doubly covers a line, first contracted curve at a ramification point", 11, _EM1)),
        _rec(EE((1,), 2, (1,)), 13,
             ("both tail lines equal to the doubly covered line", 10, _EM2),
             ("one tail line equal to it, the other through a branch point", 10, _EM2),
             ("both tail lines through branch points", 10, _EM1)),
        _rec(BrE(4), 13,
             ("tacnodal image, type A1-A3", 12, _EM2)),
        _rec(BrE(3, (1,)), 12, contained=True),
        _rec(BrE(2, (2,)), 12, contained=True),
        _rec(BrE(2, (1, 1)), 11, contained=True),
        _rec(HypD((2,)), 13,
             ("tail doubly covers a line ramified at the attaching node", 11, _RIBBON_1)),
        _rec(HypD((1, 1)), 12, contained=True),
    )


@dataclass(frozen=True)
class MarkedModuli:
    """A moduli space of genus-2 curves with k markings: the full space M,
    or the divisors W (one marking Weierstrass) / K (two markings conjugate)."""

    kind: str  # "M" | "W" | "K"
    k: int

    def __init__(self, kind: str, k: int):
        if kind not in ("M", "W", "K"):
            raise ValueError("kind must be M, W or K")
        if k < 0:
            raise ValueError("need k >= 0 markings")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "k", k)

    @property
    def dimension(self) -> int:
        return 3 + self.k if self.kind == "M" else 2 + self.k


def intersection_dimension_from_strata(stratum_dim: int, marked: MarkedModuli) -> int:
    """Dimension accounting: image-stratum dimension plus the dimension of
    the moduli of marked genus-2 curves being contracted there."""
    return stratum_dim + marked.dimension
