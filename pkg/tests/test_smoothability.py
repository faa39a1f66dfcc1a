"""Decision rules, generic criteria, and instance validation."""

from fractions import Fraction

import pytest

from g2maps.components import D, E, EE, HypD, Main
from g2maps.projective import DegenerateConfiguration, ProjLine2, ProjPoint, pencil_coordinate
from g2maps.smoothability import (
    CONTAINED_IN_MAIN,
    NOT_SMOOTHABLE,
    REDUCES_TO,
    SMOOTHABLE,
    AttachPoint,
    ImageData,
    InstanceValidationError,
    SmoothabilityInstance,
    TangentConfiguration,
    cross_ratio_match,
    cross_ratio_permutation_sweep,
    decide,
    genus1_tails_condition,
    ribbon_descent_condition,
    section_descent_codim,
    unobstructed_isolated,
    validate_instance,
)

from fixture_cases import (
    CASES,
    CURVE_6,
    CURVE_W,
    LINE_Y,
    ORIGIN,
    W0,
    W1,
    _points,
    _slope_lines,
)


# --------------------------------------------------------------------------
# every fixture case, checked field by field
# --------------------------------------------------------------------------


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.id)
def test_fixture_case(case):
    verdict = decide(case.instance)
    assert verdict.outcome == case.outcome
    if case.condition is not None:
        assert verdict.condition == case.condition
    if case.witness is not None:
        assert verdict.witness is not None
        assert verdict.witness.label == case.witness
    if case.failed is not None:
        assert verdict.failed == case.failed
    if case.trace_false is not None:
        assert any(
            name == case.trace_false and result is False
            for name, result in verdict.trace
        ), f"no failing entry {case.trace_false!r} in {verdict.trace}"
    if case.reduces_to is not None:
        assert verdict.reduces_to == case.reduces_to
    if case.outcome == SMOOTHABLE:
        assert verdict.failed is None
    if case.outcome == NOT_SMOOTHABLE:
        assert verdict.witness is None and verdict.condition is None


def test_case_roster_is_large_enough():
    decided = [c for c in CASES if c.outcome in (SMOOTHABLE, NOT_SMOOTHABLE)]
    assert len(decided) >= 30
    assert sum(1 for c in CASES if c.outcome == CONTAINED_IN_MAIN) >= 5
    assert sum(1 for c in CASES if c.outcome == REDUCES_TO) == 8


def test_error_recorded_in_trace_not_raised():
    case = next(c for c in CASES if c.id == "d1111-repeated-line")
    verdict = decide(case.instance)
    assert ("cross-ratio-match", "error:DegenerateConfiguration") in verdict.trace
    assert verdict.failed == "cross-ratio-match"


# --------------------------------------------------------------------------
# generic criteria
# --------------------------------------------------------------------------


def tc(*directions, line=None):
    return TangentConfiguration(ORIGIN, directions, line)


class TestGenus1Tails:
    def test_single_transverse_tail_fails(self):
        assert not genus1_tails_condition(tc((1, 0)), 1)

    def test_single_ramified_tail_passes(self):
        assert genus1_tails_condition(tc((0, 0)), 1)

    def test_two_tails_need_a_common_direction(self):
        assert genus1_tails_condition(tc((1, 2), (2, 4)), 2)
        assert not genus1_tails_condition(tc((1, 0), (0, 1)), 2)

    def test_three_tails_in_a_plane_always_pass(self):
        assert genus1_tails_condition(tc((1, 0), (0, 1), (1, 1)), 3)

    def test_arity_checked(self):
        with pytest.raises(ValueError):
            genus1_tails_condition(tc((1, 0)), 2)


class TestUnobstructed:
    def test_positive(self):
        assert unobstructed_isolated([1, 2], [3, 4])

    def test_contracted_genus_one_obstructs(self):
        assert not unobstructed_isolated([0], [4])

    def test_low_degree_genus_two_obstructs(self):
        assert not unobstructed_isolated([1], [2])

    def test_vacuous(self):
        assert unobstructed_isolated([], [])


class TestRibbonDescent:
    def test_contracted_needs_two_tails(self):
        assert not ribbon_descent_condition(tc((0, 0)), 1, "contracted")

    def test_contracted_two_distinct_directions_fail(self):
        assert not ribbon_descent_condition(tc((1, 0), (0, 1)), 2, "contracted")

    def test_contracted_two_ramified_pass(self):
        assert ribbon_descent_condition(tc((0, 0), (0, 0)), 2, "contracted")

    def test_contracted_three_collinear_pass(self):
        assert ribbon_descent_condition(tc((1, 1), (2, 2), (3, 3)), 3, "contracted")

    def test_hyperelliptic_tangent_tail_passes(self):
        along = pencil_coordinate(ORIGIN, LINE_Y)
        assert ribbon_descent_condition(tc(along, line=LINE_Y), 1, "hyperelliptic")

    def test_hyperelliptic_transverse_tail_fails(self):
        along = pencil_coordinate(ORIGIN, LINE_Y).vector()
        transverse = (along[0] + 1, along[1] + 2)
        assert not ribbon_descent_condition(
            tc(transverse, line=LINE_Y), 1, "hyperelliptic"
        )

    def test_hyperelliptic_ramified_tail_passes(self):
        assert ribbon_descent_condition(tc((0, 0), line=LINE_Y), 1, "hyperelliptic")

    def test_hyperelliptic_needs_line(self):
        with pytest.raises(ValueError):
            ribbon_descent_condition(tc((1, 0)), 1, "hyperelliptic")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            ribbon_descent_condition(tc((1, 0)), 1, "legacy")


class TestSectionDescent:
    def test_planar_pencil_gives_codim_two(self):
        assert section_descent_codim(4, [(0, 1), (1, 1), (2, 1), (3, 1)]) == 2

    def test_coincident_directions_give_codim_three(self):
        assert section_descent_codim(4, [(1, 1)] * 4) == 3

    def test_single_tail(self):
        assert section_descent_codim(1, [(1, 0)]) == 0

    def test_arity_checked(self):
        with pytest.raises(ValueError):
            section_descent_codim(3, [(1, 0)])


# --------------------------------------------------------------------------
# cross-ratio matching
# --------------------------------------------------------------------------


class TestCrossRatio:
    lines = [l for _, l in _slope_lines((0, 1, 2, 3))]

    def test_match(self):
        attach = [p.point for p in _points(CURVE_6, (0, 1, 2, 3))]
        assert cross_ratio_match(self.lines, CURVE_6, attach)

    def test_mismatch(self):
        attach = [p.point for p in _points(CURVE_6, (0, 1, 2, 4))]
        assert not cross_ratio_match(self.lines, CURVE_6, attach)

    def test_repeated_line_is_degenerate(self):
        attach = [p.point for p in _points(CURVE_6, (0, 1, 2, 3))]
        with pytest.raises(DegenerateConfiguration):
            cross_ratio_match([self.lines[0]] * 2 + self.lines[2:], CURVE_6, attach)

    def test_shared_fiber_is_degenerate(self):
        pts = [p.point for p in _points(CURVE_6, (0, 1, 2, 2))]
        pts[3] = CURVE_6.point(2, -pts[2].y)
        with pytest.raises(DegenerateConfiguration):
            cross_ratio_match(self.lines, CURVE_6, pts)

    def test_sweep_covers_all_relabelings(self):
        attach = [p.point for p in _points(CURVE_6, (0, 1, 2, 3))]
        sweep = cross_ratio_permutation_sweep(self.lines, CURVE_6, attach)
        assert len(sweep) == 24
        hits = {perm for perm, ok in sweep if ok}
        assert (0, 1, 2, 3) in hits
        # the cross-ratio is Klein-four invariant, so matches come in fours
        assert len(hits) % 4 == 0


# --------------------------------------------------------------------------
# payload validation
# --------------------------------------------------------------------------


def d1111_instance(xs=(0, 1, 2, 3), slopes=(0, 1, 2, 3)):
    return SmoothabilityInstance(
        D((1, 1, 1, 1)),
        CURVE_6,
        _points(CURVE_6, xs),
        ImageData(lines=_slope_lines(slopes)),
    )


class TestValidation:
    def test_main_has_no_decision(self):
        with pytest.raises(InstanceValidationError, match="main"):
            validate_instance(SmoothabilityInstance(Main()))

    def test_total_degree_enforced(self):
        with pytest.raises(InstanceValidationError, match="degree"):
            validate_instance(
                SmoothabilityInstance(D((3,)), CURVE_W, (AttachPoint("T1", W0),)))

    def test_attach_labels_must_be_in_order(self):
        bad = SmoothabilityInstance(
            D((1, 1, 1, 1)), CURVE_6,
            tuple(AttachPoint(lab, CURVE_6.point(x, 1))
                  for lab, x in (("T2", 0), ("T1", 1), ("T3", 2), ("T4", 3))),
            ImageData(lines=_slope_lines((0, 1, 2, 3))))
        with pytest.raises(InstanceValidationError, match="labels"):
            validate_instance(bad)

    def test_generic_weierstrass_conflict(self):
        bad = SmoothabilityInstance(
            D((4,)), CURVE_W, (AttachPoint("T1", W0, generic=True),),
            ImageData(germs=()))
        with pytest.raises(InstanceValidationError, match="Weierstrass"):
            validate_instance(bad)

    def test_shared_fiber_rejected(self):
        pts = list(_points(CURVE_6, (0, 1, 2, 2)))
        other = CURVE_6.point(2, -pts[2].point.y)
        pts[3] = AttachPoint("T4", other)
        bad = SmoothabilityInstance(
            D((1, 1, 1, 1)), CURVE_6, tuple(pts),
            ImageData(lines=_slope_lines((0, 1, 2, 3))))
        with pytest.raises(InstanceValidationError, match="distinct images"):
            validate_instance(bad)

    def test_point_used_twice_rejected(self):
        pts = list(_points(CURVE_6, (0, 1, 2, 2)))
        pts[3] = AttachPoint("T4", pts[2].point)
        bad = SmoothabilityInstance(
            D((1, 1, 1, 1)), CURVE_6, tuple(pts),
            ImageData(lines=_slope_lines((0, 1, 2, 3))))
        with pytest.raises(InstanceValidationError, match="twice"):
            validate_instance(bad)

    def test_tail_line_must_pass_through_base(self):
        bad = SmoothabilityInstance(
            D((1, 1, 1, 1)), CURVE_6, _points(CURVE_6, (0, 1, 2, 3)),
            ImageData(lines=_slope_lines((0, 1, 2)) + (("T4", ProjLine2(1, -1, 1)),)))
        with pytest.raises(InstanceValidationError, match="base point"):
            validate_instance(bad)

    def test_elliptic_families_take_no_curve(self):
        with pytest.raises(InstanceValidationError):
            validate_instance(SmoothabilityInstance(
                E(4), CURVE_W, image=ImageData(germs=())))

    def test_hyperelliptic_family_needs_covered_line(self):
        with pytest.raises(InstanceValidationError, match="line"):
            validate_instance(SmoothabilityInstance(
                HypD((1, 1)), image=ImageData()))

    def test_every_fixture_instance_validates(self):
        for case in CASES:
            validate_instance(case.instance)

    def test_decide_validates_first(self):
        with pytest.raises(InstanceValidationError):
            decide(SmoothabilityInstance(Main()))
