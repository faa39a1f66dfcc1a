"""Germ classification, the Gorenstein tables, and ribbon bookkeeping."""

from fractions import Fraction

import pytest

from g2maps.markers import INFINITY
from g2maps.polynomials import Polynomial
from g2maps.singularities import (
    GorensteinPresentation,
    PlanarBranch,
    SingularityType,
    UnclassifiedGermError,
    classify_germ,
    germ_signature,
    intersection_multiplicity,
    parse_singularity_label,
    presentation_residues,
    ribbon_genus,
    tailed_ribbon_local_ideal,
    type_I_presentation,
    type_II_presentation,
    verify_presentation,
)

# canonical branches --------------------------------------------------------
SMOOTH_X = PlanarBranch((0, 1), (0, 0))
SMOOTH_Y = PlanarBranch((0, 0), (0, 1))
SMOOTH_DIAG = PlanarBranch((0, 1), (0, 1))
CUSP = PlanarBranch((0, 0, 1), (0, 0, 0, 1))
CUSP_25 = PlanarBranch((0, 0, 1), (0, 0, 0, 0, 0, 1))
RAMPHOID = PlanarBranch((0, 0, 0, 1), (0, 0, 0, 0, 1))
TANGENT_2 = PlanarBranch((0, 1), (0, 0, 1))
TANGENT_3 = PlanarBranch((0, 1), (0, 0, 0, 1))


class TestBranchType:
    def test_smooth(self):
        assert SMOOTH_X.branch_type()[0] == "smooth"
        assert SMOOTH_DIAG.branch_type()[0] == "smooth"

    def test_cusps(self):
        label, orders, delta = CUSP.branch_type()
        assert (label, orders, delta) == ("cusp(2,3)", (2, 3), 1)
        assert CUSP_25.branch_type()[2] == 2
        assert RAMPHOID.branch_type() == ("cusp(3,4)", (3, 4), 3)

    def test_linear_normalization(self):
        # (t^2, t^2 + t^3) is the (2,3) cusp after subtracting x from y
        skew = PlanarBranch((0, 0, 1), (0, 0, 1, 1))
        assert skew.branch_type() == ("cusp(2,3)", (2, 3), 1)

    def test_unclassified_carries_signature(self):
        wild = PlanarBranch((0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 1))
        with pytest.raises(UnclassifiedGermError) as err:
            wild.branch_type()
        assert err.value.signature is not None


class TestIntersectionMultiplicity:
    def test_transverse(self):
        assert intersection_multiplicity(SMOOTH_X, SMOOTH_Y) == 1

    def test_tangent(self):
        assert intersection_multiplicity(SMOOTH_X, TANGENT_2) == 2
        assert intersection_multiplicity(SMOOTH_X, TANGENT_3) == 3

    def test_cusp_against_lines(self):
        # the cusp meets its tangent line with multiplicity three and a
        # transverse line with multiplicity two
        assert intersection_multiplicity(CUSP, SMOOTH_X) == 3
        assert intersection_multiplicity(CUSP, SMOOTH_Y) == 2

    def test_common_component_is_infinite(self):
        assert intersection_multiplicity(SMOOTH_X, SMOOTH_X) is INFINITY


CATALOG = [
    ("A1", (SMOOTH_X, SMOOTH_Y), 1),
    ("A3", (SMOOTH_X, TANGENT_2), 2),
    ("A4", (CUSP_25,), 2),
    ("A5", (SMOOTH_X, TANGENT_3), 3),
    ("D4", (SMOOTH_X, SMOOTH_Y, SMOOTH_DIAG), 3),
    ("D5", (CUSP, SMOOTH_Y), 3),
    ("D6", (SMOOTH_X, SMOOTH_Y, TANGENT_2), 4),
    ("E6", (RAMPHOID,), 3),
    ("E7", (CUSP, SMOOTH_X), 4),
]


class TestClassification:
    @pytest.mark.parametrize("label,branches,delta", CATALOG, ids=[c[0] for c in CATALOG])
    def test_catalog(self, label, branches, delta):
        sing = classify_germ(branches)
        assert sing.label == label
        sig = germ_signature(branches)
        assert sig.delta == delta
        # Milnor number from delta and branch count matches the ADE index
        assert sig.milnor == 2 * sig.delta - len(branches) + 1 == sing.milnor

    def test_cusp_series(self):
        assert classify_germ((CUSP,)).label == "A2"
        assert classify_germ((CUSP_25,)).label == "A4"

    def test_planar_m_fold(self):
        four = (SMOOTH_X, SMOOTH_Y, SMOOTH_DIAG, PlanarBranch((0, 1), (0, 2)))
        sing = classify_germ(four)
        assert sing.kind == "planar-mfold"
        assert sing.label == "4-fold"
        assert sing.milnor == 9  # (m-1)^2

    def test_outside_catalog(self):
        # two cusps at one point: not in the supported table
        other_cusp = PlanarBranch((0, 0, 1), (0, 0, 0, -1))
        with pytest.raises(UnclassifiedGermError):
            classify_germ((CUSP, other_cusp))


class TestSingularityTypeLabels:
    def test_labels(self):
        assert SingularityType.ade("A", 4).label == "A4"
        assert SingularityType.elliptic_m_fold(2).label == "elliptic-2-fold"
        assert SingularityType.genus_two("I", 3).label == "genus2-I(3)"
        assert SingularityType.genus_two("II", 4).label == "genus2-II(4)"
        assert SingularityType.tailed_ribbon(4, (1, 1, 1, 1)).label == "ribbon(4;1,1,1,1)"
        assert SingularityType.planar_m_fold(4).label == "4-fold"

    def test_parse_roundtrip(self):
        for label in ("A1", "A6", "D5", "E7", "4-fold"):
            assert parse_singularity_label(label).label == label

    def test_milnor_numbers(self):
        assert SingularityType.ade("E", 6).milnor == 6
        assert SingularityType.planar_m_fold(3).milnor == 4


class TestPresentations:
    @pytest.mark.parametrize("m", range(1, 9))
    def test_type_I_verifies(self, m):
        assert verify_presentation(type_I_presentation(m))

    @pytest.mark.parametrize("m", range(2, 9))
    def test_type_II_verifies(self, m):
        assert verify_presentation(type_II_presentation(m))

    def test_special_branches(self):
        assert type_I_presentation(3).special_branches == (3,)
        assert type_II_presentation(2).special_branches == ()
        assert type_II_presentation(4).special_branches == (1, 4)

    def test_one_branch_model_uses_deep_truncation(self):
        # x = t^2, y = t^5 needs terms up to t^10 to see x^5 - y^2 vanish
        assert type_I_presentation(1).truncation_order == 11

    @pytest.mark.parametrize("maker,m", [(type_I_presentation, 1),
                                         (type_I_presentation, 3),
                                         (type_II_presentation, 2),
                                         (type_II_presentation, 4)])
    def test_linear_mutants_fail(self, maker, m):
        pres = maker(m)
        eq = pres.equations[0]
        names = sorted(pres.generators)[:2]
        bump = eq
        for n in names:
            bump = bump + Polynomial.variable(n, eq.variables)
        mutant = pres.with_equations((bump,) + tuple(pres.equations[1:]))
        assert not verify_presentation(mutant)
        assert any(not r.is_zero() for r in presentation_residues(mutant))

    def test_residues_all_zero_when_valid(self):
        assert all(r.is_zero() for r in presentation_residues(type_I_presentation(4)))

    def test_singularity_type_attached(self):
        assert type_I_presentation(3).singularity_type == SingularityType.genus_two("I", 3)
        assert type_II_presentation(5).singularity_type == SingularityType.genus_two("II", 5)


class TestRibbons:
    def test_ideal_shape(self):
        gens = tailed_ribbon_local_ideal(3)
        assert len(gens) == 6  # three products, three differences against y
        assert tailed_ribbon_local_ideal(1) == []

    def test_genus_always_two(self):
        from itertools import product

        for k in range(5):
            for ms in product((1, 2, 3, 4), repeat=k):
                assert ribbon_genus(k, ms) == 2

    def test_input_validation(self):
        with pytest.raises(ValueError):
            ribbon_genus(2, (1,))
        with pytest.raises(ValueError):
            ribbon_genus(1, (0,))
