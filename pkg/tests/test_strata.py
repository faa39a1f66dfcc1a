"""The quartic stratum table and its codimension diagnostics."""

from pathlib import Path

import pytest

from g2maps.singularities import SingularityType, parse_singularity_label
from g2maps.strata import (
    PINNED_DEVIATIONS,
    QUARTIC_SYSTEM_DIMENSION,
    UNSUPPORTED,
    codim_diagnostic,
    deviating_rows,
    lookup,
    strata_table,
)

GOLDEN = Path(__file__).parent / "fixtures" / "strata_golden.tsv"


def A(i):
    return SingularityType.ade("A", i)


class TestTable:
    def test_row_count(self):
        table = strata_table()
        assert len(table) == 53
        assert sum(1 for r in table if r.non_reduced) == 8

    def test_reducibility_breakdown(self):
        from collections import Counter

        by_kind = Counter(r.reducibility for r in strata_table() if not r.non_reduced)
        assert by_kind["irreducible"] == 20
        assert by_kind["cubic+line"] == 13
        assert by_kind["two-conics"] == 5
        assert by_kind["conic+two-lines"] == 4
        assert by_kind["four-lines"] == 3

    def test_dimension_range(self):
        dims = [r.dimension for r in strata_table()]
        assert max(dims) == 13
        assert min(dims) == 2
        assert all(d < QUARTIC_SYSTEM_DIMENSION for d in dims)

    def test_configuration_sorted(self):
        for r in strata_table():
            labels = [s.label for s in r.configuration]
            assert labels == sorted(labels)

    def test_suspect_flag(self):
        flagged = [r for r in strata_table() if "suspect-point-count" in r.flags]
        assert len(flagged) == 1
        row = flagged[0]
        assert row.reducibility == "two-conics"
        assert row.configuration_label() == "A1,A1,A1,A1"
        assert row.dimension == 10


class TestLookup:
    def test_single_match(self):
        rows = lookup([A(4)])
        assert len(rows) == 1
        assert rows[0].dimension == 10
        assert rows[0].reducibility == "irreducible"

    def test_order_insensitive(self):
        assert lookup([A(1), A(5)]) == lookup([A(5), A(1)])

    def test_multiset_across_reducibilities(self):
        rows = lookup([A(1), A(5)])
        assert [(r.reducibility, r.dimension) for r in rows] == [
            ("cubic+line", 8), ("two-conics", 8)]

    def test_four_nodes(self):
        rows = lookup([A(1)] * 4)
        assert [(r.reducibility, r.dimension) for r in rows] == [
            ("cubic+line", 10), ("two-conics", 10), ("four-lines", 8)]

    def test_reducibility_filter(self):
        rows = lookup([A(1)] * 4, reducibility="four-lines")
        assert len(rows) == 1 and rows[0].dimension == 8

    def test_no_match(self):
        assert lookup([A(9)]) == []


class TestDiagnostics:
    def test_expected_codimension(self):
        row = lookup([A(4)])[0]
        diag = codim_diagnostic(row)
        assert (diag.expected, diag.actual, diag.deviation) == (10, 10, 0)

    def test_irreducible_rows_all_match(self):
        for r in strata_table():
            if r.reducibility == "irreducible":
                assert codim_diagnostic(r).deviation == 0

    def test_known_deviation(self):
        row = lookup([A(1), A(1), A(3)], reducibility="two-conics")[0]
        assert codim_diagnostic(row).deviation == 1

    def test_four_fold_point_unsupported(self):
        row = next(r for r in strata_table()
                   if r.configuration and r.configuration[0].kind == "planar-mfold")
        assert codim_diagnostic(row) is UNSUPPORTED

    def test_non_reduced_rows_unsupported(self):
        for r in strata_table():
            if r.non_reduced:
                assert codim_diagnostic(r) is UNSUPPORTED

    def test_deviating_rows_are_exactly_the_pinned_ones(self):
        assert tuple(deviating_rows()) == PINNED_DEVIATIONS
        assert len(PINNED_DEVIATIONS) == 2


class TestGoldenFixture:
    def test_row_for_row(self):
        expected = [line.split("\t") for line in GOLDEN.read_text().splitlines()]
        table = strata_table()
        assert len(expected) == len(table)
        for raw, row in zip(expected, table):
            kind, genera, points, config, dim, flags = raw
            assert row.reducibility == kind
            if genera == "-":
                assert row.genera is None
            else:
                assert row.genera == tuple(int(g) for g in genera.split(","))
            if points == "-":
                assert row.singular_points is None
            else:
                assert row.singular_points == int(points)
            if config == "-":
                assert row.configuration == ()
            else:
                want = sorted(parse_singularity_label(s).label for s in config.split(","))
                assert [s.label for s in row.configuration] == want
            assert row.dimension == int(dim)
            want_flags = () if flags == "-" else tuple(flags.split(","))
            assert row.flags == want_flags
