"""Command-line driver: exit codes, text/JSON output, byte stability."""

import json
from pathlib import Path

import pytest

from g2maps.cli import (
    EX_NOT_SMOOTHABLE,
    EX_OK,
    EX_REDUCES,
    EX_USAGE,
    EX_VERIFY_FAILED,
    build_parser,
    main,
)
from g2maps.instances import SCHEMA_ID

FIXTURES = Path(__file__).parent / "fixtures"

FIXTURE_EXITS = {
    "d4_weierstrass_ok": EX_OK,
    "d4_generic_e6_ok": EX_OK,
    "d4_generic_bad": EX_NOT_SMOOTHABLE,
    "d1111_cross_ratio_ok": EX_OK,
    "d1111_cross_ratio_bad": EX_NOT_SMOOTHABLE,
    "e211_contained": EX_OK,
    "e31_tangent_ok": EX_OK,
    "ee112_reduces": EX_REDUCES,
    "hypd2_ramified_ok": EX_OK,
}


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out

    return invoke


def fixture_path(name):
    return str(FIXTURES / f"{name}.json")


# --------------------------------------------------------------------------


class TestEnumerate:
    def test_text_output(self, run):
        code, out = run("enumerate")
        lines = out.splitlines()
        assert code == EX_OK
        assert len(lines) == 29
        assert lines[0] == "main\tmain\t13"
        assert "D(4)\tD\t16" in lines
        assert lines[-1] == "hypD(1,1)\thypD\t12"

    def test_json_output(self, run):
        code, out = run("enumerate", "--format", "json")
        rows = json.loads(out)
        assert code == EX_OK
        assert len(rows) == 29
        assert rows[0] == {"family": "main", "kind": "main", "dimension": 13}

    def test_graph_column(self, run):
        code, out = run("enumerate", "--graphs")
        assert code == EX_OK
        first = out.splitlines()[0].split("\t")
        assert len(first) == 4
        assert "g=2" in first[3]

    def test_out_of_regime(self, run):
        code, _ = run("enumerate", "--d", "2")
        assert code == EX_USAGE

    def test_other_regimes_enumerate(self, run):
        code, out = run("enumerate", "--r", "3", "--d", "5", "--format", "json")
        rows = json.loads(out)
        assert code == EX_OK and isinstance(rows, list) and rows


class TestVerify:
    def test_default_pass(self, run):
        code, out = run("verify-singularities")
        lines = out.splitlines()
        assert code == EX_OK
        # I with 1..6 branches, II with 2..6, ribbon sweeps for 0..6 tails
        assert len(lines) == 18
        assert all(line.endswith("ok") for line in lines)
        assert sum(1 for l in lines if l.startswith("ribbon\t")) == 7

    def test_table_selection(self, run):
        code, out = run("verify-singularities", "--table", "II", "--max-branches", "3")
        assert code == EX_OK
        assert [l.split("\t")[:2] for l in out.splitlines()] == [["II", "2"], ["II", "3"]]

    def test_mutants_are_detected(self, run):
        code, out = run("verify-singularities", "--inject-mutant")
        assert code == EX_OK
        assert all(l.endswith("mutant-detected") for l in out.splitlines())

    def test_residues_column(self, run):
        code, out = run("verify-singularities", "--table", "I",
                        "--max-branches", "1", "--residues")
        assert code == EX_OK
        (line,) = out.splitlines()
        assert len(line.split("\t")) == 4

    def test_json_format(self, run):
        code, out = run("verify-singularities", "--format", "json",
                        "--max-branches", "2")
        rows = json.loads(out)
        assert code == EX_OK
        assert {r["status"] for r in rows} == {"ok"}


class TestCheck:
    @pytest.mark.parametrize("name", sorted(FIXTURE_EXITS))
    def test_exit_codes(self, run, name):
        code, out = run("check", fixture_path(name))
        assert code == FIXTURE_EXITS[name]
        assert out.startswith("outcome\t")

    def test_positive_text_fields(self, run):
        _, out = run("check", fixture_path("d4_weierstrass_ok"))
        lines = out.splitlines()
        assert lines[0] == "outcome\tsmoothable"
        assert "condition\tweierstrass-attach+A4A1-image" in lines
        assert "witness\tA4" in lines

    def test_negative_text_fields(self, run):
        _, out = run("check", fixture_path("d1111_cross_ratio_bad"))
        lines = out.splitlines()
        assert "failed\tcross-ratio-match" in lines
        assert lines[-1] == "trace\tcross-ratio-match\tFalse"

    def test_reduction_text_fields(self, run):
        code, out = run("check", fixture_path("ee112_reduces"))
        assert code == EX_REDUCES
        assert "reduces-to\tD(2,1,1)" in out.splitlines()

    def test_trace_lines(self, run):
        _, out = run("check", fixture_path("d4_generic_bad"))
        trace = [l for l in out.splitlines() if l.startswith("trace\t")]
        assert trace, "expected trace rows"
        assert any(l.split("\t")[2] == "False" for l in trace)

    def test_stdin(self, run, monkeypatch):
        import io

        text = Path(fixture_path("e211_contained")).read_text()
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        code, out = run("check", "-")
        assert code == EX_OK
        assert out.splitlines()[0] == "outcome\tcontained-in-main"

    def test_print_schema(self, run):
        code, out = run("check", "--print-schema")
        assert code == EX_OK
        assert json.loads(out)["$id"] == SCHEMA_ID

    def test_missing_file(self, run):
        code, _ = run("check", str(FIXTURES / "no_such.json"))
        assert code == EX_USAGE

    def test_bad_payload(self, run, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema": "g2maps-instance/1", "family": "Q(7)"}')
        code, _ = run("check", str(bad))
        assert code == EX_USAGE


class TestIntersect:
    def test_catalog(self, run):
        code, out = run("intersect")
        lines = out.splitlines()
        assert code == EX_OK
        assert len(lines) == 20
        assert "D(4)\t16\t12:A5,12:A4" in lines
        assert "E(2;1,1)\t12\tcontained" in lines

    def test_single_family(self, run):
        code, out = run("intersect", "--family", "hypD(2)")
        assert code == EX_OK
        assert out.splitlines() == ["hypD(2)\t13\t11:ribbon(1;1)"]

    def test_degenerate_bridge_reduces(self, run):
        code, out = run("intersect", "--family", "EE(1|1|2)")
        assert code == EX_REDUCES
        assert out.splitlines() == ["reduces-to\tD(2,1,1)"]

    def test_main_is_its_own_intersection(self, run):
        code, out = run("intersect", "--family", "main")
        assert code == EX_OK
        assert out.splitlines() == ["main\t13\titself"]

    def test_unparsable_family(self, run):
        code, _ = run("intersect", "--family", "D(five)")
        assert code == EX_USAGE

    def test_json_format(self, run):
        code, out = run("intersect", "--format", "json")
        rows = json.loads(out)
        assert code == EX_OK
        assert len(rows) == 20


class TestStrata:
    def test_full_table(self, run):
        code, out = run("strata")
        assert code == EX_OK
        assert len(out.splitlines()) == 53

    def test_filter_keeps_non_reduced_annotations(self, run):
        code, out = run("strata", "--filter", "reducibility=four-lines")
        lines = out.splitlines()
        assert code == EX_OK
        assert len(lines) == 11  # 3 matching rows + 8 annotations
        assert all(l.split("\t")[0] == "four-lines" for l in lines[:3])

    def test_configuration_filter_is_order_insensitive(self, run):
        _, a = run("strata", "--filter", "configuration=A1,A5")
        _, b = run("strata", "--filter", "configuration=A5,A1")
        assert a == b
        assert len(a.splitlines()) == 2 + 8

    def test_stacked_filters(self, run):
        code, out = run("strata", "--filter", "configuration=A1,A5",
                        "--filter", "reducibility=two-conics")
        assert len(out.splitlines()) == 1 + 8

    def test_diagnostics_column(self, run):
        code, out = run("strata", "--diagnostics")
        assert code == EX_OK
        devs = [l.split("\t")[-1] for l in out.splitlines()]
        assert devs.count("+1") == 1
        assert devs.count("+2") == 1
        assert devs.count("unsupported") == 9  # planar 4-fold + 8 non-reduced
        assert devs.count("0") == 53 - 11

    def test_bad_filter(self, run):
        code, _ = run("strata", "--filter", "shape=round")
        assert code == EX_USAGE


class TestStability:
    COMMANDS = [
        ("enumerate",),
        ("enumerate", "--graphs"),
        ("enumerate", "--format", "json"),
        ("verify-singularities", "--max-branches", "3"),
        ("intersect",),
        ("strata", "--diagnostics"),
        ("check", fixture_path("d4_weierstrass_ok")),
        ("check", fixture_path("ee112_reduces"), "--format", "json"),
    ]

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
    def test_byte_stable(self, run, argv):
        first = run(*argv)
        second = run(*argv)
        assert first == second

    @pytest.mark.parametrize("name", sorted(FIXTURE_EXITS))
    def test_json_round_trip(self, run, name):
        code, out = run("check", fixture_path(name), "--format", "json")
        payload = json.loads(out)
        assert json.dumps(payload, indent=2, sort_keys=True) + "\n" == out
        assert payload["outcome"] in (
            "smoothable", "not-smoothable", "contained-in-main", "reduces-to")


def test_parser_builds():
    parser = build_parser()
    args = parser.parse_args(["enumerate", "--r", "2", "--d", "4"])
    assert args.r == 2 and args.d == 4


def test_no_subcommand_is_usage():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == EX_USAGE
