"""The singularity strata of plane quartics, as checked-in data.

The classification of singular plane quartics — which analytic singularity
configurations occur, and the dimension of each stratum inside the
14-dimensional linear system of quartics — is empirical input to the
boundary-intersection computations, not something this package derives.
The table ships as `data/quartic_strata.txt` and is loaded verbatim; the
only computation layered on top is a consistency probe comparing each
stratum dimension against the naive count 14 - (sum of Milnor numbers).
A couple of rows genuinely deviate from that count; they are pinned below
as data and deliberately not "corrected".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .singularities import SingularityType, parse_singularity_label

QUARTIC_SYSTEM_DIMENSION = 14

REDUCED_KINDS = (
    "irreducible",
    "cubic+line",
    "two-conics",
    "conic+two-lines",
    "four-lines",
)

NON_REDUCED_KINDS = (
    "conic+double-line",
    "conic+tangent-double-line",
    "three-lines-one-double",
    "three-concurrent-lines-one-double",
    "double-conic",
    "two-double-lines",
    "line+triple-line",
    "quadruple-line",
)


class _Unsupported:
    """Marker for diagnostics that do not apply (non-ADE configurations)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "unsupported"


UNSUPPORTED = _Unsupported()


@dataclass(frozen=True)
class StratumRecord:
    reducibility: str
    genera: tuple[int, ...] | None
    singular_points: int | None
    configuration: tuple[SingularityType, ...]  # sorted multiset
    dimension: int
    flags: tuple[str, ...] = ()

    @property
    def non_reduced(self) -> bool:
        return self.reducibility in NON_REDUCED_KINDS

    def configuration_label(self) -> str:
        if not self.configuration:
            return "-"
        return ",".join(s.label for s in self.configuration)


def _parse_row(line: str, lineno: int) -> StratumRecord:
    parts = line.split("\t")
    if len(parts) != 6:
        raise ValueError(f"line {lineno}: expected 6 tab-separated fields")
    kind, genera_s, points_s, config_s, dim_s, flags_s = parts
    if kind not in REDUCED_KINDS and kind not in NON_REDUCED_KINDS:
        raise ValueError(f"line {lineno}: unknown reducibility {kind!r}")
    genera = None if genera_s == "-" else tuple(int(g) for g in genera_s.split(","))
    points = None if points_s == "-" else int(points_s)
    if config_s == "-":
        config: tuple[SingularityType, ...] = ()
    else:
        config = tuple(
            sorted(
                (parse_singularity_label(lbl) for lbl in config_s.split(",")),
                key=lambda s: s.label,
            )
        )
    flags = () if flags_s == "-" else tuple(flags_s.split(","))
    dim = int(dim_s)
    if not 0 <= dim <= QUARTIC_SYSTEM_DIMENSION:
        raise ValueError(f"line {lineno}: dimension {dim} out of range")
    if kind in REDUCED_KINDS and not config:
        raise ValueError(f"line {lineno}: reduced stratum needs a configuration")
    return StratumRecord(kind, genera, points, config, dim, flags)


@lru_cache(maxsize=1)
def strata_table() -> tuple[StratumRecord, ...]:
    """Every stratum row, in source order (reduced table, then the
    non-reduced kinds)."""
    text = resources.files("g2maps.data").joinpath("quartic_strata.txt").read_text()
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        rows.append(_parse_row(line, lineno))
    return tuple(rows)


def _config_key(config) -> tuple[str, ...]:
    return tuple(sorted(s.label for s in config))


def lookup(configuration, reducibility: str | None = None) -> list[StratumRecord]:
    """All rows whose configuration equals the given multiset of
    singularity types (order-insensitive), optionally restricted to one
    reducibility kind.  The same configuration can occur at different
    dimensions for different reducibility types."""
    want = _config_key(configuration)
    out = []
    for rec in strata_table():
        if reducibility is not None and rec.reducibility != reducibility:
            continue
        if _config_key(rec.configuration) == want:
            out.append(rec)
    return out


@dataclass(frozen=True)
class CodimDiagnostic:
    expected: int  # 14 - sum of Milnor numbers
    actual: int  # table dimension
    deviation: int  # expected - actual


def codim_diagnostic(record: StratumRecord):
    """Compare the table dimension against 14 - (sum of Milnor numbers).

    Returns UNSUPPORTED when the configuration is empty or contains a
    non-ADE singularity (no Milnor-number bookkeeping for those here).
    """
    if not record.configuration:
        return UNSUPPORTED
    total = 0
    for sing in record.configuration:
        if sing.kind != "ade":
            return UNSUPPORTED
        total += sing.milnor
    expected = QUARTIC_SYSTEM_DIMENSION - total
    return CodimDiagnostic(expected, record.dimension, expected - record.dimension)


# The rows where the naive codimension count disagrees with the table,
# kept as data.  (reducibility, configuration label, deviation)
PINNED_DEVIATIONS = (
    ("two-conics", "A1,A1,A3", 1),
    ("four-lines", "A1,A1,A1,A1", 2),
)


def deviating_rows() -> list[tuple[str, str, int]]:
    """Recompute which ADE rows deviate from the naive count."""
    out = []
    for rec in strata_table():
        diag = codim_diagnostic(rec)
        if diag is UNSUPPORTED or diag.deviation == 0:
            continue
        out.append((rec.reducibility, rec.configuration_label(), diag.deviation))
    return out
