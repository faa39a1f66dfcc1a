"""Loading smoothability instances from JSON documents.

The document layout is described by ``data/instance_schema.json`` and
versioned through its ``schema`` field.  All rationals travel as strings
("3/4") or integers; geometric objects are coefficient arrays.  Errors
carry a JSON-pointer-style ``path`` into the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .components import parse_family
from .hyperelliptic import HyperellipticCurve, PointNotOnCurve
from .polynomials import Polynomial
from .projective import Conic2, ProjLine2, ProjPoint
from .singularities import PlanarBranch
from .smoothability import (
    AttachPoint,
    CoveredLine,
    ImageData,
    InstanceValidationError,
    SmoothabilityInstance,
    ternary_form,
)

SCHEMA_ID = "g2maps-instance/1"


class InstancePayloadError(ValueError):
    """A malformed instance document; `path` points at the bad field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _frac(value, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InstancePayloadError(path, "expected an integer or a rational string like '3/4'")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstancePayloadError(path, f"bad rational {value!r}: {exc}") from None


def _frac_list(value, path: str, length: int | None = None) -> list[Fraction]:
    if not isinstance(value, list):
        raise InstancePayloadError(path, "expected an array of rationals")
    if length is not None and len(value) != length:
        raise InstancePayloadError(path, f"expected exactly {length} entries, got {len(value)}")
    return [_frac(v, f"{path}/{i}") for i, v in enumerate(value)]


def _point(value, path: str) -> ProjPoint:
    coords = _frac_list(value, path)
    if len(coords) not in (2, 3):
        raise InstancePayloadError(path, "a point takes 2 or 3 coordinates")
    if all(c == 0 for c in coords):
        raise InstancePayloadError(path, "a point needs a nonzero coordinate")
    return ProjPoint(coords)


def _line(value, path: str) -> ProjLine2:
    coeffs = _frac_list(value, path, 3)
    if all(c == 0 for c in coeffs):
        raise InstancePayloadError(path, "a line needs a nonzero coefficient")
    return ProjLine2(*coeffs)


def _expect_object(value, path: str, allowed: set[str]) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise InstancePayloadError(path, "expected an object")
    for key in value:
        if key not in allowed:
            raise InstancePayloadError(f"{path}/{key}", "unknown field")
    return value


def _load_attach(entries, curve: HyperellipticCurve | None, path: str) -> tuple[AttachPoint, ...]:
    if not isinstance(entries, list):
        raise InstancePayloadError(path, "expected an array of attach entries")
    out = []
    for i, raw in enumerate(entries):
        here = f"{path}/{i}"
        entry = _expect_object(raw, here, {"tail", "x", "y"})
        if "tail" not in entry or not isinstance(entry["tail"], str):
            raise InstancePayloadError(f"{here}/tail", "every attach entry names its tail")
        label = entry["tail"]
        y_raw = entry.get("y")
        if y_raw == "generic":
            if "x" in entry:
                raise InstancePayloadError(f"{here}/x", "a generic attach point takes no coordinates")
            out.append(AttachPoint(label, None, generic=True))
            continue
        if "x" not in entry:
            raise InstancePayloadError(here, "give x and y, or y = 'generic'")
        if curve is None:
            raise InstancePayloadError(f"{here}/x", "no curve to place the point on")
        x = _frac(entry["x"], f"{here}/x")
        try:
            if y_raw == "weierstrass":
                point = curve.weierstrass_point(x)
            elif y_raw is None:
                raise InstancePayloadError(f"{here}/y", "give y, 'weierstrass', or 'generic'")
            else:
                point = curve.point(x, _frac(y_raw, f"{here}/y"))
        except PointNotOnCurve as exc:
            raise InstancePayloadError(here, str(exc)) from None
        out.append(AttachPoint(label, point))
    return tuple(out)


def _load_germs(value, path: str):
    if not isinstance(value, Mapping):
        raise InstancePayloadError(path, "expected an object mapping germ names to branch arrays")
    germs = []
    for name in sorted(value):
        branches_raw = value[name]
        here = f"{path}/{name}"
        if not isinstance(branches_raw, list) or not branches_raw:
            raise InstancePayloadError(here, "expected a non-empty array of branches")
        branches = []
        for j, braw in enumerate(branches_raw):
            bpath = f"{here}/{j}"
            b = _expect_object(braw, bpath, {"x", "y"})
            try:
                branches.append(
                    PlanarBranch(
                        _frac_list(b.get("x", []), f"{bpath}/x"),
                        _frac_list(b.get("y", []), f"{bpath}/y"),
                    )
                )
            except ValueError as exc:
                raise InstancePayloadError(bpath, str(exc)) from None
        germs.append((name, tuple(branches)))
    return tuple(germs)


def _load_covered_line(value, path: str) -> CoveredLine:
    entry = _expect_object(value, path, {"line", "branch_points"})
    if "line" not in entry or "branch_points" not in entry:
        raise InstancePayloadError(path, "a covered line takes 'line' and 'branch_points'")
    line = _line(entry["line"], f"{path}/line")
    bps = entry["branch_points"]
    if not isinstance(bps, list):
        raise InstancePayloadError(f"{path}/branch_points", "expected an array of points")
    points = [_point(p, f"{path}/branch_points/{i}") for i, p in enumerate(bps)]
    try:
        return CoveredLine(line, points)
    except InstanceValidationError as exc:
        raise InstancePayloadError(f"{path}/branch_points", str(exc)) from None


_IMAGE_FIELDS = {
    "germs", "base", "lines", "conic", "covered_line", "cubic",
    "e1_point", "e2_point", "core_line",
}


def _load_image(value, path: str) -> ImageData:
    entry = _expect_object(value, path, _IMAGE_FIELDS)
    kwargs: dict[str, Any] = {}
    if "germs" in entry:
        kwargs["germs"] = _load_germs(entry["germs"], f"{path}/germs")
    if "base" in entry:
        kwargs["base"] = _point(entry["base"], f"{path}/base")
    if "lines" in entry:
        lines_raw = entry["lines"]
        if not isinstance(lines_raw, Mapping):
            raise InstancePayloadError(f"{path}/lines", "expected an object mapping tails to lines")
        kwargs["lines"] = tuple(
            (lab, _line(lines_raw[lab], f"{path}/lines/{lab}")) for lab in sorted(lines_raw)
        )
    if "conic" in entry:
        coeffs = _frac_list(entry["conic"], f"{path}/conic", 6)
        kwargs["conic"] = Conic2.from_coefficients(coeffs)
    if "covered_line" in entry:
        kwargs["covered_line"] = _load_covered_line(entry["covered_line"], f"{path}/covered_line")
    if "cubic" in entry:
        coeffs = _frac_list(entry["cubic"], f"{path}/cubic", 10)
        kwargs["cubic"] = ternary_form(3, coeffs)
    if "e1_point" in entry:
        kwargs["e1_point"] = _point(entry["e1_point"], f"{path}/e1_point")
    if "e2_point" in entry:
        kwargs["e2_point"] = _point(entry["e2_point"], f"{path}/e2_point")
    if "core_line" in entry:
        kwargs["core_line"] = _line(entry["core_line"], f"{path}/core_line")
    return ImageData(**kwargs)


def load_instance(doc: Mapping[str, Any]) -> SmoothabilityInstance:
    """Build a SmoothabilityInstance from a parsed JSON document."""
    top = _expect_object(doc, "", {"schema", "family", "curve", "attach", "image"})
    if top.get("schema") != SCHEMA_ID:
        raise InstancePayloadError("/schema", f"expected {SCHEMA_ID!r}")
    if "family" not in top or not isinstance(top["family"], str):
        raise InstancePayloadError("/family", "expected a family string like 'D(3,1)'")
    try:
        family = parse_family(top["family"])
    except ValueError as exc:
        raise InstancePayloadError("/family", str(exc)) from None

    curve = None
    if "curve" in top:
        cobj = _expect_object(top["curve"], "/curve", {"f"})
        if "f" not in cobj:
            raise InstancePayloadError("/curve/f", "the curve carries its coefficients under 'f'")
        coeffs = _frac_list(cobj["f"], "/curve/f")
        try:
            curve = HyperellipticCurve(coeffs)
        except ValueError as exc:
            raise InstancePayloadError("/curve/f", str(exc)) from None

    attach = ()
    if "attach" in top:
        attach = _load_attach(top["attach"], curve, "/attach")

    image = ImageData()
    if "image" in top:
        image = _load_image(top["image"], "/image")

    return SmoothabilityInstance(family, curve, attach, image)


def loads_instance(text: str) -> SmoothabilityInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstancePayloadError("", f"not valid JSON: {exc}") from None
    return load_instance(doc)


def cubic_coefficients(form: Polynomial) -> list[Fraction]:
    """Inverse of the cubic payload encoding (for fixtures and round-trips)."""
    from .smoothability import form_exponents

    return [form.terms.get(e, Fraction(0)) for e in form_exponents(3)]
