"""File formats: crown diagrams, Lefschetz fibrations and certificates as
JSON with exact rational strings ("p/q") everywhere; no floats are ever
persisted.  save(load(f)) is byte-identical for canonical files."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .diagrams import (
    CrownDiagram,
    InvalidDiagram,
    IsotopyStep,
    LefschetzFibration,
    ReorderStep,
    SlideCertificate,
    SlideStep,
    Step,
)
from .geometry import ArcEnd, ArcPoint, Curve, SideCrossing, SlideArc, SurfaceChart


class FormatError(ValueError):
    """Schema-level problem with an input file (CLI exit code 3)."""


def frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def parse_frac(text: Any) -> Fraction:
    if not isinstance(text, str) or "/" not in text:
        raise FormatError(f"expected a rational 'p/q' string, got {text!r}")
    try:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}: {exc}") from exc


def _expect(obj: Any, key: str, kind: type) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise FormatError(f"field {key!r} should be {kind.__name__}, got {type(val).__name__}")
    return val


# ---------------------------------------------------------------------------
# curves

def curve_to_json(c: Curve) -> dict:
    out: dict[str, Any] = {
        "name": c.name,
        "crossings": [{"side": e.side, "t": frac_str(e.t)} for e in c.events],
    }
    if c.polyline:
        out["polyline"] = [[frac_str(x), frac_str(y)] for x, y in c.polyline]
    return out


def curve_from_json(obj: Any) -> Curve:
    name = _expect(obj, "name", str)
    crossings = _expect(obj, "crossings", list)
    events = []
    for e in crossings:
        side = _expect(e, "side", int)
        t = parse_frac(_expect(e, "t", str))
        if not 0 < t < 1:
            raise InvalidDiagram(f"crossing parameter {frac_str(t)} outside (0,1) on {name!r}")
        events.append(SideCrossing(side, t))
    polyline = []
    for p in obj.get("polyline", []):
        if not isinstance(p, list) or len(p) != 2:
            raise FormatError(f"bad polyline point {p!r}")
        polyline.append((parse_frac(p[0]), parse_frac(p[1])))
    return Curve(name, tuple(events), tuple(polyline))


def _check_sides(curves, genus: int):
    for c in curves:
        for e in c.events:
            if not 0 <= e.side < 4 * genus:
                raise InvalidDiagram(f"side {e.side} out of range for genus {genus}")


# ---------------------------------------------------------------------------
# diagrams

def diagram_to_json(d: CrownDiagram) -> dict:
    return {
        "format": "crown-diagram",
        "version": 1,
        "genus": d.chart.genus,
        "curves": [curve_to_json(c) for c in d.curves],
        "order": [c.name for c in d.curves],
    }


def lefschetz_to_json(fib: LefschetzFibration) -> dict:
    return {
        "format": "lefschetz-fibration",
        "version": 1,
        "genus": fib.chart.genus,
        "cycles": [curve_to_json(c) for c in fib.cycles],
    }


def diagram_from_json(obj: Any) -> CrownDiagram:
    if _expect(obj, "format", str) != "crown-diagram":
        raise FormatError("not a crown-diagram file")
    if _expect(obj, "version", int) != 1:
        raise FormatError("unsupported version")
    genus = _expect(obj, "genus", int)
    if genus < 1:
        raise InvalidDiagram(f"genus must be >= 1, got {genus}")
    curves = [curve_from_json(c) for c in _expect(obj, "curves", list)]
    order = _expect(obj, "order", list)
    if order != [c.name for c in curves]:
        by_name = {c.name: c for c in curves}
        if sorted(order) != sorted(by_name):
            raise FormatError("order does not list the curve names")
        curves = [by_name[n] for n in order]
    _check_sides(curves, genus)
    return CrownDiagram(SurfaceChart(genus), tuple(curves))


def lefschetz_from_json(obj: Any) -> LefschetzFibration:
    if _expect(obj, "format", str) != "lefschetz-fibration":
        raise FormatError("not a lefschetz-fibration file")
    if _expect(obj, "version", int) != 1:
        raise FormatError("unsupported version")
    genus = _expect(obj, "genus", int)
    cycles = [curve_from_json(c) for c in _expect(obj, "cycles", list)]
    _check_sides(cycles, genus)
    return LefschetzFibration(SurfaceChart(genus), tuple(cycles))


# ---------------------------------------------------------------------------
# certificates

def arc_to_json(arc: SlideArc) -> dict:
    wps = []
    for w in arc.waypoints:
        if isinstance(w, SideCrossing):
            wps.append({"side": w.side, "t": frac_str(w.t)})
        else:
            wps.append({"point": [frac_str(w.x), frac_str(w.y)]})
    return {
        "start": {"gap": arc.start.gap, "fraction": frac_str(arc.start.fraction)},
        "end": {"gap": arc.end.gap, "fraction": frac_str(arc.end.fraction)},
        "approach": arc.approach,
        "waypoints": wps,
    }


def arc_from_json(obj: Any) -> SlideArc:
    start = _expect(obj, "start", dict)
    end = _expect(obj, "end", dict)
    wps: list = []
    for w in obj.get("waypoints", []):
        if "side" in w:
            wps.append(SideCrossing(_expect(w, "side", int), parse_frac(_expect(w, "t", str))))
        elif "point" in w:
            pt = _expect(w, "point", list)
            wps.append(ArcPoint(parse_frac(pt[0]), parse_frac(pt[1])))
        else:
            raise FormatError(f"bad waypoint {w!r}")
    return SlideArc(
        start=ArcEnd(_expect(start, "gap", int), parse_frac(_expect(start, "fraction", str))),
        end=ArcEnd(_expect(end, "gap", int), parse_frac(_expect(end, "fraction", str))),
        approach=_expect(obj, "approach", int),
        waypoints=tuple(wps),
    )


def step_to_json(step: Step) -> dict:
    if isinstance(step, SlideStep):
        return {"op": "slide", "mover": step.mover, "over": step.over,
                "sign": step.sign, "arc": arc_to_json(step.arc)}
    if isinstance(step, IsotopyStep):
        return {"op": "isotopy", "curve": step.curve,
                "replacement": curve_to_json(step.replacement)}
    if isinstance(step, ReorderStep):
        return {"op": "reorder", "permutation": list(step.permutation)}
    raise FormatError(f"unknown step {step!r}")


def step_from_json(obj: Any) -> Step:
    op = _expect(obj, "op", str)
    if op == "slide":
        return SlideStep(_expect(obj, "mover", int), _expect(obj, "over", int),
                         _expect(obj, "sign", int), arc_from_json(_expect(obj, "arc", dict)))
    if op == "isotopy":
        return IsotopyStep(_expect(obj, "curve", int),
                           curve_from_json(_expect(obj, "replacement", dict)))
    if op == "reorder":
        return ReorderStep(tuple(_expect(obj, "permutation", list)))
    raise FormatError(f"unknown op {op!r}")


def certificate_to_json(cert: SlideCertificate) -> dict:
    return {"format": "slide-certificate", "version": 1,
            "steps": [step_to_json(s) for s in cert.steps]}


def certificate_from_json(obj: Any) -> SlideCertificate:
    if _expect(obj, "format", str) != "slide-certificate":
        raise FormatError("not a slide-certificate file")
    if _expect(obj, "version", int) != 1:
        raise FormatError("unsupported version")
    return SlideCertificate(tuple(step_from_json(s) for s in _expect(obj, "steps", list)))


# ---------------------------------------------------------------------------
# files

def dumps(obj: CrownDiagram | LefschetzFibration | SlideCertificate) -> str:
    if isinstance(obj, CrownDiagram):
        payload = diagram_to_json(obj)
    elif isinstance(obj, LefschetzFibration):
        payload = lefschetz_to_json(obj)
    elif isinstance(obj, SlideCertificate):
        payload = certificate_to_json(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(payload, indent=2) + "\n"


def loads(text: str) -> CrownDiagram | LefschetzFibration | SlideCertificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    fmt = _expect(obj, "format", str)
    if fmt == "crown-diagram":
        return diagram_from_json(obj)
    if fmt == "lefschetz-fibration":
        return lefschetz_from_json(obj)
    if fmt == "slide-certificate":
        return certificate_from_json(obj)
    raise FormatError(f"unknown format {fmt!r}")


def save(obj, path: str | Path):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load(path: str | Path):
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(path)
    return loads(p.read_text(encoding="utf-8"))
