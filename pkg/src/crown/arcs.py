"""Deterministic construction of valid slide arcs.

Three builders cover everything the moves need:

  * quadrant arcs: a short segment in one of the four clean quadrants at a
    transverse crossing of mover and over (the paper's local arcs);
  * corridor arcs: across the empty strip between a curve and a parallel
    pushoff strand of another curve;
  * routed arcs: a straight segment between attach windows, recording any
    transverse crossings with third curves as waypoints.

Every candidate is validated exactly before being returned; builders shrink
attach points toward their anchors a few times before giving up.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (
    ArcEnd,
    ArcPoint,
    Curve,
    InvalidArc,
    NotInGeneralPosition,
    SlideArc,
    SurfaceChart,
    _cross,
    _sub,
    curve_segments,
    intersections,
    point_on_chord,
    segment_intersection,
    validate_arc,
)

SHRINK_TRIES = 10


def _segment_param(seg, point) -> Optional[Fraction]:
    """Fraction of `point` along segment, if it lies on it (exact)."""
    a, b = seg
    d = _sub(b, a)
    w = _sub(point, a)
    if _cross(d, w) != 0:
        return None
    if d[0] != 0:
        f = w[0] / d[0]
    elif d[1] != 0:
        f = w[1] / d[1]
    else:
        return None
    return f if 0 <= f <= 1 else None


def locate_point(chart: SurfaceChart, curve: Curve, point) -> tuple[int, Fraction]:
    """(gap, fraction) of an exact point known to lie on one of the chords."""
    for gap, seg in enumerate(curve_segments(chart, curve)):
        f = _segment_param(seg, point)
        if f is not None and 0 < f < 1:
            return gap, f
    raise InvalidArc(f"point {point} not on curve {curve.name!r}")


def chord_feature_fractions(chart: SurfaceChart, curves: Sequence[Curve],
                            curve: Curve, gap: int) -> list[Fraction]:
    """Fractions along a chord where any diagram chord crosses it."""
    seg = curve_segments(chart, curve)[gap]
    feats: set[Fraction] = set()
    for other in curves:
        for og, oseg in enumerate(curve_segments(chart, other)):
            if other.name == curve.name and og == gap:
                continue
            try:
                hit = segment_intersection(*seg, *oseg)
            except NotInGeneralPosition:
                continue
            if hit is not None:
                f = _segment_param(seg, hit)
                if f is not None:
                    feats.add(f)
    return sorted(feats)


def window_around(features: list[Fraction], f: Fraction, direction: int) -> tuple[Fraction, Fraction]:
    """Free interval adjacent to anchor fraction f on the chosen side."""
    if direction > 0:
        hi = min([x for x in features if x > f], default=Fraction(1))
        return f, hi
    lo = max([x for x in features if x < f], default=Fraction(0))
    return lo, f


def _approach_of(chart: SurfaceChart, over: Curve, gap: int, from_point) -> int:
    a, b = curve_segments(chart, over)[gap]
    s = _cross(_sub(b, a), _sub(from_point, a))
    if s == 0:
        raise InvalidArc("attach point on the over chord line")
    return 1 if s > 0 else -1


def _try_arc(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve, over: Curve,
             arc: SlideArc) -> Optional[SlideArc]:
    try:
        validate_arc(chart, curves, mover, over, arc)
        return arc
    except (InvalidArc, NotInGeneralPosition):
        return None


def quadrant_arc(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                 over: Curve, crossing, quadrant: tuple[int, int] = (1, 1)) -> Optional[SlideArc]:
    """Short clean arc from mover to over next to one of their crossings.

    `quadrant` picks the side of the crossing along the mover chord and along
    the over chord.  Attach points are pulled toward the crossing until the
    straight segment between them validates."""
    gm, fm = locate_point(chart, mover, crossing)
    go, fo = locate_point(chart, over, crossing)
    feat_m = chord_feature_fractions(chart, curves, mover, gm)
    feat_o = chord_feature_fractions(chart, curves, over, go)
    lo_m, hi_m = window_around(feat_m, fm, quadrant[0])
    lo_o, hi_o = window_around(feat_o, fo, quadrant[1])
    lam = (lo_m + hi_m) / 2
    mu = (lo_o + hi_o) / 2
    for _ in range(SHRINK_TRIES):
        if not (0 < lam < 1 and 0 < mu < 1) or lam == fm or mu == fo:
            return None
        start_pt = point_on_chord(chart, mover, gm, lam)
        try:
            approach = _approach_of(chart, over, go, start_pt)
        except InvalidArc:
            return None
        arc = SlideArc(start=ArcEnd(gm, lam), end=ArcEnd(go, mu), approach=approach)
        got = _try_arc(chart, curves, mover, over, arc)
        if got is not None:
            return got
        lam = (lam + fm) / 2
        mu = (mu + fo) / 2
    return None


def quadrant_arcs(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                  over: Curve):
    """All clean quadrant arcs at all mover/over crossings, deterministic order."""
    try:
        crossings = intersections(chart, mover, over)
    except NotInGeneralPosition:
        return
    for crossing in crossings:
        for qm in (1, -1):
            for qo in (1, -1):
                try:
                    arc = quadrant_arc(chart, curves, mover, over, crossing, (qm, qo))
                except (InvalidArc, NotInGeneralPosition):
                    continue
                if arc is not None:
                    yield arc


def window_midpoints(chart: SurfaceChart, curves: Sequence[Curve], curve: Curve,
                     gap: int) -> list[Fraction]:
    feats = chord_feature_fractions(chart, curves, curve, gap)
    seq = [Fraction(0)] + feats + [Fraction(1)]
    return [(a + b) / 2 for a, b in zip(seq, seq[1:]) if a != b]


def iter_straight_arcs(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                       over: Curve, record_crossings: bool = False):
    """All valid straight arcs between attach windows, deterministic order.

    With record_crossings, transverse crossings with third curves are allowed
    and recorded as waypoints; crossings with mover or over always invalidate."""
    segs_m = curve_segments(chart, mover)
    segs_o = curve_segments(chart, over)
    for gm in range(len(segs_m)):
        lams = window_midpoints(chart, curves, mover, gm)
        for go in range(len(segs_o)):
            mus = window_midpoints(chart, curves, over, go)
            for lam in lams:
                for mu in mus:
                    arc = _straight_candidate(chart, curves, mover, over,
                                              gm, lam, go, mu, record_crossings)
                    if arc is not None:
                        yield arc


def straight_arc(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                 over: Curve, record_crossings: bool = False) -> Optional[SlideArc]:
    """First valid straight arc between attach windows of mover and over."""
    for arc in iter_straight_arcs(chart, curves, mover, over, record_crossings):
        return arc
    return None


def arc_candidates(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                   over: Curve, limit: int = 64):
    """Deterministic stream of valid arcs: quadrant arcs at crossings first,
    then clean straight arcs, then straight arcs with recorded crossings."""
    n = 0
    for arc in quadrant_arcs(chart, curves, mover, over):
        yield arc
        n += 1
        if n >= limit:
            return
    for arc in iter_straight_arcs(chart, curves, mover, over, False):
        yield arc
        n += 1
        if n >= limit:
            return
    for arc in iter_straight_arcs(chart, curves, mover, over, True):
        yield arc
        n += 1
        if n >= limit:
            return


def _straight_candidate(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                        over: Curve, gm: int, lam: Fraction, go: int, mu: Fraction,
                        record_crossings: bool) -> Optional[SlideArc]:
    start_pt = point_on_chord(chart, mover, gm, lam)
    end_pt = point_on_chord(chart, over, go, mu)
    if start_pt == end_pt:
        return None
    waypoints: list[ArcPoint] = []
    if record_crossings:
        seg = (start_pt, end_pt)
        hits = []
        for c in curves:
            for gi, chord in enumerate(curve_segments(chart, c)):
                if c.name == mover.name and gi == gm:
                    continue
                if c.name == over.name and gi == go:
                    continue
                try:
                    hit = segment_intersection(*seg, *chord)
                except NotInGeneralPosition:
                    return None
                if hit is not None:
                    if c.name in (mover.name, over.name):
                        return None
                    hits.append(hit)
        # waypoints must appear in order along the arc
        hits.sort(key=lambda p: _segment_param(seg, p))
        waypoints = [ArcPoint(*p) for p in hits]
    try:
        approach = _approach_of(chart, over, go, start_pt)
    except InvalidArc:
        return None
    arc = SlideArc(start=ArcEnd(gm, lam), end=ArcEnd(go, mu), approach=approach,
                   waypoints=tuple(waypoints))
    return _try_arc(chart, curves, mover, over, arc)


def build_recorded_arc(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                       over: Curve, start_gap: int, start_frac: Fraction,
                       end_gap: int, end_frac: Fraction,
                       side_waypoints=()) -> Optional[SlideArc]:
    """Complete a drawn arc: keep its side crossings, record every transverse
    crossing with third curves as interior waypoints (in polyline order), and
    derive the approach side exactly.  None if the route is unusable (it
    crosses the mover or the over curve, or makes degenerate contact)."""
    from .geometry import ArcEnd, ArcPoint, SlideArc, arc_polyline, validate_arc

    try:
        draft = SlideArc(ArcEnd(start_gap, start_frac), ArcEnd(end_gap, end_frac),
                         approach=1, waypoints=tuple(side_waypoints))
        segs = arc_polyline(chart, mover, over, draft)
    except (InvalidArc, NotInGeneralPosition):
        return None
    recorded: list[list] = []
    for si, seg in enumerate(segs):
        local = []
        for c in curves:
            for gi, chord in enumerate(curve_segments(chart, c)):
                if c.name == mover.name and gi == start_gap and si == 0:
                    continue
                if c.name == over.name and gi == end_gap and si == len(segs) - 1:
                    continue
                try:
                    hit = segment_intersection(*seg, *chord)
                except NotInGeneralPosition:
                    return None
                if hit is not None:
                    if c.name in (mover.name, over.name):
                        return None
                    local.append((_segment_param(seg, hit), hit))
        local.sort()
        recorded.append([h for _, h in local])
    full: list = []
    side_list = list(side_waypoints)
    for idx, w in enumerate(side_list):
        full.extend(ArcPoint(*p) for p in recorded[idx])
        full.append(w)
    full.extend(ArcPoint(*p) for p in recorded[len(side_list)])
    try:
        prev = segs[-1][0]
        appr = _approach_of(chart, over, end_gap, prev)
        arc = SlideArc(ArcEnd(start_gap, start_frac), ArcEnd(end_gap, end_frac),
                       appr, tuple(full))
        validate_arc(chart, curves, mover, over, arc)
        return arc
    except (InvalidArc, NotInGeneralPosition):
        return None


def corridor_arc(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                 host: Curve, parallel_gap_of_mover: int,
                 host_gap: int) -> Optional[SlideArc]:
    """Arc from `mover` across to the strand of `host` that runs parallel to
    mover's chord (host contains a pushoff copy of mover after a slide).

    `parallel_gap_of_mover` is the mover chord the strand shadows; `host_gap`
    is the corresponding chord of host."""
    lams = window_midpoints(chart, curves, mover, parallel_gap_of_mover)
    mus = window_midpoints(chart, curves, host, host_gap)
    for lam in lams:
        for mu in mus:
            arc = _straight_candidate(chart, curves, mover, host,
                                      parallel_gap_of_mover, lam, host_gap, mu, False)
            if arc is not None:
                return arc
    return None
