"""Exact combinatorial curves on the standard 4g-gon chart of a genus-g surface.

All geometry is exact rational arithmetic (fractions.Fraction), no floats and
no epsilons.  The chart is a convex 4g-gon with rational vertices near the
regular polygon; sides are glued in the standard pattern

    partner(4k) = 4k+2,  partner(4k+1) = 4k+3,   t on a side ~ 1-t on partner.

Reading convention: a curve exiting side 4(h-1)+r appends the letter
a_h, b_h^-1, a_h^-1, b_h for r = 0,1,2,3.  With this labelling the link of
the polygon vertex reads exactly the standard relator [a1,b1]...[ag,bg], so
null-homotopic curves have trivial words (tested).

A curve is a cyclic list of side crossings; consecutive crossings are joined
by straight chords (re-entry point to next exit point).  In a convex polygon
a straight chord is the minimal-position representative of its arc class rel
endpoints, so crossing data alone pins the diagram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .words import (
    CyclicWord,
    Word,
    canonical_cyclic,
    code_inverse,
    dehn_reduce_letters,
    invert_letters,
    letter_code,
)

Frac = Fraction
Point = tuple[Fraction, Fraction]

VERTEX_DENOM = 2**16


class InvalidSide(ValueError):
    pass


class NotInGeneralPosition(ValueError):
    pass


class InvalidArc(ValueError):
    pass


class PushoffCollision(ValueError):
    pass


# ---------------------------------------------------------------------------
# chart

def partner(genus: int, side: int) -> int:
    if not 0 <= side < 4 * genus:
        raise InvalidSide(f"side {side} out of range for genus {genus}")
    block, r = divmod(side, 4)
    return 4 * block + [2, 3, 0, 1][r]


def side_letter(side: int) -> int:
    """Letter appended when a curve exits through `side`."""
    h = side // 4 + 1
    r = side % 4
    return {
        0: letter_code(h, "a", 1),
        1: letter_code(h, "b", -1),
        2: letter_code(h, "a", -1),
        3: letter_code(h, "b", 1),
    }[r]


def side_for_letter(code: int) -> int:
    """Side whose outward crossing reads the given letter."""
    from .words import code_parts

    handle, kind, exp = code_parts(code)
    base = 4 * (handle - 1)
    if kind == "a":
        return base if exp == 1 else base + 2
    return base + 3 if exp == 1 else base + 1


@lru_cache(maxsize=None)
def chart_vertices(genus: int) -> tuple[Point, ...]:
    """Rational vertices near the regular 4g-gon, exactly convex."""
    n = 4 * genus
    verts = []
    for k in range(n):
        theta = 2 * math.pi * k / n
        x = Fraction(round(math.cos(theta) * VERTEX_DENOM), VERTEX_DENOM)
        y = Fraction(round(math.sin(theta) * VERTEX_DENOM), VERTEX_DENOM)
        verts.append((x, y))
    for k in range(n):
        a, b, c = verts[k], verts[(k + 1) % n], verts[(k + 2) % n]
        if _cross(_sub(b, a), _sub(c, b)) <= 0:
            raise RuntimeError(f"vertex approximation not convex at genus {genus}")
    return tuple(verts)


@dataclass(frozen=True)
class SurfaceChart:
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError(f"genus must be >= 1, got {self.genus}")

    @property
    def num_sides(self) -> int:
        return 4 * self.genus

    def partner(self, side: int) -> int:
        return partner(self.genus, side)

    def point_on_side(self, side: int, t: Fraction) -> Point:
        if not 0 < t < 1:
            raise NotInGeneralPosition(f"side parameter {t} not in (0,1)")
        verts = chart_vertices(self.genus)
        a = verts[side]
        b = verts[(side + 1) % self.num_sides]
        return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)

    def edge_key(self, side: int) -> int:
        return min(side, self.partner(side))

    def edge_position(self, side: int, t: Fraction) -> Fraction:
        """Position of the crossing point on the glued edge, measured on the
        lower-indexed side of the pair."""
        return t if side == self.edge_key(side) else 1 - t


# ---------------------------------------------------------------------------
# curves

@dataclass(frozen=True)
class SideCrossing:
    side: int
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        if not 0 < self.t < 1:
            raise NotInGeneralPosition(f"crossing parameter {self.t} not in (0,1)")


@dataclass(frozen=True)
class Curve:
    """Closed curve: cyclic side crossings joined by straight chords, or a
    closed interior polyline when there are no crossings."""

    name: str
    events: tuple[SideCrossing, ...] = ()
    polyline: tuple[Point, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "polyline", tuple(tuple(Fraction(c) for c in p) for p in self.polyline))
        if not self.events and len(self.polyline) not in (0, *range(3, 10**6)):
            raise NotInGeneralPosition("polyline fallback needs >= 3 points")

    def with_name(self, name: str) -> "Curve":
        return Curve(name, self.events, self.polyline)


def reverse_curve(chart: SurfaceChart, c: Curve) -> Curve:
    """Orientation-reversed copy: same point set on the surface, inverse word.

    The backward traversal exits each glued edge through the partner side."""
    events = tuple(SideCrossing(chart.partner(e.side), 1 - e.t)
                   for e in reversed(c.events))
    return Curve(c.name, events, tuple(reversed(c.polyline)))


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def _cross(u: Point, v: Point) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def curve_segments(chart: SurfaceChart, c: Curve) -> list[tuple[Point, Point]]:
    """Straight segments of the curve inside the polygon, in traversal order.

    Segment i runs from the re-entry point of events[i] to the exit point of
    events[i+1] (cyclically)."""
    if c.events:
        m = len(c.events)
        segs = []
        for i in range(m):
            e, f = c.events[i], c.events[(i + 1) % m]
            p = chart.point_on_side(chart.partner(e.side), 1 - e.t)
            q = chart.point_on_side(f.side, f.t)
            if p == q:
                raise NotInGeneralPosition(
                    f"zero-length chord on curve {c.name!r} between events {i} and {(i+1)%m}")
            segs.append((p, q))
        return segs
    if c.polyline:
        n = len(c.polyline)
        return [(c.polyline[i], c.polyline[(i + 1) % n]) for i in range(n)]
    return []


# ---------------------------------------------------------------------------
# exact segment intersection

def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Optional[Point]:
    """Transverse interior intersection point of two segments, or None.

    Raises NotInGeneralPosition on collinear overlap or on any endpoint
    contact (a segment endpoint lying on the other segment)."""
    d1 = _sub(p2, p1)
    d2 = _sub(q2, q1)
    denom = _cross(d1, d2)
    w = _sub(q1, p1)
    if denom == 0:
        if _cross(d1, w) == 0:
            # collinear: overlap iff projections overlap
            if d1[0] != 0:
                s1, s2 = sorted((p1[0], p2[0]))
                t1, t2 = sorted((q1[0], q2[0]))
            else:
                s1, s2 = sorted((p1[1], p2[1]))
                t1, t2 = sorted((q1[1], q2[1]))
            if s2 > t1 and t2 > s1:
                raise NotInGeneralPosition("collinear overlapping segments")
        return None
    s = _cross(w, d2) / denom
    u = _cross(w, d1) / denom
    if s < 0 or s > 1 or u < 0 or u > 1:
        return None
    if s in (0, 1) or u in (0, 1):
        raise NotInGeneralPosition("segment endpoint contact")
    return (p1[0] + d1[0] * s, p1[1] + d1[1] * s)


def intersections(chart: SurfaceChart, c1: Curve, c2: Curve) -> list[Point]:
    """Exact transverse intersection points of two distinct curves."""
    pts = set()
    for s1 in curve_segments(chart, c1):
        for s2 in curve_segments(chart, c2):
            p = segment_intersection(*s1, *s2)
            if p is not None:
                pts.add(p)
    return sorted(pts)


def self_intersections(chart: SurfaceChart, c: Curve) -> list[Point]:
    segs = curve_segments(chart, c)
    pts = set()
    n = len(segs)
    for i in range(n):
        for j in range(i + 1, n):
            if c.polyline and not c.events and (j == (i + 1) % n or i == (j + 1) % n):
                continue  # consecutive polyline segments share an endpoint
            p = segment_intersection(*segs[i], *segs[j])
            if p is not None:
                pts.add(p)
    return sorted(pts)


def is_embedded(chart: SurfaceChart, c: Curve) -> bool:
    return not self_intersections(chart, c)


# ---------------------------------------------------------------------------
# words from curves

def to_word(chart: SurfaceChart, c: Curve) -> CyclicWord:
    """Cyclic word read from exits, Dehn-reduced (genus >= 2) and canonical."""
    letters = tuple(side_letter(e.side) for e in c.events)
    if chart.genus >= 2:
        letters = dehn_reduce_letters(letters, chart.genus)
    return CyclicWord(chart.genus, letters)


def pull_tight(chart: SurfaceChart, c: Curve) -> Curve:
    """Remove immediate backtracks: an exit through a side followed by the
    inverse crossing of the same glued edge.  Word class is unchanged."""
    events = list(c.events)
    changed = True
    while changed and events:
        changed = False
        m = len(events)
        for i in range(m):
            j = (i + 1) % m
            if i != j and events[j].side == chart.partner(events[i].side):
                for k in sorted((i, j), reverse=True):
                    events.pop(k)
                changed = True
                break
    if events:
        return Curve(c.name, tuple(events))
    if c.events:
        return Curve(c.name, (), _default_polyline())
    return c


def _default_polyline(shift: int = 0) -> tuple[Point, ...]:
    dx = Fraction(shift, 64)
    return (
        (Fraction(1, 8) + dx, Fraction(1, 8)),
        (Fraction(1, 4) + dx, Fraction(1, 16)),
        (Fraction(3, 16) + dx, Fraction(1, 4)),
    )


# ---------------------------------------------------------------------------
# edge occupancy and fresh parameters

def edge_points(chart: SurfaceChart, curves: Iterable[Curve]) -> dict[int, list[Fraction]]:
    """Occupied positions per glued edge (keyed by the lower side index)."""
    occ: dict[int, set[Fraction]] = {}
    for c in curves:
        for e in c.events:
            key = chart.edge_key(e.side)
            pos = chart.edge_position(e.side, e.t)
            bucket = occ.setdefault(key, set())
            if pos in bucket:
                raise NotInGeneralPosition(
                    f"duplicate edge point {pos} on edge {key} (curve {c.name!r})")
            bucket.add(pos)
    return {k: sorted(v) for k, v in occ.items()}


def check_general_position(chart: SurfaceChart, curves: Sequence[Curve]):
    edge_points(chart, curves)  # raises on duplicates


def min_edge_gap(chart: SurfaceChart, curves: Iterable[Curve],
                 extra: Iterable[SideCrossing] = ()) -> Fraction:
    """Smallest gap between occupied points on any edge, including the gaps
    to the edge endpoints."""
    occ: dict[int, list[Fraction]] = {}
    for c in curves:
        for e in c.events:
            occ.setdefault(chart.edge_key(e.side), []).append(chart.edge_position(e.side, e.t))
    for e in extra:
        occ.setdefault(chart.edge_key(e.side), []).append(chart.edge_position(e.side, e.t))
    best = Fraction(1)
    for pts in occ.values():
        pts = sorted(pts)
        seq = [Fraction(0)] + pts + [Fraction(1)]
        for a, b in zip(seq, seq[1:]):
            gap = b - a
            if gap < best:
                best = gap
    return best


def fresh_parameter(chart: SurfaceChart, curves: Iterable[Curve], side: int) -> Fraction:
    """Deterministic unused parameter on `side`, clear of all edge points."""
    key = chart.edge_key(side)
    occupied = set()
    for c in curves:
        for e in c.events:
            if chart.edge_key(e.side) == key:
                occupied.add(chart.edge_position(e.side, e.t))
    pts = sorted(occupied)
    seq = [Fraction(0)] + pts + [Fraction(1)]
    best_gap = max(range(len(seq) - 1), key=lambda i: seq[i + 1] - seq[i])
    pos = (seq[best_gap] + seq[best_gap + 1]) / 2
    return pos if side == key else 1 - pos


def curve_from_word(chart: SurfaceChart, w: Word, name: str,
                    existing: Sequence[Curve] = ()) -> Curve:
    """One crossing per letter, on the side carrying that letter, at fresh
    parameters; to_word of the result is conjugate to w.

    The cyclic reduction of w is what gets placed: a cyclic backtrack would
    force a chord onto the polygon boundary, which has no transverse model."""
    from .words import cyclic_reduce

    letters = cyclic_reduce(w.letters)
    if not letters:
        return Curve(name, (), _default_polyline(len(tuple(existing))))
    events: list[SideCrossing] = []
    pool = list(existing)
    for code in letters:
        side = side_for_letter(code)
        t = fresh_parameter(chart, pool, side)
        ev = SideCrossing(side, t)
        events.append(ev)
        pool.append(Curve("_tmp", (ev,)))
    return Curve(name, tuple(events))


# ---------------------------------------------------------------------------
# slide arcs

@dataclass(frozen=True)
class ArcEnd:
    gap: int
    fraction: Fraction

    def __post_init__(self):
        object.__setattr__(self, "fraction", Fraction(self.fraction))
        if not 0 < self.fraction < 1:
            raise InvalidArc(f"attach fraction {self.fraction} not in (0,1)")


@dataclass(frozen=True)
class ArcPoint:
    """Interior waypoint: either a bend or a recorded transverse crossing."""
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @property
    def point(self) -> Point:
        return (self.x, self.y)


@dataclass(frozen=True)
class SlideArc:
    """Embedded connecting path from a point on the mover to a point on the
    over curve.  Waypoints are SideCrossing (the arc passes through a glued
    edge) or ArcPoint (bend, or recorded crossing with a diagram curve).
    `approach` is the side of the over chord the arc arrives from, as the
    sign of the cross product with the chord direction."""

    start: ArcEnd
    end: ArcEnd
    approach: int = 1
    waypoints: tuple = ()

    def __post_init__(self):
        if self.approach not in (1, -1):
            raise InvalidArc("approach must be +1 or -1")
        object.__setattr__(self, "waypoints", tuple(self.waypoints))

    def side_crossings(self) -> list[SideCrossing]:
        return [w for w in self.waypoints if isinstance(w, SideCrossing)]

    def letters(self) -> tuple[int, ...]:
        return tuple(side_letter(w.side) for w in self.side_crossings())


def point_on_chord(chart: SurfaceChart, c: Curve, gap: int, fraction: Fraction) -> Point:
    segs = curve_segments(chart, c)
    if not 0 <= gap < len(segs):
        raise InvalidArc(f"gap {gap} out of range for curve {c.name!r}")
    p, q = segs[gap]
    return (p[0] + (q[0] - p[0]) * fraction, p[1] + (q[1] - p[1]) * fraction)


def arc_polyline(chart: SurfaceChart, mover: Curve, over: Curve,
                 arc: SlideArc) -> list[tuple[Point, Point]]:
    """Segments of the arc inside the polygon, split at side crossings."""
    start = point_on_chord(chart, mover, arc.start.gap, arc.start.fraction)
    end = point_on_chord(chart, over, arc.end.gap, arc.end.fraction)
    segs = []
    cur = start
    for w in arc.waypoints:
        if isinstance(w, SideCrossing):
            out_pt = chart.point_on_side(w.side, w.t)
            segs.append((cur, out_pt))
            cur = chart.point_on_side(chart.partner(w.side), 1 - w.t)
        elif isinstance(w, ArcPoint):
            segs.append((cur, w.point))
            cur = w.point
        else:
            raise InvalidArc(f"bad waypoint {w!r}")
    segs.append((cur, end))
    return [s for s in segs if s[0] != s[1]]


def validate_arc(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                 over: Curve, arc: SlideArc):
    """Check the SlideArc invariants against the whole diagram: embedded, and
    interior disjoint from every curve except at recorded waypoints."""
    if mover.name == over.name:
        raise InvalidArc("mover and over must differ")
    if not mover.events:
        raise InvalidArc("cannot slide an interior polyline curve")
    segs = arc_polyline(chart, mover, over, arc)
    start = point_on_chord(chart, mover, arc.start.gap, arc.start.fraction)
    end = point_on_chord(chart, over, arc.end.gap, arc.end.fraction)
    recorded = {w.point for w in arc.waypoints if isinstance(w, ArcPoint)}

    # fresh edge positions for side-crossing waypoints
    occupied = edge_points(chart, curves)
    seen = set()
    for w in arc.side_crossings():
        key = chart.edge_key(w.side)
        pos = chart.edge_position(w.side, w.t)
        if pos in occupied.get(key, []) or (key, pos) in seen:
            raise InvalidArc(f"arc crossing ({w.side},{w.t}) collides with an edge point")
        seen.add((key, pos))

    # arc embedded: non-adjacent segments disjoint
    for i in range(len(segs)):
        for j in range(i + 2, len(segs)):
            try:
                hit = segment_intersection(*segs[i], *segs[j])
            except NotInGeneralPosition as exc:
                raise InvalidArc(f"arc self-contact: {exc}") from exc
            if hit is not None:
                raise InvalidArc("arc is not embedded")

    actual = set()
    for si, seg in enumerate(segs):
        for c in curves:
            for gi, chord in enumerate(curve_segments(chart, c)):
                attach_start = (c.name == mover.name and gi == arc.start.gap and si == 0)
                attach_end = (c.name == over.name and gi == arc.end.gap and si == len(segs) - 1)
                try:
                    hit = segment_intersection(*seg, *chord)
                except NotInGeneralPosition:
                    # endpoint contact: allowed where the arc attaches, and at
                    # recorded waypoints (the polyline is split there, so the
                    # transverse crossing shows up as two endpoint contacts)
                    if attach_start and _point_on_segment(start, chord):
                        continue
                    if attach_end and _point_on_segment(end, chord):
                        continue
                    contact = next((p for p in seg
                                    if p in recorded and _point_on_segment(p, chord)), None)
                    if contact is not None and _transverse_at(segs, contact, chord):
                        actual.add(contact)
                        continue
                    raise InvalidArc(
                        f"arc touches curve {c.name!r} chord {gi} non-transversally")
                if hit is not None:
                    if hit not in recorded:
                        raise InvalidArc(
                            f"arc crosses curve {c.name!r} at unrecorded point {hit}")
                    actual.add(hit)
    if actual != recorded:
        missing = recorded - actual
        raise InvalidArc(f"recorded waypoints never crossed: {sorted(missing)}")


def _transverse_at(segs, pt: Point, chord: tuple[Point, Point]) -> bool:
    """True if the arc polyline genuinely crosses the chord at pt: the two
    polyline pieces meeting there leave on opposite sides."""
    incoming = next((s for s in segs if s[1] == pt), None)
    outgoing = next((s for s in segs if s[0] == pt), None)
    if incoming is None or outgoing is None:
        return False
    d = _sub(chord[1], chord[0])
    s_in = _cross(d, _sub(incoming[0], pt))
    s_out = _cross(d, _sub(outgoing[1], pt))
    return s_in != 0 and s_out != 0 and (s_in > 0) != (s_out > 0)


def _point_on_segment(p: Point, seg: tuple[Point, Point]) -> bool:
    a, b = seg
    if _cross(_sub(b, a), _sub(p, a)) != 0:
        return False
    lo_x, hi_x = sorted((a[0], b[0]))
    lo_y, hi_y = sorted((a[1], b[1]))
    return lo_x <= p[0] <= hi_x and lo_y <= p[1] <= hi_y


# ---------------------------------------------------------------------------
# the slide (connected sum along an arc)

def arc_approach_side(chart: SurfaceChart, mover: Curve, over: Curve, arc: SlideArc) -> int:
    """Geometric side of the over chord from which the arc arrives."""
    segs = arc_polyline(chart, mover, over, arc)
    w, q = segs[-1]
    a, b = curve_segments(chart, over)[arc.end.gap]
    side = _cross(_sub(b, a), _sub(w, q))
    if side == 0:
        raise InvalidArc("arc arrives along the over chord")
    return 1 if side > 0 else -1


def pushoff_side_sign(chart: SurfaceChart, over: Curve, gap: int, want_side: int) -> int:
    """Parameter shift sign (+1/-1) that places the parallel copy of `over`
    on geometric side `want_side` of its chord `gap`."""
    segs = curve_segments(chart, over)
    a, b = segs[gap]
    e = over.events[gap]
    probe = Fraction(1, 10**9)
    for sigma in (1, -1):
        p_shift = chart.point_on_side(chart.partner(e.side), 1 - (e.t + sigma * probe))
        side = _cross(_sub(b, a), _sub(p_shift, a))
        if side > 0 and want_side == 1:
            return sigma
        if side < 0 and want_side == -1:
            return sigma
    raise PushoffCollision("cannot place pushoff on requested side")


def parallel_copy(chart: SurfaceChart, c: Curve, delta: Fraction, name: str | None = None) -> Curve:
    """Parallel pushoff: every crossing parameter shifted by delta."""
    events = tuple(SideCrossing(e.side, e.t + delta) for e in c.events)
    return Curve(name or f"{c.name}~", events)


@dataclass(frozen=True)
class SlideInfo:
    """Construction record of one slide: where the band events landed in the
    new mover's event list."""
    insert_at: int       # index of the first inserted event
    strand_len: int      # side crossings per strand of the band
    push_len: int        # events of the pushoff cycle
    sigma: int           # pushoff parameter shift sign
    delta: Fraction
    eta: Fraction

    @property
    def push_start(self) -> int:
        return self.insert_at + self.strand_len

    @property
    def push_end(self) -> int:
        return self.push_start + self.push_len


def slide(chart: SurfaceChart, curves: Sequence[Curve], mover_name: str,
          over_name: str, sign: int, arc: SlideArc,
          offset: Fraction | None = None) -> list[Curve]:
    """Replace the mover by its band sum with a parallel pushoff of the over
    curve along the arc.  Returns the new curve list (all others unchanged).

    The new word class is  w_mover . p w_over^sign p^-1  for p the arc word;
    homology changes by sign * [over].
    """
    out, _ = slide_with_info(chart, curves, mover_name, over_name, sign, arc, offset)
    return out


def slide_with_info(chart: SurfaceChart, curves: Sequence[Curve], mover_name: str,
                    over_name: str, sign: int, arc: SlideArc,
                    offset: Fraction | None = None) -> tuple[list[Curve], SlideInfo]:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    by_name = {c.name: c for c in curves}
    if mover_name not in by_name or over_name not in by_name:
        raise KeyError("unknown curve name")
    mover = by_name[mover_name]
    over = by_name[over_name]
    validate_arc(chart, curves, mover, over, arc)

    arc_sides = arc.side_crossings()
    base_gap = min_edge_gap(chart, curves, extra=arc_sides)
    delta = offset if offset is not None else base_gap / 2
    eta = base_gap / 4
    if not 0 < delta < base_gap:
        raise PushoffCollision(f"pushoff offset {delta} outside (0, {base_gap})")

    geo = arc_approach_side(chart, mover, over, arc)
    if geo != arc.approach:
        raise InvalidArc(f"arc approach {arc.approach} disagrees with geometry ({geo})")
    sigma = pushoff_side_sign(chart, over, arc.end.gap, geo)

    strand_a = [SideCrossing(w.side, w.t + eta) for w in arc_sides]
    strand_b = [SideCrossing(chart.partner(w.side), (1 - w.t) + eta)
                for w in reversed(arc_sides)]

    n = len(over.events)
    j = arc.end.gap
    push: list[SideCrossing] = []
    if sign == 1:
        order = [(j + 1 + k) % n for k in range(n)]
        for idx in order:
            e = over.events[idx]
            push.append(SideCrossing(e.side, e.t + sigma * delta))
    else:
        order = [(j - k) % n for k in range(n)]
        for idx in order:
            e = over.events[idx]
            push.append(SideCrossing(chart.partner(e.side), 1 - (e.t + sigma * delta)))

    g = arc.start.gap
    ev = mover.events
    new_events = ev[:g + 1] + tuple(strand_a) + tuple(push) + tuple(strand_b) + ev[g + 1:]
    new_mover = Curve(mover.name, new_events)

    out = [new_mover if c.name == mover_name else c for c in curves]
    check_general_position(chart, out)
    # the band sum need not be embedded ("a^s might not be a simple closed
    # curve"); callers that require embeddedness check is_embedded themselves
    info = SlideInfo(insert_at=g + 1, strand_len=len(strand_a), push_len=len(push),
                     sigma=sigma, delta=delta, eta=eta)
    return out, info


def slide_word_letters(mover: Curve, over: Curve, arc: SlideArc, sign: int) -> tuple[int, ...]:
    """Letters of the slid mover, by the construction: mover rotated past the
    cut, then arc word, pushoff word, inverse arc word."""
    g = arc.start.gap
    m = len(mover.events)
    mover_rot = tuple(side_letter(mover.events[(g + 1 + k) % m].side) for k in range(m))
    p = arc.letters()
    n = len(over.events)
    j = arc.end.gap
    if sign == 1:
        over_rot = tuple(side_letter(over.events[(j + 1 + k) % n].side) for k in range(n))
    else:
        over_rot = tuple(code_inverse(side_letter(over.events[(j - k) % n].side)) for k in range(n))
    return mover_rot + p + over_rot + invert_letters(p)
