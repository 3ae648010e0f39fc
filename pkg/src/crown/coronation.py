"""Coronation of a Lefschetz fibration: stabilize the fiber, build the
pseudocoronation, merge the wrinkled triangles into the main circle, and emit
a certificate that the result is slide-equivalent to the pseudocoronation.

The stabilized chart has one extra handle.  The disk pair of a surgered
diagram is represented throughout by its boundary curve: b_1 is the meridian
of the new handle, and g_1 is the dual curve threading the handle and then
running across the old handles so that it crosses every r_i exactly once, in
order.  g_1 is found by an exact router: straight passes between free edge
intervals, teleporting through the gluing, with the crossing profile of every
pass checked rationally.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arcs import arc_candidates
from .diagrams import (
    ComparisonPolicy,
    CrownDiagram,
    IsotopyStep,
    LefschetzFibration,
    SlideCertificate,
    SlideStep,
    Step,
    equal_up_to,
)
from .geometry import (
    Curve,
    InvalidArc,
    NotInGeneralPosition,
    SideCrossing,
    SurfaceChart,
    curve_segments,
    intersections,
    is_embedded,
    min_edge_gap,
    parallel_copy,
    segment_intersection,
    to_word,
)
from .moves import NotApplicable, _Work
from .words import abelianize, is_conjugate

log = logging.getLogger("crown.coronation")


class UnsupportedGenus(ValueError):
    pass


class PathNotFound(ValueError):
    pass


class InvalidPath(ValueError):
    pass


class CoronationBlocked(ValueError):
    def __init__(self, stage: str, index: int, reason: str):
        super().__init__(f"stage {stage}, triangle {index}: {reason}")
        self.stage = stage
        self.index = index


@dataclass(frozen=True)
class StabilizedChart:
    base_genus: int
    chart: SurfaceChart

    @property
    def new_handle(self) -> int:
        return self.base_genus + 1


@dataclass(frozen=True)
class Triangle:
    """One wrinkled Lefschetz critical point: surgery cycle b, connector g,
    and the stabilized vanishing cycle r."""
    b: Curve
    g: Curve
    r: Curve


@dataclass(frozen=True)
class CoronationResult:
    coronation: CrownDiagram
    pseudocoronation: tuple[Curve, ...]
    certificate: SlideCertificate
    merge_logs: tuple[tuple[str, ...], ...]
    path: tuple[SideCrossing, ...]
    # working-diagram snapshot after each merge, for step-by-step inspection
    stages: tuple[tuple[Curve, ...], ...] = ()


def stabilize(fib: LefschetzFibration) -> tuple[StabilizedChart, tuple[Curve, ...]]:
    """Genus g+1 chart; every vanishing cycle carries over verbatim as r_i."""
    g = fib.chart.genus
    if g < 2:
        raise UnsupportedGenus("coronation needs fiber genus >= 2")
    chart = SurfaceChart(g + 1)
    rs = tuple(c.with_name(f"r{i+1}") for i, c in enumerate(fib.cycles))
    return StabilizedChart(g, chart), rs


def meridian_curve(stab: StabilizedChart, t: Fraction, name: str = "b1") -> Curve:
    """The new handle's meridian (word a_{g+1})."""
    return Curve(name, (SideCrossing(4 * stab.base_genus, t),))


# ---------------------------------------------------------------------------
# exact routing of the dual curve

def _pass_profile(chart: SurfaceChart, seg, curves: Sequence[Curve]):
    """Names of curves crossed by one straight pass, in order along it, or
    None if the pass has any non-transverse contact."""
    hits = []
    for c in curves:
        for chord in curve_segments(chart, c):
            try:
                p = segment_intersection(*seg, *chord)
            except NotInGeneralPosition:
                return None
            if p is not None:
                d = (seg[1][0] - seg[0][0], seg[1][1] - seg[0][1])
                w = (p[0] - seg[0][0], p[1] - seg[0][1])
                frac = w[0] / d[0] if d[0] != 0 else w[1] / d[1]
                hits.append((frac, c.name))
    hits.sort()
    return [name for _, name in hits]


def _interval_points(chart: SurfaceChart, curves: Sequence[Curve]) -> list[SideCrossing]:
    """Candidate teleport crossings: a few fresh points in every free interval
    of every glued edge, expressed on the lower-indexed side."""
    occ: dict[int, list[Fraction]] = {}
    for key in range(chart.num_sides):
        if key == chart.edge_key(key):
            occ[key] = []
    for c in curves:
        for e in c.events:
            occ[chart.edge_key(e.side)].append(chart.edge_position(e.side, e.t))
    out = []
    for key, pts in occ.items():
        seq = [Fraction(0)] + sorted(pts) + [Fraction(1)]
        for a, b in zip(seq, seq[1:]):
            if a == b:
                continue
            for num in (2, 3):
                for j in range(1, num):
                    out.append(SideCrossing(key, a + (b - a) * Fraction(j, num)))
    # dedupe (the midpoint shows up for num=2 only, but intervals may repeat)
    seen = set()
    uniq = []
    for sc in out:
        if (sc.side, sc.t) not in seen:
            seen.add((sc.side, sc.t))
            uniq.append(sc)
    return uniq


def iter_dual_curves(stab: StabilizedChart, b1: Curve, rs: Sequence[Curve],
                     t_b: Fraction, max_passes: int = 8, name: str = "g1"):
    """Dual-curve candidates in breadth-first order: one crossing through the
    new handle (letter b_{g+1}) followed by teleporting passes whose total
    crossing profile is b1 once (on the first pass) then r_1, ..., r_n in
    order and nothing else.  Yields embedded curves."""
    chart = stab.chart
    curves = [b1, *rs]
    base = 4 * stab.base_genus
    handle_event = SideCrossing(base + 3, t_b)
    start = chart.point_on_side(chart.partner(base + 3), 1 - t_b)
    goal = chart.point_on_side(base + 3, t_b)
    required = [c.name for c in rs]
    candidates = _interval_points(chart, curves)

    from collections import deque

    def pass_ok(profile, progress, first):
        if profile is None:
            return None
        want_b1 = 1 if first else 0
        if profile.count(b1.name) != want_b1:
            return None
        rest = [p for p in profile if p != b1.name]
        take = required[progress:progress + len(rest)]
        if rest != take:
            return None
        return progress + len(rest)

    queue = deque([(start, 0, (), frozenset())])
    seen_states: dict[tuple, int] = {}
    while queue:
        point, progress, events, used = queue.popleft()
        first = not events
        prof = _pass_profile(chart, (point, goal), curves)
        upd = pass_ok(prof, progress, first)
        if upd == len(required):
            cand = Curve(name, (handle_event,) + events)
            try:
                if is_embedded(chart, cand):
                    yield cand
            except NotInGeneralPosition:
                pass
        if len(events) >= max_passes:
            continue
        for sc in candidates:
            key = (sc.side, sc.t)
            if key in used:
                continue
            for side in (sc.side, chart.partner(sc.side)):
                t = sc.t if side == sc.side else 1 - sc.t
                exit_pt = chart.point_on_side(side, t)
                if exit_pt == point:
                    continue
                prof = _pass_profile(chart, (point, exit_pt), curves)
                upd = pass_ok(prof, progress, first)
                if upd is None:
                    continue
                state = (exit_pt, upd)
                # allow a few distinct routes through the same state so the
                # caller can retry the pipeline with alternatives
                if seen_states.get(state, 0) >= 2:
                    continue
                seen_states[state] = seen_states.get(state, 0) + 1
                ev = SideCrossing(side, t)
                nxt_point = chart.point_on_side(chart.partner(side), 1 - t)
                queue.append((nxt_point, upd, events + (ev,), used | {key}))


def route_dual_curve(stab: StabilizedChart, b1: Curve, rs: Sequence[Curve],
                     t_b: Fraction, max_passes: int = 8,
                     name: str = "g1") -> Optional[Curve]:
    for cand in iter_dual_curves(stab, b1, rs, t_b, max_passes, name):
        return cand
    return None


# ---------------------------------------------------------------------------
# pseudocoronation and wrinkling

def _path_to_curve(stab: StabilizedChart, phi: Sequence[SideCrossing],
                   t_b: Fraction, name: str = "g1") -> Curve:
    base = 4 * stab.base_genus
    return Curve(name, (SideCrossing(base + 3, t_b),) + tuple(phi))


def _check_dual_curve(stab: StabilizedChart, g1: Curve, b1: Curve,
                      rs: Sequence[Curve]):
    """The pseudocoronation conditions on the dual curve: embedded, one
    crossing with b1, one with every r_i, in order along the traversal."""
    chart = stab.chart
    if not is_embedded(chart, g1):
        raise InvalidPath("dual curve is not embedded")
    if len(intersections(chart, g1, b1)) != 1:
        raise InvalidPath("dual curve must cross the meridian exactly once")
    order = _crossing_order(chart, g1, rs)
    if order is None or order != [c.name for c in rs]:
        raise InvalidPath(
            f"dual curve must cross r_1..r_n once each in order, got {order}")


def _crossing_order(chart: SurfaceChart, curve: Curve, others: Sequence[Curve]):
    """Names of `others` in the order the curve's traversal crosses them, or
    None on degenerate contact."""
    hits = []
    segs = curve_segments(chart, curve)
    for gi, seg in enumerate(segs):
        local = []
        for c in others:
            for chord in curve_segments(chart, c):
                try:
                    p = segment_intersection(*seg, *chord)
                except NotInGeneralPosition:
                    return None
                if p is not None:
                    d = (seg[1][0] - seg[0][0], seg[1][1] - seg[0][1])
                    w = (p[0] - seg[0][0], p[1] - seg[0][1])
                    frac = w[0] / d[0] if d[0] != 0 else w[1] / d[1]
                    local.append((frac, c.name))
        local.sort()
        hits.extend(name for _, name in local)
    return hits


def pseudocoronate(fib: LefschetzFibration,
                   phi: Sequence[SideCrossing] | None = None,
                   t_a: Fraction = Fraction(1, 2),
                   t_b: Fraction = Fraction(1, 2)
                   ) -> tuple[StabilizedChart, tuple[Curve, ...], tuple[SideCrossing, ...]]:
    """The sequence (b_1, r_1, g_1, r_2, ..., r_n) on the stabilized chart.

    phi is the teleport list of the dual curve's route; AUTO (None) runs the
    exact router and fails loudly when no admissible path exists."""
    stab, rs = stabilize(fib)
    b1 = meridian_curve(stab, t_a)
    if phi is None:
        g1 = route_dual_curve(stab, b1, rs, t_b)
        if g1 is None:
            raise PathNotFound("no admissible dual-curve path found; supply one")
    else:
        g1 = _path_to_curve(stab, phi, t_b)
    _check_dual_curve(stab, g1, b1, rs)
    seq = (b1, rs[0], g1) + tuple(rs[1:])
    used_phi = tuple(g1.events[1:])
    return stab, seq, used_phi


def wrinkle(fib: LefschetzFibration,
            phi: Sequence[SideCrossing] | None = None) -> tuple[StabilizedChart, tuple[Triangle, ...]]:
    """One triangle (b_i, g_i, r_i) per vanishing cycle; the b_i and the g_i
    are parallel copies of b_1 and g_1 at distinct parameters."""
    stab, seq, used_phi = pseudocoronate(fib, phi)
    b1, g1 = seq[0], seq[2]
    rs = (seq[1],) + seq[3:]
    n = len(rs)
    curves = list(seq)
    triangles = [Triangle(b1, g1, rs[0])]
    for i in range(2, n + 1):
        gap = min_edge_gap(stab.chart, curves)
        delta = gap * Fraction(1, 3)
        b_i = parallel_copy(stab.chart, b1, delta, f"b{i}")
        g_i = parallel_copy(stab.chart, g1, 2 * delta, f"g{i}")
        triangles.append(Triangle(b_i, g_i, rs[i - 1]))
        curves += [b_i, g_i]
    return stab, tuple(triangles)


# ---------------------------------------------------------------------------
# the switching push map

def switching_push(chart: SurfaceChart, curves: Sequence[Curve], a_name: str,
                   b_name: str, c_name: str) -> tuple[Curve, SlideCertificate]:
    """Push the two surgery disks along b and then c past the cycle a.

    The pushed curve is modelled directly (parallel loops of b and c carried
    into a); the certificate is a pair of slides over b then c whose
    composition lands in the same class, found by sign search.  Raises when
    the two constructions cannot be matched."""
    names = [c.name for c in curves]
    ia, ib, ic = names.index(a_name), names.index(b_name), names.index(c_name)
    direct = _direct_push(chart, curves, ia, ib, ic)
    if direct is None:
        raise NotApplicable("no room to push the disks past the cycle")
    target = to_word(chart, direct)
    work = _Work(chart, curves)
    base = work.mark()
    for s1 in (1, -1):
        work.rollback(base)
        if not work.slide_any_arc(ia, ib, s1, limit=24):
            continue
        for s2 in (1, -1):
            mark = work.mark()
            if work.slide_any_arc(ia, ic, s2, target=target, limit=24):
                return direct.with_name(a_name), SlideCertificate(tuple(work.steps))
            work.rollback(mark)
    raise NotApplicable("push construction disagrees with every slide pair")


def _direct_push(chart: SurfaceChart, curves: Sequence[Curve], ia: int,
                 ib: int, ic: int) -> Optional[Curve]:
    """Event-level model of the disks switching places: parallel loops of b
    and c inserted into a at its first gap."""
    a, b, c = curves[ia], curves[ib], curves[ic]
    try:
        gap = min_edge_gap(chart, curves)
        push_b = parallel_copy(chart, b, gap / 5).events
        push_c = parallel_copy(chart, c, gap * Fraction(2, 7)).events
        return Curve(a.name, a.events[:1] + push_b + push_c + a.events[1:])
    except NotInGeneralPosition:
        return None


# ---------------------------------------------------------------------------
# arcs that follow a host curve to another curve

def _corridor_arcs(chart: SurfaceChart, curves: Sequence[Curve], mover: Curve,
                   host: Curve, over: Curve):
    """Arcs from `mover`, leaving next to one of its crossings with `host`,
    running inside a tubular corridor of `host` to one of host's crossings
    with `over`, and attaching there.  These realize the paper's
    "slide along x" arcs.  Yields validated SlideArc values."""
    from .arcs import (_approach_of, _segment_param, chord_feature_fractions,
                       locate_point, window_around)
    from .geometry import ArcEnd, ArcPoint, SlideArc, validate_arc

    try:
        z_points = intersections(chart, mover, host)
        w_points = intersections(chart, host, over)
    except NotInGeneralPosition:
        return
    if not z_points or not w_points:
        return
    host_segs = curve_segments(chart, host)
    gap = min_edge_gap(chart, curves)
    eps = gap / 3

    for z in z_points:
        gz_m, fz_m = locate_point(chart, mover, z)
        gz_h, fz_h = locate_point(chart, host, z)
        feats = chord_feature_fractions(chart, curves, mover, gz_m)
        for p_dir in (1, -1):
            lo, hi = window_around(feats, fz_m, p_dir)
            if lo == hi:
                continue
            lam = (lo + hi) / 2
            for direction in (1, -1):
                for sigma in (1, -1):
                    for w in w_points:
                        arc = _build_corridor_arc(
                            chart, curves, mover, host, over, gz_m, lam,
                            gz_h, fz_h, direction, sigma * eps, w)
                        if arc is None:
                            continue
                        try:
                            validate_arc(chart, curves, mover, over, arc)
                        except (InvalidArc, NotInGeneralPosition):
                            continue
                        yield arc


def _build_corridor_arc(chart, curves, mover, host, over, gm, lam,
                        gh, fh, direction, offset, w_target):
    """One corridor candidate: waypoints shadow host's crossings (parameter
    shifted by `offset`) from the start chord to the chord carrying the
    target crossing with `over`."""
    from .arcs import _approach_of, _segment_param, chord_feature_fractions, locate_point, window_around
    from .geometry import ArcEnd, ArcPoint, SlideArc

    host_segs = curve_segments(chart, host)
    n = len(host_segs)
    try:
        gw, fw = locate_point(chart, over, w_target)
        gw_h, fw_h = locate_point(chart, host, w_target)
    except InvalidArc:
        return None

    waypoints = []
    g = gh
    steps = 0
    while g != gw_h and steps <= n:
        steps += 1
        if direction == 1:
            ev = host.events[(g + 1) % n]
            t = ev.t + offset
            side = ev.side
            g = (g + 1) % n
        else:
            ev = host.events[g % n]
            side = chart.partner(ev.side)
            t = (1 - ev.t) + offset
            g = (g - 1) % n
        if not 0 < t < 1:
            return None
        waypoints.append(SideCrossing(side, t))
    if g != gw_h:
        return None

    # attach on the over chord, in the window next to the target crossing on
    # the offset side of the host chord
    from .arcs import build_recorded_arc

    feats = chord_feature_fractions(chart, curves, over, gw)
    for o_dir in (1, -1):
        lo, hi = window_around(feats, fw, o_dir)
        if lo == hi:
            continue
        mu = (lo + hi) / 2
        arc = build_recorded_arc(chart, curves, mover, over, gm, lam, gw, mu,
                                 tuple(waypoints))
        if arc is not None:
            return arc
    return None


# ---------------------------------------------------------------------------
# the merge pipeline

def _stage_a(work: _Work, ri_idx: int, b1_idx: int, x_idx: int,
             tri_index: int) -> tuple[int, bool]:
    """Slide r_i over b_1 along x, each slide removing one crossing of r_i
    with x, until they are disjoint.  When no arc achieves the strict
    decrease (the dual curve's global winding can force a residual pair the
    surgered picture does not see) the stage stops early: the checkpoint of
    stage B and the final certificate carry correctness either way.

    Returns (signed slide count, reached_disjoint)."""
    chart = work.chart
    signed = 0
    guard = 0
    while True:
        m = len(intersections(chart, work.curves[ri_idx], work.curves[x_idx]))
        if m == 0:
            return signed, True
        guard += 1
        if guard > m + 8:
            return signed, False
        done = False
        for arc, sign in _stage_a_candidates(work, ri_idx, b1_idx, x_idx):
            saved = work.mark()
            if not work.try_slide(ri_idx, b1_idx, sign, arc):
                continue
            m2 = len(intersections(chart, work.curves[ri_idx], work.curves[x_idx]))
            if m2 == m - 1:
                signed += sign
                done = True
                break
            work.rollback(saved)
        if not done:
            return signed, False


def _stage_a_candidates(work: _Work, ri_idx: int, b1_idx: int, x_idx: int):
    chart = work.chart
    mover = work.curves[ri_idx]
    b1 = work.curves[b1_idx]
    x = work.curves[x_idx]
    for arc in _corridor_arcs(chart, work.curves, mover, x, b1):
        for sign in (1, -1):
            yield arc, sign
    for arc in arc_candidates(chart, work.curves, mover, b1, 24):
        for sign in (1, -1):
            yield arc, sign


def _stage_b(work: _Work, gi_idx: int, g1_idx: int, b1_idx: int, ri_a_idx: int,
             x_idx: int, r_orig: Curve, s_a: int, tri_index: int,
             l1: int = 8, l2: int = 8, l3: int = 24, tail: int = 16) -> tuple[list, int]:
    """The merge-step slide ledger for g_i: over g_1^s (= g_1 then b_1), then
    r_i, reaching a class conjugate to the original r_i (the checkpoint),
    then over g_1^s again and finally over x.

    Arc choices are searched with backtracking; the checkpoint conjugacy is
    the filter.  Returns the recorded classes [pre6, pre5, pre4] (the targets
    of the certificate inversions) and the checkpoint orientation."""
    chart = work.chart
    w_target = to_word(chart, r_orig)
    base = work.mark()
    for eps in (1, -1):
        target = w_target if eps == 1 else w_target.inverse()
        beta = -eps if s_a > 0 else eps
        # the g_1^s / r_i slide pair is searched in both orders: the targeted
        # slide goes last, which keeps the intermediates away from the
        # trivial class (an event-free curve cannot slide further)
        for first_over, first_sign, last_over, last_sign in (
                (ri_a_idx, eps, g1_idx, -1), (g1_idx, -1, ri_a_idx, eps)):
            work.rollback(base)
            arcs1 = list(arc_candidates(chart, work.curves, work.curves[gi_idx],
                                        work.curves[first_over], l1))
            for arc1 in arcs1:
                work.rollback(base)
                if not work.try_slide(gi_idx, first_over, first_sign, arc1):
                    continue
                if not work.curves[gi_idx].events:
                    continue
                if s_a != 0:
                    ok = True
                    for _ in range(abs(s_a)):
                        ok = ok and work.slide_any_arc(gi_idx, b1_idx, beta, limit=l2)
                    if not ok:
                        continue
                if not work.slide_any_arc(gi_idx, last_over, last_sign,
                                          target=target, limit=l3):
                    continue
                pre4 = to_word(chart, work.curves[gi_idx])
                if not work.slide_any_arc(gi_idx, g1_idx, 1, limit=tail):
                    continue
                pre5 = to_word(chart, work.curves[gi_idx])
                if not work.slide_any_arc(gi_idx, b1_idx, 1, limit=tail):
                    continue
                pre6 = to_word(chart, work.curves[gi_idx])
                if not work.slide_any_arc(gi_idx, x_idx, 1, limit=tail):
                    continue
                return [pre6, pre5, pre4], eps
    raise CoronationBlocked("B", tri_index, "no slide ledger reaches the checkpoint class")


def coronate(fib: LefschetzFibration,
             phi: Sequence[SideCrossing] | None = None,
             max_paths: int = 12) -> CoronationResult:
    """Merge the wrinkled triangles into the main circle one by one and emit
    the certificate carrying the coronation to the pseudocoronation.

    With AUTO paths, dual-curve candidates are tried in router order until
    the whole pipeline goes through; an explicit phi is used as given."""
    stab, rs = stabilize(fib)
    b1 = meridian_curve(stab, Fraction(1, 2))
    if phi is not None:
        g1 = _path_to_curve(stab, phi, Fraction(1, 2))
        _check_dual_curve(stab, g1, b1, rs)
        return _merge_pipeline(fib, stab, b1, g1, rs)
    last: Exception | None = None
    tried = 0
    for g1 in iter_dual_curves(stab, b1, rs, Fraction(1, 2)):
        tried += 1
        if tried > max_paths:
            break
        try:
            _check_dual_curve(stab, g1, b1, rs)
            return _merge_pipeline(fib, stab, b1, g1, rs)
        except (CoronationBlocked, InvalidPath, NotApplicable) as exc:
            log.info("dual-curve candidate %d failed: %s", tried, exc)
            last = exc
    if last is not None:
        raise last
    raise PathNotFound("no admissible dual-curve path found; supply one")


def _triangles_for(stab: StabilizedChart, b1: Curve, g1: Curve,
                   rs: tuple[Curve, ...]) -> tuple[Triangle, ...]:
    curves = [b1, g1, *rs]
    triangles = [Triangle(b1, g1, rs[0])]
    for i in range(2, len(rs) + 1):
        gap = min_edge_gap(stab.chart, curves)
        delta = gap * Fraction(1, 3)
        b_i = parallel_copy(stab.chart, b1, delta, f"b{i}")
        g_i = parallel_copy(stab.chart, g1, 2 * delta, f"g{i}")
        triangles.append(Triangle(b_i, g_i, rs[i - 1]))
        curves += [b_i, g_i]
    return tuple(triangles)


def _merge_pipeline(fib: LefschetzFibration, stab: StabilizedChart, b1: Curve,
                    g1: Curve, rs: tuple[Curve, ...]) -> CoronationResult:
    chart = stab.chart
    triangles = _triangles_for(stab, b1, g1, rs)
    n = len(triangles)
    r1 = triangles[0].r
    pseudo = (b1, r1, g1) + tuple(t.r for t in triangles[1:])
    used_phi = tuple(g1.events[1:])

    main = [b1, r1, g1]
    working = list(main)
    for t in triangles[1:]:
        working += [t.b, t.g, t.r]
    merge_logs: list[tuple[str, ...]] = []
    records = []  # (i, [pre6, pre5, pre4], eps)

    stages: list[tuple[Curve, ...]] = []
    if n == 1:
        coronation = CrownDiagram(chart, tuple(main))
        return CoronationResult(coronation, pseudo, SlideCertificate(()),
                                (), used_phi, ())

    for i in range(2, n + 1):
        tri = triangles[i - 1]
        work = _Work(chart, working)
        names = [c.name for c in work.curves]
        ri_idx = names.index(tri.r.name)
        gi_idx = names.index(tri.g.name)
        bi_idx = names.index(tri.b.name)
        b1_idx = names.index(b1.name)
        g1_idx = names.index(g1.name)
        x_name = main[-1].name
        x_idx = names.index(x_name)
        log_lines = [f"merge triangle {i}: x = {x_name}"]

        s_a, disjoint = _stage_a(work, ri_idx, b1_idx, x_idx, i)
        log_lines.append(f"stage A: {abs(s_a)} slides over {b1.name} (signed {s_a})"
                         + ("" if disjoint else
                            "; residual crossings with x left to the surgered picture"))

        pres, eps = _stage_b(work, gi_idx, g1_idx, b1_idx, ri_idx, x_idx,
                             fib.cycles[i - 1], s_a, i)
        log_lines.append(f"stage B: ledger complete, checkpoint orientation {eps:+d}")

        # stage C: the duplicate pair is deleted and the slid g_i joins the
        # main circle as its last vanishing cycle
        if not is_conjugate(to_word(chart, work.curves[bi_idx]), to_word(chart, b1)):
            raise CoronationBlocked("C", i, "triangle surgery cycle is not parallel to b1")
        appended = work.curves[gi_idx].with_name(f"r{i}s")
        main.append(appended)
        survivors = [c for j, c in enumerate(work.curves) if j not in (bi_idx, ri_idx, gi_idx)]
        working = []
        seen_names = set()
        for c in survivors + [appended]:
            if c.name not in seen_names:
                seen_names.add(c.name)
                working.append(c)
        # keep main order at the front for readability
        working = [appended if c.name == appended.name else c for c in working]
        merge_logs.append(tuple(log_lines))
        records.append((i, pres, eps))
        stages.append(tuple(working))

    coronation = CrownDiagram(chart, tuple(main))
    cert = _coronation_certificate(chart, coronation, pseudo, records, triangles, fib)
    from .equivalence import verify_certificate

    report = verify_certificate(chart, coronation.curves, cert, pseudo,
                                ComparisonPolicy(allow_rotation=True,
                                                 allow_curve_inversion=True))
    if not report.passed:
        raise CoronationBlocked("verify", 0, report.reason)
    return CoronationResult(coronation, pseudo, cert, tuple(merge_logs), used_phi,
                            tuple(stages))


def _coronation_certificate(chart: SurfaceChart, coronation: CrownDiagram,
                            pseudo: tuple[Curve, ...], records, triangles,
                            fib: LefschetzFibration) -> SlideCertificate:
    """Invert the post-checkpoint slides of every merge (in reverse order) and
    snap each appended cycle to the stabilized vanishing cycle r_i."""
    work = _Work(chart, coronation.curves)
    names = [c.name for c in work.curves]
    b1_idx, g1_idx = names.index("b1"), names.index("g1")
    for i, pres, eps in reversed(records):
        slot = i + 1  # (b1, r1, g1, r2s, ...) -> r_is at index i+1
        x_idx = slot - 1 if i > 2 else g1_idx
        pre6, pre5, pre4 = pres
        if not work.slide_any_arc(slot, x_idx, -1, target=pre6, limit=24):
            raise CoronationBlocked("certificate", i, "cannot invert the slide over x")
        if not work.slide_any_arc(slot, b1_idx, -1, target=pre5, limit=24):
            raise CoronationBlocked("certificate", i, "cannot invert the slide over b1")
        if not work.slide_any_arc(slot, g1_idx, -1, target=pre4, limit=24):
            raise CoronationBlocked("certificate", i, "cannot invert the slide over g1")
        if not work.snap(slot, triangles[i - 1].r):
            raise CoronationBlocked("certificate", i, "cannot snap to the stabilized cycle")
    return SlideCertificate(tuple(work.steps))


def repath_certificate(fib: LefschetzFibration,
                       phi1: Sequence[SideCrossing],
                       phi2: Sequence[SideCrossing]) -> SlideCertificate:
    """Certificate from pseudocoronate(fib, phi1) to pseudocoronate(fib, phi2).

    The r_i and b_1 do not depend on the path; when the two dual curves are
    conjugate the certificate is a single isotopy.  Inequivalent paths (the
    dual classes differ) fail loudly."""
    stab1, seq1, _ = pseudocoronate(fib, phi1)
    stab2, seq2, _ = pseudocoronate(fib, phi2)
    g1a, g1b = seq1[2], seq2[2]
    chart = stab1.chart
    if tuple(phi1) == tuple(phi2):
        cert = SlideCertificate(())
    elif is_conjugate(to_word(chart, g1a), to_word(chart, g1b)):
        cert = SlideCertificate((IsotopyStep(2, g1b),))
    else:
        raise InvalidPath("the two paths give inequivalent dual curves")
    from .equivalence import verify_certificate

    report = verify_certificate(chart, seq1, cert, seq2,
                                ComparisonPolicy(allow_rotation=False,
                                                 allow_curve_inversion=True))
    if not report.passed:
        raise InvalidPath(f"repath certificate failed: {report.reason}")
    return cert
