"""Certificate-emitting diagram moves: transposition by slides, the
fold-merge split, the cusp pass, the cusp merge, and the generalized shift.

Every move returns the rewritten diagram together with replayable certificate
steps; shift verifies its own certificate before returning.  Sign and arc
choices inside the recipes are resolved by trying candidates against class
checks — the certificate checker, not a fixed orientation convention, carries
correctness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arcs import arc_candidates, quadrant_arcs
from .diagrams import (
    ComparisonPolicy,
    CrownDiagram,
    IsotopyStep,
    ReorderStep,
    SlideCertificate,
    SlideStep,
    Step,
    equal_up_to,
)
from .geometry import (
    Curve,
    InvalidArc,
    NotInGeneralPosition,
    PushoffCollision,
    SurfaceChart,
    intersections,
    min_edge_gap,
    parallel_copy,
    pull_tight,
    reverse_curve,
    slide,
    to_word,
)
from .words import CyclicWord, abelianize, is_conjugate


class NotApplicable(ValueError):
    pass


class ShiftBlocked(ValueError):
    pass


class InvalidK(ValueError):
    pass


@dataclass(frozen=True)
class CircleSeq:
    """Vanishing cycles of one critical circle: first = the surgery cycle,
    last = the cusp-partner cycle."""

    curves: tuple[Curve, ...]

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        if len(self.curves) < 2:
            raise NotApplicable("a circle sequence needs at least two cycles")

    @property
    def first(self) -> Curve:
        return self.curves[0]

    @property
    def last(self) -> Curve:
        return self.curves[-1]

    @property
    def interior(self) -> tuple[Curve, ...]:
        return self.curves[1:-1]

    def __len__(self) -> int:
        return len(self.curves)


@dataclass(frozen=True)
class ShiftResult:
    output: CrownDiagram
    certificate: SlideCertificate       # transforms the output back to the input
    log: tuple[str, ...]
    forward: SlideCertificate = SlideCertificate(())  # input -> output, replayable


# ---------------------------------------------------------------------------
# step helpers on a working curve list

class _Work:
    """Mutable working sequence accumulating certificate steps."""

    def __init__(self, chart: SurfaceChart, curves: Sequence[Curve]):
        self.chart = chart
        self.curves = list(curves)
        self.steps: list[Step] = []

    def word(self, i: int) -> CyclicWord:
        return to_word(self.chart, self.curves[i])

    def try_slide(self, mover: int, over: int, sign: int, arc) -> bool:
        try:
            out = slide(self.chart, self.curves, self.curves[mover].name,
                        self.curves[over].name, sign, arc)
        except (InvalidArc, NotInGeneralPosition, PushoffCollision):
            return False
        self.curves = out
        self.steps.append(SlideStep(mover, over, sign, arc))
        # a band crossing an edge and coming straight back yields a chord on
        # the polygon boundary; tighten it away immediately (recorded, so
        # replay follows the same states)
        tight = pull_tight(self.chart, self.curves[mover])
        if tight.events != self.curves[mover].events:
            self.isotope(mover, tight)
        return True

    def mark(self) -> tuple[list[Curve], int]:
        return list(self.curves), len(self.steps)

    def rollback(self, mark: tuple[list[Curve], int]):
        self.curves = list(mark[0])
        del self.steps[mark[1]:]

    def slide_any_arc(self, mover: int, over: int, sign: int,
                      target: Optional[CyclicWord] = None, limit: int = 64) -> bool:
        """First candidate arc whose slide succeeds (and, if given, whose
        result class is conjugate to target)."""
        for arc in arc_candidates(self.chart, self.curves, self.curves[mover],
                                  self.curves[over], limit):
            saved = self.mark()
            if not self.try_slide(mover, over, sign, arc):
                continue
            if target is not None and not is_conjugate(self.word(mover), target):
                self.rollback(saved)
                continue
            return True
        return False

    def isotope(self, i: int, replacement: Curve):
        from .equivalence import replay_step

        step = IsotopyStep(i, replacement)
        self.curves = replay_step(self.chart, self.curves, step)
        self.steps.append(step)

    def snap(self, i: int, target: Curve) -> bool:
        """Isotopy-snap slot i to target data, or its reverse, whichever
        matches the current class.  False if neither is conjugate."""
        w = self.word(i)
        for cand in (target, reverse_curve(self.chart, target)):
            if is_conjugate(w, to_word(self.chart, cand)):
                self.isotope(i, cand.with_name(self.curves[i].name))
                return True
        return False


# ---------------------------------------------------------------------------
# transposition by three slides

_SWAP_SIGNS = ((1, -1, 1), (-1, 1, -1), (1, 1, -1), (-1, -1, 1),
               (1, -1, -1), (-1, 1, 1), (1, 1, 1), (-1, -1, -1))


def _swap_classes(work: _Work, i: int, limit: int = 48) -> bool:
    """Three slides leaving the classes at i, i+1 swapped up to inversion,
    followed by snaps to the original curve data.  Slide signs and arcs are
    searched; each stage is filtered by its class checkpoint."""
    j = i + 1
    chart = work.chart
    u_curve, v_curve = work.curves[i], work.curves[j]
    wu, wv = work.word(i), work.word(j)
    wu_i, wv_i = wu.inverse(), wv.inverse()

    base = work.mark()
    arcs1 = list(arc_candidates(chart, work.curves, work.curves[i], work.curves[j], limit))
    for s1, s2, s3 in _SWAP_SIGNS:
        for arc1 in arcs1:
            work.rollback(base)
            if not work.try_slide(i, j, s1, arc1):
                continue
            ok2 = (work.slide_any_arc(j, i, s2, target=wu, limit=limit)
                   or work.slide_any_arc(j, i, s2, target=wu_i, limit=limit))
            if not ok2:
                continue
            ok3 = (work.slide_any_arc(i, j, s3, target=wv, limit=limit)
                   or work.slide_any_arc(i, j, s3, target=wv_i, limit=limit))
            if not ok3:
                continue
            if _snap_pair(work, i, v_curve, j, u_curve):
                return True
    work.rollback(base)
    return False


def _snap_pair(work: _Work, i: int, target_i: Curve, j: int, target_j: Curve) -> bool:
    """Snap slots i and j to exact curve data that may share edge points with
    the pleated curves; goes through a parallel copy to stay in general
    position at every intermediate step."""
    gap = min_edge_gap(work.chart, work.curves)
    mid = parallel_copy(work.chart, target_j, gap / 3, target_j.name)
    before = work.mark()
    if work.snap(j, mid) and work.snap(i, target_i) and work.snap(j, target_j):
        return True
    work.rollback(before)
    return False


def transpose_adjacent(d: CrownDiagram, i: int) -> tuple[CrownDiagram, SlideCertificate]:
    """Swap the classes at positions i, i+1 (one transverse crossing) by three
    local slides; the curves end as the original data, exchanged and possibly
    reversed.  The identity reorder at the end is bookkeeping."""
    n = len(d.curves)
    if not 0 <= i < n - 1:
        raise NotApplicable(f"position {i} out of range")
    a, b = d.curves[i], d.curves[i + 1]
    if len(intersections(d.chart, a, b)) != 1:
        raise NotApplicable(
            f"curves {a.name!r}, {b.name!r} do not intersect exactly once")
    work = _Work(d.chart, d.curves)
    if not _swap_classes(work, i):
        raise NotApplicable(f"no slide recipe swaps positions {i}, {i+1}")
    work.steps.append(ReorderStep(tuple(range(n))))
    out = CrownDiagram(d.chart, tuple(work.curves))
    return out, SlideCertificate(tuple(work.steps))


# ---------------------------------------------------------------------------
# fold merge split / cusp pass / cusp merge

def fold_merge_split(d: CrownDiagram, k: int) -> tuple[CircleSeq, CircleSeq]:
    """Split the crown circle at folds k and l into the nonstationary circle
    N = (c_l, c_1, ..., c_k) and the stationary circle
    S = (c_l, c_{l-1}, ..., c_{k+1}, c_k), curve data shared verbatim."""
    ell = len(d.curves)
    if not 2 <= k <= ell - 1:
        raise InvalidK(f"need 2 <= k <= {ell - 1}, got {k}")
    c = d.curves  # c[j] is c_{j+1}
    n_seq = (c[ell - 1],) + tuple(c[j] for j in range(k))
    s_seq = (c[ell - 1],) + tuple(c[j] for j in range(ell - 2, k - 2, -1))
    return CircleSeq(n_seq), CircleSeq(s_seq)


def _double_slide(work: _Work, mover: int, first_over: int, second_over: int) -> tuple[CyclicWord, CyclicWord]:
    """One strand's rewrite: slide mover over first_over then second_over,
    each along an arc at a current crossing.  Returns the classes before and
    between the two slides (the targets of the inverse pair)."""
    pre = work.word(mover)
    if not work.slide_any_arc(mover, first_over, 1):
        raise NotApplicable(
            f"no valid arc from {work.curves[mover].name!r} to {work.curves[first_over].name!r}")
    mid = work.word(mover)
    if not work.slide_any_arc(mover, second_over, 1):
        raise NotApplicable(
            f"no valid arc from {work.curves[mover].name!r} to {work.curves[second_over].name!r}")
    return pre, mid


@dataclass(frozen=True)
class _StrandLog:
    mover: int
    first_over: int
    second_over: int
    pre: CyclicWord
    mid: CyclicWord


def cusp_pass(n_seq: CircleSeq, chart: SurfaceChart,
              ambient: Sequence[Curve] | None = None
              ) -> tuple[CircleSeq, SlideCertificate, list[_StrandLog], list[Curve]]:
    """Move the reference path across the cusp between the surgery cycle and
    its neighbour: their roles swap with curve data untouched, and every other
    cycle of the circle is slid over both once per intersection point.

    Returns (new sequence, certificate of the slides performed, per-strand
    log, final ambient curve list).  Step indices refer to the ambient list.
    """
    cl, c1 = n_seq.first, n_seq.curves[1]
    if len(intersections(chart, cl, c1)) != 1:
        raise NotApplicable(
            f"surgery cycle {cl.name!r} and neighbour {c1.name!r} must cross once")
    curves = list(ambient) if ambient is not None else list(n_seq.curves)
    names = [c.name for c in curves]
    work = _Work(chart, curves)
    idx_cl, idx_c1 = names.index(cl.name), names.index(c1.name)
    logs: list[_StrandLog] = []
    for member in n_seq.curves[2:]:
        mover = names.index(member.name)
        m1 = len(intersections(chart, member, c1))
        ml = len(intersections(chart, member, cl))
        for _ in range(m1):
            pre, mid = _double_slide(work, mover, idx_c1, idx_cl)
            logs.append(_StrandLog(mover, idx_c1, idx_cl, pre, mid))
        for _ in range(ml):
            pre, mid = _double_slide(work, mover, idx_cl, idx_c1)
            logs.append(_StrandLog(mover, idx_cl, idx_c1, pre, mid))
    by_name = {c.name: c for c in work.curves}
    new_seq = CircleSeq((cl,) + tuple(by_name[c.name] for c in n_seq.curves[2:]) + (c1,))
    return new_seq, SlideCertificate(tuple(work.steps)), logs, work.curves


def merge_sequences(chart: SurfaceChart, n_seq: CircleSeq, s_seq: CircleSeq) -> CrownDiagram:
    """The merged cyclic sequence: N in full, then S's interior reversed into
    fold-arc order; S's two shared cycles are the deleted duplicates."""
    merged = n_seq.curves + tuple(reversed(s_seq.interior))
    return CrownDiagram(chart, merged)


def cusp_merge(chart: SurfaceChart, n_seq: CircleSeq, s_seq: CircleSeq) -> CrownDiagram:
    """Public cusp merge: both aligned pairs must already agree as classes
    (the caller isotopes/slides them together beforehand)."""
    if not is_conjugate(to_word(chart, n_seq.first), to_word(chart, s_seq.first)):
        raise NotApplicable("surgery cycles of N and S are not aligned")
    if not is_conjugate(to_word(chart, n_seq.last), to_word(chart, s_seq.last)):
        raise NotApplicable("cusp-partner cycles of N and S are not aligned")
    return merge_sequences(chart, n_seq, s_seq)


# ---------------------------------------------------------------------------
# the generalized shift

def _undo_slide(work: _Work, mover: int, over: int, target: CyclicWord,
                limit: int = 96) -> bool:
    """Slide mover over `over` with sign -1 along some arc so that the class
    returns to `target` (the inverse of a recorded +1 slide)."""
    return work.slide_any_arc(mover, over, -1, target=target, limit=limit)


def shift(d: CrownDiagram, k: int) -> ShiftResult:
    """The generalized shift move: fold-merge split at folds k and l, cusp
    pass on the nonstationary circle, cusp merge.  The output lists the
    cycles in the order (c_2', ..., c_k', c_1, c_{k+1}, ..., c_{l-1}, c_l);
    the certificate restores primes by inverse slides and moves c_1 back to
    the front by transpositions, and must verify against the input."""
    ell = len(d.curves)
    if not 2 <= k <= ell - 1:
        raise InvalidK(f"need 2 <= k <= {ell - 1}, got {k}")
    c1, cl = d.curves[0], d.curves[ell - 1]
    if len(intersections(d.chart, c1, cl)) != 1:
        raise ShiftBlocked(
            f"cusp (l,1): {cl.name!r} and {c1.name!r} must cross exactly once")

    n_seq, s_seq = fold_merge_split(d, k)
    try:
        n_after, fwd_cert, logs, ambient = cusp_pass(n_seq, d.chart, ambient=d.curves)
    except NotApplicable as exc:
        raise ShiftBlocked(f"cusp pass blocked: {exc}") from exc

    merged = merge_sequences(d.chart, n_after, s_seq)
    # rotate display (1) into the (3)-order: surgery cycle moved to the end
    gamma_prime = CrownDiagram(d.chart, merged.curves[1:] + merged.curves[:1])

    # replayable forward record: the pass slides in input order, then the
    # permutation putting the cycles in the output order
    ell_ = len(d.curves)
    perm = tuple(range(1, k)) + (0,) + tuple(range(k, ell_))
    forward = fwd_cert.extend([ReorderStep(perm)])

    cert, log = _shift_certificate(d, gamma_prime, k, logs)
    report_policy = ComparisonPolicy(allow_rotation=True, allow_curve_inversion=True)
    from .equivalence import verify_certificate

    report = verify_certificate(d.chart, gamma_prime.curves, cert, d.curves, report_policy)
    if not report.passed:
        raise ShiftBlocked(f"certificate failed to verify: {report.reason}")
    fwd_report = verify_certificate(d.chart, d.curves, forward, gamma_prime.curves,
                                    ComparisonPolicy(allow_rotation=False,
                                                     allow_curve_inversion=False))
    if not fwd_report.passed:
        raise ShiftBlocked(f"forward record failed to verify: {fwd_report.reason}")
    return ShiftResult(gamma_prime, cert, tuple(log), forward)


def _shift_certificate(d: CrownDiagram, gamma_prime: CrownDiagram, k: int,
                       logs: Sequence[_StrandLog]) -> tuple[SlideCertificate, list[str]]:
    """Certificate from the shift output back to the input: per-strand inverse
    slides, isotopy snaps to the original curves, then k-1 transpositions
    carrying c_1 to the front."""
    chart = d.chart
    ell = len(d.curves)
    work = _Work(chart, gamma_prime.curves)
    names = [c.name for c in work.curves]
    log: list[str] = []

    for strand in reversed(list(logs)):
        mover = names.index(d.curves[strand.mover].name)
        over2 = names.index(d.curves[strand.second_over].name)
        over1 = names.index(d.curves[strand.first_over].name)
        if not _undo_slide(work, mover, over2, strand.mid):
            raise ShiftBlocked(f"cannot invert slide of {names[mover]!r} over {names[over2]!r}")
        if not _undo_slide(work, mover, over1, strand.pre):
            raise ShiftBlocked(f"cannot invert slide of {names[mover]!r} over {names[over1]!r}")
        log.append(f"undid strand of {names[mover]}")
    for j in range(2, k + 1):
        slot = j - 2
        original = d.curves[j - 1]
        if work.curves[slot].events != original.events:
            if not work.snap(slot, original):
                raise ShiftBlocked(f"cannot snap slot {slot} back to {original.name!r}")
            log.append(f"snapped {original.name}")

    # sequence (4) -> move c_1 left by adjacent swaps
    pos = k - 1
    while pos > 0:
        if not _swap_classes(work, pos - 1):
            raise ShiftBlocked(f"transposition blocked at position {pos - 1}")
        log.append(f"transposed positions {pos - 1},{pos}")
        pos -= 1
    return SlideCertificate(tuple(work.steps)), log
