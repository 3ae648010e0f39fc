"""Certificate verification and a bounded brute-force slide search.

verify_certificate is the artifact's trust anchor: every move's certificate
must replay here.  search_certificate is a desk-scale oracle: breadth-first
over slides with states keyed by the multiset of canonical cyclic words;
anything it returns has already been replayed through verify_certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .arcs import quadrant_arcs, straight_arc
from .diagrams import (
    AlignmentWitness,
    ComparisonPolicy,
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
    check_general_position,
    slide,
    to_word,
)
from .oracle import bfs_conjugacy_oracle  # noqa: F401  (re-exported oracle)
from .words import abelianize, is_conjugate


@dataclass(frozen=True)
class StepStatus:
    op: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class LedgerEntry:
    step: int
    delta: tuple[int, ...]
    expected: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.delta == self.expected


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    steps: tuple[StepStatus, ...]
    witness: Optional[AlignmentWitness]
    ledger: tuple[LedgerEntry, ...]
    reason: str = ""


def replay_step(chart: SurfaceChart, curves: list[Curve], step: Step) -> list[Curve]:
    """Apply one certificate step; raises on any invalid step."""
    n = len(curves)
    if isinstance(step, SlideStep):
        if not (0 <= step.mover < n and 0 <= step.over < n) or step.mover == step.over:
            raise InvalidArc(f"bad indices mover={step.mover} over={step.over}")
        mover, over = curves[step.mover], curves[step.over]
        return slide(chart, curves, mover.name, over.name, step.sign, step.arc)
    if isinstance(step, IsotopyStep):
        if not 0 <= step.curve < n:
            raise InvalidArc(f"bad curve index {step.curve}")
        old = curves[step.curve]
        new = step.replacement.with_name(old.name)
        if not is_conjugate(to_word(chart, old), to_word(chart, new)):
            raise NotInGeneralPosition(
                f"isotopy replacement at {step.curve} is not conjugate to the old class")
        out = list(curves)
        out[step.curve] = new
        check_general_position(chart, out)
        return out
    if isinstance(step, ReorderStep):
        if len(step.permutation) != n:
            raise InvalidArc(f"permutation length {len(step.permutation)} != {n}")
        return [curves[j] for j in step.permutation]
    raise InvalidArc(f"unknown step {step!r}")


def verify_certificate(chart: SurfaceChart, a: Sequence[Curve], cert: SlideCertificate,
                       b: Sequence[Curve],
                       policy: ComparisonPolicy = ComparisonPolicy()) -> VerificationReport:
    """Replay cert on a, then compare the result with b under the policy."""
    curves = list(a)
    statuses: list[StepStatus] = []
    ledger: list[LedgerEntry] = []
    for idx, step in enumerate(cert.steps):
        before = None
        if isinstance(step, SlideStep) and 0 <= step.mover < len(curves):
            before = abelianize(to_word(chart, curves[step.mover]))
        try:
            curves = replay_step(chart, curves, step)
        except (InvalidArc, NotInGeneralPosition, PushoffCollision, KeyError) as exc:
            statuses.append(StepStatus(step.op, False, str(exc)))
            return VerificationReport(False, tuple(statuses), None, tuple(ledger),
                                      f"step {idx} failed: {exc}")
        if isinstance(step, SlideStep):
            after = abelianize(to_word(chart, curves[step.mover]))
            over_ab = abelianize(to_word(chart, curves[step.over]))
            entry = LedgerEntry(
                idx,
                tuple(x - y for x, y in zip(after, before)),
                tuple(step.sign * v for v in over_ab),
            )
            ledger.append(entry)
            if not entry.ok:
                statuses.append(StepStatus(step.op, False, "homology delta mismatch"))
                return VerificationReport(False, tuple(statuses), None, tuple(ledger),
                                          f"step {idx}: homology audit failed")
        statuses.append(StepStatus(step.op, True))
    ok, witness, reason = equal_up_to(chart, curves, list(b), policy)
    return VerificationReport(ok, tuple(statuses), witness, tuple(ledger),
                              "" if ok else f"final comparison failed: {reason}")


# ---------------------------------------------------------------------------
# bounded search

@dataclass(frozen=True)
class SearchBounds:
    max_slides: int = 4
    max_word_length: int = 24
    arcs_per_pair: int = 6

    def __post_init__(self):
        if self.max_slides < 0 or self.max_word_length < 1 or self.arcs_per_pair < 1:
            raise ValueError("search bounds must be positive")


def _state_key(chart: SurfaceChart, curves: Sequence[Curve]):
    return tuple(sorted(to_word(chart, c).letters for c in curves))


def _homology_mismatch(chart: SurfaceChart, a: Sequence[Curve], b: Sequence[Curve],
                       policy: ComparisonPolicy) -> int:
    """Minimal number of slots whose homology classes disagree over allowed
    alignments; each slide fixes at most one slot, so this prunes the BFS."""
    n = len(a)
    ha = [abelianize(to_word(chart, c)) for c in a]
    hb = [abelianize(to_word(chart, c)) for c in b]
    best = n + 1
    rotations = range(n) if policy.allow_rotation else (0,)
    reversals = (False, True) if policy.allow_sequence_reversal else (False,)
    for rev in reversals:
        for rot in rotations:
            bad = 0
            for i in range(n):
                j = (rot - i) % n if rev else (i + rot) % n
                u, v = ha[i], hb[j]
                if u == v:
                    continue
                if policy.allow_curve_inversion and u == tuple(-x for x in v):
                    continue
                bad += 1
            best = min(best, bad)
    return best


def _candidate_steps(chart: SurfaceChart, curves: Sequence[Curve], bounds: SearchBounds):
    n = len(curves)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            mover, over = curves[i], curves[j]
            if not mover.events:
                continue
            arcs = []
            for arc in quadrant_arcs(chart, curves, mover, over):
                arcs.append(arc)
                if len(arcs) >= bounds.arcs_per_pair:
                    break
            if len(arcs) < bounds.arcs_per_pair:
                extra = straight_arc(chart, curves, mover, over)
                if extra is not None:
                    arcs.append(extra)
            for arc in arcs:
                for sign in (1, -1):
                    yield SlideStep(i, j, sign, arc)


def search_certificate(chart: SurfaceChart, a: Sequence[Curve], b: Sequence[Curve],
                       bounds: SearchBounds = SearchBounds(),
                       policy: ComparisonPolicy = ComparisonPolicy()) -> Optional[SlideCertificate]:
    """Breadth-first search for a verifying certificate from a to b.

    Sound but not complete: None means nothing was found within bounds."""
    if len(a) != len(b):
        return None

    def finished(curves) -> bool:
        return equal_up_to(chart, curves, list(b), policy)[0]

    start = tuple(a)
    if finished(start):
        return SlideCertificate(())

    seen = {_state_key(chart, start)}
    frontier: list[tuple[tuple[Curve, ...], tuple[Step, ...]]] = [(start, ())]
    for depth in range(1, bounds.max_slides + 1):
        remaining = bounds.max_slides - depth
        nxt = []
        for curves, steps in frontier:
            for step in _candidate_steps(chart, curves, bounds):
                try:
                    out = replay_step(chart, list(curves), step)
                except (InvalidArc, NotInGeneralPosition, PushoffCollision):
                    continue
                if any(len(to_word(chart, c)) > bounds.max_word_length for c in out):
                    continue
                key = _state_key(chart, out)
                if key in seen:
                    continue
                seen.add(key)
                cand = steps + (step,)
                if finished(out):
                    cert = SlideCertificate(cand)
                    if verify_certificate(chart, a, cert, b, policy).passed:
                        return cert
                    continue
                if _homology_mismatch(chart, out, b, policy) <= remaining:
                    nxt.append((tuple(out), cand))
        frontier = nxt
        if not frontier:
            break
    return None
