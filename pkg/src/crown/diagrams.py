"""Crown diagrams, Lefschetz fibration inputs, slide certificates and
sequence comparison policies."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (
    Curve,
    NotInGeneralPosition,
    SlideArc,
    SurfaceChart,
    check_general_position,
    intersections,
    is_embedded,
    self_intersections,
    to_word,
)
from .words import CyclicWord, is_conjugate


class InvalidDiagram(ValueError):
    pass


def _check_names(curves: Sequence[Curve]):
    names = [c.name for c in curves]
    if len(set(names)) != len(names):
        raise InvalidDiagram(f"curve names are not unique: {names}")


@dataclass(frozen=True)
class CrownDiagram:
    """A surface together with a cyclically ordered list of named curves."""

    chart: SurfaceChart
    curves: tuple[Curve, ...]

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        if len(self.curves) < 1:
            raise InvalidDiagram("a crown diagram needs at least one curve")
        _check_names(self.curves)
        check_general_position(self.chart, self.curves)

    def __len__(self) -> int:
        return len(self.curves)

    @property
    def genus(self) -> int:
        return self.chart.genus

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def index(self, name: str) -> int:
        for i, c in enumerate(self.curves):
            if c.name == name:
                return i
        raise KeyError(name)

    def replace(self, index: int, curve: Curve) -> "CrownDiagram":
        curves = list(self.curves)
        curves[index] = curve
        return CrownDiagram(self.chart, tuple(curves))

    def words(self) -> tuple[CyclicWord, ...]:
        return tuple(to_word(self.chart, c) for c in self.curves)


@dataclass(frozen=True)
class LefschetzFibration:
    """Ordered Lefschetz vanishing cycles on a genus >= 2 fiber."""

    chart: SurfaceChart
    cycles: tuple[Curve, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        if self.chart.genus < 2:
            raise InvalidDiagram("Lefschetz input needs fiber genus >= 2")
        _check_names(self.cycles)
        check_general_position(self.chart, self.cycles)
        for c in self.cycles:
            if not is_embedded(self.chart, c):
                raise InvalidDiagram(f"vanishing cycle {c.name!r} is not embedded")

    def __len__(self) -> int:
        return len(self.cycles)


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class SlideStep:
    mover: int
    over: int
    sign: int
    arc: SlideArc

    op = "slide"


@dataclass(frozen=True)
class IsotopyStep:
    curve: int
    replacement: Curve

    op = "isotopy"


@dataclass(frozen=True)
class ReorderStep:
    """Permutation of positions: new[i] = old[permutation[i]]."""

    permutation: tuple[int, ...]

    op = "reorder"

    def __post_init__(self):
        object.__setattr__(self, "permutation", tuple(self.permutation))
        if sorted(self.permutation) != list(range(len(self.permutation))):
            raise InvalidDiagram(f"not a permutation: {self.permutation}")


Step = SlideStep | IsotopyStep | ReorderStep


@dataclass(frozen=True)
class SlideCertificate:
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def extend(self, more: Sequence[Step]) -> "SlideCertificate":
        return SlideCertificate(self.steps + tuple(more))


@dataclass(frozen=True)
class ComparisonPolicy:
    allow_rotation: bool = True
    allow_sequence_reversal: bool = False
    allow_curve_inversion: bool = True


# ---------------------------------------------------------------------------
# crown validity

@dataclass(frozen=True)
class PairCheck:
    first: str
    second: str
    crossings: int
    ok: bool


@dataclass(frozen=True)
class CrownReport:
    embedded: tuple[tuple[str, bool], ...]
    consecutive: tuple[PairCheck, ...]
    issues: tuple[str, ...]
    passed: bool
    # the further crown conditions beyond the consecutive-intersection one
    # are deliberately not checked; representatives are also not certified
    # to be in minimal position
    checks: tuple[str, ...] = ("embedded", "consecutive-crossings-equal-one")


def validate_crown(d: CrownDiagram) -> CrownReport:
    """Check embeddedness and the one-crossing condition on cyclically
    consecutive pairs.  General-position violations are reported, not raised."""
    embedded = []
    issues = []
    for c in d.curves:
        try:
            embedded.append((c.name, is_embedded(d.chart, c)))
        except NotInGeneralPosition as exc:
            embedded.append((c.name, False))
            issues.append(f"{c.name}: {exc}")
    pairs = []
    n = len(d.curves)
    for i in range(n):
        a, b = d.curves[i], d.curves[(i + 1) % n]
        if n == 1:
            break
        if a.name == b.name:
            continue
        try:
            k = len(intersections(d.chart, a, b))
            pairs.append(PairCheck(a.name, b.name, k, k == 1))
        except NotInGeneralPosition as exc:
            pairs.append(PairCheck(a.name, b.name, -1, False))
            issues.append(f"({a.name},{b.name}): {exc}")
    passed = (not issues and all(ok for _, ok in embedded)
              and all(p.ok for p in pairs))
    return CrownReport(tuple(embedded), tuple(pairs), tuple(issues), passed)


# ---------------------------------------------------------------------------
# elementwise comparison up to policy

@dataclass(frozen=True)
class AlignmentWitness:
    rotation: int
    reversed: bool
    inverted: tuple[bool, ...]


def _alignments(n: int, policy: ComparisonPolicy):
    rotations = range(n) if policy.allow_rotation else (0,)
    reversals = (False, True) if policy.allow_sequence_reversal else (False,)
    for rev in reversals:
        for rot in rotations:
            yield rot, rev


def equal_up_to(chart: SurfaceChart, a: Sequence[Curve], b: Sequence[Curve],
                policy: ComparisonPolicy = ComparisonPolicy()) -> tuple[bool, Optional[AlignmentWitness], str]:
    """Elementwise free-homotopy comparison of two curve sequences, up to the
    rotations/reversal/inversions the policy allows.

    Returns (equal, witness, reason)."""
    if len(a) != len(b):
        return False, None, f"length mismatch: {len(a)} vs {len(b)}"
    n = len(a)
    wa = [to_word(chart, c) for c in a]
    wb = [to_word(chart, c) for c in b]
    wb_inv = [w.inverse() for w in wb]
    for rot, rev in _alignments(n, policy):
        inverted = []
        good = True
        for i in range(n):
            j = (rot - i) % n if rev else (i + rot) % n
            if is_conjugate(wa[i], wb[j]):
                inverted.append(False)
            elif policy.allow_curve_inversion and is_conjugate(wa[i], wb_inv[j]):
                inverted.append(True)
            else:
                good = False
                break
        if good:
            return True, AlignmentWitness(rot, rev, tuple(inverted)), ""
    return False, None, "no allowed alignment matches all classes"
