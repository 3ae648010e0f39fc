"""Concrete example diagrams used by tests, demos and the CLI.

All crossing counts here are exact consequences of the chosen parameters;
the tests re-derive them with the intersection machinery.
"""

from __future__ import annotations

from fractions import Fraction as F

from .diagrams import CrownDiagram, LefschetzFibration
from .geometry import Curve, SideCrossing, SurfaceChart


def _c(name: str, *events: tuple[int, F]) -> Curve:
    return Curve(name, tuple(SideCrossing(s, F(t)) for s, t in events))


def chain_crown_g2_l4() -> CrownDiagram:
    """Genus-2 crown with four cycles in a cyclic chain, every consecutive
    pair crossing once: classes a1, b1, a1 a2, b1 a2^-1."""
    chart = SurfaceChart(2)
    c1 = _c("c1", (0, F(1, 2)))
    c2 = _c("c2", (3, F(1, 2)))
    c3 = _c("c3", (0, F(1, 4)), (4, F(1, 4)))
    c4 = _c("c4", (3, F(1, 4)), (6, F(1, 2)))
    return CrownDiagram(chart, (c1, c2, c3, c4))


def chain_crown_g2_l5() -> CrownDiagram:
    """Genus-2 crown with five cycles: a1, b1, a1 a2, b1 a2^-1, b1 b2."""
    chart = SurfaceChart(2)
    c1 = _c("c1", (0, F(1, 2)))
    c2 = _c("c2", (3, F(1, 2)))
    c3 = _c("c3", (0, F(1, 4)), (4, F(1, 4)))
    c4 = _c("c4", (3, F(1, 4)), (6, F(1, 2)))
    c5 = _c("c5", (3, F(3, 8)), (7, F(1, 2)))
    return CrownDiagram(chart, (c1, c2, c3, c4, c5))


def chain_crown_g3_l6() -> CrownDiagram:
    """Genus-3 crown with six cycles chained across all three handles:
    a1, b1, a1 a2, b1 a2^-1, b2 b3, b1 a2^-1 again (a parallel copy)."""
    chart = SurfaceChart(3)
    c1 = _c("c1", (0, F(1, 2)))
    c2 = _c("c2", (3, F(1, 2)))
    c3 = _c("c3", (0, F(1, 4)), (4, F(1, 4)))
    c4 = _c("c4", (3, F(1, 4)), (6, F(1, 2)))
    c5 = _c("c5", (7, F(1, 2)), (11, F(1, 2)))
    c6 = _c("c6", (3, F(3, 8)), (6, F(5, 8)))
    return CrownDiagram(chart, (c1, c2, c3, c4, c5, c6))


def disjoint_crown_g2_l6() -> CrownDiagram:
    """Genus-2 sequence where c2..c5 live on handle 2, disjoint from the
    handle-1 pair (c1, c6); the (c6, c1) cusp crossing is one.  Not a valid
    crown (most consecutive crossings are 0) but exactly the configuration of
    the pure-reorder special case of the shift."""
    chart = SurfaceChart(2)
    c1 = _c("c1", (0, F(1, 2)))
    c2 = _c("c2", (4, F(1, 2)))
    c3 = _c("c3", (7, F(1, 2)))
    c4 = _c("c4", (4, F(1, 4)))
    c5 = _c("c5", (7, F(1, 4)))
    c6 = _c("c6", (3, F(1, 2)))
    return CrownDiagram(chart, (c1, c2, c3, c4, c5, c6))


def lefschetz_chain(n: int, genus: int = 2) -> LefschetzFibration:
    """Lefschetz vanishing cycles l_1..l_n in a linear chain on a genus-2
    fiber (consecutive cycles cross once, others are disjoint)."""
    chart = SurfaceChart(genus)
    if not 1 <= n <= 4:
        raise ValueError("sample chains support n in 1..4")
    pool = [
        _c("l1", (0, F(1, 2))),
        _c("l2", (3, F(1, 2))),
        _c("l3", (0, F(1, 4)), (4, F(1, 4))),
        _c("l4", (3, F(1, 4)), (6, F(1, 2))),
    ]
    return LefschetzFibration(chart, tuple(pool[:n]))


def dual_pair_lefschetz() -> LefschetzFibration:
    """The two standard dual curves of handle 1 on a genus-2 fiber."""
    chart = SurfaceChart(2)
    return LefschetzFibration(chart, (_c("l1", (0, F(1, 2))), _c("l2", (3, F(1, 2)))))
