from fractions import Fraction as F

import pytest

from crown.coronation import (
    CoronationBlocked,
    InvalidPath,
    UnsupportedGenus,
    coronate,
    meridian_curve,
    pseudocoronate,
    repath_certificate,
    stabilize,
    switching_push,
    wrinkle,
)
from crown.diagrams import ComparisonPolicy, LefschetzFibration
from crown.equivalence import verify_certificate
from crown.geometry import (
    Curve,
    SideCrossing,
    SurfaceChart,
    intersections,
    is_embedded,
    to_word,
)
from crown.samples import dual_pair_lefschetz, lefschetz_chain
from crown.words import is_conjugate


def test_stabilize():
    fib = lefschetz_chain(2)
    stab, rs = stabilize(fib)
    assert stab.chart.genus == 3
    # cycles carried over verbatim
    for r, l in zip(rs, fib.cycles):
        assert r.events == l.events
        assert str(to_word(stab.chart, r)) == str(to_word(fib.chart, l))
    # new meridian misses the old cycles
    b1 = meridian_curve(stab, F(1, 2))
    for r in rs:
        assert intersections(stab.chart, r, b1) == []


def test_genus_one_fibers_rejected():
    from crown.diagrams import InvalidDiagram

    with pytest.raises(InvalidDiagram):
        LefschetzFibration(SurfaceChart(1),
                           (Curve("l1", (SideCrossing(0, F(1, 2)),)),))


def test_pseudocoronation_counts():
    for fib in (dual_pair_lefschetz(), lefschetz_chain(3)):
        stab, seq, phi = pseudocoronate(fib)
        b1, r1, g1 = seq[0], seq[1], seq[2]
        rs = (r1,) + seq[3:]
        assert len(seq) == len(fib.cycles) + 2
        assert len(intersections(stab.chart, b1, g1)) == 1
        for r in rs:
            assert len(intersections(stab.chart, g1, r)) == 1
            assert len(intersections(stab.chart, b1, r)) == 0
        assert is_embedded(stab.chart, g1)


def test_pseudocoronation_rejects_bad_path():
    fib = dual_pair_lefschetz()
    with pytest.raises(InvalidPath):
        pseudocoronate(fib, phi=[SideCrossing(8, F(1, 3))])


def test_wrinkle_triangles():
    fib = lefschetz_chain(2)
    stab, triangles = wrinkle(fib)
    assert len(triangles) == 2
    t1, t2 = triangles
    # parallel copies do not cross each other
    assert intersections(stab.chart, t1.b, t2.b) == []
    assert intersections(stab.chart, t1.g, t2.g) == []
    assert is_conjugate(to_word(stab.chart, t2.b), to_word(stab.chart, t1.b))
    for t in triangles:
        assert len(intersections(stab.chart, t.b, t.g)) == 1
        assert len(intersections(stab.chart, t.g, t.r)) == 1
        assert len(intersections(stab.chart, t.b, t.r)) == 0


def test_switching_push_matches_slides():
    chart = SurfaceChart(2)
    s = Curve("s", (SideCrossing(0, F(1, 2)),))
    a = Curve("a", (SideCrossing(3, F(1, 2)),))
    b = Curve("b", (SideCrossing(3, F(1, 4)),))
    c = Curve("c", (SideCrossing(3, F(3, 4)),))
    pushed, cert = switching_push(chart, [s, a, b, c], "a", "b", "c")
    assert len(cert) >= 2
    assert str(to_word(chart, pushed)) == "b1 b1 b1"


def test_coronate_base_case():
    res = coronate(lefschetz_chain(1))
    assert [c.name for c in res.coronation.curves] == ["b1", "r1", "g1"]
    assert len(res.certificate) == 0
    assert res.coronation.curves == res.pseudocoronation


def test_coronate_dual_pair_certificate():
    fib = dual_pair_lefschetz()
    res = coronate(fib)
    assert len(res.coronation.curves) == 4
    # re-derive the pseudocoronation from the same path and verify offline
    stab, seq, _ = pseudocoronate(fib, phi=res.path)
    report = verify_certificate(stab.chart, res.coronation.curves, res.certificate,
                                seq, ComparisonPolicy(allow_rotation=True,
                                                      allow_curve_inversion=True))
    assert report.passed
    # the main circle grew by exactly one cycle per merge
    assert len(res.stages) == 1


def test_repath_same_and_detour():
    fib = dual_pair_lefschetz()
    _, _, phi = pseudocoronate(fib)
    assert len(repath_certificate(fib, phi, phi)) == 0
    # an alternative route from the router with a conjugate dual class
    from crown.coronation import iter_dual_curves, meridian_curve, stabilize

    stab, rs = stabilize(fib)
    b1 = meridian_curve(stab, F(1, 2))
    target = None
    first = None
    for cand in iter_dual_curves(stab, b1, rs, F(1, 2)):
        if first is None:
            first = cand
            continue
        if is_conjugate(to_word(stab.chart, cand), to_word(stab.chart, first)):
            target = cand
            break
    assert target is not None, "router found no conjugate alternative"
    cert = repath_certificate(fib, first.events[1:], target.events[1:])
    assert len(cert) == 1
