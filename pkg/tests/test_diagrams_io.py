from fractions import Fraction as F

import pytest

from crown import io as cio
from crown.diagrams import (
    ComparisonPolicy,
    CrownDiagram,
    InvalidDiagram,
    LefschetzFibration,
    SlideCertificate,
    SlideStep,
    IsotopyStep,
    ReorderStep,
    equal_up_to,
    validate_crown,
)
from crown.geometry import Curve, SideCrossing, SurfaceChart
from crown.samples import (
    chain_crown_g2_l4,
    chain_crown_g2_l5,
    chain_crown_g3_l6,
    disjoint_crown_g2_l6,
    lefschetz_chain,
)


def test_chain_fixtures_are_valid_crowns():
    for mk in (chain_crown_g2_l4, chain_crown_g2_l5, chain_crown_g3_l6):
        report = validate_crown(mk())
        assert report.passed, (mk.__name__, report)


def test_validate_flags_failures():
    d = disjoint_crown_g2_l6()
    report = validate_crown(d)
    assert not report.passed
    bad = [p for p in report.consecutive if not p.ok]
    assert bad and all(p.crossings == 0 for p in bad)
    # a diagram with a non-embedded curve is flagged
    from crown.geometry import curve_from_word
    from crown.words import Word

    chart = SurfaceChart(2)
    kinked = curve_from_word(chart, Word.from_str("a1 b1 a1", 2), "kink")
    report2 = validate_crown(CrownDiagram(chart, (kinked,)))
    assert not report2.passed
    assert dict(report2.embedded)["kink"] is False


def test_validate_deterministic():
    d = chain_crown_g2_l4()
    assert validate_crown(d) == validate_crown(d)


def test_crown_diagram_invariants():
    chart = SurfaceChart(2)
    c = Curve("x", (SideCrossing(0, F(1, 2)),))
    with pytest.raises(InvalidDiagram):
        CrownDiagram(chart, (c, c))
    with pytest.raises(InvalidDiagram):
        CrownDiagram(chart, ())
    with pytest.raises(InvalidDiagram):
        LefschetzFibration(SurfaceChart(1), (c,))


def test_equal_up_to_policies():
    d = chain_crown_g2_l4()
    chart, curves = d.chart, list(d.curves)
    ok, w, _ = equal_up_to(chart, curves, curves)
    assert ok and w.rotation == 0 and not w.reversed
    rotated = curves[1:] + curves[:1]
    assert equal_up_to(chart, curves, rotated)[0]
    assert not equal_up_to(chart, curves, rotated, ComparisonPolicy(allow_rotation=False))[0]
    # reversal
    assert equal_up_to(chart, curves, list(reversed(curves)),
                       ComparisonPolicy(allow_sequence_reversal=True))[0]
    # distinct homology class in one slot
    other = curves[:3] + [Curve("q", (SideCrossing(7, F(1, 2)),))]
    assert not equal_up_to(chart, curves, other)[0]
    # length mismatch reports a reason
    ok, _, reason = equal_up_to(chart, curves, curves[:2])
    assert not ok and "length" in reason


def test_roundtrip_byte_identity(tmp_path):
    for obj in (chain_crown_g2_l4(), chain_crown_g3_l6(), lefschetz_chain(3)):
        p = tmp_path / "f.json"
        cio.save(obj, p)
        text = p.read_text()
        again = cio.load(p)
        assert cio.dumps(again) == text


def test_load_rejects_bad_parameters(tmp_path):
    d = chain_crown_g2_l4()
    obj = cio.diagram_to_json(d)
    obj["curves"][0]["crossings"][0]["t"] = "0/1"
    with pytest.raises(InvalidDiagram):
        cio.diagram_from_json(obj)

    obj2 = cio.diagram_to_json(d)
    obj2["curves"][1]["crossings"][0] = dict(obj2["curves"][0]["crossings"][0])
    with pytest.raises(Exception) as err:
        cio.diagram_from_json(obj2)
    assert "c1" in str(err.value) or "duplicate" in str(err.value)


def test_load_rejects_schema_problems():
    with pytest.raises(cio.FormatError):
        cio.loads("{not json")
    with pytest.raises(cio.FormatError):
        cio.loads('{"format": "mystery"}')
    with pytest.raises(cio.FormatError):
        cio.loads('{"format": "crown-diagram", "version": 2, "genus": 2, "curves": [], "order": []}')


def test_certificate_roundtrip(tmp_path):
    from crown.arcs import quadrant_arcs

    d = chain_crown_g2_l4()
    arc = next(iter(quadrant_arcs(d.chart, d.curves, d.curves[0], d.curves[1])))
    cert = SlideCertificate((
        SlideStep(0, 1, 1, arc),
        IsotopyStep(2, d.curves[2]),
        ReorderStep((1, 0, 2, 3)),
    ))
    p = tmp_path / "c.json"
    cio.save(cert, p)
    again = cio.load(p)
    assert cio.dumps(again) == p.read_text()
    assert len(again.steps) == 3
