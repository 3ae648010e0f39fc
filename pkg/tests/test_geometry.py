import random
from fractions import Fraction as F

import pytest

from crown.arcs import arc_candidates, quadrant_arcs, straight_arc
from crown.geometry import (
    Curve,
    InvalidArc,
    InvalidSide,
    NotInGeneralPosition,
    SideCrossing,
    SurfaceChart,
    chart_vertices,
    curve_from_word,
    curve_segments,
    intersections,
    is_embedded,
    min_edge_gap,
    parallel_copy,
    partner,
    pull_tight,
    reverse_curve,
    self_intersections,
    side_for_letter,
    side_letter,
    slide,
    slide_word_letters,
    to_word,
)
from crown.words import Word, abelianize, cyclic_reduce, is_conjugate, symplectic_pairing


def _curve(name, *events):
    return Curve(name, tuple(SideCrossing(s, F(*t) if isinstance(t, tuple) else F(t))
                             for s, t in events))


def test_partner_examples(chart2):
    assert chart2.partner(0) == 2
    assert chart2.partner(1) == 3
    for s in range(8):
        assert chart2.partner(chart2.partner(s)) == s
        assert chart2.partner(s) != s
    with pytest.raises(InvalidSide):
        partner(2, 8)


def test_chart_vertices_convex():
    for g in (1, 2, 3, 4):
        verts = chart_vertices(g)
        assert len(verts) == 4 * g
        assert len(set(verts)) == 4 * g


def test_vertex_link_reads_relator(chart2):
    """A small loop around the polygon vertex crosses the sides in the order
    0,3,2,1,... and must read the standard relator, hence reduce to nothing:
    the chart conventions and the group presentation are coherent."""
    order = [0, 3, 2, 1, 4, 7, 6, 5]
    link = Curve("link", tuple(SideCrossing(s, F(1, 10)) for s in order))
    assert is_embedded(chart2, link)
    assert len(to_word(chart2, link)) == 0


def test_side_letter_inverse_pairing(chart3):
    for s in range(12):
        assert side_letter(chart3.partner(s)) == side_letter(s) ^ 1
        assert side_for_letter(side_letter(s)) == s


def test_to_word_examples(chart2):
    assert str(to_word(chart2, _curve("a", (0, (1, 2))))) == "a1"
    poly = Curve("p", (), ((F(1, 8), F(1, 8)), (F(1, 4), F(1, 16)), (F(3, 16), F(1, 4))))
    assert len(to_word(chart2, poly)) == 0
    square = SurfaceChart(1)
    w = to_word(square, Curve("r", tuple(SideCrossing(s, F(1, 2)) for s in (0, 1, 2, 3))))
    assert abelianize(w) == (0, 0)


def test_intersections_examples(chart2):
    c0 = _curve("x", (0, (1, 2)))
    c1 = _curve("y", (1, (1, 2)))
    assert len(intersections(chart2, c0, c1)) == 1
    # a disjoint parallel translate
    c2 = parallel_copy(chart2, c0, F(1, 8), "x2")
    assert intersections(chart2, c0, c2) == []


def test_intersections_bound_by_pairing(chart2, rng):
    for _ in range(40):
        ws = []
        curves = []
        for name in ("u", "v"):
            letters = cyclic_reduce(tuple(rng.randrange(8) for _ in range(rng.randint(1, 4))))
            if not letters:
                letters = (0,)
            w = Word(2, letters)
            ws.append(w)
            curves.append(curve_from_word(chart2, w, name, curves))
        pairing = symplectic_pairing(abelianize(to_word(chart2, curves[0])),
                                     abelianize(to_word(chart2, curves[1])))
        crossings = len(intersections(chart2, curves[0], curves[1]))
        assert crossings >= abs(pairing)
        assert (crossings - pairing) % 2 == 0


def test_is_embedded_examples(chart2):
    assert is_embedded(chart2, _curve("s", (0, (1, 2))))
    bad = curve_from_word(chart2, Word.from_str("a1 b1 a1", 2), "w")
    assert not is_embedded(chart2, bad)
    assert len(self_intersections(chart2, bad)) == 2


def test_general_position_error(chart2):
    c1 = _curve("a", (0, (1, 2)))
    c2 = _curve("b", (0, (1, 2)))
    with pytest.raises(NotInGeneralPosition):
        from crown.geometry import check_general_position

        check_general_position(chart2, [c1, c2])


def test_pull_tight(chart2):
    c = _curve("bt", (0, (1, 3)), (2, (1, 3)), (3, (1, 2)))
    tight = pull_tight(chart2, c)
    assert len(tight.events) == 1
    assert str(to_word(chart2, tight)) == "b1"
    assert is_conjugate(to_word(chart2, c), to_word(chart2, tight))
    # already tight: unchanged
    assert pull_tight(chart2, tight) == tight
    # fully cancelling curve becomes an interior polyline
    c2 = _curve("null", (0, (1, 3)), (2, (1, 3)))
    emptied = pull_tight(chart2, c2)
    assert not emptied.events and len(emptied.polyline) >= 3


def test_curve_from_word_roundtrip(chart2, chart3, rng):
    for trial in range(500):
        chart = chart2 if trial % 3 else chart3
        n_gen = 4 * chart.genus
        letters = cyclic_reduce(tuple(rng.randrange(n_gen * 2 // 2) for _ in range(rng.randint(1, 8))))
        w = Word(chart.genus, letters)
        c = curve_from_word(chart, w, "rt")
        assert is_conjugate(to_word(chart, c), w.cyclic())
    assert len(curve_from_word(chart2, Word(2, ()), "e").polyline) >= 3


def test_reverse_curve(chart2):
    c = _curve("b", (3, (1, 2)))
    assert str(to_word(chart2, reverse_curve(chart2, c))) == "B1"
    c2 = curve_from_word(chart2, Word.from_str("a1 b2 A2", 2), "w")
    assert is_conjugate(to_word(chart2, reverse_curve(chart2, c2)),
                        to_word(chart2, c2).inverse())


class TestSlide:
    def setup_method(self):
        self.chart = SurfaceChart(2)
        self.mover = _curve("m", (0, (1, 2)))
        self.over = _curve("o", (3, (1, 2)))
        self.curves = [self.mover, self.over]
        self.arc = next(iter(quadrant_arcs(self.chart, self.curves, self.mover, self.over)))

    def test_word_and_homology_law(self):
        out = slide(self.chart, self.curves, "m", "o", 1, self.arc)
        new = next(c for c in out if c.name == "m")
        w = to_word(self.chart, new)
        assert is_conjugate(w, Word.from_str("a1 b1", 2).cyclic())
        assert abelianize(w) == (1, 1, 0, 0)
        assert is_embedded(self.chart, new)

    def test_inverse_slide_restores_class(self):
        out = slide(self.chart, self.curves, "m", "o", 1, self.arc)
        new = next(c for c in out if c.name == "m")
        # slide back over the same curve with the opposite sign
        from crown.moves import _Work

        work = _Work(self.chart, out)
        assert work.slide_any_arc(0, 1, -1, target=to_word(self.chart, self.mover))
        assert is_conjugate(work.word(0), to_word(self.chart, self.mover))

    def test_invalid_arcs_rejected(self):
        from crown.geometry import ArcEnd, ArcPoint, SlideArc, validate_arc
        from crown.samples import disjoint_crown_g2_l6

        # a recorded waypoint the arc never reaches
        ghost = SlideArc(start=ArcEnd(0, self.arc.start.fraction),
                         end=ArcEnd(0, self.arc.end.fraction),
                         approach=self.arc.approach,
                         waypoints=(ArcPoint(F(1, 97), F(1, 89)),))
        with pytest.raises(InvalidArc):
            validate_arc(self.chart, self.curves, self.mover, self.over, ghost)

        # an arc that crosses third curves without recording them
        d = disjoint_crown_g2_l6()
        c2, c1 = d.curve("c2"), d.curve("c1")
        clean = straight_arc(d.chart, d.curves, c2, c1, record_crossings=True)
        assert clean is not None and clean.waypoints
        stripped = SlideArc(start=clean.start, end=clean.end,
                            approach=clean.approach, waypoints=())
        with pytest.raises(InvalidArc):
            validate_arc(d.chart, d.curves, c2, c1, stripped)

    def test_random_slides_obey_laws(self, rng):
        done = 0
        trial = 0
        while done < 60 and trial < 500:
            trial += 1
            chart = SurfaceChart(rng.choice([2, 2, 3]))
            curves = []
            for name in ("u", "v", "w")[: rng.randint(2, 3)]:
                letters = cyclic_reduce(tuple(rng.randrange(4 * chart.genus)
                                              for _ in range(rng.randint(1, 4))))
                if not letters:
                    letters = (0,)
                curves.append(curve_from_word(chart, Word(chart.genus, letters), name, curves))
            if not all(is_embedded(chart, c) for c in curves):
                continue
            mover, over = curves[0], curves[1]
            sign = rng.choice([1, -1])
            arc = next(iter(quadrant_arcs(chart, curves, mover, over)), None)
            if arc is None:
                arc = straight_arc(chart, curves, mover, over, record_crossings=True)
            if arc is None:
                continue
            out = slide(chart, curves, mover.name, over.name, sign, arc)
            new = next(c for c in out if c.name == mover.name)
            expected = Word(chart.genus, slide_word_letters(mover, over, arc, sign))
            assert is_conjugate(to_word(chart, new), expected.cyclic())
            ab = abelianize(to_word(chart, new))
            want = tuple(a + sign * b for a, b in zip(abelianize(to_word(chart, mover)),
                                                      abelianize(to_word(chart, over))))
            assert ab == want
            done += 1
        assert done >= 50
