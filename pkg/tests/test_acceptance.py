"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with  pytest tests/test_acceptance.py -s  to see the per-criterion lines.
All bounds (pair counts, time budgets, zero-failure requirements) are pinned
here and not tunable from outside.
"""

import random
import time
from fractions import Fraction as F

import pytest

from crown import io as cio
from crown.arcs import quadrant_arcs, straight_arc
from crown.coronation import coronate, pseudocoronate, switching_push
from crown.diagrams import ComparisonPolicy, CrownDiagram, SlideCertificate, SlideStep
from crown.equivalence import (
    SearchBounds,
    replay_step,
    search_certificate,
    verify_certificate,
)
from crown.geometry import (
    Curve,
    SideCrossing,
    SurfaceChart,
    curve_from_word,
    intersections,
    is_embedded,
    slide,
    slide_word_letters,
    to_word,
)
from crown.moves import shift, transpose_adjacent
from crown.oracle import bfs_conjugacy_oracle
from crown.render import render_svg
from crown.samples import (
    chain_crown_g2_l4,
    chain_crown_g2_l5,
    chain_crown_g3_l6,
    disjoint_crown_g2_l6,
    dual_pair_lefschetz,
    lefschetz_chain,
)
from crown.words import Word, _relator_rotations, abelianize, cyclic_reduce, is_conjugate

THEOREM_POLICY = ComparisonPolicy(allow_rotation=True, allow_curve_inversion=True)


def report(name: str, ok: bool, detail: str = ""):
    line = f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def _random_pairs(rng, genus, n_uniform, n_planted, n_shuffled, max_len=10):
    n_letters = 4 * genus
    rotations = _relator_rotations(genus)

    def rand_word(lo=1, hi=max_len):
        return Word(genus, tuple(rng.randrange(n_letters) for _ in range(rng.randint(lo, hi))))

    pairs = []
    for _ in range(n_uniform):
        pairs.append((rand_word(), rand_word()))
    for i in range(n_planted):
        w = rand_word()
        mode = i % 3
        if mode == 0:
            rot = rng.randrange(max(len(w.letters), 1))
            pairs.append((w, Word(genus, w.letters[rot:] + w.letters[:rot])))
        elif mode == 1:
            r = rand_word(1, 4)
            pairs.append((w, r.concat(w).concat(r.inverse())))
        else:
            ins = rng.choice(rotations)
            k = rng.randrange(len(w.letters) + 1)
            pairs.append((w, Word(genus, w.letters[:k] + ins + w.letters[k:])))
    for _ in range(n_shuffled):
        w = rand_word(4, max_len)
        ls = list(w.letters)
        rng.shuffle(ls)
        pairs.append((w, Word(genus, tuple(ls))))
    return pairs


def test_conjugacy_correctness():
    """is_conjugate agrees with the BFS insertion oracle on >= 10000 pairs at
    genus 2 and >= 2000 at genus 3, within 120 s."""
    rng = random.Random(90125)
    t0 = time.time()
    checked = 0
    for genus, counts in ((2, (6000, 2000, 2000)), (3, (1200, 400, 400))):
        for w1, w2 in _random_pairs(rng, genus, *counts):
            cap = max(len(w1.letters), len(w2.letters))
            fast = is_conjugate(w1, w2)
            slow = bfs_conjugacy_oracle(w1, w2, max_length=cap)
            if fast and not slow:
                # the oracle's no is only meaningful up to its cap; a positive
                # with a bigger cap terminates quickly on the first hit
                slow = bfs_conjugacy_oracle(w1, w2, max_length=cap + 8 * genus)
            assert fast == slow, (genus, str(w1), str(w2), fast, slow)
            checked += 1
    elapsed = time.time() - t0
    report("conjugacy-correctness", checked >= 12000 and elapsed < 120,
           f"{checked} pairs in {elapsed:.1f}s")


def test_slide_law():
    """>=200 random geometric slides satisfy the homology law exactly and the
    word law up to conjugacy; zero failures."""
    rng = random.Random(424242)
    done = 0
    trials = 0
    while done < 200 and trials < 2000:
        trials += 1
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
        got = abelianize(to_word(chart, new))
        want = tuple(a + sign * b for a, b in zip(abelianize(to_word(chart, mover)),
                                                  abelianize(to_word(chart, over))))
        assert got == want, (trials, got, want)
        composed = Word(chart.genus, slide_word_letters(mover, over, arc, sign))
        assert is_conjugate(to_word(chart, new), composed.cyclic()), trials
        done += 1
    report("slide-law", done >= 200, f"{done} slides, 0 failures")


THEOREM1_DIAGRAMS = (
    ("genus-2 chain l=4", chain_crown_g2_l4),
    ("genus-2 chain l=5", chain_crown_g2_l5),
    ("genus-3 chain l=6", chain_crown_g3_l6),
    ("disjoint special case l=6", disjoint_crown_g2_l6),
)


def test_theorem_one_at_desk_scale():
    """Every admissible k on the test crowns: shift returns and its
    certificate verifies against the input, each run under 5 s."""
    worst = 0.0
    runs = 0
    for label, mk in THEOREM1_DIAGRAMS:
        d = mk()
        for k in range(2, len(d.curves)):
            t0 = time.time()
            res = shift(d, k)
            dt = time.time() - t0
            worst = max(worst, dt)
            assert dt < 5.0, (label, k, dt)
            assert len(res.output.curves) == len(d.curves)
            rep = verify_certificate(d.chart, res.output.curves, res.certificate,
                                     d.curves, THEOREM_POLICY)
            assert rep.passed, (label, k, rep.reason)
            runs += 1
    # the disjoint special case is the pure reordering of sequence (4)
    d = disjoint_crown_g2_l6()
    res = shift(d, 3)
    names = [c.name for c in res.output.curves]
    assert names == ["c2", "c3", "c1", "c4", "c5", "c6"]
    assert all(c.events == d.curve(c.name).events for c in res.output.curves)
    report("theorem-1-shift", runs >= 10,
           f"{runs} shifts across {len(THEOREM1_DIAGRAMS)} diagrams, worst {worst:.2f}s")


def test_cusp_pass_locality():
    """Curves disjoint from c_1 and c_l are byte-identical in every shift
    output across the Theorem-1 diagrams."""
    checked = 0
    for label, mk in THEOREM1_DIAGRAMS:
        d = mk()
        c1, cl = d.curves[0], d.curves[-1]
        for k in range(2, len(d.curves)):
            res = shift(d, k)
            for c in d.curves[1:-1]:
                m = (len(intersections(d.chart, c, c1))
                     + len(intersections(d.chart, c, cl)))
                if m == 0:
                    got = next(x for x in res.output.curves if x.name == c.name)
                    assert got.events == c.events, (label, k, c.name)
                    checked += 1
    report("cusp-pass-locality", checked > 0, f"{checked} disjoint curves byte-identical")


def test_theorem_two_at_desk_scale():
    """Coronations on genus-2 fibers for n = 1..4: the certificate verifies
    against the pseudocoronation built from the same path, each under 60 s."""
    fibs = [lefschetz_chain(1), dual_pair_lefschetz(), lefschetz_chain(3), lefschetz_chain(4)]
    worst = 0.0
    for fib in fibs:
        n = len(fib.cycles)
        t0 = time.time()
        res = coronate(fib)
        dt = time.time() - t0
        worst = max(worst, dt)
        assert dt < 60.0, (n, dt)
        if n == 1:
            assert res.coronation.curves == res.pseudocoronation
            assert len(res.certificate) == 0
            continue
        stab, pseudo, _ = pseudocoronate(fib, phi=res.path)
        assert pseudo == res.pseudocoronation
        rep = verify_certificate(stab.chart, res.coronation.curves, res.certificate,
                                 pseudo, THEOREM_POLICY)
        assert rep.passed, (n, rep.reason)
        assert len(res.stages) == n - 1  # one merge per triangle
    report("theorem-2-coronation", True, f"n in 1..4, worst {worst:.1f}s")


def test_switching_push_map():
    """>=20 disk-switch configurations: the pushed class equals the
    slide-over-b-then-c class; zero failures."""
    rng = random.Random(11)
    chart = SurfaceChart(2)
    done = 0
    trials = 0
    while done < 20 and trials < 100:
        trials += 1
        base_side = rng.choice([0, 4])
        other = 3 if base_side == 0 else 7
        ts = sorted({F(rng.randint(1, 30), 31) for _ in range(4)})
        if len(ts) < 4:
            continue
        s = Curve("s", (SideCrossing(base_side, ts[0]),))
        a = Curve("a", (SideCrossing(other, ts[1]),))
        b = Curve("b", (SideCrossing(other, ts[2]),))
        c = Curve("c", (SideCrossing(other, ts[3]),))
        try:
            pushed, cert = switching_push(chart, [s, a, b, c], "a", "b", "c")
        except Exception:
            continue
        # the certificate really is the two-slide composition
        curves = [s, a, b, c]
        state = list(curves)
        for step in cert.steps:
            state = replay_step(chart, state, step)
        assert is_conjugate(to_word(chart, state[1]), to_word(chart, pushed))
        done += 1
    report("switching-push", done >= 20, f"{done} configurations, 0 failures")


def test_transposition():
    """>=50 adjacent one-crossing pairs swap classes up to inversion, and a
    second application restores them; zero failures."""
    done = 0
    for shift_num in range(5):
        delta = F(shift_num, 97)
        for mk in (chain_crown_g2_l4, chain_crown_g2_l5, chain_crown_g3_l6):
            base = mk()
            curves = tuple(Curve(c.name, tuple(SideCrossing(e.side, e.t + delta)
                                               for e in c.events))
                           for c in base.curves)
            d = CrownDiagram(base.chart, curves)
            for i in range(len(d.curves) - 1):
                if len(intersections(d.chart, d.curves[i], d.curves[i + 1])) != 1:
                    continue
                old = [to_word(d.chart, c) for c in d.curves]
                once, cert = transpose_adjacent(d, i)
                new = [to_word(d.chart, c) for c in once.curves]
                assert (is_conjugate(new[i], old[i + 1])
                        or is_conjugate(new[i], old[i + 1].inverse())), (mk.__name__, i)
                assert (is_conjugate(new[i + 1], old[i])
                        or is_conjugate(new[i + 1], old[i].inverse())), (mk.__name__, i)
                twice, _ = transpose_adjacent(once, i)
                back = [to_word(d.chart, c) for c in twice.curves]
                for w_new, w_old in zip(back, old):
                    assert (is_conjugate(w_new, w_old)
                            or is_conjugate(w_new, w_old.inverse())), (mk.__name__, i)
                done += 1
    report("transposition", done >= 50, f"{done} pairs, 0 failures")


def test_search_oracle_sanity():
    """>=20 pairs with 1-2 planted slides are found within depth 2, under
    30 s each."""
    rng = random.Random(5150)
    chart = SurfaceChart(2)
    done = 0
    trials = 0
    worst = 0.0
    while done < 20 and trials < 80:
        trials += 1
        ts = sorted({F(rng.randint(1, 40), 41) for _ in range(3)})
        if len(ts) < 3:
            continue
        curves = (Curve("c1", (SideCrossing(0, ts[0]),)),
                  Curve("c2", (SideCrossing(3, ts[1]),)),
                  Curve("c3", (SideCrossing(4, ts[2]),)))
        depth = rng.choice([1, 2])
        state = list(curves)
        planted = 0
        for _ in range(depth):
            i, j = rng.sample(range(3), 2)
            arc = next(iter(quadrant_arcs(chart, state, state[i], state[j])), None)
            if arc is None:
                arc = straight_arc(chart, state, state[i], state[j],
                                   record_crossings=True)
            if arc is None:
                continue
            try:
                state = replay_step(chart, state, SlideStep(i, j, rng.choice([1, -1]), arc))
                planted += 1
            except Exception:
                continue
        if planted == 0:
            continue
        t0 = time.time()
        cert = search_certificate(chart, curves, tuple(state),
                                  SearchBounds(max_slides=2))
        dt = time.time() - t0
        worst = max(worst, dt)
        assert dt < 30.0, dt
        assert cert is not None, (trials, planted)
        assert verify_certificate(chart, curves, cert, tuple(state),
                                  ComparisonPolicy()).passed
        done += 1
    report("search-oracle-sanity", done >= 20, f"{done} planted pairs, worst {worst:.1f}s")


def test_roundtrip_and_determinism(tmp_path):
    """save/load byte-identity on all fixture files; render_svg byte-identity
    across repeated runs."""
    fixtures = [chain_crown_g2_l4(), chain_crown_g2_l5(), chain_crown_g3_l6(),
                disjoint_crown_g2_l6(), lefschetz_chain(3), dual_pair_lefschetz()]
    for idx, obj in enumerate(fixtures):
        p = tmp_path / f"fixture{idx}.json"
        cio.save(obj, p)
        assert cio.dumps(cio.load(p)) == p.read_text(), idx
    for obj in fixtures[:4]:
        assert render_svg(obj) == render_svg(obj)
    report("roundtrip-determinism", True, f"{len(fixtures)} fixtures")
