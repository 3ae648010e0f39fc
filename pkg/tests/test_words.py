import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crown.oracle import bfs_conjugacy_oracle
from crown.words import (
    CyclicWord,
    InvalidGenus,
    InvalidInput,
    Letter,
    Word,
    _relator_rotations,
    abelianize,
    canonical_cyclic,
    dehn_reduce,
    dehn_reduce_letters,
    free_reduce,
    is_conjugate,
    relator,
    symplectic_pairing,
)

letters_g2 = st.lists(st.integers(min_value=0, max_value=7), max_size=12)


def W(text, genus=2):
    return Word.from_str(text, genus)


def test_letter_roundtrip():
    l = Letter(2, "b", -1)
    assert str(l) == "B2"
    assert l.inverse().exponent == 1
    with pytest.raises(InvalidInput):
        Letter(0, "a", 1)
    with pytest.raises(InvalidInput):
        Letter(1, "c", 1)


def test_free_reduce_examples():
    assert free_reduce(W("a1 A1")).letters == ()
    assert str(free_reduce(W("a1 b1 B1 a2"))) == "a1 a2"
    # w . w^-1 reduces to nothing
    rng = random.Random(7)
    for _ in range(50):
        w = Word(2, tuple(rng.randrange(8) for _ in range(rng.randint(0, 9))))
        assert free_reduce(w.concat(w.inverse())).letters == ()


@given(letters_g2)
def test_free_reduce_idempotent_and_nonincreasing(ls):
    w = Word(2, tuple(ls))
    r = free_reduce(w)
    assert len(r) <= len(w)
    assert free_reduce(r) == r


def test_relator_examples():
    assert str(relator(1)) == "a1 b1 A1 B1"
    assert str(relator(2)) == "a1 b1 A1 B1 a2 b2 A2 B2"
    assert abelianize(relator(3)) == (0,) * 6
    with pytest.raises(InvalidGenus):
        relator(0)


def test_dehn_reduce_examples():
    assert dehn_reduce(relator(2).cyclic()).letters == ()
    # more than half the relator collapses to the inverse complement
    prefix = W("a1 b1 A1 B1 a2")
    assert dehn_reduce(prefix.cyclic()) == CyclicWord(2, W("b2 a2 B2").letters)
    short = W("a1 b2")
    assert dehn_reduce(short.cyclic()).letters == canonical_cyclic(short.letters)


@given(letters_g2)
@settings(max_examples=60)
def test_dehn_reduced_has_no_long_relator_subword(ls):
    genus = 2
    reduced = dehn_reduce_letters(tuple(ls), genus)
    n = len(reduced)
    if n == 0:
        return
    half = 2 * genus
    for rot in _relator_rotations(genus):
        for i in range(n):
            m = 0
            while m < min(n, len(rot)) and reduced[(i + m) % n] == rot[m]:
                m += 1
            assert m <= half


def test_is_conjugate_examples():
    assert is_conjugate(W("a1 b1"), W("b1 a1"))
    assert not is_conjugate(W("a1"), W("b1"))
    with pytest.raises(InvalidInput):
        is_conjugate(W("a1"), Word.from_str("a1", 3))
    # genus 1 is decided by homology
    assert is_conjugate(W("a1 b1", 1), W("b1 a1", 1))
    assert not is_conjugate(W("a1", 1), W("b1", 1))


def test_conjugate_implies_equal_homology(rng):
    for _ in range(100):
        w1 = Word(2, tuple(rng.randrange(8) for _ in range(rng.randint(1, 8))))
        r = Word(2, tuple(rng.randrange(8) for _ in range(rng.randint(0, 4))))
        w2 = r.concat(w1).concat(r.inverse())
        assert is_conjugate(w1, w2)
        assert abelianize(w1) == abelianize(w2)


def test_is_conjugate_is_equivalence_on_sample(rng):
    words = [Word(2, tuple(rng.randrange(8) for _ in range(rng.randint(1, 6))))
             for _ in range(12)]
    for w in words:
        assert is_conjugate(w, w)
    for u in words:
        for v in words:
            assert is_conjugate(u, v) == is_conjugate(v, u)
    # transitivity on the sample
    for u in words:
        for v in words:
            for w in words:
                if is_conjugate(u, v) and is_conjugate(v, w):
                    assert is_conjugate(u, w)


def test_symplectic_pairing():
    e_a1, e_b1, e_a2 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)
    assert symplectic_pairing(e_a1, e_b1) == 1
    assert symplectic_pairing(e_a1, e_a1) == 0
    assert symplectic_pairing(e_a1, e_a2) == 0
    with pytest.raises(InvalidInput):
        symplectic_pairing((1, 0), (1, 0, 0, 0))


@given(letters_g2, letters_g2)
@settings(max_examples=40)
def test_pairing_antisymmetric(ls1, ls2):
    u = abelianize(Word(2, tuple(ls1)))
    v = abelianize(Word(2, tuple(ls2)))
    assert symplectic_pairing(u, v) == -symplectic_pairing(v, u)


def test_oracle_examples(rng):
    w = Word(2, tuple(rng.randrange(8) for _ in range(6)))
    rot = CyclicWord(2, w.letters[2:] + w.letters[:2])
    assert bfs_conjugacy_oracle(w, rot.word())
    assert not bfs_conjugacy_oracle(W("a1"), W("b1"))
    for _ in range(20):
        base = Word(2, tuple(rng.randrange(8) for _ in range(rng.randint(1, 8))))
        r = Word(2, tuple(rng.randrange(8) for _ in range(rng.randint(1, 3))))
        conj = r.concat(base).concat(r.inverse())
        assert bfs_conjugacy_oracle(base, conj,
                                    max_length=len(base.letters) + 8)


def test_word_serialization_roundtrip(rng):
    for _ in range(30):
        w = Word(3, tuple(rng.randrange(12) for _ in range(rng.randint(0, 9))))
        assert Word.from_str(str(w), 3) == w
