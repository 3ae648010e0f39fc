"""Brute-force conjugacy oracle: BFS over relator insertions.

Independent of Dehn reduction on purpose — this is the ground truth the fast
conjugacy decision is tested against at desk scale.  Sound for "true"; "false"
means no path within the length cap, so callers pick caps generously.
"""

from __future__ import annotations

from .words import (
    CyclicWord,
    Word,
    _relator_rotations,
    abelianize,
    canonical_cyclic,
)


def bfs_conjugacy_oracle(w1: Word | CyclicWord, w2: Word | CyclicWord,
                         max_length: int | None = None) -> bool:
    """True iff w2 is reachable from w1 by cyclic rotation and insertion of
    relator conjugates, never exceeding max_length letters.

    Default cap: max of both lengths plus two relator lengths.
    """
    if w1.genus != w2.genus:
        raise ValueError("genus mismatch")
    genus = w1.genus
    if genus < 2:
        raise ValueError("oracle needs genus >= 2")
    if abelianize(w1) != abelianize(w2):
        return False

    start = canonical_cyclic(w1.letters)
    target = canonical_cyclic(w2.letters)
    if start == target:
        return True
    if max_length is None:
        max_length = max(len(w1.letters), len(w2.letters)) + 8 * genus

    rots = _relator_rotations(genus)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for word in frontier:
            n = len(word)
            for i in range(max(n, 1)):
                head, tail = word[:i], word[i:]
                for rot in rots:
                    cand = canonical_cyclic(head + rot + tail)
                    if cand == target:
                        return True
                    if len(cand) <= max_length and cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
        frontier = nxt
    return False
