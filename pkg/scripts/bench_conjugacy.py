"""Timing comparison of the closure-based conjugacy decision against the
brute-force insertion oracle on random word pairs."""

import random
import sys
import time

from crown.oracle import bfs_conjugacy_oracle
from crown.words import Word, is_conjugate


def bench(genus: int, pairs: int, max_len: int = 10, seed: int = 1):
    rng = random.Random(seed)
    n_letters = 4 * genus
    sample = []
    for i in range(pairs):
        w1 = Word(genus, tuple(rng.randrange(n_letters)
                               for _ in range(rng.randint(1, max_len))))
        if i % 3 == 0:
            r = Word(genus, tuple(rng.randrange(n_letters) for _ in range(3)))
            w2 = r.concat(w1).concat(r.inverse())
        elif i % 3 == 1:
            ls = list(w1.letters)
            rng.shuffle(ls)
            w2 = Word(genus, tuple(ls))
        else:
            w2 = Word(genus, tuple(rng.randrange(n_letters)
                                   for _ in range(rng.randint(1, max_len))))
        sample.append((w1, w2))

    t0 = time.time()
    fast = [is_conjugate(a, b) for a, b in sample]
    t_fast = time.time() - t0
    t0 = time.time()
    slow = [bfs_conjugacy_oracle(a, b, max_length=max(len(a.letters), len(b.letters)))
            for a, b in sample]
    t_slow = time.time() - t0
    agree = sum(f == s for f, s in zip(fast, slow))
    print(f"genus {genus}: {pairs} pairs, {sum(fast)} conjugate; "
          f"is_conjugate {t_fast:.2f}s, oracle {t_slow:.2f}s, "
          f"agreement {agree}/{pairs}")


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
    bench(2, n)
    bench(3, max(n // 5, 100))
