"""Exact algebra in the fundamental group of a closed genus-g surface.

Words are sequences of generators a_1, b_1, ..., a_g, b_g of the standard
one-relator presentation with relator [a_1,b_1]...[a_g,b_g].  Internally a
letter is a small integer so the hot paths (reduction, conjugacy closures,
the BFS oracle) stay cheap:

    code = (gen_index << 1) | inv_bit,   gen_index = 2*(handle-1) + (0:a, 1:b)

The integer order of codes equals the canonical letter order
a1 < a1^-1 < b1 < b1^-1 < a2 < ... used for cyclic canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

CLOSURE_CAP = 10**6


class InvalidGenus(ValueError):
    pass


class InvalidInput(ValueError):
    pass


# ---------------------------------------------------------------------------
# letter codes

def letter_code(handle: int, kind: str, exponent: int) -> int:
    if handle < 1:
        raise InvalidInput(f"handle must be >= 1, got {handle}")
    if kind not in ("a", "b"):
        raise InvalidInput(f"kind must be 'a' or 'b', got {kind!r}")
    if exponent not in (1, -1):
        raise InvalidInput(f"exponent must be +1 or -1, got {exponent}")
    gen = 2 * (handle - 1) + (0 if kind == "a" else 1)
    return (gen << 1) | (0 if exponent == 1 else 1)


def code_inverse(code: int) -> int:
    return code ^ 1


def code_parts(code: int) -> tuple[int, str, int]:
    """Return (handle, kind, exponent) of a letter code."""
    gen = code >> 1
    return gen // 2 + 1, "ab"[gen % 2], 1 if code & 1 == 0 else -1


def code_str(code: int) -> str:
    handle, kind, exp = code_parts(code)
    name = f"{kind}{handle}"
    return name.upper() if exp == -1 else name


def parse_letter(text: str) -> int:
    kind = text[:1]
    if kind.lower() not in ("a", "b") or not text[1:].isdigit():
        raise InvalidInput(f"bad letter {text!r}")
    return letter_code(int(text[1:]), kind.lower(), -1 if kind.isupper() else 1)


@dataclass(frozen=True)
class Letter:
    handle: int
    kind: str
    exponent: int

    def __post_init__(self):
        letter_code(self.handle, self.kind, self.exponent)  # validates

    @property
    def code(self) -> int:
        return letter_code(self.handle, self.kind, self.exponent)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(*code_parts(code))

    def inverse(self) -> "Letter":
        return Letter(self.handle, self.kind, -self.exponent)

    def __str__(self) -> str:
        return code_str(self.code)


# ---------------------------------------------------------------------------
# raw-tuple word operations

def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Free reduction: cancel adjacent inverse pairs."""
    out: list[int] = []
    for c in letters:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def cyclic_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out = list(reduce_letters(letters))
    while len(out) >= 2 and out[0] == out[-1] ^ 1:
        out = out[1:-1]
    return tuple(out)


def invert_letters(letters: Iterable[int]) -> tuple[int, ...]:
    return tuple(c ^ 1 for c in reversed(tuple(letters)))


def least_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    if not letters:
        return letters
    n = len(letters)
    doubled = letters + letters
    best = 0
    for i in range(1, n):
        if doubled[i:i + n] < doubled[best:best + n]:
            best = i
    return doubled[best:best + n]


def relator_letters(genus: int) -> tuple[int, ...]:
    if genus < 1:
        raise InvalidGenus(f"genus must be >= 1, got {genus}")
    out: list[int] = []
    for h in range(1, genus + 1):
        a = letter_code(h, "a", 1)
        b = letter_code(h, "b", 1)
        out += [a, b, a ^ 1, b ^ 1]
    return tuple(out)


@lru_cache(maxsize=None)
def _relator_rotations(genus: int) -> tuple[tuple[int, ...], ...]:
    """All 8g cyclic rotations of the relator and its inverse."""
    r = relator_letters(genus)
    rows: list[tuple[int, ...]] = []
    for base in (r, invert_letters(r)):
        d = base + base
        n = len(base)
        rows.extend(d[i:i + n] for i in range(n))
    return tuple(rows)


def _match_len(word: tuple[int, ...], start: int, rot: tuple[int, ...]) -> int:
    """Longest common prefix of the cyclic word read from `start` with `rot`."""
    n = len(word)
    cap = min(n, len(rot))
    m = 0
    while m < cap and word[(start + m) % n] == rot[m]:
        m += 1
    return m


def dehn_reduce_letters(letters: Iterable[int], genus: int) -> tuple[int, ...]:
    """Dehn's algorithm on a cyclic word: replace any cyclic subword longer
    than half the relator by the shorter complementary piece, to a fixpoint.
    """
    if genus < 2:
        raise InvalidGenus("Dehn reduction needs genus >= 2; use abelianization at genus 1")
    rots = _relator_rotations(genus)
    rel_len = 4 * genus
    half = 2 * genus
    word = cyclic_reduce(letters)
    changed = True
    while changed and word:
        changed = False
        n = len(word)
        for i in range(n):
            for rot in rots:
                m = _match_len(word, i, rot)
                if m > half:
                    tail = invert_letters(rot[m:rel_len])
                    rest = tuple(word[(i + m + j) % n] for j in range(n - m))
                    word = cyclic_reduce(tail + rest)
                    changed = True
                    break
            if changed:
                break
    return word


def canonical_cyclic(letters: Iterable[int]) -> tuple[int, ...]:
    return least_rotation(cyclic_reduce(letters))


def _half_swap_neighbours(word: tuple[int, ...], genus: int) -> Iterator[tuple[int, ...]]:
    """Words obtained by swapping an exactly-half relator subword for the
    inverse complementary half (then re-reducing)."""
    rots = _relator_rotations(genus)
    rel_len = 4 * genus
    half = 2 * genus
    n = len(word)
    if n < half:
        return
    for i in range(n):
        for rot in rots:
            if _match_len(word, i, rot) >= half:
                tail = invert_letters(rot[half:rel_len])
                rest = tuple(word[(i + half + j) % n] for j in range(n - half))
                yield dehn_reduce_letters(tail + rest, genus)


def conjugacy_closure(letters: Iterable[int], genus: int, cap: int = CLOSURE_CAP) -> frozenset[tuple[int, ...]]:
    """Closure of a Dehn-reduced cyclic word under rotation and half-relator
    swaps; two words are conjugate iff their closures intersect."""
    start = canonical_cyclic(dehn_reduce_letters(letters, genus))
    seen = {start}
    frontier = [start]
    while frontier:
        if len(seen) > cap:
            raise RuntimeError(f"conjugacy closure exceeded cap {cap}")
        nxt = []
        for w in frontier:
            for nb in _half_swap_neighbours(w, genus):
                c = canonical_cyclic(nb)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(seen)


# ---------------------------------------------------------------------------
# public word types

def _check_letters(letters: tuple[int, ...], genus: int):
    for c in letters:
        handle, _, _ = code_parts(c)
        if handle > genus:
            raise InvalidInput(f"letter {code_str(c)} exceeds genus {genus}")


@dataclass(frozen=True)
class Word:
    genus: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise InvalidGenus(f"genus must be >= 1, got {self.genus}")
        object.__setattr__(self, "letters", tuple(self.letters))
        _check_letters(self.letters, self.genus)

    @classmethod
    def from_str(cls, text: str, genus: int) -> "Word":
        toks = text.split()
        return cls(genus, tuple(parse_letter(t) for t in toks))

    @classmethod
    def from_letters(cls, letters: Iterable[Letter], genus: int) -> "Word":
        return cls(genus, tuple(l.code for l in letters))

    def __str__(self) -> str:
        return " ".join(code_str(c) for c in self.letters) if self.letters else ""

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(self.genus, invert_letters(self.letters))

    def concat(self, other: "Word") -> "Word":
        if other.genus != self.genus:
            raise InvalidInput("genus mismatch")
        return Word(self.genus, self.letters + other.letters)

    def cyclic(self) -> "CyclicWord":
        return CyclicWord(self.genus, self.letters)


@dataclass(frozen=True)
class CyclicWord:
    """A cyclic word stored cyclically reduced, in its least rotation."""

    genus: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise InvalidGenus(f"genus must be >= 1, got {self.genus}")
        object.__setattr__(self, "letters", canonical_cyclic(tuple(self.letters)))
        _check_letters(self.letters, self.genus)

    def __str__(self) -> str:
        return " ".join(code_str(c) for c in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "CyclicWord":
        return CyclicWord(self.genus, invert_letters(self.letters))

    def word(self) -> Word:
        return Word(self.genus, self.letters)


# ---------------------------------------------------------------------------
# operations

def free_reduce(w: Word) -> Word:
    return Word(w.genus, reduce_letters(w.letters))


def relator(genus: int) -> Word:
    return Word(genus, relator_letters(genus))


def dehn_reduce(w: CyclicWord) -> CyclicWord:
    return CyclicWord(w.genus, dehn_reduce_letters(w.letters, w.genus))


def abelianize(w: Word | CyclicWord) -> tuple[int, ...]:
    """Homology vector, coordinates ordered (a1, b1, a2, b2, ..., ag, bg)."""
    vec = [0] * (2 * w.genus)
    for c in w.letters:
        vec[c >> 1] += 1 if c & 1 == 0 else -1
    return tuple(vec)


def symplectic_pairing(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    if len(u) != len(v) or len(u) % 2 != 0:
        raise InvalidInput("homology vectors must have equal even length")
    total = 0
    for h in range(len(u) // 2):
        total += u[2 * h] * v[2 * h + 1] - u[2 * h + 1] * v[2 * h]
    return total


def is_conjugate(w1: Word | CyclicWord, w2: Word | CyclicWord,
                 cap: int = CLOSURE_CAP) -> bool:
    """Decide conjugacy in the genus-g surface group.

    Genus 1 is abelian, so equality of homology decides.  For genus >= 2 two
    Dehn-reduced cyclic words are conjugate iff their closures under rotation
    and exact-half relator swaps intersect.
    """
    if w1.genus != w2.genus:
        raise InvalidInput("genus mismatch")
    if abelianize(w1) != abelianize(w2):
        return False
    if w1.genus == 1:
        return True
    r1 = dehn_reduce_letters(w1.letters, w1.genus)
    r2 = dehn_reduce_letters(w2.letters, w2.genus)
    if canonical_cyclic(r1) == canonical_cyclic(r2):
        return True
    c1 = conjugacy_closure(r1, w1.genus, cap)
    if canonical_cyclic(r2) in c1:
        return True
    return bool(c1 & conjugacy_closure(r2, w2.genus, cap))
