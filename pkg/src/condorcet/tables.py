"""Vectorised lookup tables over all orders of a fixed n.

Order index ``i`` always means the i-th order in lexicographic enumeration, so
index 0 is the identity. Bit-sets over orders are plain Python ints with bit
``i`` standing for order ``i``.
"""

from __future__ import annotations

import functools
import itertools
import math

import numpy as np

from .orders import ALL_LAWS, PATTERN_ID, PATTERNS, NeverLaw, Triple, triples

# Largest n for which all n! orders are held in memory at once.
MATERIALIZE_LIMIT = 9


def _pattern_lookup() -> np.ndarray:
    # code = 4*[a before b] + 2*[a before c] + [b before c]
    table = np.full(8, 255, dtype=np.uint8)
    for pat in PATTERNS:
        slot = {r: k for k, r in enumerate(pat)}
        code = 4 * (slot[1] < slot[2]) + 2 * (slot[1] < slot[3]) + (slot[2] < slot[3])
        table[code] = PATTERN_ID[pat]
    return table


PATTERN_LOOKUP = _pattern_lookup()

# bit k set iff law allows pattern k
LAW_ALLOWED: dict[NeverLaw, int] = {
    lw: sum(1 << k for k, pat in enumerate(PATTERNS) if lw.allows(pat)) for lw in ALL_LAWS
}


def positions(arr: np.ndarray) -> np.ndarray:
    """``pos[i, x - 1]`` is the slot of label ``x`` in order ``i``."""
    m, n = arr.shape
    pos = np.empty_like(arr)
    rows = np.arange(m)[:, None]
    pos[rows, arr.astype(np.intp) - 1] = np.arange(n, dtype=arr.dtype)[None, :]
    return pos


def pattern_ids(pos: np.ndarray, t: Triple) -> np.ndarray:
    pa, pb, pc = pos[:, t.a - 1], pos[:, t.b - 1], pos[:, t.c - 1]
    code = 4 * (pa < pb).astype(np.uint8) + 2 * (pa < pc).astype(np.uint8) + (pb < pc).astype(np.uint8)
    return PATTERN_LOOKUP[code]


def present_patterns(ids: np.ndarray) -> int:
    """6-bit mask of the pattern ids occurring in ``ids``."""
    if ids.size == 0:
        return 0
    counts = np.bincount(ids, minlength=6)
    return sum(1 << k for k in range(6) if counts[k])


def laws_for_patterns(present: int) -> frozenset[NeverLaw]:
    return frozenset(lw for lw in ALL_LAWS if present & ~LAW_ALLOWED[lw] == 0)


def bool_to_bits(flags: np.ndarray) -> int:
    packed = np.packbits(flags.astype(bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bits_to_indices(bits: int) -> list[int]:
    if not bits:
        return []
    raw = np.frombuffer(bits.to_bytes((bits.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


def lex_rank(seq: tuple[int, ...]) -> int:
    """Index of ``seq`` in the lexicographic enumeration of permutations."""
    n = len(seq)
    rank = 0
    remaining = list(range(1, n + 1))
    for k, v in enumerate(seq):
        j = remaining.index(v)
        rank += j * math.factorial(n - 1 - k)
        remaining.pop(j)
    return rank


class Universe:
    """All n! orders of one degree plus cached per-(triple, law) bit masks."""

    def __init__(self, n: int):
        if n > MATERIALIZE_LIMIT:
            raise ValueError(f"n={n} is too large to materialise all orders")
        self.n = n
        self.size = math.factorial(n)
        self.triples = triples(n)
        self.triple_index = {t: k for k, t in enumerate(self.triples)}
        self.orders = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8).reshape(
            self.size, n
        )
        self.pos = positions(self.orders)
        self.full = (1 << self.size) - 1
        self._patterns: dict[int, np.ndarray] = {}
        self._masks: dict[tuple[int, NeverLaw], int] = {}

    def patterns(self, k: int) -> np.ndarray:
        ids = self._patterns.get(k)
        if ids is None:
            ids = self._patterns[k] = pattern_ids(self.pos, self.triples[k])
        return ids

    def law_mask(self, k: int, lw: NeverLaw) -> int:
        """Bit-set of the orders satisfying ``lw`` on triple number ``k``."""
        key = (k, lw)
        bits = self._masks.get(key)
        if bits is None:
            allowed = LAW_ALLOWED[lw]
            ok = ((allowed >> self.patterns(k).astype(np.int64)) & 1).astype(bool)
            bits = self._masks[key] = bool_to_bits(ok)
        return bits

    def seq(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.orders[i])

    def seqs(self, bits: int) -> list[tuple[int, ...]]:
        return [self.seq(i) for i in bits_to_indices(bits)]


@functools.lru_cache(maxsize=None)
def universe(n: int) -> Universe:
    return Universe(n)
