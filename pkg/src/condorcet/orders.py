"""Linear orders, triples and never-laws.

A linear order is stored best first, so ``(2, 3, 1)`` ranks 2 above 3 above 1.
The same sequence doubles as a permutation ``g`` of ``{1..n}`` with
``g(i) = seq[i - 1]``.

Relabeling is a right action: ``relabel(relabel(A, g), h) == relabel(A, compose(g, h))``
where ``compose(g, h)(i) = h(g(i))``.

A never-law ``rNp`` on a triple ``a < b < c`` says that the element of rank ``r``
in the sorted triple (1 for ``a``, 2 for ``b``, 3 for ``c``) never takes slot ``p``
in the restriction of an order to the triple.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_N = 16


class InputError(ValueError):
    """Malformed order, triple, law or label out of range."""


@dataclass(frozen=True, order=True)
class LinearOrder:
    seq: tuple[int, ...]

    def __post_init__(self) -> None:
        seq = tuple(self.seq)
        object.__setattr__(self, "seq", seq)
        n = len(seq)
        if not 1 <= n <= MAX_N:
            raise InputError(f"order length {n} outside 1..{MAX_N}")
        if sorted(seq) != list(range(1, n + 1)):
            raise InputError(f"{seq} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.seq)

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self) -> Iterator[int]:
        return iter(self.seq)

    def __getitem__(self, k):
        return self.seq[k]

    def __call__(self, i: int) -> int:
        """The permutation view: ``g(i)``."""
        return self.seq[i - 1]

    def __str__(self) -> str:
        return render_order(self)

    def __repr__(self) -> str:
        return f"LinearOrder({self.compact()})"

    def compact(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.seq))
        return " ".join(map(str, self.seq))

    def position(self, label: int) -> int:
        """0-based slot of ``label``."""
        return self.seq.index(label)

    def is_identity(self) -> bool:
        return all(v == k + 1 for k, v in enumerate(self.seq))


def order(seq: Sequence[int] | str) -> LinearOrder:
    """Build an order from a sequence or from text (see :func:`parse_order`)."""
    if isinstance(seq, str):
        return parse_order(seq)
    return LinearOrder(tuple(seq))


def identity(n: int) -> LinearOrder:
    return LinearOrder(tuple(range(1, n + 1)))


def all_orders(n: int) -> Iterator[LinearOrder]:
    """All n! orders in lexicographic order."""
    for seq in itertools.permutations(range(1, n + 1)):
        yield LinearOrder(seq)


def random_order(n: int, rng: random.Random | None = None) -> LinearOrder:
    rng = rng or random
    seq = list(range(1, n + 1))
    rng.shuffle(seq)
    return LinearOrder(tuple(seq))


def parse_order(text: str, n: int | None = None) -> LinearOrder:
    """Parse ``"2 3 1"`` or, for n <= 9, the compact form ``"231"``."""
    text = text.strip()
    if not text:
        raise InputError("empty order")
    if any(ch.isspace() for ch in text) or "," in text:
        try:
            seq = tuple(int(tok) for tok in text.replace(",", " ").split())
        except ValueError as exc:
            raise InputError(f"bad order token in {text!r}") from exc
    elif text.isdigit() and len(text) <= 9 and (n is None or n == len(text)):
        seq = tuple(int(ch) for ch in text)
    else:
        raise InputError(f"cannot parse order {text!r}")
    if n is not None and len(seq) != n:
        raise InputError(f"order {text!r} has length {len(seq)}, expected {n}")
    return LinearOrder(seq)


def render_order(o: LinearOrder) -> str:
    return " ".join(map(str, o.seq))


def relabel(o: LinearOrder, g: LinearOrder) -> LinearOrder:
    """Apply ``g`` to every entry of ``o``: slot k becomes ``g(o[k])``."""
    if o.n != g.n:
        raise InputError(f"cannot relabel an order on {o.n} by a permutation on {g.n}")
    gs = g.seq
    return LinearOrder(tuple(gs[v - 1] for v in o.seq))


def compose(g: LinearOrder, h: LinearOrder) -> LinearOrder:
    """Apply ``g`` first, then ``h``."""
    return relabel(g, h)


def invert(o: LinearOrder) -> LinearOrder:
    inv = [0] * o.n
    for k, v in enumerate(o.seq):
        inv[v - 1] = k + 1
    return LinearOrder(tuple(inv))


def reverse(o: LinearOrder) -> LinearOrder:
    return LinearOrder(o.seq[::-1])


@dataclass(frozen=True, order=True)
class Triple:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if not (1 <= self.a < self.b < self.c):
            raise InputError(f"triple ({self.a}, {self.b}, {self.c}) is not strictly ascending")

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b, self.c))

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"

    def check(self, n: int) -> None:
        if self.c > n:
            raise InputError(f"triple {self} has a label above n={n}")

    def rank(self, label: int) -> int:
        """Rank (1..3) of ``label`` within the triple."""
        return (self.a, self.b, self.c).index(label) + 1


def triple(*labels: int) -> Triple:
    if len(labels) == 1:
        labels = tuple(labels[0])
    a, b, c = sorted(labels)
    return Triple(a, b, c)


def triples(n: int) -> list[Triple]:
    """All C(n, 3) triples in lexicographic order."""
    return [Triple(*t) for t in itertools.combinations(range(1, n + 1), 3)]


def num_triples(n: int) -> int:
    return math.comb(n, 3)


@dataclass(frozen=True, order=True)
class NeverLaw:
    rank: int
    pos: int

    def __post_init__(self) -> None:
        if self.rank not in (1, 2, 3) or self.pos not in (1, 2, 3):
            raise InputError(f"bad never-law {self.rank}N{self.pos}")

    def __str__(self) -> str:
        return f"{self.rank}N{self.pos}"

    def __repr__(self) -> str:
        return f"NeverLaw({self})"

    @classmethod
    def parse(cls, token: str) -> NeverLaw:
        token = token.strip()
        if len(token) != 3 or token[1] not in "Nn" or token[0] not in "123" or token[2] not in "123":
            raise InputError(f"malformed law token {token!r}")
        return cls(int(token[0]), int(token[2]))

    def allows(self, pattern: Sequence[int]) -> bool:
        return pattern[self.pos - 1] != self.rank

    def dual(self) -> NeverLaw:
        """The law satisfied by the reversed orders."""
        return NeverLaw(self.rank, 4 - self.pos)


def law(token: str) -> NeverLaw:
    return NeverLaw.parse(token)


ALL_LAWS: tuple[NeverLaw, ...] = tuple(NeverLaw(r, p) for r in (1, 2, 3) for p in (1, 2, 3))
# Table order; also the default law schedule of the search.
IDENTITY_LAWS: tuple[NeverLaw, ...] = tuple(
    NeverLaw.parse(tok) for tok in ("1N3", "2N3", "3N1", "2N1", "1N2", "3N2")
)

# Local patterns in lexicographic order; index i of PATTERNS is pattern id i.
PATTERNS: tuple[tuple[int, int, int], ...] = tuple(itertools.permutations((1, 2, 3)))
PATTERN_ID = {p: i for i, p in enumerate(PATTERNS)}


def restrict(o: LinearOrder, t: Triple) -> tuple[int, int, int]:
    """Ranks of ``t``'s elements in the order they appear in ``o``."""
    t.check(o.n)
    ranks = {t.a: 1, t.b: 2, t.c: 3}
    out = tuple(ranks[v] for v in o.seq if v in ranks)
    return out  # type: ignore[return-value]


def satisfies_law(o: LinearOrder, t: Triple, lw: NeverLaw) -> bool:
    return lw.allows(restrict(o, t))


def laws_allowing(pattern: Sequence[int]) -> frozenset[NeverLaw]:
    return frozenset(lw for lw in ALL_LAWS if lw.allows(pattern))


def transport_law(t: Triple, lw: NeverLaw, g: LinearOrder) -> tuple[Triple, NeverLaw]:
    """Image of the constraint ``lw`` on ``t`` under relabeling by ``g``.

    The element ``x`` of rank ``lw.rank`` maps to ``g(x)``, whose rank in the
    re-sorted image triple may differ. The forbidden slot is unchanged.
    """
    x = (t.a, t.b, t.c)[lw.rank - 1]
    image = triple(g(t.a), g(t.b), g(t.c))
    return image, NeverLaw(image.rank(g(x)), lw.pos)


def reversal_map(n: int) -> LinearOrder:
    """The permutation ``i -> n + 1 - i``."""
    return LinearOrder(tuple(range(n, 0, -1)))


def orders_from(items: Iterable[Sequence[int] | str | LinearOrder]) -> list[LinearOrder]:
    return [it if isinstance(it, LinearOrder) else order(it) for it in items]
