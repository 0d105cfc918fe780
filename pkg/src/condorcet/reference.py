"""Unpruned Condorcet-tree reference, used as an oracle for the pruned search.

Law filters are built order by order with :func:`condorcet.orders.satisfies_law`
over all nine laws, and leaves are kept only when maximal. No pruning, no
collapse and nothing from the search engine's tables.
"""

from __future__ import annotations

import functools
import itertools
import operator
from typing import Iterator, Sequence

from .domain import Domain
from .orders import ALL_LAWS, IDENTITY_LAWS, LinearOrder, NeverLaw, Triple, satisfies_law, triples


class _Filters:
    def __init__(self, n: int, schedule: Sequence[Triple] | None, laws: Sequence[NeverLaw]):
        self.n = n
        self.schedule = list(schedule or triples(n))
        self.orders = [LinearOrder(p) for p in itertools.permutations(range(1, n + 1))]
        self.root = (1 << len(self.orders)) - 1
        self.rows = [
            [sum(1 << i for i, o in enumerate(self.orders) if satisfies_law(o, t, lw)) for lw in laws]
            for t in self.schedule
        ]
        self.all_rows = [
            [sum(1 << i for i, o in enumerate(self.orders) if satisfies_law(o, t, lw)) for lw in ALL_LAWS]
            for t in self.schedule
        ]

    def is_maximal(self, c: int) -> bool:
        """No order outside ``c`` obeys, on every triple, some law that all of ``c`` obeys."""
        grow = self.root
        for row in self.all_rows:
            grow &= functools.reduce(operator.or_, (mask for mask in row if c & ~mask == 0), 0)
        return grow == c

    def domain(self, bits: int) -> Domain:
        return Domain(self.n, tuple(o for i, o in enumerate(self.orders) if bits >> i & 1))


def _leaves_literal(f: _Filters) -> Iterator[int]:
    def walk(t: int, c: int) -> Iterator[int]:
        if t == len(f.schedule):
            yield c
            return
        for mask in f.rows[t]:
            yield from walk(t + 1, c & mask)

    return walk(0, f.root)


def _leaves_merged(f: _Filters) -> set[int]:
    # A subtree depends only on its depth and its order set, so merging equal
    # sets level by level gives the same leaves as the literal traversal.
    level = {f.root}
    for row in f.rows:
        level = {c & mask for c in level for mask in row}
    return level


def full_tree_leaves(
    n: int, schedule: Sequence[Triple] | None = None, laws: Sequence[NeverLaw] = IDENTITY_LAWS
) -> Iterator[Domain]:
    """Every leaf of the full 6-ary tree by literal depth-first traversal (6^C(n,3) leaves)."""
    f = _Filters(n, schedule, laws)
    for c in _leaves_literal(f):
        yield f.domain(c)


def distinct_leaves(
    n: int, schedule: Sequence[Triple] | None = None, laws: Sequence[NeverLaw] = IDENTITY_LAWS
) -> set[Domain]:
    """The distinct leaf sets of the full tree."""
    f = _Filters(n, schedule, laws)
    return {f.domain(c) for c in _leaves_merged(f)}


def reference_mcds(
    n: int,
    cutoff: int = 1,
    literal: bool = False,
    schedule: Sequence[Triple] | None = None,
    laws: Sequence[NeverLaw] = IDENTITY_LAWS,
) -> set[Domain]:
    """Unitary maximal Condorcet domains of size >= cutoff among the unpruned tree's leaves.

    ``literal`` walks all 6^C(n,3) leaves one by one (n <= 4 in practice);
    otherwise equal subtrees are merged level by level.
    """
    f = _Filters(n, schedule, laws)
    leaves = set(_leaves_literal(f)) if literal else _leaves_merged(f)
    return {f.domain(c) for c in leaves if c.bit_count() >= cutoff and f.is_maximal(c)}
