"""Pruned depth-first search of the Condorcet tree for unitary maximal domains.

Depth ``t`` of the tree enforces one of the six identity-compatible laws on
triple ``T_t`` of the triple schedule. Every node carries the set ``c`` of
orders obeying the laws on its path, stored as a bit-set over the lexicographic
enumeration of all n! orders, and the sets ``L_s`` of laws that all of ``c``
obeys on each scheduled triple, stored as 6-bit masks over the law schedule.

A node is abandoned when

* ``|c| < cutoff`` (``c`` only shrinks downwards),
* some ``L_s`` holds a law earlier in the schedule than the one chosen on
  ``T_s`` (duplicate; every maximal domain is reached on the path that picks
  its least law at each branching level),
* some order outside ``c`` could join every leaf below without breaking the
  Condorcet property (containment; no leaf below is maximal).

When ``c`` already obeys a law on the next triple, only the child enforcing the
least such law is visited and ``c`` is passed down unchanged. Such collapsed
levels made no choice and are skipped by the duplicate test.

``literal=True`` selects the looser textbook variants instead: the duplicate
test also covers collapsed levels and the containment test ignores the triples
not yet enforced. Both are cheaper, and both lose maximal domains from n = 5 on.
"""

from __future__ import annotations

import concurrent.futures
import functools
import json
import logging
import math
import operator
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import tables
from .domain import Domain, is_condorcet, is_maximal
from .orders import IDENTITY_LAWS, InputError, LinearOrder, NeverLaw, Triple, identity, triples

log = logging.getLogger(__name__)

PRUNE_KINDS = ("dup", "contain", "collapse")
DEADLINE_CHECK_EVERY = 1024


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    prune_dup: int = 0
    prune_contain: int = 0
    prune_cutoff: int = 0
    collapses: int = 0
    results: int = 0
    max_size: int = 0
    wall_seconds: float = 0.0

    def merge(self, other: SearchStats) -> None:
        for name in ("nodes_expanded", "prune_dup", "prune_contain", "prune_cutoff", "collapses"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.max_size = max(self.max_size, other.max_size)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SearchConfig:
    n: int
    cutoff: int = 1
    triple_order: tuple[Triple, ...] | None = None
    law_order: tuple[NeverLaw, ...] = IDENTITY_LAWS
    split_depth: int = 0
    jobs: int = 1
    disabled: frozenset[str] = frozenset()
    time_limit: float | None = None
    verify: bool = True
    literal: bool = False

    def __post_init__(self) -> None:
        if self.n < 3:
            raise InputError("n must be at least 3")
        if self.n > tables.MATERIALIZE_LIMIT:
            raise InputError(f"search supports n <= {tables.MATERIALIZE_LIMIT}")
        if self.cutoff < 1:
            raise InputError("cutoff must be at least 1")
        if self.triple_order is None:
            object.__setattr__(self, "triple_order", tuple(triples(self.n)))
        if sorted(self.triple_order) != triples(self.n):
            raise InputError("triple order must list every triple exactly once")
        if sorted(self.law_order) != sorted(IDENTITY_LAWS):
            raise InputError("law order must be a permutation of the six identity-compatible laws")
        unknown = set(self.disabled) - set(PRUNE_KINDS)
        if unknown:
            raise InputError(f"unknown prune kinds {sorted(unknown)}")
        object.__setattr__(self, "disabled", frozenset(self.disabled))
        if self.jobs < 1 or self.split_depth < 0:
            raise InputError("jobs must be >= 1 and split depth >= 0")

    def signature(self) -> dict:
        """The parts of the configuration that determine the task list and results."""
        return {
            "n": self.n,
            "cutoff": self.cutoff,
            "triple_order": [list(t) for t in self.triple_order],
            "law_order": [str(lw) for lw in self.law_order],
            "split_depth": self.split_depth,
            "disabled": sorted(self.disabled),
            "literal": self.literal,
        }


def triple_schedule(n: int, kind: str = "lex") -> tuple[Triple, ...]:
    ts = triples(n)
    if kind == "lex":
        return tuple(ts)
    if kind == "colex":
        return tuple(sorted(ts, key=lambda t: (t.c, t.b, t.a)))
    raise InputError(f"unknown triple order {kind!r}")


class Interrupted(Exception):
    pass


class SearchIncomplete(RuntimeError):
    """Raised when a time limit stops the search; carries the resumable census."""

    def __init__(self, result: SearchResult):
        super().__init__(
            f"search stopped early: {len(result.census['completed'])} of "
            f"{result.census['task_count']} subtrees complete, "
            f"{len(result.census.get('partial', {}))} partly done"
        )
        self.result = result


class Engine:
    """Per-run tables and the recursive visit; holds no state between tasks."""

    def __init__(self, config: SearchConfig):
        self.config = config
        uni = self.universe = tables.universe(config.n)
        self.m = math.comb(config.n, 3)
        self.full = uni.full
        self.cutoff = config.cutoff
        self.prune_dup = "dup" not in config.disabled
        self.prune_contain = "contain" not in config.disabled
        self.collapse = "collapse" not in config.disabled
        self.literal = config.literal
        order = [uni.triple_index[t] for t in config.triple_order]
        self.masks = [[uni.law_mask(k, lw) for lw in config.law_order] for k in order]
        self.viol = [[self.full ^ mask for mask in row] for row in self.masks]
        # Orders whose pattern on T_s is the identity's, i.e. obeying all six laws.
        self.ident = [functools.reduce(operator.and_, row) for row in self.masks]
        self._unions: list[dict[int, int]] = [{} for _ in range(self.m)]
        self.stats = SearchStats()
        self.found: list[int] = []
        self.deadline: float | None = None
        self._tick = 0

    def union(self, s: int, laws: int) -> int:
        """Orders obeying at least one law of the 6-bit set ``laws`` on ``T_s``."""
        cache = self._unions[s]
        bits = cache.get(laws)
        if bits is None:
            bits = 0
            row = self.masks[s]
            for k in range(6):
                if laws >> k & 1:
                    bits |= row[k]
            cache[laws] = bits
        return bits

    def laws_on(self, s: int, c: int, known: int = 0) -> int:
        """6-bit mask of schedule laws that every order of ``c`` obeys on ``T_s``."""
        row = self.viol[s]
        out = known
        for k in range(6):
            if not out >> k & 1 and not c & row[k]:
                out |= 1 << k
        return out

    def closure(self, laws: Sequence[int]) -> int:
        """Orders admitted by some selection of one law from each ``L_s``."""
        x = self.full
        for s, bm in enumerate(laws):
            x &= self.union(s, bm)
        return x

    # -- node tests ---------------------------------------------------------

    def is_duplicate(self, path: Sequence[int], laws: list[int], free: Sequence[bool], c: int | None = None) -> bool:
        """Some ``L_s`` holds a law scheduled before the one chosen on ``T_s``.

        Collapsed levels (``free[s]``) chose nothing and are exempt, unless
        running with the literal rules. When ``c`` is given, ``laws`` are only
        lower bounds: the earlier laws are tested against ``c`` directly.
        """
        for s, k in enumerate(path):
            if free[s] and not self.literal:
                continue
            if laws[s] & ((1 << k) - 1):
                return True
            if c is not None:
                row = self.viol[s]
                for j in range(k):
                    if not c & row[j]:
                        laws[s] |= 1 << j
                        return True
        return False

    def is_contained(self, c: int, laws: list[int], exact: bool = True) -> bool:
        """Whether an order outside ``c`` proves every leaf below non-maximal.

        ``x`` must obey a law of ``L_s`` on each enforced triple. On each later
        triple it must obey a law that all of ``c`` obeys, or failing that
        match the identity's pattern, since the identity is in every leaf.
        The literal rules drop the condition on later triples.
        With ``exact=False`` each ``L_s`` is completed (in place) only when
        the test gets that far.
        """
        x = self.full ^ c
        for s in range(len(laws)):
            if not x:
                return False
            if not exact:
                laws[s] = self.laws_on(s, c, laws[s])
            x &= self.union(s, laws[s])
        if self.literal or not x:
            return bool(x)
        for s in range(len(laws), self.m):
            bm = self.laws_on(s, c)
            x &= self.union(s, bm) if bm else self.ident[s]
            if not x:
                return False
        return True

    def node(self, path: Sequence[int]) -> tuple[int, list[int], list[bool]]:
        """``c``, ``L_1..L_t`` and the collapsed-level flags of the node at ``path``."""
        c = self.full
        free = []
        for s, k in enumerate(path):
            free.append(self.collapse and bool(self.laws_on(s, c)))
            c &= self.masks[s][k]
        return c, [self.laws_on(s, c) for s in range(len(path))], free

    # -- traversal ----------------------------------------------------------

    def _check_deadline(self) -> None:
        self._tick += 1
        if self._tick >= DEADLINE_CHECK_EVERY:
            self._tick = 0
            if self.deadline is not None and time.time() > self.deadline:
                raise Interrupted

    def visit(self, t: int, c: int, path: list[int], laws: list[int], free: list[bool],
              changed: bool = True, stop_depth: int | None = None, frontier: list | None = None,
              cursor: tuple[int, ...] | None = None) -> None:
        """Depth-first search below one node.

        ``laws`` holds lower bounds on ``L_1..L_t`` (they only grow as ``c``
        shrinks); the tests complete them as far as they need. A node on the
        path to ``cursor`` skips the children that precede the cursor.
        """
        stats = self.stats
        if t == stop_depth:
            frontier.append(tuple(path))
            return
        stats.nodes_expanded += 1
        if self.deadline is not None:
            self._check_deadline()
        leaf = t == self.m
        size = c.bit_count()
        if size < self.cutoff and not leaf:
            stats.prune_cutoff += 1
            return
        # An unchanged c (collapse) cannot fail a test its parent passed.
        if changed:
            if self.prune_dup and self.is_duplicate(path, laws, free, c):
                stats.prune_dup += 1
                return
            if self.prune_contain and self.is_contained(c, laws, exact=False):
                stats.prune_contain += 1
                return
        if leaf:
            # With containment on, reaching a leaf already means it is maximal.
            if self.prune_contain or not self.is_contained(c, laws, exact=False):
                stats.max_size = max(stats.max_size, size)
                if size >= self.cutoff:
                    self.found.append(c)
                else:
                    stats.prune_cutoff += 1
            return
        at = cursor[t] if cursor is not None and len(cursor) > t else None
        nxt = self.laws_on(t, c)
        if nxt and self.collapse:
            stats.collapses += 1
            path.append((nxt & -nxt).bit_length() - 1)
            laws.append(nxt)
            free.append(True)
            self.visit(t + 1, c, path, laws, free, False, stop_depth, frontier, cursor if at is not None else None)
            path.pop()
            laws.pop()
            free.pop()
            return
        row = self.masks[t]
        inner = t + 1 < self.m and t + 1 != stop_depth
        free.append(False)
        for k in range(6):
            if at is not None and k < at:
                continue
            child = c & row[k]
            if inner and child.bit_count() < self.cutoff:
                # same verdict the child would reach first thing, minus the call
                stats.nodes_expanded += 1
                stats.prune_cutoff += 1
                continue
            path.append(k)
            self.visit(t + 1, child, path, laws + [nxt], free, True, stop_depth, frontier,
                       cursor if k == at else None)
            path.pop()
        free.pop()

    def frontier(self, depth: int) -> list[tuple[int, ...]]:
        """Paths of the unvisited nodes at ``depth``; shallower work is done in passing."""
        out: list[tuple[int, ...]] = []
        self.visit(0, self.full, [], [], [], stop_depth=depth, frontier=out)
        return out

    def run_task(self, path: Sequence[int], cursor: Sequence[int] | None = None) -> None:
        """Search the subtree at ``path``, or its part from ``cursor`` on.

        On a deadline raises :class:`Interrupted` carrying the path of the node
        being entered; every node before it in depth-first order is finished.
        """
        c, laws, free = self.node(path)
        current = list(path)
        if cursor is not None and tuple(cursor[: len(path)]) != tuple(path):
            raise InputError("cursor does not lie in this subtree")
        try:
            # From-scratch L_s equal the incremental ones, so re-testing the node is exact.
            self.visit(len(path), c, current, laws, free, cursor=None if cursor is None else tuple(cursor))
        except Interrupted:
            # unwinding skipped the pops, so ``current`` is the interrupted node
            raise Interrupted(tuple(current)) from None


# -- worker plumbing ------------------------------------------------------

_worker: Engine | None = None


def _init_worker(config: SearchConfig) -> None:
    global _worker
    _worker = Engine(config)


def _run_one(args):
    """Run one task; returns ``(task_id, done, found, stats, cursor)``.

    An interrupted task reports what it found so far and the cursor to resume
    from; a task not started before the deadline reports nothing.
    """
    task_id, path, deadline, cursor = args
    if deadline is not None and time.time() > deadline:
        return task_id, False, [], None, None
    eng = _worker
    eng.stats = SearchStats()
    eng.found = []
    eng.deadline = deadline
    eng._tick = 0
    try:
        eng.run_task(path, cursor)
        done, cursor = True, None
    except Interrupted as stop:
        done, cursor = False, list(stop.args[0])
    found = [tables.bits_to_indices(c) for c in eng.found]
    return task_id, done, found, eng.stats.as_dict(), cursor


@dataclass
class SearchResult:
    n: int
    domains: list[Domain]
    stats: SearchStats
    complete: bool = True
    census: dict = field(default_factory=dict)

    @property
    def max_size(self) -> int:
        return self.stats.max_size


def new_census(config: SearchConfig, task_count: int) -> dict:
    return {
        "signature": config.signature(),
        "task_count": task_count,
        "completed": [],
        "found": [],
        "stats": SearchStats().as_dict(),
        "partial": {},
    }


def search_max(config: SearchConfig, census: dict | None = None) -> SearchResult:
    """All unitary maximal Condorcet domains of degree ``config.n`` with size >= cutoff.

    ``census`` is the record of a previous interrupted run with the same
    configuration; its completed subtrees are not searched again.
    Raises :class:`SearchIncomplete` when ``config.time_limit`` expires.
    """
    start = time.time()
    deadline = start + config.time_limit if config.time_limit is not None else None
    eng = Engine(config)
    depth = min(config.split_depth, eng.m)
    tasks = eng.frontier(depth)

    if census is not None:
        if census.get("signature") != config.signature():
            raise InputError("census was recorded with a different search configuration")
        if census.get("task_count") != len(tasks):
            raise InputError("census task count does not match this configuration")
    else:
        # Work above the split depth is redone on every run, so it is not recorded.
        census = new_census(config, len(tasks))
    done = set(census["completed"])
    found_idx = {tuple(f) for f in census["found"]}
    task_stats = SearchStats(**census["stats"])
    partial: dict = census.setdefault("partial", {})
    todo = [
        (i, p, deadline, partial.get(str(i), {}).get("cursor"))
        for i, p in enumerate(tasks)
        if i not in done
    ]

    def record(outcome):
        task_id, ok, found, stats, cursor = outcome
        if stats is None:
            return
        earlier = partial.pop(str(task_id), None)
        merged = SearchStats(**stats)
        if earlier:
            merged.merge(SearchStats(**earlier["stats"]))
            found = earlier["found"] + found
        if ok:
            done.add(task_id)
            found_idx.update(tuple(f) for f in found)
            task_stats.merge(merged)
        else:
            partial[str(task_id)] = {"cursor": cursor, "found": found, "stats": merged.as_dict()}

    if config.jobs == 1 or len(todo) <= 1:
        _init_worker(config)
        for item in todo:
            record(_run_one(item))
            if deadline is not None and time.time() > deadline:
                break
    else:
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=config.jobs, initializer=_init_worker, initargs=(config,)
        ) as pool:
            chunk = max(1, min(256, len(todo) // (config.jobs * 8)))
            for outcome in pool.map(_run_one, todo, chunksize=chunk):
                record(outcome)

    census["completed"] = sorted(done)
    census["found"] = sorted(found_idx, key=lambda idx: (-len(idx), idx))
    census["stats"] = task_stats.as_dict()

    stats = SearchStats(**census["stats"])
    stats.merge(eng.stats)
    everything = found_idx | {tuple(tables.bits_to_indices(c)) for c in eng.found}
    for entry in partial.values():
        stats.merge(SearchStats(**entry["stats"]))
        everything.update(tuple(f) for f in entry["found"])
    uni = eng.universe
    unique = sorted(everything, key=lambda idx: (-len(idx), idx))
    domains = [Domain(config.n, tuple(LinearOrder(uni.seq(i)) for i in idx)) for idx in unique]
    if config.verify:
        for d in domains:
            _verify(d, config)
    stats.results = len(domains)
    stats.wall_seconds = round(time.time() - start, 3)
    complete = len(done) == len(tasks)
    result = SearchResult(config.n, domains, stats, complete, census)
    if not complete:
        raise SearchIncomplete(result)
    return result


def _verify(d: Domain, config: SearchConfig) -> None:
    problems = []
    if identity(config.n) not in d:
        problems.append("missing identity")
    if len(d) < config.cutoff:
        problems.append("below cutoff")
    if not is_condorcet(d):
        problems.append("not Condorcet")
    elif not is_maximal(d):
        problems.append("not maximal")
    if problems:
        raise AssertionError(f"search reported an invalid domain ({', '.join(problems)})")


def search(n: int, cutoff: int = 1, **kwargs) -> SearchResult:
    return search_max(SearchConfig(n=n, cutoff=cutoff, **kwargs))


def expand(eng: Engine, path: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """Children ``(path, c)`` the search would visit below the node at ``path``.

    Ignores the prune tests on the node itself; see :meth:`Engine.is_duplicate`
    and :meth:`Engine.is_contained` for those.
    """
    t = len(path)
    if t >= eng.m:
        return []
    c, _, _ = eng.node(path)
    nxt = eng.laws_on(t, c)
    if nxt and eng.collapse:
        k = (nxt & -nxt).bit_length() - 1
        return [(tuple(path) + (k,), c)]
    return [(tuple(path) + (k,), c & eng.masks[t][k]) for k in range(6)]


def cutoff_prune(c: int, cutoff: int) -> bool:
    return c.bit_count() < cutoff


def load_census(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def save_census(census: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(census, fh)
