"""Sets of linear orders: generation from rules, Condorcet checks, cores, isomorphism."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import tables
from .orders import (
    ALL_LAWS,
    LinearOrder,
    NeverLaw,
    Triple,
    InputError,
    identity,
    invert,
    order,
    relabel,
    reverse,
    triples,
)

DEFAULT_WORK_LIMIT = math.factorial(10)
CHUNK = 1 << 16


class ResourceLimitError(RuntimeError):
    """A work limit was hit; ``progress`` records how far the computation got."""

    def __init__(self, message: str, progress: int = 0):
        super().__init__(message)
        self.progress = progress


@dataclass(frozen=True)
class RuleAssignment:
    n: int
    rules: Mapping[Triple, NeverLaw] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 3 <= self.n <= 16:
            raise InputError(f"n={self.n} outside 3..16")
        rules = dict(sorted(self.rules.items()))
        for t, lw in rules.items():
            t.check(self.n)
            if not isinstance(lw, NeverLaw):
                raise InputError(f"rule for {t} is not a NeverLaw: {lw!r}")
        object.__setattr__(self, "rules", rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules.items())

    def __getitem__(self, t: Triple) -> NeverLaw:
        return self.rules[t]

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.rules.items())))

    def is_total(self) -> bool:
        return len(self.rules) == math.comb(self.n, 3)


@dataclass(frozen=True)
class Domain:
    """An immutable, canonically sorted set of orders on ``{1..n}``.

    The per-triple law table is computed lazily and cached. The empty domain
    satisfies every law on every triple; :attr:`degenerate` flags that case.
    """

    n: int
    orders: tuple[LinearOrder, ...] = ()

    def __post_init__(self) -> None:
        canon = tuple(sorted(set(self.orders)))
        for o in canon:
            if o.n != self.n:
                raise InputError(f"order {o!r} does not have n={self.n}")
        object.__setattr__(self, "orders", canon)

    @classmethod
    def of(cls, items: Iterable[Sequence[int] | str | LinearOrder], n: int | None = None) -> Domain:
        orders = [it if isinstance(it, LinearOrder) else order(it) for it in items]
        if n is None:
            if not orders:
                raise InputError("cannot infer n for an empty domain")
            n = orders[0].n
        return cls(n, tuple(orders))

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self) -> Iterator[LinearOrder]:
        return iter(self.orders)

    def __contains__(self, o: object) -> bool:
        if isinstance(o, LinearOrder):
            o = o.seq
        return o in self._seqs

    @functools.cached_property
    def _seqs(self) -> frozenset[tuple[int, ...]]:
        return frozenset(o.seq for o in self.orders)

    @property
    def degenerate(self) -> bool:
        return not self.orders

    @functools.cached_property
    def array(self) -> np.ndarray:
        return np.array([o.seq for o in self.orders], dtype=np.int8).reshape(len(self.orders), self.n)

    @functools.cached_property
    def present(self) -> dict[Triple, int]:
        """Per triple, the 6-bit mask of local patterns realised by the domain."""
        pos = tables.positions(self.array)
        return {t: tables.present_patterns(tables.pattern_ids(pos, t)) for t in triples(self.n)}

    @functools.cached_property
    def law_table(self) -> dict[Triple, frozenset[NeverLaw]]:
        return {t: tables.laws_for_patterns(p) for t, p in self.present.items()}

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(o.seq for o in self.orders)


def satisfied_laws(d: Domain, t: Triple) -> frozenset[NeverLaw]:
    """Laws holding for every member of ``d`` on ``t`` (all nine when ``d`` is empty)."""
    t.check(d.n)
    return d.law_table[t]


@dataclass(frozen=True)
class Verdict:
    """A boolean answer with an optional witness explaining a ``False``."""

    ok: bool
    triple: Triple | None = None
    witness: tuple[LinearOrder, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_condorcet(d: Domain) -> Verdict:
    for t, laws in d.law_table.items():
        if laws:
            continue
        # No law holds, so every element visits every slot; show it for rank 1.
        found: dict[int, LinearOrder] = {}
        for o in d.orders:
            slot = [v for v in o.seq if v in (t.a, t.b, t.c)].index(t.a)
            found.setdefault(slot, o)
        return Verdict(False, t, tuple(found[k] for k in sorted(found)))
    return Verdict(True)


def _order_chunks(n: int, work_limit: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(offset, array)`` chunks of all n! orders in lexicographic order."""
    if n <= tables.MATERIALIZE_LIMIT:
        if math.factorial(n) > work_limit:
            raise ResourceLimitError(f"{n}! orders exceed the work limit {work_limit}", progress=0)
        yield 0, tables.universe(n).orders
        return
    perms = itertools.permutations(range(1, n + 1))
    offset = 0
    while True:
        block = list(itertools.islice(perms, min(CHUNK, work_limit - offset + 1)))
        if not block:
            return
        if offset + len(block) > work_limit:
            raise ResourceLimitError(
                f"stopped after {offset} of {math.factorial(n)} orders (work limit {work_limit})",
                progress=offset,
            )
        yield offset, np.array(block, dtype=np.int8)
        offset += len(block)


def _filter_orders(
    n: int, allowed: Mapping[Triple, int], work_limit: int
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Orders whose pattern on each listed triple lies in the 6-bit ``allowed`` mask."""
    for offset, arr in _order_chunks(n, work_limit):
        pos = tables.positions(arr) if n > tables.MATERIALIZE_LIMIT else tables.universe(n).pos
        keep = np.ones(len(arr), dtype=bool)
        for t, mask in allowed.items():
            ids = pattern_ids_cached(n, t, pos)
            keep &= ((mask >> ids.astype(np.int64)) & 1).astype(bool)
        yield offset, np.flatnonzero(keep), arr


def pattern_ids_cached(n: int, t: Triple, pos: np.ndarray) -> np.ndarray:
    if n <= tables.MATERIALIZE_LIMIT:
        uni = tables.universe(n)
        return uni.patterns(uni.triple_index[t])
    return tables.pattern_ids(pos, t)


def domain_from_rules(rules: RuleAssignment, work_limit: int = DEFAULT_WORK_LIMIT) -> Domain:
    """All orders satisfying every assigned law."""
    allowed = {t: tables.LAW_ALLOWED[lw] for t, lw in rules}
    orders: list[LinearOrder] = []
    for _, idx, arr in _filter_orders(rules.n, allowed, work_limit):
        orders.extend(LinearOrder(tuple(int(v) for v in arr[i])) for i in idx)
    return Domain(rules.n, tuple(orders))


def is_maximal(d: Domain, work_limit: int = DEFAULT_WORK_LIMIT) -> Verdict:
    """Whether no outside order can join ``d`` and keep it Condorcet.

    On failure the witness is the lexicographically first addable order.
    """
    check = is_condorcet(d)
    if not check:
        raise InputError(f"domain is not Condorcet (triple {check.triple})")
    allowed = {}
    for t, laws in d.law_table.items():
        mask = 0
        for lw in laws:
            mask |= tables.LAW_ALLOWED[lw]
        allowed[t] = mask
    members = d._seqs
    for _, idx, arr in _filter_orders(d.n, allowed, work_limit):
        for i in idx:
            seq = tuple(int(v) for v in arr[i])
            if seq not in members:
                return Verdict(False, None, (LinearOrder(seq),))
    return Verdict(True)


def relabel_domain(d: Domain, g: LinearOrder) -> Domain:
    if g.n != d.n:
        raise InputError(f"cannot relabel a domain on {d.n} by a permutation on {g.n}")
    return Domain(d.n, tuple(relabel(o, g) for o in d.orders))


def reverse_domain(d: Domain) -> Domain:
    return Domain(d.n, tuple(reverse(o) for o in d.orders))


def _relabeled_key(d: Domain, g: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    return frozenset(tuple(g[v - 1] for v in seq) for seq in d._seqs)


def core(d: Domain) -> list[LinearOrder]:
    """Members ``g`` of ``d`` with ``relabel_domain(d, g) == d``."""
    return [g for g in d.orders if _relabeled_key(d, g.seq) == d._seqs]


@dataclass(frozen=True)
class IsomorphismWitness:
    g: LinearOrder
    direction: str = "plain"  # or "reversed-first"

    def apply(self, d: Domain) -> Domain:
        src = reverse_domain(d) if self.direction == "reversed-first" else d
        return relabel_domain(src, self.g)


def _profiles(d: Domain) -> tuple[np.ndarray, np.ndarray]:
    """Slot counts per label and pairwise precedence counts."""
    n = d.n
    pos = tables.positions(d.array).astype(np.int64)
    slots = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        slots[x] = np.bincount(pos[:, x], minlength=n)
    before = (pos[:, :, None] < pos[:, None, :]).sum(axis=0)
    return slots, before


def find_relabeling(a: Domain, b: Domain, work_limit: int = 10**7) -> LinearOrder | None:
    """Some ``g`` with ``relabel_domain(a, g) == b``, or None.

    Labels are matched by slot-count fingerprint and pairwise precedence
    counts, most constrained label first, before testing a full candidate.
    """
    if a.n != b.n:
        raise InputError("domains have different n")
    if len(a) != len(b):
        return None
    n = a.n
    if len(a) == 0:
        return identity(n)
    slots_a, before_a = _profiles(a)
    slots_b, before_b = _profiles(b)
    cands = [[y for y in range(n) if np.array_equal(slots_a[x], slots_b[y])] for x in range(n)]
    if any(not c for c in cands):
        return None
    order_x = sorted(range(n), key=lambda x: len(cands[x]))
    g = [-1] * n
    used = [False] * n
    work = 0

    def extend(k: int) -> LinearOrder | None:
        nonlocal work
        if k == n:
            perm = LinearOrder(tuple(v + 1 for v in g))
            return perm if _relabeled_key(a, perm.seq) == b._seqs else None
        x = order_x[k]
        for y in cands[x]:
            if used[y]:
                continue
            work += 1
            if work > work_limit:
                raise ResourceLimitError("isomorphism search exceeded its work limit", progress=work)
            ok = True
            for j in range(k):
                x2 = order_x[j]
                if before_a[x, x2] != before_b[y, g[x2]]:
                    ok = False
                    break
            if not ok:
                continue
            g[x], used[y] = y, True
            found = extend(k + 1)
            if found is not None:
                return found
            g[x], used[y] = -1, False
        return None

    return extend(0)


def are_isomorphic(
    a: Domain, b: Domain, allow_reversal: bool = False, work_limit: int = 10**7
) -> IsomorphismWitness | None:
    g = find_relabeling(a, b, work_limit)
    if g is not None:
        return IsomorphismWitness(g, "plain")
    if allow_reversal:
        g = find_relabeling(reverse_domain(a), b, work_limit)
        if g is not None:
            return IsomorphismWitness(g, "reversed-first")
    return None


def unitary_isomorphs(d: Domain) -> list[Domain]:
    """The distinct identity-containing relabelings of a unitary domain."""
    if identity(d.n) not in d:
        raise InputError("domain does not contain the identity order")
    seen: dict[frozenset, Domain] = {}
    for w in d.orders:
        key = _relabeled_key(d, invert(w).seq)
        if key not in seen:
            seen[key] = Domain(d.n, tuple(LinearOrder(s) for s in key))
    return sorted(seen.values(), key=Domain.key)


def unitary_isomorph_count(d: Domain) -> int:
    return len(unitary_isomorphs(d))


def all_orders_domain(n: int) -> Domain:
    return Domain(n, tuple(LinearOrder(s) for s in itertools.permutations(range(1, n + 1))))


def laws_of(d: Domain) -> RuleAssignment:
    """The least satisfied law (in :data:`ALL_LAWS` order) per triple; partial if not Condorcet."""
    rules = {t: min(laws, key=ALL_LAWS.index) for t, laws in d.law_table.items() if laws}
    return RuleAssignment(d.n, rules)
