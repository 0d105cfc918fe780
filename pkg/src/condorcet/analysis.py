"""Structural properties of a domain, collected into one report."""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass, field

from .domain import (
    Domain,
    IsomorphismWitness,
    ResourceLimitError,
    are_isomorphic,
    core,
    is_condorcet,
    is_maximal,
    reverse_domain,
    unitary_isomorph_count,
)
from .orders import LinearOrder, identity, reverse

UNKNOWN = "unknown"
CONNECTED_DEFINITION = "adjacent-transposition graph on the domain is connected"


def is_copious(d: Domain) -> bool:
    """Every triple shows exactly four local patterns (equivalently, exactly one law)."""
    by_patterns = all(p.bit_count() == 4 for p in d.present.values())
    by_laws = all(len(laws) == 1 for laws in d.law_table.values())
    if is_condorcet(d) and by_patterns != by_laws:
        raise AssertionError("copiousness characterisations disagree")
    return by_patterns


def is_peak_pit(d: Domain) -> bool:
    """Every triple obeys some never-first or never-last law."""
    return all(any(lw.pos in (1, 3) for lw in laws) for laws in d.law_table.values())


def has_maximal_width(d: Domain) -> bool:
    return any(reverse(o) in d for o in d.orders)


def self_duality(d: Domain) -> IsomorphismWitness | None:
    """A relabeling taking the reversed domain onto ``d``, if one exists."""
    if len(d) == 1:
        only = d.orders[0]
        rev = reverse(only)
        # relabel(rev, g) == only with g(rev[k]) = only[k]
        g = [0] * d.n
        for a, b in zip(rev.seq, only.seq):
            g[a - 1] = b
        return IsomorphismWitness(LinearOrder(tuple(g)), "plain")
    return are_isomorphic(reverse_domain(d), d)


def is_self_dual(d: Domain) -> bool:
    return self_duality(d) is not None


def _swap_neighbours(seq: tuple[int, ...]):
    for k in range(len(seq) - 1):
        yield seq[:k] + (seq[k + 1], seq[k]) + seq[k + 2:]


def is_connected(d: Domain) -> bool:
    """Members linked by chains of members one adjacent swap apart."""
    if len(d) <= 1:
        return True
    members = {o.seq for o in d.orders}
    start = d.orders[0].seq
    seen = {start}
    queue = deque([start])
    while queue:
        for nb in _swap_neighbours(queue.popleft()):
            if nb in members and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return len(seen) == len(members)


@dataclass
class AnalysisReport:
    n: int
    size: int
    is_condorcet: bool
    is_maximal: bool
    copious: bool
    peak_pit: bool
    maximal_width: bool
    self_dual: bool | str
    connected: bool
    core: list[list[int]]
    core_size: int
    unitary_isomorphs: int | None
    law_table: dict[str, list[str]] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)

    def as_text(self) -> str:
        width = max(len(k) for k in self.__dataclass_fields__)
        lines = []
        for key, value in self.as_dict().items():
            if key == "law_table":
                continue
            if key == "core":
                value = ", ".join("".join(map(str, g)) if self.n <= 9 else " ".join(map(str, g)) for g in value)
            if key == "connected":
                value = f"{value}  ({CONNECTED_DEFINITION})"
            lines.append(f"{key:<{width}}  {value}")
        lines.append("law_table:")
        lines.extend(f"  ({t})  {' '.join(laws) or '-'}" for t, laws in self.law_table.items())
        return "\n".join(lines) + "\n"


def analyze(d: Domain) -> AnalysisReport:
    condorcet = bool(is_condorcet(d))
    cr = core(d)
    try:
        self_dual: bool | str = is_self_dual(d)
    except ResourceLimitError:
        self_dual = UNKNOWN
    unitary = identity(d.n) in d
    return AnalysisReport(
        n=d.n,
        size=len(d),
        is_condorcet=condorcet,
        is_maximal=condorcet and bool(is_maximal(d)),
        copious=is_copious(d),
        peak_pit=is_peak_pit(d),
        maximal_width=has_maximal_width(d),
        self_dual=self_dual,
        connected=is_connected(d),
        core=[list(g.seq) for g in cr],
        core_size=len(cr),
        unitary_isomorphs=unitary_isomorph_count(d) if unitary else None,
        law_table={
            f"{t.a} {t.b} {t.c}": sorted(str(lw) for lw in laws) for t, laws in d.law_table.items()
        },
    )
