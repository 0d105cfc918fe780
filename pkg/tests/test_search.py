import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from condorcet.domain import Domain, domain_from_rules, is_maximal
from condorcet.fishburn import fishburn_domain
from condorcet.orders import IDENTITY_LAWS, InputError, all_orders, law, order, satisfies_law, triples
from condorcet.reference import distinct_leaves, reference_mcds
from condorcet.search import (
    Engine,
    SearchConfig,
    SearchIncomplete,
    cutoff_prune,
    expand,
    load_census,
    save_census,
    search,
    search_max,
    triple_schedule,
)

ROW_1N3 = Domain.of(["123", "213", "132", "312"])


def k(token):
    return IDENTITY_LAWS.index(law(token))


def path_of(*tokens):
    return tuple(k(tok) for tok in tokens)


def bare_engine(n, literal=False):
    """No collapse, so node paths address the full 6-ary tree."""
    return Engine(SearchConfig(n=n, disabled=frozenset({"collapse"}), literal=literal))


def all_paths(depth):
    for t in range(1, depth + 1):
        yield from itertools.product(range(6), repeat=t)


def dfs_paths(depth):
    def walk(path):
        yield path
        if len(path) < depth:
            for i in range(6):
                yield from walk(path + (i,))

    return [p for p in walk(()) if p]


# -- node operations ------------------------------------------------------


def test_root_children_n3():
    eng = Engine(SearchConfig(n=3))
    kids = expand(eng, ())
    assert len(kids) == 6
    assert kids[0][0] == path_of("1N3")
    assert Domain.of(eng.universe.seqs(kids[0][1])) == ROW_1N3


def test_first_child_n3_is_not_duplicate():
    eng = Engine(SearchConfig(n=3))
    c, laws, free = eng.node(path_of("1N3"))
    assert laws == [1 << k("1N3")]
    assert not eng.is_duplicate(path_of("1N3"), laws, free)


def test_least_law_path_n4():
    # frozen from a brute-force walk using only satisfies_law
    expected = [(6, "1N3", 16), (6, "1N3", 14), (6, "1N3", 12), (6, "1N3", 8)]
    eng = Engine(SearchConfig(n=4))
    path = ()
    for kids_expected, token, size in expected:
        kids = expand(eng, path)
        assert len(kids) == kids_expected
        path, c = kids[0]
        assert path[-1] == k(token)
        assert c.bit_count() == size


def test_first_duplicate_n4():
    # frozen: first node of the unpruned depth-first walk where an earlier law holds
    eng = bare_engine(4)
    first = next(p for p in dfs_paths(4) if eng.is_duplicate(p, *eng.node(p)[1:]))
    assert first == path_of("1N3", "1N3", "2N3", "1N3")
    assert eng.node(first)[0].bit_count() == 4


def _selection_oracle(n, path):
    """Product enumeration over law selections, straight from satisfies_law."""
    sched = triples(n)
    orders = list(all_orders(n))
    c = [o for o in orders if all(satisfies_law(o, sched[s], IDENTITY_LAWS[i]) for s, i in enumerate(path))]
    laws = [
        [lw for lw in IDENTITY_LAWS if all(satisfies_law(o, sched[s], lw) for o in c)] for s in range(len(path))
    ]
    for sel in itertools.product(*laws):
        grown = [o for o in orders if all(satisfies_law(o, sched[s], lw) for s, lw in enumerate(sel))]
        if len(grown) > len(c):
            return sel, len(grown)
    return None


def test_first_literal_containment_n4():
    eng = bare_engine(4, literal=True)
    first = next(p for p in dfs_paths(4) if eng.is_contained(*eng.node(p)[:2]))
    assert first == path_of("1N3", "1N3", "1N3", "3N1")
    assert eng.node(first)[0].bit_count() == 8
    sel, size = _selection_oracle(4, first)
    assert [str(lw) for lw in sel] == ["1N3", "1N3", "3N1", "3N1"]
    assert size == 9


@pytest.mark.parametrize("n", [4, 5])
def test_literal_containment_matches_selection_enumeration(n):
    eng = bare_engine(n, literal=True)
    depth = 3 if n == 4 else 2
    for p in all_paths(depth):
        c, laws, _ = eng.node(p)
        assert eng.is_contained(c, laws) is (_selection_oracle(n, p) is not None), p


def test_sound_containment_only_prunes_nonmaximal_subtrees():
    n = 4
    eng = bare_engine(n)
    m = len(triples(n))
    pruned = 0
    for p in all_paths(m):
        c, laws, _ = eng.node(p)
        if not eng.is_contained(c, laws):
            continue
        pruned += 1
        for rest in itertools.product(range(6), repeat=m - len(p)):
            leaf = c
            for s, i in enumerate(rest, start=len(p)):
                leaf &= eng.masks[s][i]
            d = Domain.of(eng.universe.seqs(leaf))
            assert not is_maximal(d)
    assert pruned > 0


@pytest.mark.parametrize("n", [3, 4])
def test_depth_one_never_contained(n):
    for literal in (False, True):
        eng = Engine(SearchConfig(n=n, literal=literal))
        for i in range(6):
            c, laws, _ = eng.node((i,))
            if n == 3 or literal:
                assert not eng.is_contained(c, laws)


@settings(max_examples=200, deadline=None)
@given(st.integers(4, 5), st.lists(st.integers(0, 5), min_size=1, max_size=8), st.booleans())
def test_singleton_law_sets_never_contained(n, path, literal):
    eng = bare_engine(n, literal)
    path = tuple(path[: len(triples(n))])
    c, laws, _ = eng.node(path)
    if all(bm & (bm - 1) == 0 for bm in laws) and literal:
        assert not eng.is_contained(c, laws)


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 6), st.lists(st.integers(0, 5), max_size=12))
def test_expand_monotone_and_collapse(n, choices):
    eng = Engine(SearchConfig(n=n))
    path = ()
    for choice in choices:
        kids = expand(eng, path)
        if not kids:
            break
        c, _, _ = eng.node(path)
        assert all(child & ~c == 0 for _, child in kids)
        if eng.laws_on(len(path), c):
            assert len(kids) == 1 and kids[0][1] == c
        else:
            assert len(kids) == 6
        path = kids[choice % len(kids)][0]


def test_cutoff_prune():
    assert cutoff_prune((1 << 9) - 1, 10)
    assert not cutoff_prune((1 << 10) - 1, 10)
    assert not cutoff_prune((1 << 24) - 1, 24)


# -- whole runs -----------------------------------------------------------


def test_degree_three():
    r = search(3)
    assert len(r.domains) == 6 and all(len(d) == 4 for d in r.domains)
    rows = {domain_from_rules_single(lw) for lw in IDENTITY_LAWS}
    assert set(r.domains) == rows
    empty = search(3, cutoff=5)
    assert empty.domains == [] and empty.max_size == 4


def domain_from_rules_single(lw):
    from condorcet.domain import RuleAssignment

    return domain_from_rules(RuleAssignment(3, {triples(3)[0]: lw}))


def test_n4_matches_reference():
    r = search(4)
    ref = reference_mcds(4)
    assert set(r.domains) == ref
    assert set(reference_mcds(4, literal=True)) == ref
    assert r.max_size == 9 == len(fishburn_domain(4))
    assert len(r.domains) == len(ref)


def test_reference_leaves_agree():
    assert len(distinct_leaves(3)) == 6


@pytest.mark.parametrize("cutoff", [1, 6, 8, 9, 10])
def test_cutoff_filters(cutoff):
    ref = {d for d in reference_mcds(4) if len(d) >= cutoff}
    r = search(4, cutoff=cutoff)
    assert set(r.domains) == ref
    assert all(len(d) >= cutoff for d in r.domains)


@pytest.mark.parametrize("disabled", [{"dup"}, {"contain"}, {"collapse"}, {"dup", "contain", "collapse"}])
def test_prune_safety_n4(disabled):
    assert set(search(4, disabled=frozenset(disabled)).domains) == set(search(4).domains)


@pytest.mark.parametrize("schedule", ["lex", "colex"])
def test_schedules_agree(schedule):
    laws = tuple(reversed(IDENTITY_LAWS))
    r = search(4, triple_order=triple_schedule(4, schedule), law_order=laws)
    assert set(r.domains) == reference_mcds(4)


def test_determinism_across_jobs_and_splits():
    base = search(4).domains
    for jobs, split in [(1, 2), (2, 1), (3, 3), (4, 4)]:
        assert search(4, jobs=jobs, split_depth=split).domains == base


def test_results_sorted_and_unitary():
    r = search(4)
    sizes = [len(d) for d in r.domains]
    assert sizes == sorted(sizes, reverse=True)
    assert all(order("1234") in d for d in r.domains)
    assert r.stats.results == len(r.domains)


def test_literal_mode_loses_nothing_at_n4():
    assert set(search(4, literal=True).domains) == reference_mcds(4)


def test_resume(tmp_path):
    full = search(5, cutoff=15)
    config = SearchConfig(n=5, cutoff=15, split_depth=3, time_limit=0.5)
    with pytest.raises(SearchIncomplete) as err:
        search_max(config)
    census = err.value.result.census
    assert 0 <= len(census["completed"]) < census["task_count"]
    path = tmp_path / "census.json"
    save_census(census, path)
    resumed = search_max(SearchConfig(n=5, cutoff=15, split_depth=3), load_census(path))
    assert resumed.domains == full.domains
    json.dumps(resumed.census)


def test_census_must_match():
    census = search(4, split_depth=1).census
    with pytest.raises(InputError):
        search_max(SearchConfig(n=4, cutoff=2, split_depth=1), census)


def test_config_validation():
    with pytest.raises(InputError):
        SearchConfig(n=10)
    with pytest.raises(InputError):
        SearchConfig(n=4, cutoff=0)
    with pytest.raises(InputError):
        SearchConfig(n=4, law_order=IDENTITY_LAWS[:5])
    with pytest.raises(InputError):
        SearchConfig(n=4, triple_order=tuple(triples(4)[:3]))
    with pytest.raises(InputError):
        SearchConfig(n=4, disabled=frozenset({"everything"}))


def test_cursor_resume_matches_full_run():
    full = search(5, cutoff=12)
    census, rounds = None, 0
    while True:
        rounds += 1
        try:
            r = search_max(SearchConfig(n=5, cutoff=12, split_depth=1, time_limit=0.2), census)
            break
        except SearchIncomplete as err:
            census = json.loads(json.dumps(err.result.census))
            assert all(len(d) >= 12 for d in err.result.domains)
    assert rounds > 1
    assert r.domains == full.domains
    assert r.census["partial"] == {}


def test_cursor_must_lie_in_subtree():
    eng = Engine(SearchConfig(n=4))
    with pytest.raises(InputError):
        eng.run_task((0,), cursor=(1, 0))
