import pytest

from condorcet.domain import are_isomorphic, is_condorcet, is_maximal, reverse_domain
from condorcet.fishburn import VARIANTS, alternating_scheme_rules, fishburn_domain
from condorcet.orders import InputError, all_orders, identity, law, reverse, satisfies_law, triples
from condorcet.analysis import has_maximal_width

# frozen from the brute-force count below (n <= 6) and the published 222 at n = 8
SIZES = {3: 4, 4: 9, 5: 20, 6: 45, 7: 100, 8: 222}


def brute_size(n, variant):
    mid_even, mid_odd = ("2N1", "2N3") if variant == "a" else ("2N3", "2N1")
    rules = [(t, law(mid_even if t.b % 2 == 0 else mid_odd)) for t in triples(n)]
    return sum(all(satisfies_law(o, t, lw) for t, lw in rules) for o in all_orders(n))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("variant", VARIANTS)
def test_sizes_match_brute_force(n, variant):
    assert len(fishburn_domain(n, variant)) == brute_size(n, variant) == SIZES[n]


@pytest.mark.parametrize("n", sorted(SIZES))
def test_sizes(n):
    d = fishburn_domain(n)
    assert len(d) == SIZES[n]
    assert is_condorcet(d)
    assert is_maximal(d)
    assert identity(n) in d and reverse(identity(n)) in d
    assert has_maximal_width(d)


def test_rule_shape():
    rules = alternating_scheme_rules(3)
    assert rules.rules == {triples(3)[0]: law("2N1")}
    for t, lw in alternating_scheme_rules(8):
        assert lw.rank == 2 and lw.pos in (1, 3)
    assert rules.is_total()


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_variants_are_dual(n):
    a, b = alternating_scheme_rules(n, "a"), alternating_scheme_rules(n, "b")
    assert all(b[t] == lw.dual() for t, lw in a)
    da, db = fishburn_domain(n, "a"), fishburn_domain(n, "b")
    assert reverse_domain(da) == db
    assert are_isomorphic(da, db, allow_reversal=True) is not None


def test_bad_arguments():
    with pytest.raises(InputError):
        alternating_scheme_rules(5, "c")
    with pytest.raises(InputError):
        alternating_scheme_rules(2)
