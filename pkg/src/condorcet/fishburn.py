"""Fishburn's alternating scheme.

For every triple ``a < b < c`` the middle element ``b`` is forbidden from the
top slot for one parity of ``b`` and from the bottom slot for the other.
Variant ``"a"`` uses never-first for even ``b``; variant ``"b"`` is its dual.
Both variants give 222 orders at n = 8.
"""

from __future__ import annotations

from .domain import Domain, RuleAssignment, domain_from_rules
from .orders import InputError, NeverLaw, triples

VARIANTS = ("a", "b")
CANONICAL_VARIANT = "a"

NEVER_FIRST = NeverLaw(2, 1)
NEVER_LAST = NeverLaw(2, 3)


def alternating_scheme_rules(n: int, variant: str = CANONICAL_VARIANT) -> RuleAssignment:
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if not 3 <= n <= 16:
        raise InputError(f"n={n} outside 3..16")
    even_law, odd_law = (NEVER_FIRST, NEVER_LAST) if variant == "a" else (NEVER_LAST, NEVER_FIRST)
    return RuleAssignment(n, {t: even_law if t.b % 2 == 0 else odd_law for t in triples(n)})


def fishburn_domain(n: int, variant: str = CANONICAL_VARIANT, **kwargs) -> Domain:
    return domain_from_rules(alternating_scheme_rules(n, variant), **kwargs)
