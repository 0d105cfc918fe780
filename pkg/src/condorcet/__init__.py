"""Construct, verify, analyse and search for maximal Condorcet domains."""

from .analysis import AnalysisReport, analyze
from .domain import (
    Domain,
    IsomorphismWitness,
    ResourceLimitError,
    RuleAssignment,
    are_isomorphic,
    core,
    domain_from_rules,
    is_condorcet,
    is_maximal,
    relabel_domain,
    reverse_domain,
    satisfied_laws,
    unitary_isomorph_count,
)
from .fishburn import alternating_scheme_rules, fishburn_domain
from .orders import (
    ALL_LAWS,
    IDENTITY_LAWS,
    InputError,
    LinearOrder,
    NeverLaw,
    Triple,
    compose,
    identity,
    invert,
    relabel,
    restrict,
    reverse,
    satisfies_law,
    triples,
)
from .search import SearchConfig, SearchResult, search_max

__all__ = [name for name in dir() if not name.startswith("_")]
