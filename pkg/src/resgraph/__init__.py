"""Invariants of weighted resolution graphs of rational surface singularities."""

from .classify import (
    ADEMatch,
    NGReport,
    StructuralCase,
    end_curve_colength,
    is_almost_reduced,
    is_gorenstein,
    is_ulrich_numeric,
    match_ade,
    mu_numeric,
    nearly_gorenstein,
    structural_case,
)
from .cycles import (
    ComputationSequence,
    RationalityReport,
    chi,
    colength,
    fundamental_cycle,
    is_anti_nef,
    is_rational,
    min_antinef_lift,
    multiplicity,
    rationality,
    trace_cycle,
)
from .dsl import emit, parse_document, parse_graph
from .errors import InputError, InternalCheckError, ResgraphError
from .graph import (
    WeightedDualGraph,
    build_graph,
    chain_graph,
    discrepancies,
    intersection_form,
    is_negative_definite,
    star_graph,
)
from .quotient import (
    branch_fraction,
    fraction_to_branch,
    graph_from_pd,
    is_chain,
    is_log_terminal,
    match_ding,
    pd_divisor,
    star_decompose,
)

__all__ = [
    "ADEMatch",
    "branch_fraction",
    "build_graph",
    "chain_graph",
    "chi",
    "colength",
    "ComputationSequence",
    "discrepancies",
    "emit",
    "end_curve_colength",
    "fraction_to_branch",
    "fundamental_cycle",
    "graph_from_pd",
    "InputError",
    "InternalCheckError",
    "intersection_form",
    "is_almost_reduced",
    "is_anti_nef",
    "is_chain",
    "is_gorenstein",
    "is_log_terminal",
    "is_negative_definite",
    "is_rational",
    "is_ulrich_numeric",
    "match_ade",
    "match_ding",
    "min_antinef_lift",
    "mu_numeric",
    "multiplicity",
    "nearly_gorenstein",
    "NGReport",
    "parse_document",
    "parse_graph",
    "pd_divisor",
    "rationality",
    "RationalityReport",
    "ResgraphError",
    "star_decompose",
    "star_graph",
    "structural_case",
    "StructuralCase",
    "trace_cycle",
    "WeightedDualGraph",
]

__version__ = "0.1.0"
