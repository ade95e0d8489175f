"""JSON reports.

Reports are plain dicts dumped with sorted keys.  Cycles are keyed by vertex
id, exact rationals are ``"num/den"`` strings, and a failed precondition
leaves the dependent fields ``null`` and adds an entry to ``errors``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .classify import (
    end_curve_colength,
    is_almost_reduced,
    is_gorenstein,
    is_ulrich_numeric,
    match_ade,
    mu_numeric,
    nearly_gorenstein,
)
from .cycles import chi, rationality
from .errors import InputError, ResgraphError
from .graph import WeightedDualGraph, discrepancies, is_minimal_resolution
from .quotient import (
    is_chain,
    is_log_terminal,
    match_ding,
    pd_divisor,
    star_decompose,
)

SCHEMA_VERSION = 1


def rational_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def cycle_map(G: WeightedDualGraph, C: Sequence) -> dict[str, Any]:
    return {v: (c if isinstance(c, int) else rational_str(c)) for v, c in zip(G.ids, C)}


def error_entry(exc: ResgraphError) -> dict[str, Any]:
    out: dict[str, Any] = {"code": exc.code, "message": str(exc)}
    if hasattr(exc, "line"):
        out["line"] = exc.line
        out["col"] = exc.col
    return out


def error_report(exc: ResgraphError) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "error": error_entry(exc)}


class _Collector:
    """Runs steps that may fail a precondition, recording the failure."""

    def __init__(self):
        self.errors: list[dict[str, Any]] = []

    def __call__(self, fn: Callable[[], Any]) -> Optional[Any]:
        try:
            return fn()
        except InputError as exc:
            entry = error_entry(exc)
            if entry not in self.errors:
                self.errors.append(entry)
            return None


def graph_section(G: WeightedDualGraph) -> dict[str, Any]:
    return {
        "vertices": [{"id": v, "self_intersection": -b} for v, b in zip(G.ids, G.weights)],
        "edges": [[G.ids[i], G.ids[j]] for i, j in G.edges],
    }


def classify_report(G: WeightedDualGraph) -> dict[str, Any]:
    run = _Collector()
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "graph": graph_section(G),
        "negative_definite": G.negative_definite,
        "minimal": is_minimal_resolution(G),
    }
    rat = run(lambda: rationality(G))
    out["rational"] = None if rat is None else rat.is_rational
    out["p_f"] = None if rat is None else rat.p_f
    if rat is not None:
        seq = rat.sequence
        Z = seq.result
        out["fundamental_cycle"] = cycle_map(G, Z)
        out["computation_sequence"] = [
            {"vertex": G.ids[v], "value": x} for v, x in zip(seq.vertices, seq.values)]
        out["chi_fundamental_cycle"] = chi(G, Z)
    else:
        out["fundamental_cycle"] = out["computation_sequence"] = None
        out["chi_fundamental_cycle"] = None

    ng = run(lambda: nearly_gorenstein(G))
    keys = ("e", "gorenstein", "nearly_gorenstein", "criteria", "structural_case",
            "witnesses", "trace_cycle", "chi_trace_cycle", "trace_colength")
    if ng is None:
        out.update(dict.fromkeys(keys))
    else:
        out["e"] = ng.e
        out["gorenstein"] = ng.gorenstein
        out["nearly_gorenstein"] = ng.nearly_gorenstein
        out["criteria"] = {
            "F_equals_Zf": ng.criterion_F_equals_Zf,
            "K_plus_Zf_anti_nef": ng.criterion_KplusZf_antinef,
            "numeric": ng.criterion_numeric,
        }
        out["structural_case"] = ng.structural_case
        out["witnesses"] = [G.ids[i] for i in ng.witnesses]
        out["trace_cycle"] = cycle_map(G, ng.trace_cycle)
        out["chi_trace_cycle"] = chi(G, ng.trace_cycle)
        out["trace_colength"] = ng.trace_colength

    out["almost_reduced"] = run(lambda: is_almost_reduced(G))
    ade = run(lambda: match_ade(G))
    out["ade_pattern"] = None if ade is None else ade.pattern
    out["ade_roles"] = None if ade is None else {k: G.ids[v] for k, v in ade.roles.items()}
    if ng is not None and any(ng.trace_cycle):
        F = ng.trace_cycle
        out["trace_mu"] = run(lambda: mu_numeric(G, F))
        out["trace_is_ulrich"] = run(lambda: is_ulrich_numeric(G, F))
    else:
        out["trace_mu"] = out["trace_is_ulrich"] = None
    out["quotient"] = quotient_section(G, run) if _is_star_or_chain(G) else None
    out["errors"] = run.errors
    return out


def _is_star_or_chain(G: WeightedDualGraph) -> bool:
    if is_chain(G):
        return True
    try:
        star_decompose(G)
        return True
    except InputError:
        return False


def quotient_section(G: WeightedDualGraph, run: Optional[_Collector] = None) -> dict[str, Any]:
    run = run or _Collector()
    chain = is_chain(G)
    out: dict[str, Any] = {"chain": chain}
    lt = run(lambda: is_log_terminal(G))
    out["log_terminal"] = lt
    disc = run(lambda: discrepancies(G)) if G.negative_definite else None
    out["discrepancies"] = None if disc is None else cycle_map(G, disc)
    if chain:
        out.update(seifert=None, pd_divisor=None, ding_item=None,
                   previously_missing=None, end_curve_colength=None)
        return out
    sd = star_decompose(G)
    out["seifert"] = {
        "center": G.ids[sd.center],
        "b": sd.b,
        "branches": [{"vertices": [G.ids[v] for v in br.vertices],
                      "self_intersections": [-w for w in br.weights],
                      "q": br.q, "p": br.p} for br in sd.branches],
        "degree": rational_str(sd.degree),
    }
    D = pd_divisor(G)
    out["pd_divisor"] = {
        "b": D.b,
        "fractions": [[q, p] for q, p in D.fractions],
        "coefficients": [rational_str(c) for c in D.coefficients],
        "degree": rational_str(D.degree),
        "display": D.display,
        "extension": D.extension,
    }
    # the Ding list and the end-curve formula concern non-Gorenstein quotients
    applies = lt and not is_gorenstein(G)
    m = run(lambda: match_ding(G)) if applies else None
    out["ding_item"] = None if m is None else str(m)
    out["previously_missing"] = None if m is None else m.previously_missing
    out["end_curve_colength"] = run(lambda: end_curve_colength(G)) if applies else None
    return out


def quotient_report(G: WeightedDualGraph) -> dict[str, Any]:
    run = _Collector()
    out = {"schema_version": SCHEMA_VERSION, "graph": graph_section(G)}
    try:
        out.update(quotient_section(G, run))
    except InputError as exc:
        run.errors.append(error_entry(exc))
    out["errors"] = run.errors
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
