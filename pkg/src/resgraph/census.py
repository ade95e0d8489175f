"""Exhaustive census of weighted trees and the two classification reproductions."""

from __future__ import annotations

import gc
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from itertools import islice, product
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

from .classify import (
    end_curve_colength,
    is_almost_reduced,
    is_gorenstein,
    match_ade,
    nearly_gorenstein,
)
from .cycles import is_rational
from .enumerate import free_trees, structure_key, structure_to_graph, weighted_graphs
from .errors import CapExceeded, FormulaMismatch, OutOfRange
from .graph import WeightedDualGraph, is_minimal_resolution, star_graph
from .quotient import (
    DING_TABLE,
    PREVIOUSLY_MISSING,
    fraction_to_branch,
    is_chain,
    is_log_terminal,
    match_ding,
    pd_divisor,
)

DEFAULT_CAP = 9

FLAGS = ("negative_definite", "minimal", "rational", "gorenstein", "nearly_gorenstein",
         "almost_reduced", "log_terminal", "chain")


@contextmanager
def _gc_paused():
    # The enumeration creates no reference cycles, but the cyclic collector
    # would keep rescanning the large caches of rooted trees.
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


@dataclass(frozen=True)
class CensusRow:
    key: str
    n: int
    weights: tuple[int, ...]  # sorted multiset
    negative_definite: bool
    minimal: bool
    rational: bool
    gorenstein: bool
    nearly_gorenstein: bool
    almost_reduced: bool
    log_terminal: bool
    chain: bool
    e: Optional[int] = None
    trace_colength: Optional[int] = None
    ade: Optional[str] = None
    ding: Optional[str] = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["weights"] = list(self.weights)
        return d


def classify_row(key: str, G: WeightedDualGraph) -> CensusRow:
    """Classify one graph.  Flags that need rationality are false when it fails."""
    base = dict(key=key, n=G.n, weights=tuple(sorted(G.weights)),
                minimal=is_minimal_resolution(G), chain=is_chain(G))
    nd = G.negative_definite
    rational = nd and base["minimal"] and is_rational(G)
    if not rational:
        lt = nd and base["minimal"] and is_log_terminal(G)
        return CensusRow(negative_definite=nd, rational=False, gorenstein=False,
                         nearly_gorenstein=False, almost_reduced=False,
                         log_terminal=lt, **base)
    rep = nearly_gorenstein(G)
    lt = is_log_terminal(G)
    ding = None
    if lt and not base["chain"] and not rep.gorenstein:
        ding = str(match_ding(G))
        end_curve_colength(G)  # raises FormulaMismatch on disagreement
    return CensusRow(
        negative_definite=True, rational=True, gorenstein=rep.gorenstein,
        nearly_gorenstein=rep.nearly_gorenstein, almost_reduced=is_almost_reduced(G),
        log_terminal=lt, e=rep.e, trace_colength=rep.trace_colength,
        ade=match_ade(G).pattern, ding=ding, **base)


def row_violations(row: CensusRow) -> list[str]:
    """Flag-consistency problems of a row (empty when consistent)."""
    out = []
    if row.rational and not row.negative_definite:
        out.append("rational but not negative definite")
    if row.log_terminal and not row.rational:
        out.append("log-terminal but not rational")
    if row.gorenstein and not row.nearly_gorenstein:
        out.append("Gorenstein but not NG")
    if row.rational:
        ar_ng = row.almost_reduced and row.nearly_gorenstein
        if ar_ng != (row.ade != "none"):
            out.append(f"AR and NG is {ar_ng} but ADE pattern is {row.ade}")
        if row.gorenstein and row.trace_colength != 0:
            out.append("Gorenstein with nonzero trace colength")
        if row.nearly_gorenstein and not row.gorenstein and row.trace_colength != 1:
            out.append("NG non-Gorenstein with trace colength != 1")
    if row.ding not in (None, "none") and not row.nearly_gorenstein:
        out.append(f"Ding item {row.ding} but not NG")
    if row.ding == "none" and row.nearly_gorenstein:
        out.append("NG quotient star with no Ding item")
    return out


def _classify_chunk(items: list[tuple[str, WeightedDualGraph]]) -> list[CensusRow]:
    return [classify_row(k, G) for k, G in items]


def _chunks(it: Iterable, size: int) -> Iterator[list]:
    it = iter(it)
    while chunk := list(islice(it, size)):
        yield chunk


def enumerate_graphs(max_vertices: int, max_weight: int, trees_only: bool = True,
                     predicates: Sequence[str] = (), workers: int = 1,
                     cap: int = DEFAULT_CAP) -> Iterator[CensusRow]:
    """Classified rows for every weighted graph up to isomorphism.

    Weights run over ``2..max_weight``; rows come out ordered by vertex
    count and then generation order, whatever ``workers`` is.
    ``predicates`` names flags that must all be true for a row to be kept.
    """
    if max_vertices > cap:
        raise CapExceeded(f"max_vertices {max_vertices} exceeds the cap {cap}")
    if max_vertices < 1 or max_weight < 2:
        raise OutOfRange("need max_vertices >= 1 and max_weight >= 2")
    unknown = set(predicates) - set(FLAGS)
    if unknown:
        raise OutOfRange(f"unknown predicate(s): {', '.join(sorted(unknown))}")
    weights = range(2, max_weight + 1)
    source = (kg for n in range(1, max_vertices + 1)
              for kg in weighted_graphs(n, weights, trees_only))
    if workers > 1:
        pool = ProcessPoolExecutor(workers)
        rows = (r for chunk in pool.map(_classify_chunk, _chunks(source, 2000))
                for r in chunk)
    else:
        pool = None
        rows = (classify_row(k, G) for k, G in source)
    try:
        for row in rows:
            if all(getattr(row, p) for p in predicates):
                yield row
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)


# -- almost reduced NG graphs versus the ADE list ----------------------------------

@dataclass
class ArngReport:
    max_vertices: int
    max_weight: int
    trees: int = 0
    negative_definite: int = 0
    rational: int = 0
    almost_reduced: int = 0
    ar_and_ng: int = 0
    ade_matched: int = 0
    non_gorenstein_matched: int = 0
    patterns: dict[str, int] = field(default_factory=dict)
    d_with_minus5_end: int = 0
    only_ng: list[str] = field(default_factory=list)
    only_ade: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.only_ng and not self.only_ade

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


@_gc_paused()
def reproduce_arng(max_vertices: int, max_weight: int,
                   cap: int = DEFAULT_CAP) -> ArngReport:
    """Compare {almost reduced and NG} with {ADE pattern matched} on all trees."""
    if max_vertices > cap:
        raise CapExceeded(f"max_vertices {max_vertices} exceeds the cap {cap}")
    t0 = time.perf_counter()
    rep = ArngReport(max_vertices, max_weight)
    patterns: Counter = Counter()
    weights = range(2, max_weight + 1)
    for n in range(1, max_vertices + 1):
        for st in free_trees(n, weights):
            rep.trees += 1
            G = structure_to_graph(st)
            if not G.negative_definite:
                continue
            rep.negative_definite += 1
            if not is_rational(G):
                continue
            rep.rational += 1
            ar = is_almost_reduced(G)
            rep.almost_reduced += ar
            ng = ar and nearly_gorenstein(G).nearly_gorenstein
            m = match_ade(G)
            rep.ar_and_ng += ng
            if m:
                rep.ade_matched += 1
                patterns[m.pattern] += 1
                if any(b != 2 for b in G.weights):
                    rep.non_gorenstein_matched += 1
                if m.pattern == "D" and any(G.weights[i] == 5 and G.degree(i) == 1
                                            for i in range(G.n)):
                    rep.d_with_minus5_end += 1
            if ng and not m:
                rep.only_ng.append(structure_key(st))
            elif m and not ng:
                rep.only_ade.append(structure_key(st))
    rep.patterns = dict(sorted(patterns.items()))
    rep.seconds = time.perf_counter() - t0
    return rep


# -- NG non-cyclic quotients versus the Ding list -----------------------------------

_SPORADIC_Q = ((2, 3, 3), (2, 3, 4), (2, 3, 5))


def _coprime(q: int) -> list[int]:
    return [p for p in range(1, q) if gcd(p, q) == 1]


def sporadic_fraction_sets() -> list[tuple[tuple[int, int], ...]]:
    """Sorted fraction triples over the three non-(2,2,n) platonic q-triples."""
    seen = set()
    for qs in _SPORADIC_Q:
        for ps in product(*(_coprime(q) for q in qs)):
            seen.add(tuple(sorted(zip(qs, ps))))
    return sorted(seen)


def _dihedral_arms(k_max: int, s_max: int, max_len: int) -> Iterator[tuple[int, ...]]:
    for length in range(1, max_len + 1):
        yield from product(range(2, s_max + 1), repeat=length)


@dataclass
class DingReport:
    k_max: int
    s_max: int
    examined: int = 0
    ng_found: list[str] = field(default_factory=list)
    item_hits: dict[str, int] = field(default_factory=dict)
    missing: list[str] = field(default_factory=list)
    unexpected: list[str] = field(default_factory=list)
    item5_present: bool = False
    probes: int = 0
    probe_failures: list[str] = field(default_factory=list)
    formula_checked: int = 0
    formula_failures: list[str] = field(default_factory=list)
    not_log_terminal: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        sporadic_once = all(self.item_hits.get(str(i), 0) == 1 for i in DING_TABLE)
        return (sporadic_once and not self.missing and not self.unexpected
                and self.item5_present and not self.probe_failures
                and not self.formula_failures and not self.not_log_terminal)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def _ding_domain(k_max: int, s_max: int) -> Iterator[tuple[int, list[list[int]]]]:
    for arm in _dihedral_arms(k_max, s_max, k_max + 1):
        yield 2, [[2], [2], list(arm)]
    for fr in sporadic_fraction_sets():
        yield 2, [fraction_to_branch(q, p) for q, p in fr]


def _probe_domain(s_max: int) -> Iterator[tuple[int, list[list[int]]]]:
    for b in (3, 4):
        for arm in _dihedral_arms(0, s_max, 3):
            yield b, [[2], [2], list(arm)]
        for fr in sporadic_fraction_sets():
            yield b, [fraction_to_branch(q, p) for q, p in fr]


def _label(G: WeightedDualGraph) -> str:
    return pd_divisor(G).display


@_gc_paused()
def reproduce_ding(k_max: int, s_max: int) -> DingReport:
    """Find every NG non-cyclic quotient star in the bounded domain.

    The domain is every star with central weight 2 and branch orders
    (2, 2, n) whose third branch has at most ``k_max + 1`` curves of weight
    at most ``s_max``, plus every coprime choice for the orders (2, 3, 3),
    (2, 3, 4) and (2, 3, 5).  Stars with central weight 3 or 4 are probed
    separately and must all fail to be NG.
    """
    t0 = time.perf_counter()
    rep = DingReport(k_max, s_max)
    hits: Counter = Counter()
    found = set()
    for b, arms in _ding_domain(k_max, s_max):
        G = star_graph(b, arms)
        if is_gorenstein(G):
            continue
        rep.examined += 1
        if not is_log_terminal(G):
            rep.not_log_terminal.append(_label(G))
            continue
        try:
            end_curve_colength(G)
            rep.formula_checked += 1
        except FormulaMismatch as exc:
            rep.formula_failures.append(f"{_label(G)}: {exc}")
        ng = nearly_gorenstein(G).nearly_gorenstein
        m = match_ding(G)
        if ng:
            found.add(str(m))
            rep.ng_found.append(f"{m}: {_label(G)}")
            hits[str(m) if m.item != 1 else "1"] += 1
            if m.item is None:
                rep.unexpected.append(_label(G))
        elif m.item is not None:
            rep.missing.append(f"{m}: {_label(G)} (listed but not NG)")
    expected = {f"1(k={k},s={s})" for k in range(k_max + 1) for s in range(3, s_max + 1)}
    expected |= {str(i) for i in DING_TABLE}
    rep.missing.extend(sorted(expected - found))
    rep.unexpected.extend(sorted(found - expected - {"none"}))
    rep.item_hits = {k: hits[k] for k in sorted(hits, key=lambda s: (len(s), s))}
    rep.item5_present = all(str(i) in found for i in PREVIOUSLY_MISSING)
    for b, arms in _probe_domain(s_max):
        G = star_graph(b, arms)
        rep.probes += 1
        if is_rational(G) and nearly_gorenstein(G).nearly_gorenstein:
            rep.probe_failures.append(_label(G))
    rep.seconds = time.perf_counter() - t0
    return rep
