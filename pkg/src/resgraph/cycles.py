"""Computation sequences on a resolution graph.

Laufer-style sequences build the fundamental cycle ``Z_f`` and, more
generally, the least cycle ``C >= start`` for which ``L + C`` is anti-nef.
Ties are broken by the smallest vertex index, so every result is
reproducible from the input order alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .errors import (
    DimensionMismatch,
    InternalDisagreement,
    NonIntegralResult,
    NotAntiNef,
    NotEffective,
    NotMinimalResolution,
    NotNegativeDefinite,
    NotRational,
)
from .graph import (
    Cycle,
    WeightedDualGraph,
    canonical_degree,
    canonical_intersections,
    is_minimal_resolution,
    products,
    self_intersection,
)


class Step(NamedTuple):
    vertex: int
    value: int  # C_{i-1}.E_j (or (L + C_{i-1}).E_j for lifts) before adding


@dataclass(frozen=True)
class ComputationSequence:
    start: Cycle
    vertices: tuple[int, ...]  # vertex added at each step
    values: tuple[int, ...]  # its intersection value before adding
    result: Cycle
    seed: Optional[int] = None

    @property
    def steps(self) -> tuple[Step, ...]:
        return tuple(map(Step._make, zip(self.vertices, self.values)))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class RationalityReport:
    is_rational: bool
    p_f: int
    first_violation: Optional[int]  # index into the sequence steps
    sequence: ComputationSequence


def _memo(fn):
    """Cache a one-argument graph function on the graph instance.

    Graphs are immutable, so the cached value never goes stale; it lives in
    the instance ``__dict__`` next to the cached properties.
    """
    slot = "_memo_" + fn.__name__

    def wrapper(G):
        d = G.__dict__
        if slot not in d:
            d[slot] = fn(G)
        return d[slot]

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _require_negative_definite(G: WeightedDualGraph) -> None:
    if not G.negative_definite:
        raise NotNegativeDefinite("intersection form is not negative definite")


def _lift(G: WeightedDualGraph, L: Sequence[int], start: Sequence[int]):
    """Greedy lift; caller guarantees negative definiteness.

    Returns the cycle, the added vertices, their values and the final
    vector ``(L + C).E_i``.
    """
    C = list(start)
    nbrs = G.neighbors
    b = G.weights
    # v[i] = (L + C).E_i, updated incrementally
    v = [x - w * c for x, w, c in zip(L, b, C)]
    for i, j in G.edges:
        v[i] += C[j]
        v[j] += C[i]
    verts: list[int] = []
    vals: list[int] = []
    n = G.n
    j = 0
    while True:
        # every index below j is non-positive here
        while j < n and v[j] <= 0:
            j += 1
        if j == n:
            return tuple(C), tuple(verts), tuple(vals), v
        verts.append(j)
        vals.append(v[j])
        C[j] += 1
        v[j] -= b[j]
        low = j
        for k in nbrs[j]:
            v[k] += 1
            if k < low and v[k] > 0:
                low = k
        j = low


def is_anti_nef(G: WeightedDualGraph, C: Sequence[int]) -> bool:
    return all(x <= 0 for x in products(G, C))


@_memo
def _fundamental(G: WeightedDualGraph) -> tuple[Cycle, ComputationSequence]:
    _require_negative_definite(G)
    seed = G.unit(0)
    Z, verts, vals, v = _lift(G, (0,) * G.n, seed)
    G.__dict__["_memo_zf_products"] = tuple(v)
    return Z, ComputationSequence(seed, verts, vals, Z, seed=0)


def zf_products(G: WeightedDualGraph) -> tuple[int, ...]:
    """``(Z_f.E_1, ..., Z_f.E_n)``, kept from the computation sequence."""
    _fundamental(G)
    return G.__dict__["_memo_zf_products"]


def fundamental_cycle(G: WeightedDualGraph) -> tuple[Cycle, ComputationSequence]:
    """Minimal nonzero anti-nef cycle, seeded at the first vertex.

    >>> from resgraph.graph import chain_graph
    >>> fundamental_cycle(chain_graph([2, 3, 2]))[0]
    (1, 1, 1)
    """
    return _fundamental(G)


def chi(G: WeightedDualGraph, C: Sequence[int]) -> int:
    """Holomorphic Euler characteristic ``-(C.C + K.C) / 2``."""
    if len(C) != G.n:
        raise DimensionMismatch(f"cycle of length {len(C)} on {G.n} vertices")
    twice = -(self_intersection(G, C) + canonical_degree(G, C))
    if twice % 2:
        raise NonIntegralResult(f"chi of {tuple(C)} is {twice}/2")
    return twice // 2


@_memo
def rationality(G: WeightedDualGraph) -> RationalityReport:
    Z, seq = _fundamental(G)
    by_steps = not any(x != 1 for x in seq.values)
    first = None if by_steps else next(k for k, x in enumerate(seq.values) if x != 1)
    twice = -(sum(z * p for z, p in zip(Z, zf_products(G))) + canonical_degree(G, Z))
    p_f = 1 - twice // 2
    if by_steps != (p_f == 0):
        raise InternalDisagreement(
            f"sequence test says rational={by_steps} but p_f={p_f}")
    return RationalityReport(by_steps, p_f, first, seq)


def is_rational(G: WeightedDualGraph) -> bool:
    return rationality(G).is_rational


def require_rational(G: WeightedDualGraph) -> Cycle:
    """Check the rationality precondition and return ``Z_f``."""
    if not rationality(G).is_rational:
        raise NotRational(f"p_f = {rationality(G).p_f} > 0")
    return _fundamental(G)[0]


def require_minimal(G: WeightedDualGraph) -> None:
    if not is_minimal_resolution(G):
        k = next(i for i, b in enumerate(G.weights) if b < 2)
        raise NotMinimalResolution(f"vertex {G.ids[k]!r} is a (-1)-curve")


def multiplicity(G: WeightedDualGraph) -> int:
    """``e = -Z_f^2``, cross-checked against ``2 + K.Z_f``."""
    Z = require_rational(G)
    e = -self_intersection(G, Z)
    if e != 2 + canonical_degree(G, Z):
        raise InternalDisagreement(f"-Z^2 = {e} but 2 + K.Z = {2 + canonical_degree(G, Z)}")
    return e


def min_antinef_lift(G: WeightedDualGraph, L: Sequence[int],
                     start: Sequence[int]) -> tuple[Cycle, ComputationSequence]:
    """Least cycle ``C >= start`` with ``L_i + C.E_i <= 0`` for every ``i``.

    ``L`` gives the intersection numbers ``L.E_i`` of a divisor.
    """
    if len(L) != G.n or len(start) != G.n:
        raise DimensionMismatch("L and start must have one entry per vertex")
    if any(c < 0 for c in start):
        raise NotEffective(f"start cycle {tuple(start)} is not effective")
    _require_negative_definite(G)
    C, verts, vals, _ = _lift(G, tuple(L), tuple(start))
    return C, ComputationSequence(tuple(start), verts, vals, C)


@_memo
def _trace(G: WeightedDualGraph) -> Cycle:
    require_minimal(G)
    Z = require_rational(G)
    K = canonical_intersections(G)
    if not any(K):
        return G.zero()
    return _lift(G, K, Z)[0]


def trace_cycle(G: WeightedDualGraph) -> Cycle:
    """Minimal cycle ``F`` with ``K + F`` anti-nef; zero when ``K = 0``."""
    return _trace(G)


def colength(G: WeightedDualGraph, C: Sequence[int]) -> int:
    """``l(A / H^0(O(-C)))`` for an anti-nef cycle on a rational graph."""
    require_rational(G)
    if len(C) != G.n:
        raise DimensionMismatch(f"cycle of length {len(C)} on {G.n} vertices")
    if not any(C):
        return 0
    if not is_anti_nef(G, C):
        raise NotAntiNef(f"cycle {tuple(C)} is not anti-nef")
    return chi(G, C)
