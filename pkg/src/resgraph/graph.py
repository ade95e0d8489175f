"""Weighted dual graphs and exact intersection-form linear algebra.

A vertex stands for a smooth rational exceptional curve ``E_i`` and carries
its weight ``b_i = -E_i^2``; an edge is a transverse intersection point.
Cycles are plain tuples of coefficients in vertex order (``int`` for
integral cycles, :class:`fractions.Fraction` for rational ones).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    DimensionMismatch,
    DuplicateEdge,
    DuplicateVertex,
    EmptyGraph,
    NonPositiveWeight,
    NotNegativeDefinite,
    SelfLoop,
    UnknownEndpoint,
)

Cycle = tuple[int, ...]
QCycle = tuple[Fraction, ...]
IntersectionForm = tuple[tuple[int, ...], ...]


class _cached:
    """Lock-free ``cached_property``; the value is stored in the instance dict."""

    def __init__(self, fn):
        self.fn = fn
        self.name = fn.__name__
        self.__doc__ = fn.__doc__

    def __get__(self, obj, cls=None):
        if obj is None:
            return self
        value = obj.__dict__[self.name] = self.fn(obj)
        return value


@dataclass(frozen=True)
class WeightedDualGraph:
    """Connected simple graph of genus-0 curves with weights ``b_i >= 1``.

    ``edges`` holds index pairs ``(i, j)`` with ``i < j``, sorted.  Use
    :func:`build_graph` to construct from ids; the constructor validates
    index-level input.
    """

    ids: tuple[str, ...]
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.ids)
        if n == 0:
            raise EmptyGraph("a dual graph needs at least one vertex")
        if len(self.weights) != n:
            raise DimensionMismatch("ids and weights differ in length")
        if len(set(self.ids)) != n:
            seen = set()
            for v in self.ids:
                if v in seen:
                    raise DuplicateVertex(f"duplicate vertex {v!r}", v)
                seen.add(v)
        for v, b in zip(self.ids, self.weights):
            if b < 1:
                raise NonPositiveWeight(
                    f"vertex {v!r} has weight {b}; need E^2 <= -1", v)
        norm = []
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise UnknownEndpoint(f"edge ({i}, {j}) out of range", (i, j))
            if i == j:
                raise SelfLoop(f"self-loop at {self.ids[i]!r}", self.ids[i])
            norm.append((i, j) if i < j else (j, i))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                pair = (self.ids[a[0]], self.ids[a[1]])
                raise DuplicateEdge(f"duplicate edge {pair[0]} -- {pair[1]}", pair)
        object.__setattr__(self, "edges", tuple(norm))
        reached = self._component_of(0)
        if len(reached) != n:
            stray = next(v for v in self.ids if v not in reached)
            raise Disconnected(
                f"vertex {stray!r} is not connected to {self.ids[0]!r}", stray)

    def _component_of(self, start: int) -> frozenset[str]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(self.ids[i] for i in seen)

    @_cached
    def n(self) -> int:
        return len(self.ids)

    @_cached
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.ids]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @_cached
    def degrees(self) -> tuple[int, ...]:
        return tuple(map(len, self.neighbors))

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1

    def index(self, vertex_id: str) -> int:
        try:
            return self.ids.index(vertex_id)
        except ValueError:
            raise UnknownEndpoint(f"no vertex {vertex_id!r}", vertex_id) from None

    def unit(self, i: int) -> Cycle:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def zero(self) -> Cycle:
        return (0,) * self.n

    def as_dict(self, cycle: Sequence) -> dict[str, object]:
        return dict(zip(self.ids, cycle))

    @_cached
    def form(self) -> IntersectionForm:
        return intersection_form(self)

    @_cached
    def negative_definite(self) -> bool:
        if self.is_tree():
            return tree_negative_definite(self)
        return is_negative_definite(self.form)

    @classmethod
    def trusted(cls, ids: tuple[str, ...], weights: tuple[int, ...],
                edges: tuple[tuple[int, int], ...]) -> "WeightedDualGraph":
        """Skip validation for inputs that are valid by construction.

        ``edges`` must already be normalised (``i < j``, sorted).
        """
        G = object.__new__(cls)
        object.__setattr__(G, "ids", ids)
        object.__setattr__(G, "weights", weights)
        object.__setattr__(G, "edges", edges)
        return G


def build_graph(vertices: Iterable[tuple[str, int]],
                edges: Iterable[tuple[str, str]]) -> WeightedDualGraph:
    """Validate ``(id, weight)`` vertices and ``(id, id)`` edges into a graph.

    >>> build_graph([("a", 2), ("b", 2)], [("a", "b")]).edges
    ((0, 1),)
    """
    vertices = list(vertices)
    ids = tuple(str(v) for v, _ in vertices)
    position: dict[str, int] = {}
    for k, v in enumerate(ids):
        if v in position:
            raise DuplicateVertex(f"duplicate vertex {v!r}", v)
        position[v] = k
    pairs = []
    seen = set()
    for u, v in edges:
        for end in (u, v):
            if end not in position:
                raise UnknownEndpoint(f"edge endpoint {end!r} is not a vertex", end)
        if u == v:
            raise SelfLoop(f"self-loop at {u!r}", u)
        key = frozenset((u, v))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {u} -- {v}", (u, v))
        seen.add(key)
        pairs.append((position[u], position[v]))
    return WeightedDualGraph(ids, tuple(int(b) for _, b in vertices), tuple(pairs))


def chain_graph(weights: Sequence[int], prefix: str = "E") -> WeightedDualGraph:
    ids = tuple(f"{prefix}{k + 1}" for k in range(len(weights)))
    return WeightedDualGraph(ids, tuple(weights),
                             tuple((k, k + 1) for k in range(len(weights) - 1)))


def star_graph(center: int, arms: Sequence[Sequence[int]]) -> WeightedDualGraph:
    """Star with the center first and arms listed center-outward.

    Ids are ``E0`` for the center and ``E<arm>_<pos>`` (1-based) on arms.
    """
    ids = ["E0"]
    weights = [center]
    edges = []
    for a, arm in enumerate(arms, start=1):
        prev = 0
        for pos, b in enumerate(arm, start=1):
            ids.append(f"E{a}_{pos}")
            weights.append(b)
            edges.append((prev, len(ids) - 1))
            prev = len(ids) - 1
    return WeightedDualGraph(tuple(ids), tuple(weights), tuple(edges))


# -- intersection form ----------------------------------------------------------

def intersection_form(G: WeightedDualGraph) -> IntersectionForm:
    n = G.n
    rows = [[0] * n for _ in range(n)]
    for i, b in enumerate(G.weights):
        rows[i][i] = -b
    for i, j in G.edges:
        rows[i][j] = rows[j][i] = 1
    return tuple(tuple(r) for r in rows)


def leading_minors(M: Sequence[Sequence[int]]) -> list[int]:
    """Leading principal minors by fraction-free (Bareiss) elimination.

    Stops early after the first vanishing minor, since later ones would need
    pivoting and are not required by the definiteness test.
    """
    a = [list(r) for r in M]
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - aik * rk[j]) // prev
        prev = pivot
    return minors


def is_negative_definite(M: Sequence[Sequence[int]]) -> bool:
    minors = leading_minors(M)
    if len(minors) < len(M):
        return False
    return all((m < 0) if k % 2 == 0 else (m > 0) for k, m in enumerate(minors))


def tree_negative_definite(G: WeightedDualGraph) -> bool:
    """Definiteness of a tree's form by eliminating leaves toward a root.

    Symmetric elimination in any vertex order has pivots whose partial
    products are the leading minors of the permuted form, so ``-M`` is
    positive definite iff every pivot is positive.  Each pivot is kept as an
    exact fraction ``num/den`` with ``den > 0``.
    """
    nbrs = G.neighbors
    order = [0]
    parent = [-1] * G.n
    for v in order:
        for w in nbrs[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    num = list(G.weights)
    den = [1] * G.n
    for v in reversed(order):
        if num[v] <= 0:
            return False
        p = parent[v]
        if p >= 0:
            # b_p - 1/(num_v/den_v): subtract den_v/num_v from num_p/den_p
            num[p] = num[p] * num[v] - den[v] * den[p]
            den[p] = den[p] * num[v]
    return True


def is_minimal_resolution(G: WeightedDualGraph) -> bool:
    """No (-1)-curves: ``K.E_i = b_i - 2 >= 0`` for genus-0 curves."""
    return all(b >= 2 for b in G.weights)


def canonical_intersections(G: WeightedDualGraph) -> Cycle:
    return tuple(b - 2 for b in G.weights)


def pairing(M: IntersectionForm, C: Sequence, D: Sequence):
    n = len(M)
    if len(C) != n or len(D) != n:
        raise DimensionMismatch(
            f"cycles of length {len(C)} and {len(D)} against a {n}x{n} form")
    total = 0
    for i in range(n):
        if C[i]:
            row = M[i]
            total += C[i] * sum(row[j] * D[j] for j in range(n) if D[j])
    return total


def products(G: WeightedDualGraph, C: Sequence) -> tuple:
    """The vector ``(C.E_1, ..., C.E_n)``."""
    if len(C) != G.n:
        raise DimensionMismatch(f"cycle of length {len(C)} on {G.n} vertices")
    v = [-b * c for b, c in zip(G.weights, C)]
    for i, j in G.edges:
        v[i] += C[j]
        v[j] += C[i]
    return tuple(v)


def self_intersection(G: WeightedDualGraph, C: Sequence):
    return sum(c * p for c, p in zip(C, products(G, C)))


def canonical_degree(G: WeightedDualGraph, C: Sequence):
    """``K.C`` from the numerical canonical class."""
    return sum(c * (b - 2) for c, b in zip(C, G.weights))


# -- exact solving ----------------------------------------------------------------

def solve(M: Sequence[Sequence[int]], rhs: Sequence) -> QCycle:
    """Solve ``M x = rhs`` over the rationals; ``M`` must be nonsingular."""
    n = len(M)
    a = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise NotNegativeDefinite("intersection form is singular")
        a[col], a[piv] = a[piv], a[col]
        prow = a[col]
        inv = 1 / prow[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] * inv
                row = a[r]
                for c in range(col, n + 1):
                    if prow[c]:
                        row[c] -= f * prow[c]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def solve_tree(G: WeightedDualGraph, rhs: Sequence) -> QCycle:
    """Solve ``M x = rhs`` on a tree by leaf elimination in O(n).

    Pivots and right-hand sides are kept as integer pairs (numerator,
    positive denominator) reduced by their gcd.
    """
    nbrs = G.neighbors
    n = G.n
    order = [0]
    parent = [-1] * n
    for v in order:
        for w in nbrs[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    dn = [-b for b in G.weights]
    dd = [1] * n
    rn = []
    rd = []
    for r in rhs:
        r = Fraction(r)
        rn.append(r.numerator)
        rd.append(r.denominator)
    for v in reversed(order):
        if dn[v] == 0:
            raise NotNegativeDefinite("intersection form is singular")
        p = parent[v]
        if p < 0:
            continue
        # d_p -= 1/d_v ;  r_p -= r_v/d_v
        a, b = dn[p] * dn[v] - dd[p] * dd[v], dd[p] * dn[v]
        if b < 0:
            a, b = -a, -b
        g = gcd(a, b)
        dn[p], dd[p] = a // g, b // g
        a, b = rn[p] * rd[v] * dn[v] - rd[p] * rn[v] * dd[v], rd[p] * rd[v] * dn[v]
        if b < 0:
            a, b = -a, -b
        g = gcd(a, b) or 1
        rn[p], rd[p] = a // g, b // g
    x = [Fraction(0)] * n
    for v in order:
        # d_v x_v + x_parent = r_v
        rest = Fraction(rn[v], rd[v])
        if parent[v] >= 0:
            rest -= x[parent[v]]
        x[v] = rest * Fraction(dd[v], dn[v])
    return tuple(x)


def _require_negative_definite(G: WeightedDualGraph) -> None:
    if not G.negative_definite:
        raise NotNegativeDefinite("intersection form is not negative definite")


def dual_cycle(G: WeightedDualGraph, j: int) -> QCycle:
    """The rational cycle ``E_j^*`` with ``E_j^*.E_i = -delta_ij``."""
    _require_negative_definite(G)
    rhs = [-1 if i == j else 0 for i in range(G.n)]
    return solve_tree(G, rhs) if G.is_tree() else solve(G.form, rhs)


def discrepancies(G: WeightedDualGraph) -> QCycle:
    """Rational ``a`` with ``(sum a_i E_i).E_j = K.E_j`` for every ``j``."""
    _require_negative_definite(G)
    k = canonical_intersections(G)
    return solve_tree(G, k) if G.is_tree() else solve(G.form, k)
