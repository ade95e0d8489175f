"""Weighted trees up to isomorphism.

Trees are generated directly in canonical form: rooted at their center (or
split at their central edge), with children kept as sorted tuples.  A rooted
tree is the nested tuple ``(weight, children)``; Python's tuple order is the
total order used for sorting, so each isomorphism class is produced exactly
once and needs no deduplication pass.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import chain, combinations_with_replacement, product
from typing import Iterator, Sequence

import networkx as nx

from .graph import WeightedDualGraph

Rooted = tuple  # (weight, children: tuple[Rooted, ...], height)


def _height(t: Rooted) -> int:
    return t[2]


def _node(w: int, kids: tuple) -> Rooted:
    return (w, kids, 1 + max(k[2] for k in kids) if kids else 0)


@lru_cache(maxsize=None)
def _rooted_upto(size: int, height: int, weights: tuple[int, ...]) -> tuple[Rooted, ...]:
    """All rooted trees with ``size`` vertices and height at most ``height``."""
    if size == 1:
        return tuple((w, (), 0) for w in weights)
    if height == 0:
        return ()
    forests = _forests(size - 1, height - 1, weights)
    return tuple(sorted(_node(w, f) for w in weights for f in forests))


def _partitions(total: int, largest: int) -> Iterator[list[tuple[int, int]]]:
    """Partitions of ``total`` as ``[(part, multiplicity), ...]``, parts descending."""
    if total == 0:
        yield []
        return
    for part in range(min(total, largest), 0, -1):
        for m in range(total // part, 0, -1):
            for rest in _partitions(total - part * m, part - 1):
                yield [(part, m)] + rest


@lru_cache(maxsize=None)
def _forests(total: int, height: int, weights: tuple[int, ...]) -> tuple[tuple[Rooted, ...], ...]:
    """Sorted multisets of rooted trees of height <= ``height`` and total size."""
    out = []
    for parts in _partitions(total, total):
        choices = [combinations_with_replacement(_rooted_upto(size, height, weights), m)
                   for size, m in parts]
        for combo in product(*choices):
            out.append(tuple(sorted(chain.from_iterable(combo))))
    return tuple(out)


def _encode(t: Rooted) -> str:
    w, kids, _ = t
    return f"{w}" + ("(" + ",".join(map(_encode, kids)) + ")" if kids else "")


def free_trees(n: int, weights: Sequence[int]) -> Iterator[tuple]:
    """Yield one structure per weighted tree on ``n`` vertices.

    A structure is ``("U", root)`` for a tree with a central vertex or
    ``("B", a, b)`` with ``a <= b`` for a tree with a central edge; see
    :func:`structure_key` and :func:`structure_to_graph`.
    """
    ws = tuple(sorted(set(weights)))
    if n == 1:
        for w in ws:
            yield ("U", (w, (), 0))
        return
    # central vertex: radius h, at least two children of height exactly h-1
    for h in range(1, (n - 1) // 2 + 1):
        for forest in _forests(n - 1, h - 1, ws):
            if sum(1 for c in forest if c[2] == h - 1) < 2:
                continue
            for w in ws:
                yield ("U", (w, forest, h))
    # central edge: two halves of equal height h
    for h in range(0, n // 2):
        for sa in range(1, n // 2 + 1):
            sb = n - sa
            left = [t for t in _rooted_upto(sa, h, ws) if t[2] == h]
            right = [t for t in _rooted_upto(sb, h, ws) if t[2] == h]
            for a in left:
                for b in right:
                    if sa == sb and b < a:
                        continue
                    yield ("B", a, b) if a <= b else ("B", b, a)


def structure_key(structure: tuple) -> str:
    if structure[0] == "U":
        return "U:" + _encode(structure[1])
    return f"B:{_encode(structure[1])}|{_encode(structure[2])}"


def structure_to_graph(structure: tuple) -> WeightedDualGraph:
    """Breadth-first labelling ``v0, v1, ...`` from the root (or left half)."""
    weights: list[int] = []
    edges: list[tuple[int, int]] = []
    adj: list[list[int]] = []

    def place(root):
        queue = [(root, None)]
        while queue:
            nxt = []
            for t, parent in queue:
                idx = len(weights)
                weights.append(t[0])
                if parent is None:
                    adj.append([])
                else:
                    edges.append((parent, idx))
                    adj[parent].append(idx)
                    adj.append([parent])
                nxt.extend((c, idx) for c in t[1])
            queue = nxt

    place(structure[1])
    if structure[0] == "B":
        a_size = len(weights)
        place(structure[2])
        edges.append((0, a_size))
        adj[0].append(a_size)
        adj[a_size].insert(0, 0)
    edges.sort()
    G = WeightedDualGraph.trusted(_ids(len(weights)), tuple(weights), tuple(edges))
    # BFS order already lists every neighbor list in increasing order
    G.__dict__["neighbors"] = tuple(map(tuple, adj))
    return G


@lru_cache(maxsize=None)
def _ids(n: int) -> tuple[str, ...]:
    return tuple(f"v{k}" for k in range(n))


# -- canonical keys of arbitrary trees ---------------------------------------------

def _rooted_at(G: WeightedDualGraph, root: int, banned: int = -1) -> Rooted:
    def build(v, parent):
        kids = tuple(sorted(build(w, v) for w in G.neighbors[v]
                            if w != parent and w != banned))
        return _node(G.weights[v], kids)
    return build(root, banned)


def tree_centers(G: WeightedDualGraph) -> list[int]:
    deg = [G.degree(i) for i in range(G.n)]
    remaining = G.n
    layer = [i for i in range(G.n) if deg[i] <= 1]
    removed = set()
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            removed.add(v)
            for w in G.neighbors[v]:
                if w not in removed:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(set(range(G.n)) - removed)


def canonical_key(G: WeightedDualGraph) -> str:
    """Isomorphism-invariant key; matches the keys of :func:`free_trees`.

    Graphs with cycles fall back to a brute-force key over automorphism
    classes (small graphs only).
    """
    if not G.is_tree():
        return _general_key(G)
    centers = tree_centers(G)
    if len(centers) == 1:
        return "U:" + _encode(_rooted_at(G, centers[0]))
    c1, c2 = centers
    a, b = sorted((_rooted_at(G, c1, c2), _rooted_at(G, c2, c1)))
    return f"B:{_encode(a)}|{_encode(b)}"


def _general_key(G: WeightedDualGraph) -> str:
    from itertools import permutations

    n = G.n
    order = sorted(range(n), key=lambda i: (G.weights[i], G.degree(i)))
    best = None
    edge_set = set(G.edges)
    # permutations preserving the (weight, degree) class order only
    classes: dict[tuple[int, int], list[int]] = {}
    for i in order:
        classes.setdefault((G.weights[i], G.degree(i)), []).append(i)
    blocks = [classes[k] for k in sorted(classes)]
    for perms in product(*(permutations(b) for b in blocks)):
        seq = [v for block in perms for v in block]
        pos = {v: k for k, v in enumerate(seq)}
        code = tuple(sorted(tuple(sorted((pos[i], pos[j]))) for i, j in edge_set))
        if best is None or code < best:
            best = code
    label = ",".join(f"{w}/{d}" for (w, d) in sorted(classes) for _ in classes[(w, d)])
    return f"G:{label};" + ";".join(f"{i}-{j}" for i, j in best)


# -- graphs with cycles (optional) ---------------------------------------------------

def connected_shapes(n: int) -> Iterator[nx.Graph]:
    """Connected simple graphs on ``n`` vertices from the networkx atlas."""
    if n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == n and nx.is_connected(g):
            yield g


def weighted_graphs(n: int, weights: Sequence[int], trees_only: bool = True
                    ) -> Iterator[tuple[str, WeightedDualGraph]]:
    for st in free_trees(n, weights):
        yield structure_key(st), structure_to_graph(st)
    if trees_only:
        return
    seen = set()
    ids = tuple(f"v{k}" for k in range(n))
    for g in connected_shapes(n):
        if g.number_of_edges() == n - 1:
            continue
        edges = tuple(g.edges())
        for ws in product(sorted(set(weights)), repeat=n):
            G = WeightedDualGraph(ids, ws, edges)
            key = canonical_key(G)
            if key not in seen:
                seen.add(key)
                yield key, G
