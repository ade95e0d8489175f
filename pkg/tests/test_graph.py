from fractions import Fraction
from itertools import product
import random

import pytest

from resgraph.enumerate import free_trees, structure_to_graph
from resgraph.errors import (
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
from resgraph.graph import (
    WeightedDualGraph,
    build_graph,
    canonical_intersections,
    chain_graph,
    discrepancies,
    dual_cycle,
    intersection_form,
    is_minimal_resolution,
    is_negative_definite,
    leading_minors,
    pairing,
    solve,
    solve_tree,
    star_graph,
    tree_negative_definite,
)

from graphs import A, e6_triple, E8, nonlt_star
from oracles import brute_negative_definite


def test_build_single_vertex():
    G = build_graph([("v1", 2)], [])
    assert G.n == 1 and G.weights == (2,) and G.edges == ()


def test_build_a2():
    G = build_graph([("v1", 2), ("v2", 2)], [("v1", "v2")])
    assert intersection_form(G) == ((-2, 1), (1, -2))


@pytest.mark.parametrize("vertices, edges, exc, element", [
    ([("v1", 2), ("v2", 2)], [("v1", "v2"), ("v1", "v2")], DuplicateEdge, ("v1", "v2")),
    ([("v1", 2), ("v2", 2)], [("v1", "v2"), ("v2", "v1")], DuplicateEdge, ("v2", "v1")),
    ([("v1", 2), ("v1", 3)], [], DuplicateVertex, "v1"),
    ([("v1", 2)], [("v1", "zz")], UnknownEndpoint, "zz"),
    ([("v1", 2)], [("v1", "v1")], SelfLoop, "v1"),
    ([("v1", 2), ("v2", 2)], [], Disconnected, "v2"),
    ([("v1", 0)], [], NonPositiveWeight, "v1"),
    ([("v1", -2)], [], NonPositiveWeight, "v1"),
    ([], [], EmptyGraph, None),
])
def test_build_errors_name_the_element(vertices, edges, exc, element):
    with pytest.raises(exc) as info:
        build_graph(vertices, edges)
    assert info.value.element == element
    assert info.value.code == exc.__name__


def test_form_examples():
    assert intersection_form(build_graph([("v", 3)], [])) == ((-3,),)
    M = intersection_form(star_graph(2, [[2], [2], [2]]))
    assert all(M[i][i] == -2 for i in range(4))
    assert sum(M[0][1:]) == 3


def test_negative_definite_examples():
    assert is_negative_definite(((-2, 1), (1, -2)))
    assert not is_negative_definite(((-1, 1), (1, -1)))
    assert is_negative_definite(intersection_form(E8()))
    assert leading_minors(((-2, 1), (1, -2))) == [-2, 3]


def test_negative_definite_matches_brute_force():
    # weights include 1 so that indefinite and degenerate forms occur
    seen = {True: 0, False: 0}
    for n in range(1, 7):
        for st in free_trees(n, [1, 2, 3]):
            G = structure_to_graph(st)
            expect = brute_negative_definite(G.weights, G.edges, radius=3 if n <= 4 else 1)
            assert is_negative_definite(intersection_form(G)) == expect, G
            assert tree_negative_definite(G) == expect, G
            seen[expect] += 1
    assert seen[True] > 100 and seen[False] > 100


def test_negative_definite_with_cycles():
    tri = build_graph([("a", 2), ("b", 2), ("c", 2)], [("a", "b"), ("b", "c"), ("c", "a")])
    assert not tri.negative_definite
    assert not brute_negative_definite(tri.weights, tri.edges)
    tri3 = build_graph([("a", 3), ("b", 3), ("c", 3)], [("a", "b"), ("b", "c"), ("c", "a")])
    assert tri3.negative_definite == brute_negative_definite(tri3.weights, tri3.edges) is True


def test_minimal_and_canonical():
    assert is_minimal_resolution(A(4))
    assert not is_minimal_resolution(build_graph([("v", 1)], []))
    assert is_minimal_resolution(e6_triple())
    assert canonical_intersections(A(3)) == (0, 0, 0)
    assert canonical_intersections(build_graph([("v", 3)], [])) == (1,)
    assert canonical_intersections(nonlt_star(5)) == (1, 0, 0, 0, 0)


def test_pairing_examples():
    M = intersection_form(A(2))
    assert pairing(M, (1, 0), (1, 0)) == -2
    assert pairing(M, (1, 1), (1, 1)) == -2
    with pytest.raises(DimensionMismatch):
        pairing(M, (1,), (1, 0))


def test_pairing_bilinear_symmetric():
    rng = random.Random(7)
    G = E8()
    M = intersection_form(G)
    for _ in range(200):
        C, D, B = ([rng.randint(-5, 5) for _ in range(8)] for _ in range(3))
        assert pairing(M, C, D) == pairing(M, D, C)
        CB = [c + b for c, b in zip(C, B)]
        assert pairing(M, CB, D) == pairing(M, C, D) + pairing(M, B, D)
    assert pairing(M, (6, 3, 4, 2, 5, 4, 3, 2), (6, 3, 4, 2, 5, 4, 3, 2)) == -2


def test_dual_cycle_examples():
    assert dual_cycle(build_graph([("v", 5)], []), 0) == (Fraction(1, 5),)
    assert dual_cycle(A(2), 0) == (Fraction(2, 3), Fraction(1, 3))


def test_dual_cycle_solves_and_is_positive():
    for n in range(1, 7):
        for st in free_trees(n, [2, 3]):
            G = structure_to_graph(st)
            if not G.negative_definite:
                continue
            M = intersection_form(G)
            for j in range(G.n):
                x = dual_cycle(G, j)
                assert all(c > 0 for c in x)
                assert [sum(M[i][k] * x[k] for k in range(G.n)) for i in range(G.n)] == \
                    [-1 if i == j else 0 for i in range(G.n)]


def test_dual_cycle_requires_definite():
    G = chain_graph([1, 1])
    with pytest.raises(NotNegativeDefinite):
        dual_cycle(G, 0)


def test_discrepancies():
    assert discrepancies(A(5)) == (0,) * 5
    assert discrepancies(build_graph([("v", 3)], [])) == (Fraction(-1, 3),)
    assert discrepancies(nonlt_star(5))[0] == -1
    for n in range(1, 6):
        for st in free_trees(n, [2, 3, 4]):
            G = structure_to_graph(st)
            if not G.negative_definite:
                continue
            a = discrepancies(G)
            M = intersection_form(G)
            assert [sum(M[i][k] * a[k] for k in range(G.n)) for i in range(G.n)] == \
                [b - 2 for b in G.weights]
            assert (not any(a)) == all(b == 2 for b in G.weights)


def test_tree_solver_matches_gauss():
    rng = random.Random(3)
    for n in range(1, 7):
        for st in free_trees(n, [2, 3, 5]):
            G = structure_to_graph(st)
            if not G.negative_definite:
                continue
            rhs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(G.n)]
            assert solve_tree(G, rhs) == solve(intersection_form(G), rhs)


def test_trusted_equals_validated():
    G = WeightedDualGraph(("a", "b", "c"), (2, 3, 2), ((1, 0), (2, 1)))
    H = WeightedDualGraph.trusted(("a", "b", "c"), (2, 3, 2), ((0, 1), (1, 2)))
    assert G == H and G.neighbors == H.neighbors


def test_edges_normalised_and_sorted():
    G = WeightedDualGraph(("a", "b", "c"), (2, 2, 2), ((2, 1), (1, 0)))
    assert G.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize("ws", list(product([2, 3], repeat=3)))
def test_chain_graph_ids(ws):
    G = chain_graph(list(ws))
    assert G.ids == ("E1", "E2", "E3") and G.weights == ws
