import pytest

from resgraph.classify import (
    end_curve_colength,
    is_almost_reduced,
    is_gorenstein,
    is_ulrich_numeric,
    match_ade,
    mu_numeric,
    nearly_gorenstein,
    structural_case,
)
from resgraph.cycles import fundamental_cycle, is_rational, trace_cycle
from resgraph.enumerate import free_trees, structure_to_graph
from resgraph.errors import (
    CyclicQuotient,
    GorensteinInput,
    NotAntiNef,
    NotMinimalResolution,
    NotQuotient,
    NotRational,
)
from resgraph.graph import build_graph, chain_graph, star_graph

from graphs import (
    A,
    chain_one_minus3,
    d_short_minus3,
    d_long_minus3,
    D,
    e6_triple,
    E,
    E8,
    e7_triple,
    a_lmn,
    two_node_left,
    two_node_right,
    three_arm,
    chain_with_leaf,
    nonlt_star,
)


def test_gorenstein_graphs():
    for G in (A(4), D(5), E(6), E(7), E8()):
        r = nearly_gorenstein(G)
        assert is_gorenstein(G) and r.gorenstein and r.nearly_gorenstein
        assert r.trace_colength == 0 and not any(r.trace_cycle)
        assert r.e == 2


def test_single_curve_is_4a():
    for b in (3, 4, 7):
        G = build_graph([("v", b)], [])
        r = nearly_gorenstein(G)
        assert r.nearly_gorenstein and r.structural_case == "4a"
        assert r.e == b and r.trace_colength == 1


@pytest.mark.parametrize("make, pattern, case", [
    (e6_triple, "E6", "4b"),
    (e7_triple, "E7", "4b"),
    (lambda: d_short_minus3(3), "D", None),
    (lambda: d_long_minus3(3), "D", None),
    (lambda: chain_one_minus3(2, 3), "A", "4c"),
])
def test_triple_point_fixtures(make, pattern, case):
    G = make()
    r = nearly_gorenstein(G)
    assert r.nearly_gorenstein
    assert r.criterion_F_equals_Zf and r.criterion_KplusZf_antinef and r.criterion_numeric
    assert r.e == 3
    assert match_ade(G).pattern == pattern
    assert is_almost_reduced(G)
    if case:
        assert r.structural_case == case


def test_two_node_graphs_not_almost_reduced():
    L = two_node_left()
    r = nearly_gorenstein(L)
    assert r.nearly_gorenstein and r.structural_case == "4b"
    assert [L.ids[i] for i in r.witnesses] == ["c"]
    assert fundamental_cycle(L)[0] == (1, 2, 2, 1, 1, 1)
    assert not is_almost_reduced(L)
    assert match_ade(L).pattern == "none"

    R = two_node_right()
    r = nearly_gorenstein(R)
    assert r.nearly_gorenstein and r.structural_case == "4b"
    assert [R.ids[i] for i in r.witnesses] == ["w"]
    assert not is_almost_reduced(R)


def test_chain_with_leaf_not_ng():
    G = chain_with_leaf()
    r = nearly_gorenstein(G)
    assert fundamental_cycle(G)[0] == (1, 1, 2, 1, 1)
    assert trace_cycle(G) == (1, 2, 2, 1, 1)
    assert r.e == 4 and not r.nearly_gorenstein
    assert not (r.criterion_F_equals_Zf or r.criterion_KplusZf_antinef or r.criterion_numeric)
    assert r.structural_case == "none"
    assert r.trace_colength == 2


def test_three_arm_star_not_ng():
    for n in range(2, 7):
        r = nearly_gorenstein(three_arm(n))
        assert not r.nearly_gorenstein
        assert r.trace_colength == n


def test_a_lmn_colength():
    for l in range(1, 5):
        for m in range(l, 5):
            for n in range(m, 5):
                G = a_lmn(l, m, n)
                r = nearly_gorenstein(G)
                assert r.trace_colength == min(l, m, n) + 1
                assert not r.nearly_gorenstein


def test_structural_case_witnesses_unique():
    seen = set()
    for n in range(1, 7):
        for st in free_trees(n, [2, 3, 4]):
            G = structure_to_graph(st)
            if not G.negative_definite or not is_rational(G) or is_gorenstein(G):
                continue
            c = structural_case(G)
            seen.add(c.case)
            if c.case == "4b":
                assert len(c.witnesses) == 1
            elif c.case == "4c":
                assert len(c.witnesses) == 2
    assert seen == {"4a", "4b", "4c", "none"}


def test_criteria_agree_exhaustive_small():
    for n in range(1, 7):
        for st in free_trees(n, [2, 3, 4, 5]):
            G = structure_to_graph(st)
            if not G.negative_definite or not is_rational(G):
                continue
            r = nearly_gorenstein(G)
            if not r.gorenstein:
                assert r.criterion_F_equals_Zf == r.criterion_KplusZf_antinef \
                    == r.criterion_numeric == (r.structural_case != "none")


def test_ade_match_iff_arng():
    for n in range(1, 7):
        for st in free_trees(n, [2, 3, 4]):
            G = structure_to_graph(st)
            if not G.negative_definite or not is_rational(G):
                continue
            ar_ng = is_almost_reduced(G) and nearly_gorenstein(G).nearly_gorenstein
            assert bool(match_ade(G)) == ar_ng, G


def test_ade_roles():
    m = match_ade(A(3))
    assert m.pattern == "A" and set(m.roles) == {"end1", "end2"}
    m = match_ade(D(5))
    assert m.pattern == "D" and m.roles["center"] == 0 and "E_i0" in m.roles
    assert match_ade(E8()).pattern == "E8"
    # E8 shape with a non-(-2) end does not fit the list
    assert match_ade(star_graph(2, [[2], [2, 2], [2, 2, 2, 3]])).pattern == "none"


def test_d_type_with_heavy_end():
    G = star_graph(2, [[5], [2], [2, 2]])
    r = nearly_gorenstein(G)
    assert r.nearly_gorenstein and match_ade(G).pattern == "D"


def test_preconditions():
    with pytest.raises(NotMinimalResolution):
        nearly_gorenstein(chain_graph([1, 3]))
    with pytest.raises(NotRational):
        nearly_gorenstein(star_graph(2, [[3]] * 5))
    with pytest.raises(NotRational):
        is_almost_reduced(star_graph(2, [[3]] * 5))


def test_end_curve_colength():
    assert end_curve_colength(e6_triple()) == 1
    with pytest.raises(CyclicQuotient):
        end_curve_colength(chain_one_minus3(1, 1))
    with pytest.raises(GorensteinInput):
        end_curve_colength(E(6))
    with pytest.raises(NotQuotient):
        end_curve_colength(nonlt_star(5))


def test_ulrich_numeric():
    G = e6_triple()
    Z = fundamental_cycle(G)[0]
    assert mu_numeric(G, Z) == nearly_gorenstein(G).e + 1
    assert is_ulrich_numeric(G, Z)
    with pytest.raises(NotAntiNef):
        is_ulrich_numeric(G, G.zero())
    with pytest.raises(NotAntiNef):
        mu_numeric(G, G.unit(0))
