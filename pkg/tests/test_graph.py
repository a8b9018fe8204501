import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multipath.errors import GraphFormatError
from multipath.graph import (
    TOP,
    ZERO,
    Digraph,
    LexCost,
    OrientedEdge,
    generate_outconnected,
    lex_add,
    lex_compare,
    oriented_cost,
    parse_graph,
    path_cost,
    path_vertices,
    write_graph,
)
from multipath.oracle import max_disjoint_paths

lex = st.builds(LexCost, st.integers(-50, 50), st.integers(0, 20)) | st.just(TOP)


@pytest.mark.parametrize(
    "a, b, want",
    [
        (LexCost(3, 1), LexCost(3, 2), -1),
        (LexCost(2, 5), LexCost(3, 0), -1),
        (LexCost(4, 4), LexCost(4, 4), 0),
        (LexCost(7, 0), TOP, -1),
        (TOP, TOP, 0),
    ],
)
def test_lex_compare(a, b, want):
    assert lex_compare(a, b) == want
    assert lex_compare(b, a) == -want


def test_lex_add():
    assert lex_add(LexCost(3, 1), LexCost(2, 0)) == (5, 1)
    assert lex_add(ZERO, LexCost(-4, 2)) == (-4, 2)
    assert lex_add(TOP, LexCost(1, 1)) == TOP
    assert (LexCost(1, 2) + LexCost(3, 4)) == (4, 6)
    assert TOP.is_top and not ZERO.is_top


@given(lex, lex, lex)
def test_lex_order_is_total(a, b, c):
    ab, ba = lex_compare(a, b), lex_compare(b, a)
    assert ab == -ba
    assert (ab == 0) == (a == b)
    if ab <= 0 and lex_compare(b, c) <= 0:
        assert lex_compare(a, c) <= 0


@given(lex, lex, lex)
def test_lex_add_monoid(a, b, c):
    assert lex_add(a, b) == lex_add(b, a)
    assert lex_add(lex_add(a, b), c) == lex_add(a, lex_add(b, c))
    assert lex_add(a, ZERO) == a


def test_oriented_cost(d1):
    assert oriented_cost(d1, OrientedEdge(1, True), frozenset()) == (3, 1)
    assert oriented_cost(d1, OrientedEdge(1, True), frozenset({1})) == (3, 0)
    assert oriented_cost(d1, OrientedEdge(1, False), frozenset()) == (-3, 0)
    with pytest.raises(ValueError):
        oriented_cost(d1, OrientedEdge(9, True))


def test_oriented_edge_endpoints(d1):
    e = OrientedEdge(4, False)
    assert (e.tail(d1), e.head(d1), e.cost(d1)) == (2, 1, -1)


def test_path_cost_is_sum_of_oriented_costs(d1):
    path = [OrientedEdge(2), OrientedEdge(4, False), OrientedEdge(1)]
    assert path_vertices(d1, path, 0) == [0, 2, 1, 3]
    assert path_cost(d1, path, frozenset({0, 3, 4})) == (5, 2)
    with pytest.raises(ValueError):
        path_vertices(d1, path, 1)


def test_digraph_indices_are_inverse(d2):
    for e in d2.edges:
        assert e.id in d2.out_index[e.tail]
        assert e.id in d2.in_index[e.head]
    assert sum(map(len, d2.out_index)) == sum(map(len, d2.in_index)) == d2.m


@pytest.mark.parametrize("edges", [[(0, 0, 1)], [(0, 1, -2)], [(0, 5, 1)], [(0, 1, 1.5)]])
def test_digraph_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        Digraph(2, edges)


def test_parallel_and_antiparallel_edges_allowed():
    g = Digraph(2, [(0, 1, 1), (0, 1, 2), (1, 0, 3)])
    assert g.out_index[0] == (0, 1)


def test_parse_smallest():
    g, s = parse_graph("p edp 2 1\ns 1\na 1 2 5")
    assert (g.n, g.m, s) == (2, 1, 0)
    assert g.edges[0] == (0, 0, 1, 5)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("p edp 2 1\ns 1\na 1 2 -3", "negative cost"),
        ("p edp 2 1\ns 1\na 1 3 1", "out of range"),
        ("p edp 2 2\ns 1\na 1 2 1", "declares 2"),
        ("s 1\np edp 2 1\na 1 2 1", "header"),
        ("p edp 2 1\na 1 2 1", "missing source"),
        ("p edp 2 1\ns 1\na 1 2", "arc line"),
        ("p edp 2 1\ns 1\na 1 x 2", "malformed"),
        ("p edp 2 1\ns 1\na 2 2 1", "self-loop"),
        ("p edp 2 1\ns 1\nq 1", "unknown"),
        ("p edp 2 1\ns 1\ns 2\na 1 2 1", "duplicate"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_graph(text)


def test_parse_error_carries_line_number():
    with pytest.raises(GraphFormatError) as info:
        parse_graph("c hello\np edp 2 1\ns 1\na 1 2 -3")
    assert info.value.line == 4


def test_parse_decimal_costs_with_scale():
    g, _ = parse_graph("p edp 2 1\ns 1\na 1 2 2.25", scale=2)
    assert g.costs == (225,)
    with pytest.raises(GraphFormatError, match="not an integer"):
        parse_graph("p edp 2 1\ns 1\na 1 2 2.25", scale=1)


@given(st.integers(2, 12), st.integers(1, 3), st.integers(0, 30), st.integers(0, 10**6))
def test_round_trip(n, p, extra, seed):
    p = min(p, n - 1)
    g = generate_outconnected(n, p, extra, 50, seed)
    text = write_graph(g, 0, comment="round trip")
    g2, s2 = parse_graph(text)
    assert g2 == g and s2 == 0
    assert write_graph(g2, s2, comment="round trip") == text


def test_generator_forced_shape():
    g = generate_outconnected(2, 1, 0, 9, seed=3)
    assert g.n == 2 and g.m == 1 and (g.tails[0], g.heads[0]) == (0, 1)


def test_generator_is_deterministic():
    a = generate_outconnected(20, 3, 40, 100, seed=11)
    b = generate_outconnected(20, 3, 40, 100, seed=11)
    assert a.edges == b.edges
    assert generate_outconnected(20, 3, 40, 100, seed=12).edges != a.edges


@given(st.integers(2, 15), st.integers(1, 5), st.integers(0, 20), st.integers(0, 10**6))
def test_generator_is_outconnected(n, p, extra, seed):
    p = min(p, n - 1)
    g = generate_outconnected(n, p, extra, 10, seed)
    assert g.m == p * (n - 1) + extra
    deg = g.in_degree(range(g.m))
    for t in range(1, n):
        assert deg[t] >= p
        assert max_disjoint_paths(g, 0, t) >= p


def test_generator_rejects_bad_parameters():
    with pytest.raises(ValueError):
        generate_outconnected(1, 1)
    with pytest.raises(ValueError):
        generate_outconnected(4, 4)


def test_subgraph_maps_ids(d2):
    sub, keep = d2.subgraph({5, 0})
    assert keep == [0, 5]
    assert sub.edges[1][1:] == (2, 1, 5)
    assert math.isinf(TOP.cost)
