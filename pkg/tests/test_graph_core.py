from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jumbled.errors import SearchLimitExceeded
from jumbled.graph_core import (SimpleGraph, chromatic_number, complete_bipartite, complete_graph,
                                cycle_graph, degeneracy, is_forest, is_triangle_free, line_graph,
                                line_stats, named_graph, path_graph, petersen_graph,
                                relative_line_degeneracy, s_parameter, star_graph, two_degeneracy,
                                two_degeneracy_of_ordering, two_sided_exponent_closed_form)


def graphs(max_n=7):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        pairs = list(itertools.combinations(range(n), 2))
        keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        return SimpleGraph(n, [e for e, k in zip(pairs, keep) if k])
    return build()


def brute_degeneracy(h):
    best = 0
    for r in range(1, h.n + 1):
        for sub in itertools.combinations(range(h.n), r):
            g = h.induced(sub)
            best = max(best, int(g.degrees().min()))
    return best


def brute_d2(h):
    return min(two_degeneracy_of_ordering(h, o) for o in itertools.permutations(range(h.n)))


def brute_line_degeneracy(edges1, edges2):
    """Definition: minimise over valid edge orders the max count of earlier touching edges."""
    best = None
    for o1 in itertools.permutations(edges1):
        for o2 in itertools.permutations(edges2):
            order = list(o1) + list(o2)
            worst = 0
            for i, e in enumerate(order):
                worst = max(worst, sum(1 for f in order[:i] if set(e) & set(f)))
            best = worst if best is None else min(best, worst)
    return best or 0


def test_simple_graph_validation():
    with pytest.raises(ValueError):
        SimpleGraph(3, [(0, 0)])
    with pytest.raises(ValueError):
        SimpleGraph(3, [(0, 3)])
    g = SimpleGraph(4, [(1, 0), (0, 1), (2, 3)])
    assert g.edge_list() == [(0, 1), (2, 3)]
    assert g == SimpleGraph(4, [(0, 1), (3, 2)])


def test_named_graphs():
    assert named_graph("k4") == complete_graph(4)
    assert named_graph("k2,3") == complete_bipartite(2, 3)
    assert named_graph("c5").m == 5
    assert named_graph("p4").m == 3
    assert named_graph("s3") == star_graph(3)
    assert named_graph("petersen").m == 15
    with pytest.raises(ValueError):
        named_graph("zz")


def test_degeneracy_examples():
    assert degeneracy(complete_graph(5))[0] == 4
    assert degeneracy(cycle_graph(6))[0] == 2
    assert degeneracy(star_graph(4))[0] == 1
    assert degeneracy(SimpleGraph(0))[0] == 0


def test_degeneracy_order_witnesses():
    h = petersen_graph()
    d, order = degeneracy(h)
    pos = {v: i for i, v in enumerate(order)}
    adj = h.adjacency_lists()
    assert sorted(order) == list(range(h.n))
    assert max(sum(1 for w in adj[v] if pos[w] < pos[v]) for v in range(h.n)) <= d


@settings(max_examples=60, deadline=None)
@given(graphs(7))
def test_degeneracy_matches_bruteforce(h):
    assert degeneracy(h)[0] == brute_degeneracy(h)


@settings(max_examples=40, deadline=None)
@given(graphs(7), st.randoms())
def test_degeneracy_monotone(h, rnd):
    keep = [rnd.random() < 0.6 for _ in range(h.m)]
    import numpy as np
    sub = h.edge_subgraph(np.array(keep, dtype=bool))
    assert degeneracy(sub)[0] <= degeneracy(h)[0]
    assert two_degeneracy(sub)[0] <= two_degeneracy(h)[0]


def test_two_degeneracy_examples():
    assert two_degeneracy(complete_graph(4))[0] == 2
    assert two_degeneracy(complete_bipartite(3, 5))[0] == 1
    assert two_degeneracy(SimpleGraph(4))[0] == 0


def test_two_degeneracy_c5_follows_definition():
    # the ordering 0,1,3,2,4 gives every edge a value of at most 1/2
    h = cycle_graph(5)
    assert two_degeneracy_of_ordering(h, [0, 1, 3, 2, 4]) == Fraction(1, 2)
    assert brute_d2(h) == Fraction(1, 2)
    value, order = two_degeneracy(h)
    assert value == Fraction(1, 2)
    assert two_degeneracy_of_ordering(h, order) == value


@settings(max_examples=60, deadline=None)
@given(graphs(7))
def test_two_degeneracy_matches_permutation_search(h):
    value, order = two_degeneracy(h)
    assert value == brute_d2(h)
    assert two_degeneracy_of_ordering(h, order) == value


@pytest.mark.parametrize("t", range(3, 8))
def test_two_degeneracy_cliques(t):
    assert two_degeneracy(complete_graph(t))[0] == t - 2


@pytest.mark.parametrize("s,t", [(s, t) for s in range(2, 6) for t in range(s, 6)])
def test_two_degeneracy_complete_bipartite(s, t):
    assert two_degeneracy(complete_bipartite(s, t))[0] == Fraction(s - 1, 2)


def test_two_degeneracy_upper_bound_small_connected():
    for n in range(2, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1, 1 << len(pairs)):
            h = SimpleGraph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            if not _connected(h):
                continue
            assert two_degeneracy(h)[0] <= degeneracy(h)[0] - Fraction(1, 2)


def _connected(h):
    adj = h.adjacency_lists()
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == h.n


def test_two_degeneracy_limit():
    with pytest.raises(SearchLimitExceeded):
        two_degeneracy(complete_graph(11), branch_and_bound=False)


def test_line_graph_examples():
    assert line_graph(complete_graph(3)).m == 3
    lp = line_graph(path_graph(4))
    assert lp.n == 3 and lp.edge_list() == [(0, 1), (1, 2)]
    assert line_graph(star_graph(3)) == complete_graph(3)


@settings(max_examples=50, deadline=None)
@given(graphs(8))
def test_line_graph_edge_count(h):
    deg = h.degrees()
    assert line_graph(h).m == int(sum(d * (d - 1) // 2 for d in deg))


def test_line_graph_degree_inequalities_small():
    for n in range(2, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1, 1 << len(pairs)):
            h = SimpleGraph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            stats = line_stats(h)
            assert stats.max_degree + 1 >= stats.degeneracy
            assert stats.degeneracy >= h.max_degree() - 1
            assert stats.degeneracy <= h.max_degree() + degeneracy(h)[0] - 2 or h.m <= 1


def test_closed_form_examples():
    assert two_sided_exponent_closed_form(complete_graph(3)) == 3
    assert two_sided_exponent_closed_form(complete_graph(4)) == 4
    assert two_sided_exponent_closed_form(complete_graph(4), sparse_edges=[]) == 1
    assert s_parameter(complete_graph(3)) == 3


def test_closed_form_partial_sparse():
    h = complete_graph(3)
    # one sparse edge: L is a single vertex, so min{(0+4)/2, (0+6)/2} = 2
    assert two_sided_exponent_closed_form(h, sparse_edges=[(0, 1)]) == 2


def test_relative_line_degeneracy_examples():
    assert relative_line_degeneracy([(0, 1)], []) == 0
    c4 = cycle_graph(4).edge_list()
    assert relative_line_degeneracy(c4[:-1], c4[-1:]) == 2
    h = petersen_graph()
    assert relative_line_degeneracy([], h) == line_stats(h).degeneracy


@settings(max_examples=30, deadline=None)
@given(graphs(5), st.randoms())
def test_relative_line_degeneracy_matches_definition(h, rnd):
    edges = h.edge_list()
    if len(edges) > 7:
        edges = edges[:7]
    split = [rnd.random() < 0.5 for _ in edges]
    e1 = [e for e, s in zip(edges, split) if s]
    e2 = [e for e, s in zip(edges, split) if not s]
    expected = brute_line_degeneracy(e1, e2)
    assert relative_line_degeneracy(e1, e2) == expected
    assert relative_line_degeneracy(e1, e2, exhaustive_limit=0) == expected


def test_chromatic_number():
    assert chromatic_number(complete_graph(4)) == 4
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(petersen_graph()) == 3
    assert chromatic_number(SimpleGraph(3)) == 1
    with pytest.raises(SearchLimitExceeded):
        chromatic_number(complete_graph(17))


def test_forest_and_triangles():
    assert is_forest(star_graph(4)) and not is_forest(cycle_graph(4))
    assert is_triangle_free(cycle_graph(5)) and not is_triangle_free(complete_graph(3))
