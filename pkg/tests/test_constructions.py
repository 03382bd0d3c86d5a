from __future__ import annotations

import numpy as np
import pytest

from jumbled.constructions import (CayleySpec, cayley, complete_multipartite, is_prime, paley,
                                   plant_dominating_vertices, quadratic_residues, random_graph,
                                   random_partition, random_regular, random_subgraph)
from jumbled.errors import AsymmetricSet, InvalidModulus
from jumbled.graph_core import cycle_graph


def test_primes():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("q", [5, 13, 17, 29, 37])
def test_paley_structure(q):
    g = paley(q)
    assert g.m == q * (q - 1) // 4
    assert set(g.degrees().tolist()) == {(q - 1) // 2}
    vals = np.sort(np.linalg.eigvalsh(g.adjacency_matrix()))
    assert np.isclose(vals[-1], (q - 1) / 2)
    assert np.allclose(np.abs(vals[:-1] + 0.5), np.sqrt(q) / 2)


def test_paley_rejects_bad_modulus():
    for q in (7, 15, 4):
        with pytest.raises(InvalidModulus):
            paley(q)


def test_quadratic_residues():
    assert quadratic_residues(13).tolist() == [1, 3, 4, 9, 10, 12]


def test_cayley():
    assert cayley(CayleySpec(7, [1, 6])) == cycle_graph(7)
    with pytest.raises(AsymmetricSet):
        CayleySpec(7, [1])
    with pytest.raises(AsymmetricSet):
        CayleySpec(7, [0])
    with pytest.raises(InvalidModulus):
        CayleySpec(0, [])


def test_random_graph_determinism_and_density():
    g1 = random_graph(300, 0.2, seed=4)
    assert g1 == random_graph(300, 0.2, seed=4)
    assert g1 != random_graph(300, 0.2, seed=5)
    assert abs(g1.m / (300 * 299 / 2) - 0.2) < 0.01
    assert random_graph(10, 0.0, 1).m == 0 and random_graph(10, 1.0, 1).m == 45


def test_random_graph_prefix_consistency():
    # draws are indexed by (u, v), so larger p only adds edges
    small = set(random_graph(60, 0.2, 9).edge_list())
    big = set(random_graph(60, 0.5, 9).edge_list())
    assert small <= big


def test_random_subgraph():
    g = random_graph(100, 0.5, 1)
    h = random_subgraph(g, 0.5, 2)
    assert set(h.edge_list()) <= set(g.edge_list())
    assert random_subgraph(g, 1.0, 2) == g


def test_plant_and_multipartite():
    g = plant_dominating_vertices(random_graph(20, 0.1, 0), 2)
    assert g.degrees()[0] == 19 and g.degrees()[1] == 19
    k = complete_multipartite([2, 3])
    assert k.m == 6


def test_random_regular():
    g = random_regular(12, 3, seed=1)
    assert set(g.degrees().tolist()) == {3}
    with pytest.raises(ValueError):
        random_regular(5, 3, 0)


@pytest.mark.parametrize("n,d", [(12, 10), (12, 8), (11, 6), (10, 5), (8, 7), (6, 0)])
def test_random_regular_dense(n, d):
    for seed in range(5):
        g = random_regular(n, d, seed)
        assert g.m == n * d // 2 and set(g.degrees().tolist()) <= {d}


def test_random_partition_pins():
    parts = random_partition(31, 3, seed=2, pinned=[4, 7, 9])
    assert [len(p) for p in parts] == [10, 10, 10]
    assert 4 in parts[0] and 7 in parts[1] and 9 in parts[2]
    flat = np.concatenate(parts)
    assert np.unique(flat).size == 30


def test_random_graph_binomial_concentration():
    n, p = 10_000, 0.3
    pairs = n * (n - 1) // 2
    g = random_graph(n, p, seed=7)
    assert abs(g.m - p * pairs) <= 4 * (pairs * p * (1 - p)) ** 0.5


def test_random_subgraph_binomial_concentration():
    g = paley(101)
    kept = random_subgraph(g, 0.5, seed=3).m
    assert abs(kept - 0.5 * g.m) <= 4 * (g.m * 0.25) ** 0.5
