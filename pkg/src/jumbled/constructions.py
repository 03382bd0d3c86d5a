"""Generators: Paley, binomial random, cyclic Cayley graphs and friends."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import rng
from .errors import AsymmetricSet, InvalidModulus
from .graph_core import SimpleGraph, multipartite_graph

PALEY_MAX_Q = 10**6
_ROW_CHUNK = 1 << 22


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def quadratic_residues(q: int) -> np.ndarray:
    """Sorted nonzero squares mod q, found by squaring every residue."""
    x = np.arange(1, q, dtype=np.int64)
    return np.unique((x * x) % q)


@dataclass(frozen=True)
class CayleySpec:
    """Connection set S of a Cayley graph on Z_n."""

    n: int
    connection_set: frozenset[int]

    def __init__(self, n: int, connection_set: Iterable[int]):
        n = int(n)
        if n < 1:
            raise InvalidModulus(f"modulus must be positive, got {n}")
        s = frozenset(int(x) % n for x in connection_set)
        if 0 in s:
            raise AsymmetricSet("0 may not lie in the connection set (loops)")
        bad = sorted(x for x in s if (n - x) % n not in s)
        if bad:
            raise AsymmetricSet(f"connection set not symmetric: {bad[0]} in S but {(n - bad[0]) % n} not")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "connection_set", s)

    def sorted_set(self) -> list[int]:
        return sorted(self.connection_set)


def _circulant(n: int, members: np.ndarray) -> SimpleGraph:
    """Edges {x, y} with (y - x) mod n in ``members`` (a symmetric set)."""
    if n == 0 or members.size == 0:
        return SimpleGraph(n)
    half = members[members <= n // 2]
    us, vs = [], []
    x = np.arange(n, dtype=np.int64)
    for s in half:
        y = (x + s) % n
        us.append(np.minimum(x, y))
        vs.append(np.maximum(x, y))
    return SimpleGraph(n, np.stack([np.concatenate(us), np.concatenate(vs)], axis=1))


def paley(q: int) -> SimpleGraph:
    """Paley graph on Z_q: x ~ y iff x - y is a nonzero square."""
    if not is_prime(q) or q % 4 != 1:
        raise InvalidModulus(f"Paley graph needs a prime q = 1 mod 4, got {q}")
    if q > PALEY_MAX_Q:
        raise InvalidModulus(f"q = {q} exceeds {PALEY_MAX_Q}")
    return _circulant(q, quadratic_residues(q))


def cayley(spec: CayleySpec) -> SimpleGraph:
    return _circulant(spec.n, np.array(spec.sorted_set(), dtype=np.int64))


def _pairs_from_rows(n: int, key: int, threshold: float) -> np.ndarray:
    """Pairs u < v whose counter draw at index u*n + v is below ``threshold``."""
    chunks = []
    u = 0
    while u < n - 1:
        # gather rows until the chunk holds about _ROW_CHUNK pairs
        rows, count = [], 0
        while u < n - 1 and (count == 0 or count + (n - u - 1) <= _ROW_CHUNK):
            rows.append(u)
            count += n - u - 1
            u += 1
        us = np.concatenate([np.full(n - r - 1, r, dtype=np.int64) for r in rows])
        vs = np.concatenate([np.arange(r + 1, n, dtype=np.int64) for r in rows])
        draws = rng.counter_uniform(key, us * n + vs)
        keep = draws < threshold
        chunks.append(np.stack([us[keep], vs[keep]], axis=1))
    if not chunks:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(chunks)


def random_graph(n: int, p: float, seed: int) -> SimpleGraph:
    """G(n, p): pair {u, v} (u < v) is kept iff its draw at index u*n + v is < p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    key = rng.stream_key(seed, "gnp")
    return SimpleGraph._trusted(n, _pairs_from_rows(n, key, p))


def random_subgraph(g: SimpleGraph, alpha: float, seed: int) -> SimpleGraph:
    """Keep each edge independently with probability alpha (draw indexed by u*n + v)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if g.m == 0:
        return g
    key = rng.stream_key(seed, "subgraph")
    draws = rng.counter_uniform(key, g.edges[:, 0] * g.n + g.edges[:, 1])
    return g.edge_subgraph(draws < alpha)


def plant_dominating_vertices(g: SimpleGraph, k: int) -> SimpleGraph:
    """Make vertices 0..k-1 adjacent to every other vertex."""
    if not 0 <= k <= g.n:
        raise ValueError("k must lie in [0, n]")
    if k == 0:
        return g
    extra = []
    for u in range(k):
        v = np.arange(u + 1, g.n, dtype=np.int64)
        extra.append(np.stack([np.full(v.size, u, dtype=np.int64), v], axis=1))
    return SimpleGraph(g.n, np.concatenate([g.edges] + extra))


def complete_multipartite(part_sizes: Sequence[int]) -> SimpleGraph:
    if len(part_sizes) == 0:
        raise ValueError("part_sizes must be nonempty")
    return multipartite_graph(part_sizes)


def random_regular(n: int, d: int, seed: int, max_tries: int = 1000) -> SimpleGraph:
    """Random d-regular graph: pairing model that only joins suitable point pairs.

    Each step pairs two unmatched points on distinct, non-adjacent vertices
    and restarts if none remain.  Dense cases build the complement of a
    sparser regular graph.
    """
    if (n * d) % 2 or d >= n or d < 0:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    if 2 * d > n - 1:
        sparse = random_regular(n, n - 1 - d, seed, max_tries)
        full = set(complete_multipartite([1] * n).edge_list())
        return SimpleGraph(n, sorted(full - set(sparse.edge_list())))
    gen = rng.Xorshift64Star(rng.stream_key(seed, "regular"))
    for _ in range(max_tries):
        points = [v for v in range(n) for _ in range(d)]
        pairs: set[tuple[int, int]] = set()
        while points:
            found = None
            for _ in range(32):
                i, j = gen.randbelow(len(points)), gen.randbelow(len(points))
                u, v = points[i], points[j]
                if u != v and (min(u, v), max(u, v)) not in pairs:
                    found = (i, j)
                    break
            if found is None:
                options = [(i, j) for i in range(len(points)) for j in range(i + 1, len(points))
                           if points[i] != points[j]
                           and (min(points[i], points[j]), max(points[i], points[j])) not in pairs]
                if not options:
                    break
                found = options[gen.randbelow(len(options))]
            i, j = sorted(found)
            u, v = points[i], points[j]
            pairs.add((min(u, v), max(u, v)))
            points.pop(j)
            points.pop(i)
        if not points:
            return SimpleGraph(n, sorted(pairs))
    raise RuntimeError("pairing model did not produce a simple graph")


def random_partition(n: int, parts: int, seed: int, pinned: Sequence[int] = ()) -> list[np.ndarray]:
    """Split a random permutation of range(n) into equal parts (remainder dropped).

    ``pinned[j]`` is forced into part j by swapping it with that part's first slot.
    """
    gen = rng.Xorshift64Star(rng.stream_key(seed, "partition"))
    order = gen.permutation(n)
    size = n // parts
    layout = order[: size * parts].reshape(parts, size).copy()
    for j, v in enumerate(pinned):
        loc = np.argwhere(layout == v)
        first = layout[j, 0]
        if loc.size:
            r, c = loc[0]
            layout[r, c] = first
        layout[j, 0] = v
    return [np.sort(row) for row in layout]
