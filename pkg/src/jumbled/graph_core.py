"""Graph representation and the structural parameters behind the exponents.

Exponents are carried as ``fractions.Fraction``; a half-integer is simply a
Fraction whose denominator divides 2.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import SearchLimitExceeded


class SimpleGraph:
    """Undirected simple graph on vertices ``0..n-1``.

    Edges are stored as a sorted ``(m, 2)`` int64 array with ``u < v`` in
    every row, which keeps large random graphs compact and makes equality
    and serialization canonical.
    """

    __slots__ = ("n", "edges", "_cache")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray = ()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if isinstance(edges, np.ndarray):
            arr = edges.astype(np.int64, copy=False).reshape(-1, 2)
        else:
            arr = np.array([tuple(e) for e in edges], dtype=np.int64).reshape(-1, 2)
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise ValueError("edge endpoint outside [0, n)")
            if np.any(arr[:, 0] == arr[:, 1]):
                raise ValueError("loops are not allowed")
            lo = np.minimum(arr[:, 0], arr[:, 1])
            hi = np.maximum(arr[:, 0], arr[:, 1])
            codes = np.unique(lo * n + hi)
            arr = np.stack([codes // n, codes % n], axis=1)
        self.n = n
        self.edges = arr
        self._cache: dict = {}

    @classmethod
    def _trusted(cls, n: int, arr: np.ndarray) -> "SimpleGraph":
        """Wrap an already canonical edge array without re-sorting."""
        g = cls.__new__(cls)
        g.n = int(n)
        g.edges = arr.astype(np.int64, copy=False).reshape(-1, 2)
        g._cache = {}
        return g

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        if "edge_set" not in self._cache:
            self._cache["edge_set"] = frozenset(self.edge_list())
        return self._cache["edge_set"]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set()

    def degrees(self) -> np.ndarray:
        if "deg" not in self._cache:
            self._cache["deg"] = np.bincount(self.edges.ravel(), minlength=self.n).astype(np.int64)
        return self._cache["deg"]

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def adjacency_lists(self) -> tuple[tuple[int, ...], ...]:
        if "adj" not in self._cache:
            nbrs: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edge_list():
                nbrs[u].append(v)
                nbrs[v].append(u)
            self._cache["adj"] = tuple(tuple(sorted(x)) for x in nbrs)
        return self._cache["adj"]

    def neighbor_masks(self) -> list[int]:
        """Neighborhoods as Python-int bitsets."""
        if "masks" not in self._cache:
            masks = [0] * self.n
            for u, v in self.edge_list():
                masks[u] |= 1 << v
                masks[v] |= 1 << u
            self._cache["masks"] = masks
        return self._cache["masks"]

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        if self.m:
            a[self.edges[:, 0], self.edges[:, 1]] = 1
            a[self.edges[:, 1], self.edges[:, 0]] = 1
        return a

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        """Induced subgraph, relabelled to ``0..len(vertices)-1`` in the given order."""
        index = {int(v): i for i, v in enumerate(vertices)}
        return SimpleGraph(len(index), [(index[u], index[v]) for u, v in self.edge_list()
                                        if u in index and v in index])

    def edge_subgraph(self, keep: np.ndarray) -> "SimpleGraph":
        """Spanning subgraph keeping the rows of ``edges`` where ``keep`` is true."""
        return SimpleGraph._trusted(self.n, self.edges[np.asarray(keep, dtype=bool)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- patterns

def complete_graph(t: int) -> SimpleGraph:
    return SimpleGraph(t, itertools.combinations(range(t), 2))


def cycle_graph(length: int) -> SimpleGraph:
    if length < 3:
        raise ValueError("cycles need at least 3 vertices")
    return SimpleGraph(length, [(i, (i + 1) % length) for i in range(length)])


def path_graph(k: int) -> SimpleGraph:
    """Path on k vertices (k - 1 edges)."""
    return SimpleGraph(k, [(i, i + 1) for i in range(k - 1)])


def star_graph(t: int) -> SimpleGraph:
    """K_{1,t} with centre 0."""
    return SimpleGraph(t + 1, [(0, i) for i in range(1, t + 1)])


def multipartite_graph(sizes: Sequence[int]) -> SimpleGraph:
    labels = np.repeat(np.arange(len(sizes)), sizes)
    n = int(labels.size)
    return SimpleGraph(n, [(u, v) for u, v in itertools.combinations(range(n), 2)
                           if labels[u] != labels[v]])


def complete_bipartite(s: int, t: int) -> SimpleGraph:
    return multipartite_graph([s, t])


def petersen_graph() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph(10, outer + spokes + inner)


_PATTERN_RE = re.compile(r"^([kcps])(\d+(?:,\d+)*)$")


def named_graph(name: str) -> SimpleGraph:
    """Parse a short pattern name.

    ``k4`` clique, ``c5`` cycle, ``p4`` path on 4 vertices, ``s3`` star
    K_{1,3}, ``k2,3`` complete bipartite, ``k1,2,2`` complete multipartite,
    ``petersen``.
    """
    key = name.strip().lower().replace("_", "").replace("{", "").replace("}", "")
    if key == "petersen":
        return petersen_graph()
    match = _PATTERN_RE.match(key)
    if not match:
        raise ValueError(f"unknown pattern name {name!r}")
    kind, nums = match.group(1), [int(x) for x in match.group(2).split(",")]
    if kind == "k":
        return complete_graph(nums[0]) if len(nums) == 1 else multipartite_graph(nums)
    if len(nums) != 1:
        raise ValueError(f"unknown pattern name {name!r}")
    if kind == "c":
        return cycle_graph(nums[0])
    if kind == "p":
        return path_graph(nums[0])
    return star_graph(nums[0])


# ------------------------------------------------------------ parameters

def degeneracy(h: SimpleGraph) -> tuple[int, tuple[int, ...]]:
    """Degeneracy and an ordering where each vertex has at most d earlier neighbours.

    Peels a minimum-degree vertex (smallest index on ties) and returns the
    reverse peeling order.
    """
    adj = [set(x) for x in h.adjacency_lists()]
    deg = [len(x) for x in adj]
    alive = set(range(h.n))
    peel: list[int] = []
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        peel.append(v)
        alive.remove(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
    return best, tuple(reversed(peel))


def is_forest(h: SimpleGraph) -> bool:
    parent = list(range(h.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in h.edge_list():
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_triangle_free(h: SimpleGraph) -> bool:
    masks = h.neighbor_masks()
    return all(masks[u] & masks[v] == 0 for u, v in h.edge_list())


def two_degeneracy(h: SimpleGraph, limit: int = 10, branch_and_bound: bool = True,
                   hard_limit: int = 18) -> tuple[Fraction, tuple[int, ...]]:
    """d2(H) with a witnessing vertex ordering.

    Placing vertex u after the set P fixes the value of every edge uv with v
    placed later: N_P(u) + N_P(v).  So d2 only depends on which set precedes
    each vertex, and an exact search over prefix sets suffices.  For each
    threshold T (in half-units) we test whether some ordering keeps every
    placement at most T, memoising prefix sets that cannot be completed.
    """
    n = h.n
    if n > limit and not branch_and_bound:
        raise SearchLimitExceeded(f"two_degeneracy: {n} vertices exceeds limit {limit}")
    if n > hard_limit:
        raise SearchLimitExceeded(f"two_degeneracy: {n} vertices exceeds hard limit {hard_limit}")
    if h.m == 0:
        return Fraction(0), tuple(range(n))
    masks = h.neighbor_masks()
    full = (1 << n) - 1

    def cost(u: int, placed: int) -> int:
        later = masks[u] & ~placed
        if not later:
            return 0
        own = (masks[u] & placed).bit_count()
        worst = 0
        while later:
            low = later & -later
            v = low.bit_length() - 1
            worst = max(worst, own + (masks[v] & placed).bit_count())
            later ^= low
        return worst

    def search(threshold: int) -> list[int] | None:
        dead: set[int] = set()
        order: list[int] = []

        def extend(placed: int) -> bool:
            if placed == full:
                return True
            if placed in dead:
                return False
            for u in range(n):
                if placed >> u & 1:
                    continue
                if cost(u, placed) <= threshold:
                    order.append(u)
                    if extend(placed | (1 << u)):
                        return True
                    order.pop()
            dead.add(placed)
            return False

        return order if extend(0) else None

    threshold = 0
    while True:
        found = search(threshold)
        if found is not None:
            return Fraction(threshold, 2), tuple(found)
        threshold += 1


def two_degeneracy_of_ordering(h: SimpleGraph, order: Sequence[int]) -> Fraction:
    """max over edges v_i v_j (i < j) of (N_{i-1}(i) + N_{i-1}(j)) / 2 for a given ordering."""
    pos = {v: i for i, v in enumerate(order)}
    adj = h.adjacency_lists()
    worst = 0
    for u, v in h.edge_list():
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        earlier = order[: pos[a]]
        val = sum(1 for w in earlier if w in adj[a]) + sum(1 for w in earlier if w in adj[b])
        worst = max(worst, val)
    return Fraction(worst, 2)


def line_graph(h: SimpleGraph) -> SimpleGraph:
    """Line graph; vertex i is the i-th edge of ``h`` in sorted order."""
    incident: list[list[int]] = [[] for _ in range(h.n)]
    for idx, (u, v) in enumerate(h.edge_list()):
        incident[u].append(idx)
        incident[v].append(idx)
    pairs = set()
    for bucket in incident:
        pairs.update(itertools.combinations(bucket, 2))
    return SimpleGraph(h.m, sorted(pairs))


def sparse_subgraph(h: SimpleGraph, sparse_edges: Iterable[Sequence[int]] | None) -> SimpleGraph:
    if sparse_edges is None:
        return h
    chosen = {tuple(sorted((int(a), int(b)))) for a, b in sparse_edges}
    missing = chosen - h.edge_set()
    if missing:
        raise ValueError(f"sparse edges not in H: {sorted(missing)}")
    return SimpleGraph(h.n, sorted(chosen))


def two_sided_exponent_closed_form(h: SimpleGraph,
                                   sparse_edges: Iterable[Sequence[int]] | None = None) -> Fraction:
    """min{(Delta(L(H_sp)) + 4)/2, (d(L(H_sp)) + 6)/2}; 1 when there are no sparse edges.

    ``sparse_edges=None`` means every edge of H is sparse, which gives s(H).
    """
    hsp = sparse_subgraph(h, sparse_edges)
    if hsp.m == 0:
        return Fraction(1)
    lg = line_graph(hsp)
    delta = lg.max_degree()
    dl, _ = degeneracy(lg)
    return Fraction(min(delta + 4, dl + 6), 2)


def s_parameter(h: SimpleGraph) -> Fraction:
    """s(H): the closed form with every edge sparse."""
    return two_sided_exponent_closed_form(h)


def _edge_adjacency(e1: list, e2: list) -> tuple[list, list[int]]:
    edges = list(e1) + list(e2)
    nb = [0] * len(edges)
    for i, j in itertools.combinations(range(len(edges)), 2):
        if set(edges[i]) & set(edges[j]):
            nb[i] |= 1 << j
            nb[j] |= 1 << i
    return edges, nb


def _normalize_edges(g: SimpleGraph | Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    if isinstance(g, SimpleGraph):
        return g.edge_list()
    return sorted({tuple(sorted((int(a), int(b)))) for a, b in g})


def relative_line_degeneracy(h1, h2, exhaustive_limit: int = 10) -> int:
    """d(L(H1, H2)): best edge ordering with E(H1) before E(H2).

    Exact subset dynamic programming up to ``exhaustive_limit`` edges,
    greedy reverse peeling beyond (an upper bound).
    """
    e1 = _normalize_edges(h1)
    e2 = _normalize_edges(h2)
    if set(e1) & set(e2):
        raise ValueError("H1 and H2 must be edge-disjoint")
    if len(e1) + len(e2) <= exhaustive_limit:
        return _relative_line_degeneracy_exact(e1, e2)
    return _relative_line_degeneracy_greedy(e1, e2)


def _relative_line_degeneracy_exact(e1: list, e2: list) -> int:
    edges, nb = _edge_adjacency(e1, e2)
    k1 = len(e1)
    mask1 = (1 << k1) - 1
    memo: dict[int, int] = {}

    def best(prefix: int) -> int:
        # minimal max back-degree for ordering exactly the edges in ``prefix``
        if prefix == 0:
            return 0
        if prefix in memo:
            return memo[prefix]
        if prefix & ~mask1:
            last_pool = prefix & ~mask1
        else:
            last_pool = prefix
        value = None
        pool = last_pool
        while pool:
            low = pool & -pool
            i = low.bit_length() - 1
            rest = prefix ^ low
            if rest & ~mask1 and rest & mask1 != mask1:
                pool ^= low
                continue
            cand = max(best(rest), (nb[i] & rest).bit_count())
            value = cand if value is None else min(value, cand)
            pool ^= low
        memo[prefix] = value if value is not None else 0
        return memo[prefix]

    return best((1 << len(edges)) - 1)


def _relative_line_degeneracy_greedy(e1: list, e2: list) -> int:
    edges, nb = _edge_adjacency(e1, e2)
    k1 = len(e1)
    remaining = set(range(len(edges)))
    value = 0
    while remaining:
        late = [i for i in remaining if i >= k1]
        pool = late if late else list(remaining)
        rmask = sum(1 << i for i in remaining)
        i = min(pool, key=lambda x: ((nb[x] & rmask).bit_count(), x))
        value = max(value, (nb[i] & rmask & ~(1 << i)).bit_count())
        remaining.remove(i)
    return value


def chromatic_number(h: SimpleGraph, limit: int = 16) -> int:
    """Exact chromatic number by backtracking colouring."""
    if h.n > limit:
        raise SearchLimitExceeded(f"chromatic_number: {h.n} vertices exceeds limit {limit}")
    if h.n == 0:
        return 0
    if h.m == 0:
        return 1
    adj = h.adjacency_lists()
    order = sorted(range(h.n), key=lambda v: (-len(adj[v]), v))

    def colorable(k: int) -> bool:
        color = [-1] * h.n

        def place(i: int, used: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            banned = {color[w] for w in adj[v] if color[w] >= 0}
            for c in range(min(k, used + 1)):
                if c in banned:
                    continue
                color[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
            color[v] = -1
            return False

        return place(0, 0)

    k = 2
    while not colorable(k):
        k += 1
    return k


@dataclass(frozen=True)
class LineStats:
    """Line-graph quantities that feed the two-sided exponent."""

    max_degree: int
    degeneracy: int


def line_stats(h: SimpleGraph) -> LineStats:
    lg = line_graph(h)
    return LineStats(lg.max_degree(), degeneracy(lg)[0])
