"""Homomorphism densities in weighted multipartite hosts and related counts.

G(H) averages the product of edge weights over every part-compatible map
V(H) -> V(G).  Template vertices that share a part may land on the same host
vertex; ``labeled_copies`` is the separate injective count.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import BudgetExceeded, IncompatiblePartial, MissingColor
from .graph_core import SimpleGraph, is_forest
from .pseudorandom import PairView

DEFAULT_BUDGET = 2e9
KINDS = ("sparse", "dense", "jumbled")


@dataclass
class WeightedHost:
    """Symmetric [0,1] weights on vertices 0..N-1, split into disjoint parts."""

    W: np.ndarray
    parts: list[np.ndarray]

    def __post_init__(self):
        self.W = np.asarray(self.W, dtype=np.float64)
        n = self.W.shape[0]
        if self.W.shape != (n, n):
            raise ValueError("weight matrix must be square")
        if self.W.size and (self.W.min() < 0.0 or self.W.max() > 1.0):
            raise ValueError("weight out of [0,1]")
        if not np.array_equal(self.W, self.W.T):
            raise ValueError("weights must be symmetric")
        self.parts = [np.asarray(p, dtype=np.int64) for p in self.parts]
        seen = np.concatenate(self.parts) if self.parts else np.zeros(0, dtype=np.int64)
        if seen.size and (seen.min() < 0 or seen.max() >= n):
            raise ValueError("part vertex outside the host")
        if np.unique(seen).size != seen.size:
            raise ValueError("parts must be disjoint")

    @classmethod
    def from_graph(cls, g: SimpleGraph, parts: Sequence[Sequence[int]]) -> "WeightedHost":
        return cls(g.adjacency_matrix(), [np.asarray(p) for p in parts])

    @property
    def size(self) -> int:
        return self.W.shape[0]

    def block(self, i: int, j: int) -> np.ndarray:
        return self.W[np.ix_(self.parts[i], self.parts[j])]

    def pair(self, i: int, j: int, q: float | None = None, p: float = 1.0) -> PairView:
        w = self.block(i, j)
        return PairView(w, float(w.mean()) if q is None else q, p)


def _edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass
class Template:
    """Pattern H with part assignment, edge kinds and per-edge (q, p)."""

    pattern: SimpleGraph
    part_of: tuple[int, ...]
    kind: dict = field(default_factory=dict)
    q: dict = field(default_factory=dict)
    p: dict = field(default_factory=dict)

    def __post_init__(self):
        self.part_of = tuple(int(x) for x in self.part_of)
        if len(self.part_of) != self.pattern.n:
            raise ValueError("part_of must cover every pattern vertex")
        for e in self.pattern.edge_list():
            self.kind.setdefault(e, "sparse")
            self.q.setdefault(e, 0.0)
            self.p.setdefault(e, 1.0)
            if self.kind[e] not in KINDS:
                raise ValueError(f"unknown edge kind {self.kind[e]!r}")
            if not 0.0 <= self.q[e] <= self.p[e] + 1e-15 or not 0.0 < self.p[e] <= 1.0:
                raise ValueError(f"edge {e}: need 0 <= q <= p <= 1, p > 0")

    @classmethod
    def build(cls, pattern: SimpleGraph, part_of: Sequence[int] | None = None,
              q: float | Mapping = 0.0, p: float | Mapping = 1.0,
              kind: str | Mapping = "sparse") -> "Template":
        """Scalars apply to every edge; mappings are keyed by (a, b) with a < b."""
        edges = pattern.edge_list()

        def spread(value):
            if isinstance(value, Mapping):
                return {_edge_key(*k): v for k, v in value.items()}
            return {e: value for e in edges}

        parts = tuple(range(pattern.n)) if part_of is None else tuple(part_of)
        return cls(pattern, parts, spread(kind), spread(q), spread(p))

    def edges(self) -> list[tuple[int, int]]:
        return self.pattern.edge_list()


# ------------------------------------------------------------ evaluation

def _components(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


class _Factors:
    """Pairwise factor matrices indexed by template vertex pairs."""

    def __init__(self, sizes: Sequence[int], mats: Mapping[tuple[int, int], np.ndarray]):
        self.sizes = list(sizes)
        self.mats = dict(mats)

    def get(self, a: int, b: int) -> np.ndarray:
        if (a, b) in self.mats:
            return self.mats[(a, b)]
        return self.mats[(b, a)].T

    def edges(self) -> list[tuple[int, int]]:
        return sorted(_edge_key(a, b) for a, b in self.mats)


def _tree_density(comp: list[int], f: _Factors) -> float:
    adj: dict[int, list[int]] = {v: [] for v in comp}
    for a, b in f.edges():
        if a in adj:
            adj[a].append(b)
            adj[b].append(a)
    root = comp[0]
    order, parent = [root], {root: -1}
    for v in order:
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                order.append(w)
    prod = {v: np.ones(f.sizes[v]) for v in comp}
    for v in reversed(order[1:]):
        a = parent[v]
        prod[a] = prod[a] * (f.get(a, v) @ prod[v]) / f.sizes[v]
    return float(prod[root].sum() / f.sizes[root])


def _cycle_order(comp: list[int], edges: list[tuple[int, int]]) -> list[int]:
    adj: dict[int, list[int]] = {v: [] for v in comp}
    for a, b in edges:
        if a in adj:
            adj[a].append(b)
            adj[b].append(a)
    start = comp[0]
    seq, prev = [start], None
    cur = start
    while True:
        nxt = [w for w in sorted(adj[cur]) if w != prev]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        seq.append(cur)
    return seq


def _cycle_density(seq: list[int], f: _Factors) -> float:
    """trace(prod_i M_{v_i v_{i+1}}) / prod |X_i|, normalising step by step."""
    acc = np.eye(f.sizes[seq[0]])
    for i, v in enumerate(seq):
        w = seq[(i + 1) % len(seq)]
        acc = acc @ f.get(v, w) / f.sizes[w]
    return float(np.trace(acc))


def _elimination_plan(comp: list[int], edges: list[tuple[int, int]], sizes: Sequence[int]):
    """Greedy min-scope elimination order and its work estimate."""
    nbr = {v: set() for v in comp}
    for a, b in edges:
        if a in nbr:
            nbr[a].add(b)
            nbr[b].add(a)
    alive = set(comp)
    order, work = [], 0.0
    while alive:
        def scope_cost(v):
            return math.prod(sizes[w] for w in (nbr[v] & alive) | {v})

        v = min(alive, key=lambda x: (len(nbr[x] & alive), scope_cost(x), x))
        work += scope_cost(v)
        scope = nbr[v] & alive
        for a in scope:
            nbr[a] |= scope - {a}
        alive.remove(v)
        order.append(v)
    return order, work


def _eliminate(comp: list[int], f: _Factors, budget: float) -> float:
    edges = [e for e in f.edges() if e[0] in comp]
    order, work = _elimination_plan(comp, edges, f.sizes)
    if work > budget:
        raise BudgetExceeded(f"general elimination needs about {work:.3g} operations "
                             f"(budget {budget:.3g})", estimate=work)
    factors: list[tuple[tuple[int, ...], np.ndarray]] = [((a, b), f.get(a, b)) for a, b in edges]
    for v in order:
        touching = [fac for fac in factors if v in fac[0]]
        rest = [fac for fac in factors if v not in fac[0]]
        out_vars = tuple(sorted({x for vars_, _ in touching for x in vars_} - {v}))
        if touching:
            args = []
            for vars_, arr in touching:
                args.extend([arr, list(vars_)])
            merged = np.einsum(*args, list(out_vars), optimize=len(touching) > 2)
        else:
            merged = np.asarray(1.0)
        merged = merged / f.sizes[v] if touching else np.asarray(1.0)
        rest.append((out_vars, merged))
        factors = rest
    total = 1.0
    for vars_, arr in factors:
        total *= float(arr)
    return total


def _evaluate(n: int, f: _Factors, budget: float, method: str = "auto") -> float:
    edges = f.edges()
    result = 1.0
    for comp in _components(n, edges):
        comp_edges = [e for e in edges if e[0] in comp]
        if not comp_edges:
            continue
        sub = SimpleGraph(n, comp_edges)
        degs = sub.degrees()[comp]
        if method == "general":
            val = _eliminate(comp, f, budget)
        elif is_forest(sub) and method in ("auto", "tree"):
            val = _tree_density(comp, f)
        elif np.all(degs == 2) and method in ("auto", "cycle"):
            val = _cycle_density(_cycle_order(comp, comp_edges), f)
        else:
            val = _eliminate(comp, f, budget)
        result *= val
        if result == 0.0:
            break
    return result


def _domains(host: WeightedHost, tpl: Template, partial: Mapping[int, int] | None = None) -> list[np.ndarray]:
    doms = []
    if tpl.pattern.n and max(tpl.part_of) >= len(host.parts):
        raise ValueError(f"template uses part {max(tpl.part_of)} but the host has {len(host.parts)} parts")
    for a in range(tpl.pattern.n):
        part = host.parts[tpl.part_of[a]]
        if partial and a in partial:
            y = int(partial[a])
            if y not in set(part.tolist()):
                raise IncompatiblePartial(f"vertex {a} pinned to {y}, outside part {tpl.part_of[a]}")
            doms.append(np.array([y], dtype=np.int64))
        else:
            doms.append(part)
    return doms


def _edge_factors(host: WeightedHost, tpl: Template, doms: list[np.ndarray]) -> _Factors:
    mats = {(a, b): host.W[np.ix_(doms[a], doms[b])] for a, b in tpl.edges()}
    return _Factors([d.size for d in doms], mats)


def hom_density(host: WeightedHost, tpl: Template, budget: float = DEFAULT_BUDGET,
                method: str = "auto") -> float:
    """G(H): mean over compatible maps of the product of edge weights.

    ``method`` forces a path (``tree``, ``cycle``, ``general``) for testing;
    ``auto`` uses tree DP, cycle traces, then variable elimination.
    """
    doms = _domains(host, tpl)
    if any(d.size == 0 for d in doms):
        return 0.0
    return _evaluate(tpl.pattern.n, _edge_factors(host, tpl, doms), budget, method)


def hom_density_bruteforce(host: WeightedHost, tpl: Template, exact: bool = False,
                           partial: Mapping[int, int] | None = None):
    """Full enumeration oracle; ``exact`` accumulates Fractions of the float weights."""
    doms = _domains(host, tpl, partial)
    edges = tpl.edges()
    count = math.prod(d.size for d in doms)
    if count == 0:
        return Fraction(0) if exact else 0.0
    total = Fraction(0) if exact else 0.0
    w = host.W
    for assign in itertools.product(*[d.tolist() for d in doms]):
        term = Fraction(1) if exact else 1.0
        for a, b in edges:
            x = w[assign[a], assign[b]]
            term *= Fraction(float(x)) if exact else x
        total += term
    return total / count


def q_product(tpl: Template) -> float:
    return math.prod(tpl.q[e] for e in tpl.edges())


def p_product(tpl: Template) -> float:
    return math.prod(tpl.p[e] for e in tpl.edges())


def counting_error(host: WeightedHost, tpl: Template, budget: float = DEFAULT_BUDGET) -> float:
    """theta_hat = |G(H) - q(H)| / prod_e p(e)."""
    return abs(hom_density(host, tpl, budget) - q_product(tpl)) / p_product(tpl)


def centered_c4_density(pair: PairView) -> float:
    """f(K_{2,2}) for f = W - q, through the cycle-trace path with signed weights."""
    f = pair.W - pair.q
    rows, cols = f.shape
    if rows == 0 or cols == 0:
        return 0.0
    fac = _Factors([rows, cols, rows, cols], {(0, 1): f, (1, 2): f.T, (2, 3): f, (0, 3): f})
    return _cycle_density([0, 1, 2, 3], fac)


def induced_density(host_g: WeightedHost, host_gamma: WeightedHost, tpl: Template,
                    budget: float = DEFAULT_BUDGET) -> float:
    """G*(H): G on edges of H, (1 - Gamma) on cross-part non-edges."""
    if host_g.W.shape != host_gamma.W.shape or len(host_g.parts) != len(host_gamma.parts):
        raise ValueError("hosts must have the same shape")
    doms = _domains(host_g, tpl)
    if any(d.size == 0 for d in doms):
        return 0.0
    mats = _induced_mats(host_g, host_gamma, tpl, doms)
    return _evaluate(tpl.pattern.n, _Factors([d.size for d in doms], mats), budget, "general")


def _induced_mats(host_g, host_gamma, tpl, doms):
    edges = set(tpl.edges())
    mats = {}
    for a, b in itertools.combinations(range(tpl.pattern.n), 2):
        if (a, b) in edges:
            mats[(a, b)] = host_g.W[np.ix_(doms[a], doms[b])]
        elif tpl.part_of[a] != tpl.part_of[b]:
            mats[(a, b)] = 1.0 - host_gamma.W[np.ix_(doms[a], doms[b])]
    return mats


def induced_density_bruteforce(host_g: WeightedHost, host_gamma: WeightedHost, tpl: Template) -> float:
    doms = _domains(host_g, tpl)
    mats = _induced_mats(host_g, host_gamma, tpl, doms)
    count = math.prod(d.size for d in doms)
    total = 0.0
    for idx in itertools.product(*[range(d.size) for d in doms]):
        term = 1.0
        for (a, b), m in mats.items():
            term *= m[idx[a], idx[b]]
        total += term
    return total / count if count else 0.0


def conditional_density(host: WeightedHost, tpl: Template, partial: Mapping[int, int],
                        budget: float = DEFAULT_BUDGET) -> float:
    """Mean over extensions of ``partial`` (template vertex -> host vertex)."""
    doms = _domains(host, tpl, partial)
    if any(d.size == 0 for d in doms):
        return 0.0
    return _evaluate(tpl.pattern.n, _edge_factors(host, tpl, doms), budget)


# ------------------------------------------------------------ densification

def path_matrix(host: WeightedHost, parts: Sequence[int]) -> np.ndarray:
    """G(x_0, X_1, ..., X_{m-1}, x_m) for every endpoint pair."""
    acc = host.block(parts[0], parts[1])
    for i in range(1, len(parts) - 1):
        acc = acc @ host.block(parts[i], parts[i + 1]) / host.parts[parts[i]].size
    return acc


def pair_densification(host: WeightedHost, x1: int, x2: int, x3: int, p12: float, p23: float,
                       q12: float | None = None, q23: float | None = None) -> PairView:
    """min{G(x1, X2, x3), 2 p12 p23} / (2 p12 p23) on (X1, X3), with q13 = q12 q23 / (2 p12 p23)."""
    if not (0 < p12 <= 1 and 0 < p23 <= 1):
        raise ValueError("p12 and p23 must lie in (0, 1]")
    q12 = float(host.block(x1, x2).mean()) if q12 is None else q12
    q23 = float(host.block(x2, x3).mean()) if q23 is None else q23
    cap = 2.0 * p12 * p23
    w = np.minimum(path_matrix(host, [x1, x2, x3]), cap) / cap
    meta = {"parts": [x1, x2, x3], "cap": cap, "q12": q12, "q23": q23}
    return PairView(w, q12 * q23 / cap, 1.0, meta)


def path_densification(host: WeightedHost, parts: Sequence[int], p: float,
                       qs: Sequence[float] | None = None) -> PairView:
    """min{G(x_0, X_1, ..., X_{m-1}, x_m), 4 p^m} on (X_0, X_m); scale p^m, target prod q_i."""
    m = len(parts) - 1
    if m < 2:
        raise ValueError("path densification needs m >= 2")
    if qs is None:
        qs = [float(host.block(parts[i], parts[i + 1]).mean()) for i in range(m)]
    cap = 4.0 * p ** m
    w = np.minimum(path_matrix(host, parts), cap)
    meta = {"parts": list(parts), "cap": cap, "qs": list(qs)}
    return PairView(w, math.prod(qs), min(1.0, p ** m), meta)


# ------------------------------------------------------------ labelled copies

def _search_order(h: SimpleGraph) -> list[int]:
    adj = h.adjacency_lists()
    order: list[int] = []
    remaining = set(range(h.n))
    while remaining:
        placed = set(order)
        v = max(remaining, key=lambda x: (len(placed & set(adj[x])), len(adj[x]), -x))
        order.append(v)
        remaining.remove(v)
    return order


def labeled_copies(g: SimpleGraph, h: SimpleGraph, budget: float = 5e7) -> int:
    """Injective edge-preserving maps V(H) -> V(G), by bitset backtracking."""
    if h.n == 0:
        return 1
    if h.n > 8:
        raise BudgetExceeded(f"labeled_copies supports v(H) <= 8, got {h.n}")
    if h.n > g.n:
        return 0
    masks = g.neighbor_masks()
    gdeg = g.degrees()
    order = _search_order(h)
    pos = {v: i for i, v in enumerate(order)}
    hadj = h.adjacency_lists()
    back = [[pos[w] for w in hadj[v] if pos[w] < i] for i, v in enumerate(order)]
    allowed = []
    for v in order:
        need = len(hadj[v])
        mask = 0
        for x in np.nonzero(gdeg >= need)[0].tolist():
            mask |= 1 << x
        allowed.append(mask)
    last = h.n - 1
    assign = [0] * h.n
    nodes = [0]

    def rec(i: int, used: int) -> int:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded("labeled_copies exceeded its node budget", estimate=nodes[0])
        cand = allowed[i] & ~used
        for j in back[i]:
            cand &= masks[assign[j]]
        if i == last:
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            assign[i] = low.bit_length() - 1
            total += rec(i + 1, used | low)
            cand ^= low
        return total

    return rec(0, 0)


# ------------------------------------------------------------ triangles, Goodman

def triangle_count(g: SimpleGraph) -> int:
    if g.m == 0:
        return 0
    a = g.adjacency_matrix()
    return int(round(float(np.sum((a @ a) * a)) / 6.0))


def _coloring_array(g: SimpleGraph, coloring) -> np.ndarray:
    if isinstance(coloring, Mapping):
        out = np.empty(g.m, dtype=np.int64)
        for i, (u, v) in enumerate(g.edge_list()):
            c = coloring.get((u, v), coloring.get((v, u)))
            if c is None:
                raise MissingColor(f"edge ({u}, {v}) has no colour")
            out[i] = int(c)
        return out
    arr = np.asarray(coloring, dtype=np.int64)
    if arr.shape != (g.m,):
        raise MissingColor(f"colouring covers {arr.size} edges, graph has {g.m}")
    return arr


def monochromatic_triangles(g: SimpleGraph, coloring) -> int:
    """Triangles whose three edges share a colour (colours 0/1)."""
    colors = _coloring_array(g, coloring)
    if np.any((colors != 0) & (colors != 1)):
        raise ValueError("colours must be 0 or 1")
    total = 0
    for c in (0, 1):
        total += triangle_count(g.edge_subgraph(colors == c))
    return total


@dataclass(frozen=True)
class GoodmanBound:
    value: float
    hypothesis_ok: bool


def goodman_bound(p: float, beta: float, n: int) -> GoodmanBound:
    """(p^3 - 10 p beta / n) n^3 / 24 when beta <= p^2 n / 10; otherwise 0, flagged."""
    if beta > p * p * n / 10.0:
        return GoodmanBound(0.0, False)
    return GoodmanBound((p ** 3 - 10.0 * p * beta / n) * n ** 3 / 24.0, True)


# ------------------------------------------------------------ groups

def _indicator(n: int, members) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    for x in members:
        v[int(x) % n] = 1
    return v


def cyclic_convolution(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros_like(b)
    for x in np.nonzero(a)[0]:
        out += a[x] * np.roll(b, int(x))
    return out


def group_solution_count(n: int, sets: Sequence) -> int:
    """Solutions of x_1 + ... + x_m = 0 in Z_n with x_i in A_i."""
    if len(sets) < 2:
        raise ValueError("need m >= 2 sets")
    acc = _indicator(n, sets[0])
    for s in sets[1:]:
        acc = cyclic_convolution(_indicator(n, s), acc)
    return int(acc[0])


def group_removal_graph(n: int, sets: Sequence) -> tuple[SimpleGraph, np.ndarray]:
    """Layered graph: (y, i) ~ (y + x, i + 1 mod m) for x in B_i; vertex id i*n + y."""
    m = len(sets)
    if m < 3:
        raise ValueError("need m >= 3 sets")
    edges = []
    for i, s in enumerate(sets):
        j = (i + 1) % m
        for y in range(n):
            for x in sorted({int(v) % n for v in s}):
                edges.append((i * n + y, j * n + (y + x) % n))
    labels = np.repeat(np.arange(m, dtype=np.int64), n)
    return SimpleGraph(n * m, edges), labels


def part_respecting_cycle_count(g: SimpleGraph, labels: np.ndarray, m: int) -> int:
    """Closed walks visiting parts 0, 1, ..., m-1, 0 in order (one vertex per part)."""
    a = g.adjacency_matrix(np.int64)
    parts = [np.nonzero(labels == i)[0] for i in range(m)]
    acc = np.eye(parts[0].size, dtype=np.int64)
    for i in range(m):
        acc = acc @ a[np.ix_(parts[i], parts[(i + 1) % m])]
    return int(np.trace(acc))
