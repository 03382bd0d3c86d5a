"""Symbolic search for jumbledness exponents.

A labelled template is a pattern whose edges are sparse, dense or jumbled,
with a rational exponent label on every sparse and jumbled edge.  The moves
below turn a template into simpler ones; ``certify`` searches for a tree of
moves whose leaves are empty or all-dense patterns.

Move rules, as implemented:

* remove jumbled edge ab: needs label >= (deg(a) + deg(b)) / 2, degrees
  counted over sparse and jumbled edges of the current template.
* doubling a: two children.  One drops every edge at a.  The other adds a
  copy a' of a's star (same kinds and labels); every edge avoiding {a, a'}
  is then deleted if dense and made jumbled if sparse.  Copies are never
  doubled again.
* densify b: b has exactly two neighbours a, c (both edges sparse or
  dense), ac is not an edge.  Obligation: delete dense edges, make sparse
  edges jumbled, and remove every jumbled edge.  Result: b is replaced by a
  dense edge ac.
* tree peel: sparse plus dense edges form a forest; convert as above and
  remove every jumbled edge.
* subdivision densify (one-sided only): a sparse path a_0..a_l with
  internal degree 2 and a_0 a_l not an edge becomes a dense edge when every
  path label is >= 1 + 1/(2l - 2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (DensifyObligationFailed, InsufficientLabel, NoCertificate,
                     SearchLimitExceeded)
from .graph_core import (SimpleGraph, is_triangle_free, two_degeneracy,
                         two_sided_exponent_closed_form)

SPARSE, DENSE, JUMBLED = "sparse", "dense", "jumbled"
_KIND_CODE = {SPARSE: 0, JUMBLED: 1, DENSE: 2}


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


@dataclass(frozen=True)
class LabeledTemplate:
    """Pattern with edge kinds and labels; ``copies`` marks doubled vertices."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, str, Fraction | None], ...]
    copies: frozenset[int] = frozenset()

    @staticmethod
    def make(vertices: Iterable[int], edges: Iterable[tuple], copies: Iterable[int] = ()) -> "LabeledTemplate":
        rows = []
        for u, v, kind, label in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            if kind not in _KIND_CODE:
                raise ValueError(f"unknown edge kind {kind!r}")
            if kind == DENSE:
                label = None
            else:
                if label is None:
                    raise ValueError(f"{kind} edge ({u}, {v}) needs a label")
                label = _frac(label)
                if label < 1:
                    raise ValueError(f"label {label} on ({u}, {v}) is below 1")
            a, b = (u, v) if u < v else (v, u)
            rows.append((int(a), int(b), kind, label))
        rows.sort(key=lambda r: (r[0], r[1]))
        for r1, r2 in zip(rows, rows[1:]):
            if r1[:2] == r2[:2]:
                raise ValueError(f"duplicate edge {r1[:2]}")
        verts = set(int(v) for v in vertices) | {x for r in rows for x in r[:2]}
        return LabeledTemplate(tuple(sorted(verts)), tuple(rows), frozenset(int(c) for c in copies) & verts)

    @staticmethod
    def from_graph(h: SimpleGraph, labels: Fraction | int | str | Mapping | Sequence = 1,
                   kind: str = SPARSE) -> "LabeledTemplate":
        """All edges of ``h`` with one kind; labels are a scalar, a dict keyed by edge, or a list in edge order."""
        edges = h.edge_list()
        if isinstance(labels, Mapping):
            lab = {tuple(sorted(k)): v for k, v in labels.items()}
            vals = [lab[e] for e in edges]
        elif isinstance(labels, (list, tuple)):
            if len(labels) != len(edges):
                raise ValueError("label list length must equal the edge count")
            vals = list(labels)
        else:
            vals = [labels] * len(edges)
        return LabeledTemplate.make(range(h.n), [(u, v, kind, lab) for (u, v), lab in zip(edges, vals)])

    def edge_map(self) -> dict[tuple[int, int], tuple[str, Fraction | None]]:
        return {(u, v): (k, lab) for u, v, k, lab in self.edges}

    def kinds(self, kind: str) -> list[tuple[int, int]]:
        return [(u, v) for u, v, k, _ in self.edges if k == kind]

    def neighbors(self, v: int, kinds: Iterable[str] = (SPARSE, DENSE, JUMBLED)) -> list[int]:
        ks = set(kinds)
        out = []
        for a, b, k, _ in self.edges:
            if k in ks and v in (a, b):
                out.append(b if a == v else a)
        return sorted(out)

    def degree(self, v: int, kinds: Iterable[str] = (SPARSE, JUMBLED)) -> int:
        return len(self.neighbors(v, kinds))

    def is_done(self) -> bool:
        return all(k == DENSE for _, _, k, _ in self.edges)

    def without_isolated(self) -> "LabeledTemplate":
        used = {x for r in self.edges for x in r[:2]}
        return LabeledTemplate(tuple(v for v in self.vertices if v in used), self.edges, self.copies & used)

    def replace_edges(self, edges: Iterable[tuple], vertices: Iterable[int] | None = None,
                      copies: Iterable[int] | None = None) -> "LabeledTemplate":
        verts = self.vertices if vertices is None else vertices
        cps = self.copies if copies is None else copies
        return LabeledTemplate.make(verts, edges, cps)

    def relabel(self, mapping: Mapping[int, int]) -> "LabeledTemplate":
        return LabeledTemplate.make([mapping[v] for v in self.vertices],
                                    [(mapping[u], mapping[v], k, lab) for u, v, k, lab in self.edges],
                                    [mapping[c] for c in self.copies])

    def max_label(self) -> Fraction | None:
        labels = [lab for _, _, _, lab in self.edges if lab is not None]
        return max(labels) if labels else None

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[u, v, k, None if lab is None else str(lab)] for u, v, k, lab in self.edges],
            "copies": sorted(self.copies),
        }

    @staticmethod
    def from_dict(data: Mapping) -> "LabeledTemplate":
        return LabeledTemplate.make(data.get("vertices", ()),
                                    [(u, v, k, lab) for u, v, k, lab in data["edges"]],
                                    data.get("copies", ()))


@dataclass
class ProofTree:
    template: LabeledTemplate
    move: str
    params: dict = field(default_factory=dict)
    children: list["ProofTree"] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "move": self.move,
            "params": self.params,
            "template": self.template.to_dict(),
            "children": [c.to_dict() for c in self.children],
        }

    @staticmethod
    def from_dict(data: Mapping) -> "ProofTree":
        return ProofTree(LabeledTemplate.from_dict(data["template"]), data["move"],
                         dict(data.get("params", {})),
                         [ProofTree.from_dict(c) for c in data.get("children", [])])

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def leaves(self) -> list["ProofTree"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]


# ------------------------------------------------------------------ moves

def _jumbled_requirement(t: LabeledTemplate, u: int, v: int) -> Fraction:
    return Fraction(t.degree(u) + t.degree(v), 2)


def remove_jumbled_edge(t: LabeledTemplate, e: tuple[int, int]) -> LabeledTemplate:
    u, v = sorted(e)
    emap = t.edge_map()
    if (u, v) not in emap or emap[(u, v)][0] != JUMBLED:
        raise ValueError(f"({u}, {v}) is not a jumbled edge")
    need = _jumbled_requirement(t, u, v)
    label = emap[(u, v)][1]
    if label < need:
        raise InsufficientLabel(f"removing ({u}, {v}) needs label {need}, has {label}", (u, v), need)
    return t.replace_edges([r for r in t.edges if r[:2] != (u, v)])


def remove_all_jumbled(t: LabeledTemplate) -> tuple[LabeledTemplate, list[tuple[int, int, Fraction]]]:
    """Greedily delete removable jumbled edges until none remain.

    Removing an edge only lowers degrees, so an edge that is removable stays
    removable: if the greedy pass gets stuck, no removal order succeeds.
    """
    steps = []
    while True:
        jumbled = t.kinds(JUMBLED)
        if not jumbled:
            return t, steps
        emap = t.edge_map()
        progressed = False
        for u, v in jumbled:
            need = _jumbled_requirement(t, u, v)
            if emap[(u, v)][1] >= need:
                t = t.replace_edges([r for r in t.edges if r[:2] != (u, v)])
                steps.append((u, v, need))
                progressed = True
                break
        if not progressed:
            u, v = min(jumbled, key=lambda e: (_jumbled_requirement(t, *e) - emap[e][1], e))
            need = _jumbled_requirement(t, u, v)
            raise InsufficientLabel(f"no jumbled edge removable; ({u}, {v}) needs {need}, has {emap[(u, v)][1]}",
                                    (u, v), need)


def _convert(edges: Iterable[tuple], keep: set[tuple[int, int]] = frozenset()) -> list[tuple]:
    """Delete dense edges and make sparse edges jumbled, except those in ``keep``."""
    out = []
    for u, v, k, lab in edges:
        if (u, v) in keep:
            out.append((u, v, k, lab))
        elif k == DENSE:
            continue
        else:
            out.append((u, v, JUMBLED, lab))
    return out


def doubling(t: LabeledTemplate, a: int) -> tuple[LabeledTemplate, LabeledTemplate]:
    star = [r for r in t.edges if a in r[:2]]
    if not star:
        raise ValueError(f"vertex {a} has no incident edge")
    minus = t.replace_edges([r for r in t.edges if a not in r[:2]]).without_isolated()
    a2 = max(t.vertices) + 1
    copied = []
    for u, v, k, lab in star:
        other = v if u == a else u
        copied.append((other, a2, k, lab))
    keep = {r[:2] for r in star}
    doubled_edges = _convert(t.edges, keep) + copied
    doubled = t.replace_edges(doubled_edges, vertices=list(t.vertices) + [a2], copies=set(t.copies) | {a2})
    return minus, doubled.without_isolated()


def densify(t: LabeledTemplate, b: int) -> tuple[LabeledTemplate, list[tuple[int, int, Fraction]]]:
    """Replace the 2-path a-b-c by a dense edge ac; returns the template and the obligation removals."""
    if t.kinds(JUMBLED):
        raise ValueError("densify applies to templates without jumbled edges")
    nbrs = t.neighbors(b)
    if len(nbrs) != 2:
        raise ValueError(f"vertex {b} has degree {len(nbrs)}, need 2")
    a, c = nbrs
    emap = t.edge_map()
    if (a, c) in emap:
        raise ValueError(f"neighbours {a}, {c} of {b} are adjacent")
    converted = t.replace_edges(_convert(t.edges))
    try:
        _, steps = remove_all_jumbled(converted)
    except InsufficientLabel as exc:
        raise DensifyObligationFailed(f"densify {b}: {exc}", exc.edge, exc.required) from None
    rest = [r for r in t.edges if b not in r[:2]]
    out = t.replace_edges(rest + [(a, c, DENSE, None)], vertices=[v for v in t.vertices if v != b])
    return out.without_isolated(), steps


def subdivision_threshold(length: int) -> Fraction:
    return 1 + Fraction(1, 2 * length - 2)


def subdivision_densify(t: LabeledTemplate, path: Sequence[int]) -> LabeledTemplate:
    path = [int(x) for x in path]
    length = len(path) - 1
    if length < 2:
        raise ValueError("subdivision densify needs a path with at least 2 edges")
    if len(set(path)) != len(path):
        raise ValueError("path repeats a vertex")
    emap = t.edge_map()
    ends = tuple(sorted((path[0], path[-1])))
    if ends in emap:
        raise ValueError("path endpoints are adjacent")
    for x in path[1:-1]:
        if len(t.neighbors(x)) != 2:
            raise ValueError(f"internal vertex {x} does not have degree 2")
    need = subdivision_threshold(length)
    path_edges = [tuple(sorted(e)) for e in zip(path, path[1:])]
    for e in path_edges:
        if e not in emap or emap[e][0] != SPARSE:
            raise ValueError(f"path edge {e} is not sparse")
        if emap[e][1] < need:
            raise InsufficientLabel(f"path edge {e} needs label {need}, has {emap[e][1]}", e, need)
    inner = set(path[1:-1])
    rest = [r for r in t.edges if r[:2] not in set(path_edges)]
    out = t.replace_edges(rest + [(ends[0], ends[1], DENSE, None)],
                          vertices=[v for v in t.vertices if v not in inner])
    return out.without_isolated()


def _sparse_dense_forest(t: LabeledTemplate) -> bool:
    parent = {v: v for v in t.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, k, _ in t.edges:
        if k == JUMBLED:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def tree_peel(t: LabeledTemplate) -> list[tuple[int, int, Fraction]]:
    """Peel a forest template edge by edge; returns the removal sequence."""
    if t.kinds(JUMBLED):
        raise ValueError("tree peel applies to templates without jumbled edges")
    if not _sparse_dense_forest(t):
        raise ValueError("sparse and dense edges do not form a forest")
    _, steps = remove_all_jumbled(t.replace_edges(_convert(t.edges)))
    return steps


def _subdivision_paths(t: LabeledTemplate) -> list[list[int]]:
    """Candidate sparse paths with internal degree 2 and non-adjacent ends."""
    emap = t.edge_map()
    deg2 = {v for v in t.vertices if len(t.neighbors(v)) == 2
            and all(emap[tuple(sorted((v, w)))][0] == SPARSE for w in t.neighbors(v))}
    found = set()
    for start in t.vertices:
        for first in t.neighbors(start):
            if first not in deg2 or emap[tuple(sorted((start, first)))][0] != SPARSE:
                continue
            path = [start, first]
            while True:
                tail = path[-1]
                if len(path) >= 3 and tuple(sorted((path[0], tail))) not in emap:
                    key = tuple(path) if path[0] < path[-1] else tuple(reversed(path))
                    found.add(key)
                if tail not in deg2:
                    break
                nxt = [w for w in t.neighbors(tail) if w != path[-2]]
                if not nxt or nxt[0] in path:
                    break
                path.append(nxt[0])
    return [list(p) for p in sorted(found, key=lambda p: (-len(p), p))]


# ------------------------------------------------------------ canonical form

def _attr(kind: str, label: Fraction | None) -> tuple[int, int, int]:
    if label is None:
        return (_KIND_CODE[kind], 0, 1)
    return (_KIND_CODE[kind], label.numerator, label.denominator)


def canonical_form(t: LabeledTemplate) -> tuple[tuple, dict[int, int]]:
    """Canonical key and a labelling vertex -> canonical index.

    Colour refinement plus individualisation; a cell whose members are
    pairwise twins (swapping them is an automorphism) is branched on once.
    """
    verts = list(t.vertices)
    attrs = {(u, v): _attr(k, lab) for u, v, k, lab in t.edges}
    nbrs: dict[int, list[tuple[int, tuple]]] = {v: [] for v in verts}
    for (u, v), a in attrs.items():
        nbrs[u].append((v, a))
        nbrs[v].append((u, a))

    def attr_of(u, v):
        return attrs.get((u, v) if u < v else (v, u))

    def refine(colors: dict[int, int]) -> dict[int, int]:
        count = len(set(colors.values()))
        while True:
            sig = {v: (colors[v], tuple(sorted((a, colors[w]) for w, a in nbrs[v]))) for v in verts}
            ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
            new = {v: ranks[sig[v]] for v in verts}
            new_count = len(ranks)
            if new_count == count:
                return new
            colors, count = new, new_count

    def twins(cell: list[int]) -> bool:
        for u, v in itertools.combinations(cell, 2):
            for w in verts:
                if w not in (u, v) and attr_of(u, w) != attr_of(v, w):
                    return False
        return True

    def encode(colors: dict[int, int]) -> tuple:
        edges = tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v]), a)
                             for (u, v), a in attrs.items()))
        return (len(verts), edges, tuple(sorted(colors[c] for c in t.copies)))

    best: list = [None, None]

    def search(colors: dict[int, int]) -> None:
        cells: dict[int, list[int]] = {}
        for v in verts:
            cells.setdefault(colors[v], []).append(v)
        open_cells = sorted(c for c, members in cells.items() if len(members) > 1)
        if not open_cells:
            key = encode(colors)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, dict(colors)
            return
        cell = sorted(cells[open_cells[0]])
        choices = cell[:1] if twins(cell) else cell
        for v in choices:
            split = {w: 2 * colors[w] + 1 for w in verts}
            split[v] = 2 * colors[v]
            search(refine(split))

    initial = {v: (v in t.copies, tuple(sorted(a for _, a in nbrs[v]))) for v in verts}
    ranks = {s: i for i, s in enumerate(sorted(set(initial.values())))}
    search(refine({v: ranks[initial[v]] for v in verts}))
    if best[0] is None:
        return (0, (), ()), {}
    return best[0], best[1]


# ------------------------------------------------------------------ search

class _Search:
    def __init__(self, allow_subdivision: bool, max_vertices: int, node_limit: int):
        self.allow_subdivision = allow_subdivision
        self.max_vertices = max_vertices
        self.node_limit = node_limit
        self.nodes = 0
        self.memo: dict[tuple, tuple[ProofTree, dict[int, int]] | None] = {}
        self.in_progress: set[tuple] = set()

    def solve(self, t: LabeledTemplate) -> tuple[ProofTree | None, bool]:
        """Returns (proof or None, tainted); a failure is tainted when it hit an open ancestor."""
        t = t.without_isolated()
        if t.is_done():
            return ProofTree(t, "dense-done" if t.edges else "empty"), False
        key, labeling = canonical_form(t)
        if key in self.memo:
            stored = self.memo[key]
            if stored is None:
                return None, False
            tree, stored_labeling = stored
            if tree.template == t:
                return tree, False
            inverse = {idx: v for v, idx in stored_labeling.items()}
            mapping = [[v, inverse[labeling[v]]] for v in t.vertices]
            return ProofTree(t, "isomorphic", {"mapping": mapping}, [tree]), False
        if key in self.in_progress:
            return None, True
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise SearchLimitExceeded(f"certify explored more than {self.node_limit} templates")
        self.in_progress.add(key)
        try:
            tree, tainted = self._expand(t)
        finally:
            self.in_progress.discard(key)
        if tree is not None:
            self.memo[key] = (tree, labeling)
        elif not tainted:
            self.memo[key] = None
        return tree, tainted

    def _expand(self, t: LabeledTemplate) -> tuple[ProofTree | None, bool]:
        if t.kinds(JUMBLED):
            return self._remove_chain(t)
        tainted = False

        if _sparse_dense_forest(t):
            try:
                steps = tree_peel(t)
                empty = LabeledTemplate((), ())
                return ProofTree(t, "tree-peel", {"sequence": _steps_json(steps)},
                                 [ProofTree(empty, "empty")]), False
            except InsufficientLabel:
                pass

        for b in t.vertices:
            try:
                child, steps = densify(t, b)
            except (ValueError, DensifyObligationFailed):
                continue
            sub, bad = self.solve(child)
            tainted |= bad
            if sub is not None:
                return ProofTree(t, "densify", {"vertex": b, "obligation": _steps_json(steps)}, [sub]), False

        if self.allow_subdivision:
            for path in _subdivision_paths(t):
                try:
                    child = subdivision_densify(t, path)
                except (ValueError, InsufficientLabel):
                    continue
                sub, bad = self.solve(child)
                tainted |= bad
                if sub is not None:
                    return ProofTree(t, "subdivision-densify", {"path": path}, [sub]), False

        if len(t.vertices) < self.max_vertices:
            for a in t.vertices:
                if a in t.copies or not t.neighbors(a):
                    continue
                minus, doubled = doubling(t, a)
                first, bad = self.solve(doubled)
                tainted |= bad
                if first is None:
                    continue
                second, bad = self.solve(minus)
                tainted |= bad
                if second is None:
                    continue
                return ProofTree(t, "doubling", {"vertex": a, "copy": max(t.vertices) + 1},
                                 [second, first]), False
        return None, tainted

    def _remove_chain(self, t: LabeledTemplate) -> tuple[ProofTree | None, bool]:
        try:
            final, steps = remove_all_jumbled(t)
        except InsufficientLabel:
            return None, False
        sub, tainted = self.solve(final)
        if sub is None:
            return None, tainted
        # one node per removal so that replay checks every step
        nodes = []
        cur = t
        for u, v, need in steps:
            nodes.append((cur, u, v, need))
            cur = remove_jumbled_edge(cur, (u, v))
        tree = sub
        for cur, u, v, need in reversed(nodes):
            tree = ProofTree(cur, "remove-jumbled-edge", {"edge": [u, v], "required": str(need)}, [tree])
        return tree, False


def _steps_json(steps) -> list:
    return [[u, v, str(need)] for u, v, need in steps]


def certify(t: LabeledTemplate, allow_subdivision: bool = False, extra_vertices: int = 2,
            node_limit: int = 200_000) -> ProofTree:
    """Search for a proof tree; raises NoCertificate when the search is exhausted.

    ``allow_subdivision`` enables subdivision densification, which is only
    valid for one-sided (lower bound) counting.
    """
    if len(t.vertices) > 10:
        raise SearchLimitExceeded("certify supports patterns with at most 10 vertices")
    search = _Search(allow_subdivision, len(t.vertices) + extra_vertices, node_limit)
    tree, _ = search.solve(t)
    if tree is None:
        raise NoCertificate("no sequence of moves reduces the template to dense or empty patterns")
    return tree


def verify_proof(tree: ProofTree, allow_subdivision: bool = False) -> bool:
    """Replay every move independently; raises ValueError on the first bad step."""
    try:
        return _verify(tree, allow_subdivision)
    except (InsufficientLabel, DensifyObligationFailed) as exc:
        raise ValueError(f"invalid move: {exc}") from None


def _verify(tree: ProofTree, allow_subdivision: bool) -> bool:
    t = tree.template
    move, params, kids = tree.move, tree.params, tree.children
    if move in ("empty", "dense-done"):
        if kids or not t.is_done():
            raise ValueError(f"leaf {move} is not an empty or all-dense template")
        return True
    if move == "remove-jumbled-edge":
        expected = [remove_jumbled_edge(t, tuple(params["edge"]))]
    elif move == "tree-peel":
        tree_peel(t)
        expected = [LabeledTemplate((), ())]
    elif move == "densify":
        expected = [densify(t, params["vertex"])[0]]
    elif move == "subdivision-densify":
        if not allow_subdivision:
            raise ValueError("subdivision densify is not allowed in this mode")
        expected = [subdivision_densify(t, params["path"])]
    elif move == "doubling":
        if params["vertex"] in t.copies:
            raise ValueError("copies may not be doubled")
        minus, doubled = doubling(t, params["vertex"])
        expected = [minus, doubled]
    elif move == "isomorphic":
        mapping = {int(a): int(b) for a, b in params["mapping"]}
        if len(kids) != 1 or t.relabel(mapping) != kids[0].template:
            raise ValueError("isomorphism mapping does not match the referenced template")
        return _verify(kids[0], allow_subdivision)
    else:
        raise ValueError(f"unknown move {move!r}")
    if len(expected) != len(kids):
        raise ValueError(f"{move}: expected {len(expected)} children, found {len(kids)}")
    for want, kid in zip(expected, kids):
        if want.without_isolated() != kid.template.without_isolated():
            raise ValueError(f"{move}: child template does not match the replayed move")
        _verify(kid, allow_subdivision)
    return True


# ------------------------------------------------------------- verdicts

@dataclass
class ExponentVerdict:
    mode: str
    uniform_k: Fraction
    closed_form: Fraction
    search_k: Fraction | None = None
    certificate: ProofTree | str | None = None
    per_edge: dict | None = None
    known_value: Fraction | None = None
    candidates: dict = field(default_factory=dict)

    def matches_known(self) -> bool | None:
        return None if self.known_value is None else self.uniform_k == self.known_value

    def to_dict(self) -> dict:
        cert = self.certificate.to_dict() if isinstance(self.certificate, ProofTree) else self.certificate
        return {
            "mode": self.mode,
            "uniform_k": str(self.uniform_k),
            "closed_form": str(self.closed_form),
            "search_k": None if self.search_k is None else str(self.search_k),
            "known_value": None if self.known_value is None else str(self.known_value),
            "matches_known": self.matches_known(),
            "candidates": {k: str(v) for k, v in self.candidates.items()},
            "certificate": cert,
        }


def _certifies(h: SimpleGraph, k: Fraction, allow_subdivision: bool) -> ProofTree | None:
    try:
        return certify(LabeledTemplate.from_graph(h, k), allow_subdivision=allow_subdivision)
    except NoCertificate:
        return None


def _cycle_length(h: SimpleGraph) -> int | None:
    if h.m == h.n and h.n >= 3 and all(d == 2 for d in h.degrees()):
        # connected 2-regular graph is a single cycle
        return h.n if _connected(h) else None
    return None


def _connected(h: SimpleGraph) -> bool:
    if h.n == 0:
        return True
    adj = h.adjacency_lists()
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == h.n


def cycle_one_sided_exponent(length: int) -> Fraction:
    """1 + 1/(2 floor((l - 3)/2)) for l >= 5, and 2 for C_4."""
    if length == 4:
        return Fraction(2)
    if length < 5:
        raise ValueError("cycle formula needs l >= 4")
    return 1 + Fraction(1, 2 * ((length - 3) // 2))


def minimal_uniform_exponent(h: SimpleGraph, mode: str = "two_sided",
                             known_value: Fraction | None = None) -> ExponentVerdict:
    """Smallest uniform exponent certified for H.

    two_sided: min of the closed form and the smallest half-integer label in
    [1, closed form] that ``certify`` accepts on the all-sparse labelling
    (binary search).  one_sided: min of the two-sided verdict, d2 + 3,
    d2 + 2 for triangle-free H and the cycle values.
    """
    mode = mode.replace("-", "_")
    if mode not in ("two_sided", "one_sided"):
        raise ValueError(f"unknown mode {mode!r}")
    if h.n > 10:
        raise SearchLimitExceeded("minimal_uniform_exponent supports v(H) <= 10")
    closed = two_sided_exponent_closed_form(h)
    if h.m == 0:
        return ExponentVerdict(mode, Fraction(1), closed, None, "no-edges", known_value=known_value)

    hi = int(2 * closed)
    best_tree = _certifies(h, Fraction(hi, 2), False)
    search_k = None
    if best_tree is not None:
        lo = 2
        while lo < hi:
            mid = (lo + hi) // 2
            tree = _certifies(h, Fraction(mid, 2), False)
            if tree is not None:
                hi, best_tree = mid, tree
            else:
                lo = mid + 1
        search_k = Fraction(hi, 2)
    if search_k is not None and search_k <= closed:
        two = ExponentVerdict("two_sided", search_k, closed, search_k, best_tree)
    else:
        two = ExponentVerdict("two_sided", closed, closed, search_k, "closed-form")
    two.candidates = {"closed_form": closed}
    if search_k is not None:
        two.candidates["search"] = search_k
    if mode == "two_sided":
        two.known_value = known_value
        return two

    d2, _ = two_degeneracy(h)
    cands: list[tuple[Fraction, str]] = [(two.uniform_k, "two_sided"), (d2 + 3, "d2+3")]
    if is_triangle_free(h):
        cands.append((d2 + 2, "d2+2 (triangle-free)"))
    length = _cycle_length(h)
    if length is not None and length >= 4:
        cands.append((cycle_one_sided_exponent(length), "cycle"))
    value, name = min(cands, key=lambda c: c[0])
    cert = two.certificate if name == "two_sided" else name
    return ExponentVerdict("one_sided", value, closed, search_k, cert, known_value=known_value,
                           candidates={n: v for v, n in cands})


def k_m_constant(m: int) -> Fraction:
    """k_3 = 3, k_4 = 2, 1 + 1/(m-3) for odd m >= 5, 1 + 1/(m-4) for even m >= 6."""
    if m < 3:
        raise ValueError("m must be at least 3")
    if m == 3:
        return Fraction(3)
    if m == 4:
        return Fraction(2)
    return 1 + Fraction(1, m - 3 if m % 2 else m - 4)


def known_exponent(name: str, mode: str = "two_sided") -> Fraction | None:
    """Published uniform exponent for a named pattern family, or None when none is listed."""
    from .graph_core import named_graph

    mode = mode.replace("-", "_")
    key = name.strip().lower()
    h = named_graph(key)
    if key.startswith("k") and "," not in key:
        return Fraction(h.n)
    if key.startswith("c"):
        if mode == "two_sided":
            return Fraction(2) if h.n >= 4 else Fraction(3)
        return cycle_one_sided_exponent(h.n) if h.n >= 4 else Fraction(3)
    if key.startswith("k") and key.count(",") == 1:
        s, t = sorted(int(x) for x in key[1:].split(","))
        if mode == "two_sided":
            if s == 1:
                return Fraction(t + 1, 2)
            if s == 2:
                return Fraction(t + 2, 2)
            return Fraction(s + t + 1, 2)
        if s == 2:
            return Fraction(5, 2) if t >= 3 else Fraction(2)
        if s >= 3:
            return Fraction(s + 3, 2)
        return None
    if key == "k1,2,2" and mode == "two_sided":
        return Fraction(4)
    if key[0] in "ps" and key[1:].isdigit() and mode == "two_sided":
        return Fraction(h.max_degree() + 1, 2)
    return None


__all__ = [
    "LabeledTemplate", "ProofTree", "ExponentVerdict", "SPARSE", "DENSE", "JUMBLED",
    "remove_jumbled_edge", "remove_all_jumbled", "doubling", "densify", "subdivision_densify",
    "tree_peel", "certify", "verify_proof", "canonical_form", "minimal_uniform_exponent",
    "k_m_constant", "cycle_one_sided_exponent", "known_exponent", "subdivision_threshold",
]

