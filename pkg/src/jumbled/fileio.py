"""File formats: graph edge lists, weighted hosts, patterns, labels, reports.

Graph text format::

    # comment
    <n> <m>
    u v        (m lines, 0 <= u < v < n, sorted lexicographically)

Host JSON: ``{"n": N, "parts": [[...], ...], "weights": [[i, j, w], ...]}``
(``"matrix": [[...]]`` is accepted in place of the triples).  Pattern JSON:
``{"name": "k4"}`` or ``{"n": 4, "edges": [[a, b], ...]}``; template edges
may carry ``[a, b, kind, q, p]`` and an optional ``"part_of"`` list.
Labels JSON: ``{"labels": [[u, v, "3/2"], ...]}`` with an optional fourth
entry giving the edge kind (default sparse).  Colouring text: lines
``u v c`` with c in {0, 1}.
"""

from __future__ import annotations

import json
import math
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .counting import Template, WeightedHost
from .errors import IoError, ParseError
from .graph_core import SimpleGraph, named_graph
from .planner import SPARSE, LabeledTemplate

REPORT_SCHEMA = "jumbled.report/1"
EXCLUDED_FROM_COMPARISON = ("timestamp",)


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write_text(path, text: str) -> None:
    try:
        p = Path(path)
        if p.parent and not p.parent.exists():
            p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


# ------------------------------------------------------------------ graphs

def _int_tokens(tokens: list[str], path, lineno: int) -> list[int]:
    out = []
    for tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"expected an integer, found {tok!r}", str(path), lineno) from None
    return out


def parse_graph(text: str, path: str = "<string>") -> SimpleGraph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 2:
                raise ParseError("header must be '<n> <m>'", path, lineno)
            n, m = _int_tokens(tokens, path, lineno)
            if n < 0 or m < 0:
                raise ParseError("n and m must be non-negative", path, lineno)
            header = (n, m, lineno)
            continue
        if len(tokens) != 2:
            raise ParseError(f"edge line needs 2 integers, found {len(tokens)} tokens", path, lineno)
        u, v = _int_tokens(tokens, path, lineno)
        n = header[0]
        if u == v:
            raise ParseError(f"loop at vertex {u} (u = v)", path, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint outside [0, {n})", path, lineno)
        if u > v:
            raise ParseError(f"edge must be written with u < v, got {u} {v}", path, lineno)
        key = (u, v)
        if key in seen:
            raise ParseError(f"duplicate edge {key}, first seen on line {seen[key]}", path, lineno)
        if edges and key < edges[-1]:
            raise ParseError(f"edges must be sorted; {key} follows {edges[-1]}", path, lineno)
        seen[key] = lineno
        edges.append(key)
    if header is None:
        raise ParseError("missing '<n> <m>' header", path, None)
    n, m, hline = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, file has {len(edges)}", path, hline)
    return SimpleGraph(n, edges)


def format_graph(g: SimpleGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def load_graph(path) -> SimpleGraph:
    return parse_graph(_read_text(path), str(path))


def save_graph(g: SimpleGraph, path) -> None:
    _write_text(path, format_graph(g))


# ------------------------------------------------------------------- JSON

def _load_json(path) -> Any:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", str(path), exc.lineno) from None


def _require(data: Mapping, key: str, path) -> Any:
    if not isinstance(data, Mapping) or key not in data:
        raise ParseError(f"missing field {key!r}", str(path), None)
    return data[key]


def host_from_dict(data: Mapping, path: str = "<host>") -> WeightedHost:
    n = _require(data, "n", path)
    if not isinstance(n, int) or n < 0:
        raise ParseError("n must be a non-negative integer", path, None)
    if "matrix" in data:
        try:
            w = np.array(data["matrix"], dtype=np.float64)
        except (TypeError, ValueError):
            raise ParseError("matrix must be numeric", path, None) from None
        if w.shape != (n, n):
            raise ParseError(f"matrix must be {n}x{n}", path, None)
    else:
        w = np.zeros((n, n))
        triples = data["weights"] if "weights" in data else _require(data, "edges", path)
        for row in triples:
            if not isinstance(row, (list, tuple)) or len(row) != 3:
                raise ParseError(f"edge entry {row!r} must be [u, v, w]", path, None)
            u, v, x = row
            if not (isinstance(u, int) and isinstance(v, int)) or not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError(f"bad endpoints in edge entry {row!r}", path, None)
            w[u, v] = w[v, u] = float(x)
    if w.size and (not np.all(np.isfinite(w)) or w.min() < 0.0 or w.max() > 1.0):
        raise ParseError("weight out of [0,1]", path, None)
    if not np.array_equal(w, w.T):
        raise ParseError("weights must be symmetric", path, None)
    parts = data.get("parts", [list(range(n))])
    try:
        return WeightedHost(w, [np.asarray(p, dtype=np.int64) for p in parts])
    except ValueError as exc:
        raise ParseError(str(exc), path, None) from None


def host_to_dict(host: WeightedHost) -> dict:
    n = host.size
    iu, ju = np.nonzero(np.triu(host.W, 1))
    return {
        "n": n,
        "parts": [p.tolist() for p in host.parts],
        "weights": [[int(i), int(j), float(host.W[i, j])] for i, j in zip(iu, ju)],
    }


def load_host(path) -> WeightedHost:
    return host_from_dict(_load_json(path), str(path))


def save_host(host: WeightedHost, path) -> None:
    _write_text(path, json.dumps(host_to_dict(host), indent=1) + "\n")


def pattern_from_dict(data: Mapping, path: str = "<pattern>") -> SimpleGraph:
    if isinstance(data, Mapping) and "name" in data:
        try:
            return named_graph(str(data["name"]))
        except ValueError as exc:
            raise ParseError(str(exc), path, None) from None
    n = _require(data, "n", path)
    edges = _require(data, "edges", path)
    try:
        return SimpleGraph(int(n), [tuple(e[:2]) for e in edges])
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad pattern: {exc}", path, None) from None


def template_from_dict(data: Mapping, path: str = "<pattern>") -> Template:
    """Pattern JSON plus optional per-edge ``[a, b, kind, q, p]`` and ``part_of``."""
    h = pattern_from_dict(data, path)
    kind, q, p = {}, {}, {}
    for e in data.get("edges", []) if isinstance(data, Mapping) else []:
        if len(e) == 5:
            a, b, k, qe, pe = e
            key = (min(a, b), max(a, b))
            kind[key], q[key], p[key] = k, float(qe), float(pe)
        elif len(e) != 2:
            raise ParseError(f"template edge {e!r} must be [a, b] or [a, b, kind, q, p]", path, None)
    part_of = data.get("part_of") if isinstance(data, Mapping) else None
    try:
        return Template(h, tuple(part_of) if part_of is not None else tuple(range(h.n)), kind, q, p)
    except ValueError as exc:
        raise ParseError(str(exc), path, None) from None


def load_template(path) -> Template:
    return template_from_dict(_load_json(path), str(path))


def load_pattern(path) -> SimpleGraph:
    return pattern_from_dict(_load_json(path), str(path))


def resolve_pattern(spec: str) -> SimpleGraph:
    """A pattern name such as ``k4`` or a path to a pattern JSON file."""
    if os.path.exists(spec):
        return load_pattern(spec)
    try:
        return named_graph(spec)
    except ValueError as exc:
        raise ParseError(str(exc), None, None) from None


def labels_from_dict(data: Mapping | Sequence, pattern: SimpleGraph, path: str = "<labels>") -> LabeledTemplate:
    rows = data["labels"] if isinstance(data, Mapping) and "labels" in data else data
    if not isinstance(rows, (list, tuple)):
        raise ParseError("labels must be a list of [u, v, label] entries", path, None)
    edges = []
    given = set()
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) not in (3, 4):
            raise ParseError(f"label entry {row!r} must be [u, v, label] or [u, v, label, kind]", path, None)
        u, v, lab = row[:3]
        kind = row[3] if len(row) == 4 else SPARSE
        key = (min(u, v), max(u, v))
        if not pattern.has_edge(*key):
            raise ParseError(f"labelled pair {key} is not an edge of the pattern", path, None)
        try:
            value = None if lab is None else Fraction(str(lab))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"label {lab!r} is not a rational number", path, None) from None
        edges.append((u, v, kind, value))
        given.add(key)
    missing = [e for e in pattern.edge_list() if e not in given]
    if missing:
        raise ParseError(f"edge {missing[0]} has no label", path, None)
    try:
        return LabeledTemplate.make(range(pattern.n), edges)
    except ValueError as exc:
        raise ParseError(str(exc), path, None) from None


def load_labels(path, pattern: SimpleGraph) -> LabeledTemplate:
    return labels_from_dict(_load_json(path), pattern, str(path))


def parse_coloring(text: str, g: SimpleGraph, path: str = "<coloring>") -> dict[tuple[int, int], int]:
    colors: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError("colouring line must be 'u v c'", path, lineno)
        u, v, c = _int_tokens(tokens, path, lineno)
        if c not in (0, 1):
            raise ParseError(f"colour must be 0 or 1, got {c}", path, lineno)
        if not g.has_edge(u, v):
            raise ParseError(f"({u}, {v}) is not an edge of the graph", path, lineno)
        colors[(min(u, v), max(u, v))] = c
    return colors


def load_coloring(path, g: SimpleGraph) -> dict[tuple[int, int], int]:
    return parse_coloring(_read_text(path), g, str(path))


def load_sets(path) -> list[list[int]]:
    data = _load_json(path)
    rows = data["sets"] if isinstance(data, Mapping) and "sets" in data else data
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("sets file must hold a list of integer lists", str(path), None)
    try:
        return [[int(x) for x in r] for r in rows]
    except (TypeError, ValueError):
        raise ParseError("set members must be integers", str(path), None) from None


# ----------------------------------------------------------------- reports

def _jsonable(x: Any) -> Any:
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if math.isfinite(v) else str(v)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, Fraction):
        return str(x)
    return x


def report_json(report: Mapping) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"


def save_report(report: Mapping, path) -> None:
    _write_text(path, report_json(report))


def load_report(path) -> dict:
    data = _load_json(path)
    if not isinstance(data, Mapping) or data.get("schema") != REPORT_SCHEMA:
        raise ParseError(f"not a report (schema tag {REPORT_SCHEMA!r} missing)", str(path), None)
    return dict(data)


def comparable_report(report: Mapping) -> str:
    """Serialized report without the fields excluded from determinism checks."""
    return report_json({k: v for k, v in report.items() if k not in EXCLUDED_FROM_COMPARISON})


def format_table(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Column-aligned TSV: tab separated, each cell padded to its column width."""
    cells = [[str(c) for c in columns]] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    return "\n".join("\t".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(" ") for r in cells) + "\n"


def _cell(v: Any) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def save_table(columns: Sequence[str], rows: Iterable[Sequence[Any]], path) -> None:
    _write_text(path, format_table(columns, rows))
