"""Command-line entry point.

Exit codes: 0 success, 1 threshold failure (or no certificate), 2 usage or
parse error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions, counting, fileio, graph_core, planner, pseudorandom
from .errors import (BudgetExceeded, IoError, JumbledError, NoCertificate, ParseError,
                     SearchLimitExceeded, SizeLimitExceeded)
from .experiments import EXPERIMENTS, ExperimentConfig, run_experiment

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _emit(data, out: str | None = None) -> None:
    text = fileio.report_json(data)
    if out:
        fileio._write_text(out, text)
    else:
        sys.stdout.write(text)


# -------------------------------------------------------------------- gen

def _cmd_gen(args) -> int:
    kind = args.kind
    if kind == "paley":
        g = constructions.paley(args.q)
    elif kind == "gnp":
        g = constructions.random_graph(args.n, args.p, args.seed)
    elif kind == "cayley":
        members = [int(x) for x in args.set.split(",") if x.strip()]
        g = constructions.cayley(constructions.CayleySpec(args.n, members))
    elif kind == "regular":
        g = constructions.random_regular(args.n, args.d, args.seed)
    elif kind == "multipartite":
        g = constructions.complete_multipartite([int(x) for x in args.sizes.split(",")])
    else:
        g = graph_core.named_graph(args.name)
    if args.subgraph is not None:
        g = constructions.random_subgraph(g, args.subgraph, args.seed)
    if args.plant:
        g = constructions.plant_dominating_vertices(g, args.plant)
    text = fileio.format_graph(g)
    if args.out:
        fileio._write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- analyze

def _pattern_summary(h: graph_core.SimpleGraph) -> dict:
    d, order = graph_core.degeneracy(h)
    d2, order2 = graph_core.two_degeneracy(h)
    stats = graph_core.line_stats(h)
    return {
        "n": h.n, "m": h.m, "max_degree": h.max_degree(), "degeneracy": d, "degeneracy_order": list(order),
        "two_degeneracy": d2, "two_degeneracy_order": list(order2),
        # the inequality d/2 <= d2 is reported, not enforced: K_{3,3} already breaks it
        "d2_below_half_degeneracy": bool(2 * d2 < d),
        "line_max_degree": stats.max_degree, "line_degeneracy": stats.degeneracy,
        "two_sided_closed_form": graph_core.two_sided_exponent_closed_form(h),
        "s": graph_core.s_parameter(h), "chromatic_number": graph_core.chromatic_number(h),
        "triangle_free": graph_core.is_triangle_free(h), "forest": graph_core.is_forest(h),
    }


def _report(kind: str, params: dict, statistics: dict, certificates: dict | None = None) -> dict:
    return {"kind": kind, "params": params, "statistics": statistics, "certificates": certificates or {}}


def _cmd_analyze(args) -> int:
    what = args.analyze_cmd
    if what == "pattern":
        h = fileio.resolve_pattern(args.H)
        _emit(_report("pattern", {"H": args.H}, _pattern_summary(h)), args.out)
        return EXIT_OK
    if what == "jumbled":
        g = fileio.load_graph(args.graph)
        rep = pseudorandom.spectral_jumbledness(g, method=args.method, c=args.c)
        p = args.p if args.p is not None else rep.p
        stats = {"n": g.n, "m": g.m, "p": p}
        certs = {}
        if args.exact or not args.spectral:
            if g.n <= pseudorandom.JUMBLED_EXACT_MAX_N:
                stats["beta_exact"] = pseudorandom.jumbledness_exact(g, p)
            elif args.exact:
                raise SizeLimitExceeded(f"exact jumbledness needs n <= {pseudorandom.JUMBLED_EXACT_MAX_N}")
        if args.spectral or not args.exact:
            certs["spectral"] = rep.as_dict()
        _emit(_report("jumbled", {"graph": args.graph, "p": p, "c": args.c}, stats, certs), args.out)
        return EXIT_OK
    if what == "disc":
        host = fileio.load_host(args.host)
        i, j = (int(x) for x in args.pair.split(","))
        w = host.block(i, j)
        q = args.q if args.q is not None else float(w.mean())
        pair = pseudorandom.PairView(w, q, args.p)
        stats, certs = {"rows": w.shape[0], "cols": w.shape[1], "density": pair.density()}, {}
        if sum(w.shape) <= pseudorandom.DISC_EXACT_MAX:
            key = "disc_ge_epsilon" if args.one_sided else "disc_epsilon"
            fn = pseudorandom.disc_ge_epsilon_exact if args.one_sided else pseudorandom.disc_epsilon_exact
            stats[key] = fn(pair)
        certs["disc_epsilon_upper"] = pseudorandom.disc_epsilon_upper(pair)
        _emit(_report("disc", {"host": args.host, "pair": [i, j], "q": q, "p": args.p,
                               "one_sided": args.one_sided}, stats, certs), args.out)
        return EXIT_OK
    # quasi
    g = fileio.load_graph(args.graph)
    patterns = [x.strip() for x in args.H.split(",") if x.strip()]
    stats = pseudorandom.quasirandom_statistics(g, args.q, args.p, sample_budget=args.budget, seed=args.seed,
                                                patterns=patterns)
    certs = {"c4_trace": pseudorandom.labeled_c4_trace(g), "c4_codegree": pseudorandom.codegree_sum(g)}
    _emit(_report("quasi", {"graph": args.graph, "q": args.q, "p": args.p, "H": patterns,
                            "budget": args.budget, "seed": args.seed}, stats, certs), args.out)
    return EXIT_OK


# ------------------------------------------------------------------ count

def _cmd_count(args) -> int:
    what = args.count_cmd
    if what == "hom":
        host = fileio.load_host(args.host)
        if Path(args.pattern).exists():
            tpl = fileio.load_template(args.pattern)
        else:
            tpl = counting.Template.build(fileio.resolve_pattern(args.pattern))
        stats = {"hom_density": counting.hom_density(host, tpl), "q_product": counting.q_product(tpl)}
        _emit(_report("hom", {"host": args.host, "pattern": args.pattern}, stats), args.out)
    elif what == "labeled":
        g = fileio.load_graph(args.graph)
        h = fileio.resolve_pattern(args.H)
        _emit(_report("labeled", {"graph": args.graph, "H": args.H},
                      {"labeled_copies": counting.labeled_copies(g, h)}), args.out)
    elif what == "goodman":
        g = fileio.load_graph(args.graph)
        colors = fileio.load_coloring(args.coloring, g)
        mono = counting.monochromatic_triangles(g, colors)
        bound = counting.goodman_bound(args.p, args.beta, g.n)
        stats = {"monochromatic_triangles": mono, "triangles": counting.triangle_count(g),
                 "bound": bound.value, "hypothesis_ok": bound.hypothesis_ok}
        _emit(_report("goodman", {"graph": args.graph, "p": args.p, "beta": args.beta}, stats), args.out)
        return EXIT_OK if mono >= bound.value else EXIT_FAIL
    else:
        sets = fileio.load_sets(args.sets)
        if args.m is not None and len(sets) != args.m:
            raise ParseError(f"--m {args.m} but the sets file holds {len(sets)} sets", args.sets, None)
        graph, labels = counting.group_removal_graph(args.n, sets)
        cycles = counting.part_respecting_cycle_count(graph, labels, len(sets))
        solutions = counting.group_solution_count(args.n, sets)
        betas = [pseudorandom.character_sum_max(args.n, s) for s in sets]
        _emit(_report("group", {"n": args.n, "m": len(sets)},
                      {"cycles": cycles, "solutions": solutions, "identity": cycles == args.n * solutions},
                      {"character_sum_beta": betas}), args.out)
        return EXIT_OK if cycles == args.n * solutions else EXIT_FAIL
    return EXIT_OK


# ------------------------------------------------------------------- plan

def _cmd_plan(args) -> int:
    one_sided = getattr(args, "mode", "two-sided").replace("_", "-") == "one-sided"
    if args.plan_cmd == "certify":
        h = fileio.resolve_pattern(args.pattern)
        if args.labels:
            t = fileio.load_labels(args.labels, h)
        else:
            t = planner.LabeledTemplate.from_graph(h, Fraction(args.k))
        try:
            tree = planner.certify(t, allow_subdivision=one_sided)
        except NoCertificate as exc:
            _emit({"certified": False, "reason": str(exc)})
            return EXIT_FAIL
        planner.verify_proof(tree, allow_subdivision=one_sided)
        if args.out:
            fileio._write_text(args.out, json.dumps(tree.to_dict(), indent=1) + "\n")
        _emit({"certified": True, "nodes": tree.size(), "proof": None if args.out else tree.to_dict()})
        return EXIT_OK
    if args.plan_cmd == "minimal":
        h = fileio.resolve_pattern(args.H)
        mode = args.mode.replace("-", "_")
        target = None
        try:
            target = planner.known_exponent(args.H, mode)
        except ValueError:
            pass
        verdict = planner.minimal_uniform_exponent(h, mode, known_value=target)
        data = verdict.to_dict()
        if not args.full:
            data.pop("certificate", None)
        _emit(data, args.out)
        return EXIT_OK
    # proof
    h = fileio.resolve_pattern(args.H)
    if args.k is not None:
        k = Fraction(args.k)
    else:
        verdict = planner.minimal_uniform_exponent(h, "two_sided")
        if verdict.search_k is None:
            _emit({"certified": False, "reason": "search found no uniform label up to the closed form"})
            return EXIT_FAIL
        k = verdict.search_k
    try:
        tree = planner.certify(planner.LabeledTemplate.from_graph(h, k), allow_subdivision=one_sided)
    except NoCertificate as exc:
        _emit({"certified": False, "k": str(k), "reason": str(exc)})
        return EXIT_FAIL
    _emit(tree.to_dict(), args.out)
    return EXIT_OK


# ------------------------------------------------------------- experiment

def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig.from_file(args.config)
    if cfg.name != args.name:
        raise ParseError(f"config describes experiment {cfg.name!r}, not {args.name!r}", args.config, None)
    report = run_experiment(cfg, args.out)
    data = report.to_dict()
    if args.out is None and cfg.output_path() is None:
        sys.stdout.write(fileio.report_json(data))
    for t in report.thresholds:
        status = "skip" if t["passed"] is None else ("PASS" if t["passed"] else "FAIL")
        print(f"{status} {t['criterion']} {t['id']}: {t['value']} {t['comparison']} {t['limit']}",
              file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------- formats

def _guess_kind(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".ini", ".cfg", ".conf"):
        return "config"
    if suffix != ".json":
        return "graph"
    data = fileio._load_json(path)
    if isinstance(data, dict) and data.get("schema") == fileio.REPORT_SCHEMA:
        return "report"
    if isinstance(data, dict) and ("matrix" in data or "parts" in data):
        return "host"
    if isinstance(data, dict) and "labels" in data:
        return "labels"
    return "pattern"


def _cmd_formats(args) -> int:
    status = EXIT_OK
    for path in args.files:
        kind = args.kind or _guess_kind(path)
        try:
            if kind == "graph":
                fileio.load_graph(path)
            elif kind == "host":
                fileio.load_host(path)
            elif kind == "pattern":
                fileio.load_pattern(path)
            elif kind == "labels":
                if not args.pattern:
                    raise _UsageError("checking labels needs --pattern")
                fileio.load_labels(path, fileio.resolve_pattern(args.pattern))
            elif kind == "config":
                ExperimentConfig.from_file(path)
            elif kind == "report":
                fileio.load_report(path)
            print(f"ok {kind} {path}")
        except (ParseError, IoError) as exc:
            print(f"error {kind} {exc}", file=sys.stderr)
            status = EXIT_USAGE
    return status


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="jumbled", description="Jumbled graphs: generators, counting, exponent planning.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a graph file")
    g.add_argument("kind", choices=["paley", "gnp", "cayley", "regular", "multipartite", "named"])
    g.add_argument("--q", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--d", type=int)
    g.add_argument("--set", help="comma-separated connection set")
    g.add_argument("--sizes", help="comma-separated part sizes")
    g.add_argument("--name", help="pattern name such as k4 or c5")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--subgraph", type=float, help="keep each edge with this probability")
    g.add_argument("--plant", type=int, default=0, help="dominating vertices to plant")
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen)

    a = sub.add_parser("analyze", help="pseudorandomness of a graph or pair, parameters of a pattern")
    asub = a.add_subparsers(dest="analyze_cmd", required=True, parser_class=_Parser)
    aj = asub.add_parser("jumbled")
    aj.add_argument("--graph", required=True)
    aj.add_argument("--p", type=float)
    aj.add_argument("--c", type=float, help="constant for the certified exponent beta <= c p^k n")
    aj.add_argument("--exact", action="store_true")
    aj.add_argument("--spectral", action="store_true")
    aj.add_argument("--method", default="auto", choices=["auto", "jacobi", "lapack"])
    ad = asub.add_parser("disc")
    ad.add_argument("--host", required=True)
    ad.add_argument("--pair", default="0,1", help="two part indices")
    ad.add_argument("--q", type=float)
    ad.add_argument("--p", type=float, default=1.0)
    ad.add_argument("--one-sided", action="store_true")
    aq = asub.add_parser("quasi")
    aq.add_argument("--graph", required=True)
    aq.add_argument("--q", type=float, required=True)
    aq.add_argument("--p", type=float, required=True)
    aq.add_argument("--H", default="k3,c4")
    aq.add_argument("--budget", type=int, default=10_000)
    aq.add_argument("--seed", type=int, default=0)
    ap_ = asub.add_parser("pattern")
    ap_.add_argument("--H", required=True)
    for sp in (aj, ad, aq, ap_):
        sp.add_argument("--out")
    a.set_defaults(func=_cmd_analyze)

    c = sub.add_parser("count", help="homomorphism densities and subgraph counts")
    csub = c.add_subparsers(dest="count_cmd", required=True, parser_class=_Parser)
    ch = csub.add_parser("hom")
    ch.add_argument("--host", required=True)
    ch.add_argument("--pattern", required=True, help="pattern JSON or name")
    cl = csub.add_parser("labeled")
    cl.add_argument("--graph", required=True)
    cl.add_argument("--H", required=True)
    cg = csub.add_parser("goodman")
    cg.add_argument("--graph", required=True)
    cg.add_argument("--coloring", required=True)
    cg.add_argument("--p", type=float, required=True)
    cg.add_argument("--beta", type=float, required=True)
    cr = csub.add_parser("group")
    cr.add_argument("--n", type=int, required=True)
    cr.add_argument("--sets", required=True)
    cr.add_argument("--m", type=int)
    for sp in (ch, cl, cg, cr):
        sp.add_argument("--out")
    c.set_defaults(func=_cmd_count)

    p = sub.add_parser("plan", help="exponent planning")
    psub = p.add_subparsers(dest="plan_cmd", required=True, parser_class=_Parser)
    pc = psub.add_parser("certify")
    pc.add_argument("--pattern", required=True)
    pc.add_argument("--labels")
    pc.add_argument("--k", default="1", help="uniform label when no labels file is given")
    pc.add_argument("--mode", default="two-sided", choices=["two-sided", "one-sided"])
    pc.add_argument("--out")
    pm = psub.add_parser("minimal")
    pm.add_argument("--H", required=True)
    pm.add_argument("--mode", default="two-sided", choices=["two-sided", "one-sided"])
    pm.add_argument("--full", action="store_true", help="include the proof tree")
    pm.add_argument("--out")
    pp = psub.add_parser("proof")
    pp.add_argument("--H", required=True)
    pp.add_argument("--k")
    pp.add_argument("--mode", default="two-sided", choices=["two-sided", "one-sided"])
    pp.add_argument("--out")
    p.set_defaults(func=_cmd_plan)

    e = sub.add_parser("experiment", help="run a configured experiment")
    esub = e.add_subparsers(dest="exp_cmd", required=True, parser_class=_Parser)
    er = esub.add_parser("run")
    er.add_argument("name", choices=sorted(EXPERIMENTS))
    er.add_argument("--config", required=True)
    er.add_argument("--out")
    e.set_defaults(func=_cmd_experiment)

    f = sub.add_parser("formats", help="validate input files")
    fsub = f.add_subparsers(dest="fmt_cmd", required=True, parser_class=_Parser)
    fc = fsub.add_parser("check")
    fc.add_argument("files", nargs="+")
    fc.add_argument("--kind", choices=["graph", "host", "pattern", "labels", "config", "report"])
    fc.add_argument("--pattern", help="pattern for labels files")
    f.set_defaults(func=_cmd_formats)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, IoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SearchLimitExceeded, SizeLimitExceeded, BudgetExceeded) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except NoCertificate as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (JumbledError, ValueError, TypeError) as exc:
        # invalid inputs such as a bad modulus or an asymmetric connection set
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
