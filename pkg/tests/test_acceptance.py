"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Oracles are independent of the code paths under test (full enumeration,
closed forms, or the defining formula); see the unit tests for smaller
cross-checks of each oracle.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from jumbled import rng
from jumbled.constructions import (CayleySpec, paley, quadratic_residues, random_graph,
                                   random_regular)
from jumbled.counting import (Template, WeightedHost, centered_c4_density, goodman_bound,
                              group_removal_graph, group_solution_count, hom_density,
                              hom_density_bruteforce, induced_density, induced_density_bruteforce,
                              labeled_copies, monochromatic_triangles, part_respecting_cycle_count,
                              triangle_count)
from jumbled.experiments import ExperimentConfig, random_edge_coloring, run_experiment
from jumbled.fileio import comparable_report, load_report, report_json
from jumbled.errors import NoCertificate
from jumbled.graph_core import (complete_bipartite, complete_graph, cycle_graph, named_graph,
                                two_degeneracy)
from jumbled.planner import (SPARSE, LabeledTemplate, certify, cycle_one_sided_exponent,
                             minimal_uniform_exponent, verify_proof)
from jumbled.pseudorandom import (PairView, character_sum_beta, codegree_sum,
                                  disc_epsilon_alternating, disc_epsilon_exact,
                                  disc_epsilon_upper, disc_ge_epsilon_exact, jumbledness_exact,
                                  labeled_c4_trace, spectral_jumbledness)

F = Fraction
CONFIGS = Path(__file__).parent / "configs"


def _mismatches(expected, mode):
    bad = []
    for name, want in expected.items():
        got = minimal_uniform_exponent(named_graph(name), mode).uniform_k
        if got != want:
            bad.append(f"{name}: got {got}, want {want}")
    return bad


def test_criterion_01_two_sided_exponents(verdict):
    expected = {f"k{t}": F(t) for t in (3, 4, 5)}
    expected.update({f"c{l}": F(2) for l in range(4, 9)})
    expected.update({f"k2,{t}": F(t + 2, 2) for t in (3, 4, 5)})
    expected.update({f"k{s},{t}": F(s + t + 1, 2) for s in (3, 4, 5) for t in range(s, 6)})
    expected.update({f"s{d}": F(d + 1, 2) for d in (3, 4, 5)})
    expected.update({f"p{v}": F(3, 2) for v in (4, 5, 6)})
    expected["k1,2,2"] = F(4)
    start = time.perf_counter()
    bad = _mismatches(expected, "two_sided")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed <= 300
    verdict(1, ok, f"{len(expected) - len(bad)}/{len(expected)} patterns match in {elapsed:.1f}s"
            + (f"; mismatches: {', '.join(bad)}" if bad else ""))


def test_criterion_02_one_sided_exponents(verdict):
    expected = {f"c{l}": 1 + F(1, 2 * ((l - 3) // 2)) for l in range(5, 10)}
    expected.update({f"k2,{t}": F(5, 2) for t in (3, 4, 5)})
    expected.update({f"k{s},{t}": F(s + 3, 2) for s in (3, 4, 5) for t in range(s, 6)})
    expected.update({f"k{t}": F(t) for t in (3, 4, 5)})
    assert all(cycle_one_sided_exponent(l) == expected[f"c{l}"] for l in range(5, 10))
    bad = _mismatches(expected, "one_sided")
    verdict(2, not bad, f"{len(expected) - len(bad)}/{len(expected)} patterns match"
            + (f"; mismatches: {', '.join(bad)}" if bad else ""))


WORKED = {
    "C4": [("a", "b", "3/2"), ("b", "c", "3/2"), ("c", "d", "1"), ("d", "a", "2")],
    "K3": [("a", "b", "3"), ("b", "c", "2"), ("c", "a", "3/2")],
    "K2,4": [("a", "1", "1"), ("1", "b", "3/2"), ("b", "2", "3/2"), ("2", "a", "2"),
             ("a", "3", "2"), ("3", "b", "5/2"), ("b", "4", "5/2"), ("4", "a", "3")],
    "K1,2,2": [("x", "y", "7/2"), ("x'", "y'", "7/2"), ("x", "y'", "3"), ("x'", "y", "4"),
               ("z", "x'", "3/2"), ("z", "x", "2"), ("z", "y'", "5/2"), ("z", "y", "3")],
}


def _labelled(rows):
    names = sorted({x for r in rows for x in r[:2]})
    idx = {v: i for i, v in enumerate(names)}
    return LabeledTemplate.make(range(len(names)), [(idx[a], idx[b], SPARSE, F(l)) for a, b, l in rows])


def test_criterion_03_worked_labelings(verdict):
    problems = []
    for name, rows in WORKED.items():
        try:
            if not verify_proof(certify(_labelled(rows))):
                problems.append(f"{name} proof does not verify")
        except NoCertificate:
            problems.append(f"{name} not certified")
        top = max(F(l) for *_, l in rows)
        lowered = [(a, b, str(F(l) - F(1, 2)) if F(l) == top else l) for a, b, l in rows]
        try:
            certify(_labelled(lowered))
            problems.append(f"{name} still certified after lowering its maximum label")
        except NoCertificate:
            pass
    verdict(3, not problems, "4 labelings certified, all 1/2-decrements rejected" if not problems
            else "; ".join(problems))


def test_criterion_04_two_degeneracy(verdict):
    bad = []
    for t in range(3, 8):
        if two_degeneracy(complete_graph(t))[0] != t - 2:
            bad.append(f"K{t}")
    for s in range(2, 6):
        for t in range(s, 6):
            if two_degeneracy(complete_bipartite(s, t))[0] != F(s - 1, 2):
                bad.append(f"K{s},{t}")
    verdict(4, not bad, "K_t and K_s,t closed forms reproduced" if not bad else f"wrong: {bad}")


def test_criterion_05_paley_spectra(verdict):
    worst = 0.0
    ok = True
    for q in (13, 17, 29):
        rep = spectral_jumbledness(paley(q))
        ok &= round(rep.lambda1) == (q - 1) // 2 and abs(rep.lambda1 - (q - 1) / 2) < 1e-8
        target = (math.sqrt(q) + 1) / 2
        beta = character_sum_beta(CayleySpec(q, quadratic_residues(q)))
        worst = max(worst, abs(abs(rep.lambda2) - target), abs(beta - abs(rep.lambda2)))
    ok &= worst <= 1e-8
    verdict(5, ok, f"max deviation {worst:.2e}")


def test_criterion_06_jumbledness_oracle(verdict):
    gen = rng.Xorshift64Star(606)
    violations, done = 0, 0
    while done < 100:
        n = 4 + gen.randbelow(9)
        d = 1 + gen.randbelow(n - 1)
        if n * d % 2:
            continue
        g = random_regular(n, d, seed=gen.next_u64())
        rep = spectral_jumbledness(g)
        if jumbledness_exact(g, d / n) > rep.spectral_beta + 1e-9:
            violations += 1
        done += 1
    complete_ok = all(jumbledness_exact(complete_graph(n), 1.0) == pytest.approx(1.0, abs=1e-12)
                      for n in range(2, 10))
    verdict(6, violations == 0 and complete_ok,
            f"{violations} violations in 100 regular graphs; K_n beta* = 1: {complete_ok}")


def test_criterion_07_discrepancy_oracles(verdict):
    gen = np.random.default_rng(707)
    gap, upper_bad, ge_bad = 0.0, 0, 0
    for _ in range(200):
        rows, cols = gen.integers(1, 11, size=2)
        w = gen.random((rows, cols)) if gen.random() < 0.5 else (gen.random((rows, cols)) < 0.4) * 1.0
        q = float(gen.random()) * 0.8
        pair = PairView(w, q, float(gen.uniform(q, 1.0)) if q > 0 else 1.0)
        exact = disc_epsilon_exact(pair)
        gap = max(gap, abs(exact - disc_epsilon_alternating(pair)))
        upper_bad += disc_epsilon_upper(pair) < exact - 1e-12
        ge_bad += disc_ge_epsilon_exact(pair) > exact + 1e-12
    ok = gap <= 1e-9 and upper_bad == 0 and ge_bad == 0
    verdict(7, ok, f"max |exact - alternating| = {gap:.2e}, upper violations {upper_bad}, "
                   f"one-sided violations {ge_bad}")


def _random_host(gen, sizes):
    n = sum(sizes)
    w = np.triu(gen.random((n, n)), 1)
    if gen.random() < 0.5:
        w = (w > 0.5) * 1.0
    w = w + w.T
    cuts = np.cumsum([0] + list(sizes))
    return WeightedHost(w, [np.arange(cuts[i], cuts[i + 1]) for i in range(len(sizes))])


def test_criterion_08_counting_oracles(verdict):
    gen = np.random.default_rng(808)
    worst = 0.0
    for name in ("k3", "c4", "c5", "p4", "k1,3", "k2,3"):
        h = named_graph(name)
        methods = ["auto", "general"]
        methods += ["tree"] if h.m == h.n - 1 else []
        methods += ["cycle"] if name.startswith("c") else []
        for _ in range(4):
            host = _random_host(gen, gen.integers(1, 6, size=h.n).tolist())
            tpl = Template.build(h)
            oracle = float(hom_density_bruteforce(host, tpl, exact=True))
            for method in methods:
                worst = max(worst, abs(hom_density(host, tpl, method=method) - oracle))
    induced_worst = 0.0
    for name in ("k3", "c4", "p4", "k1,3"):
        h = named_graph(name)
        for _ in range(4):
            sizes = gen.integers(1, 5, size=h.n).tolist()
            g_host = _random_host(gen, sizes)
            gamma = WeightedHost(np.maximum(g_host.W, _random_host(gen, sizes).W), g_host.parts)
            tpl = Template.build(h)
            induced_worst = max(induced_worst, abs(induced_density(g_host, gamma, tpl)
                                                   - induced_density_bruteforce(g_host, gamma, tpl)))
    ok = worst <= 1e-12 and induced_worst <= 1e-12
    verdict(8, ok, f"max hom error {worst:.2e}, max induced error {induced_worst:.2e}")


def test_criterion_09_dense_counting_lemma(verdict):
    gen = np.random.default_rng(909)
    failures, worst_slack = 0, math.inf
    for i in range(100):
        h = complete_graph(3) if i % 2 == 0 else cycle_graph(4)
        host = _random_host(gen, [8] * h.n)
        qs = {e: float(host.block(*e).mean()) for e in h.edge_list()}
        eps = max(disc_epsilon_exact(host.pair(a, b, q=qs[(a, b)])) for a, b in h.edge_list())
        tpl = Template.build(h, q=qs)
        lhs = abs(hom_density(host, tpl) - math.prod(qs.values()))
        rhs = h.m * eps
        worst_slack = min(worst_slack, rhs - lhs)
        failures += lhs > rhs + 1e-9
    verdict(9, failures == 0, f"{failures} violations in 100 hosts; min slack {worst_slack:.3e}")


def test_criterion_10_c4_implies_disc(verdict):
    gen = np.random.default_rng(1010)
    failures = 0
    for _ in range(100):
        w = gen.random((8, 8)) if gen.random() < 0.5 else (gen.random((8, 8)) < gen.random()) * 1.0
        q = float(w.mean())
        pair = PairView(w, q, float(gen.uniform(max(q, 1e-3), 1.0)))
        bound = max(centered_c4_density(pair), 0.0) ** 0.25 / pair.p
        failures += disc_epsilon_exact(pair) > bound + 1e-9
    verdict(10, failures == 0, f"{failures} violations in 100 pairs")


def test_criterion_11_c4_codegree_identity(verdict):
    gen = rng.Xorshift64Star(1111)
    failures = 0
    for i in range(100):
        n = 4 + gen.randbelow(97)
        p = 0.05 + 0.5 * gen.random()
        g = random_graph(n, p, seed=i)
        counts = {labeled_copies(g, cycle_graph(4)), codegree_sum(g), labeled_c4_trace(g)}
        failures += len(counts) != 1
    verdict(11, failures == 0, f"{failures} mismatches in 100 graphs")


def test_criterion_12_goodman(verdict):
    bound_failures = 0
    fractions = {}
    for q in (13, 17, 29):
        g = paley(q)
        beta = (math.sqrt(q) + 1) / 2
        bound = goodman_bound(0.5, beta, g.n).value
        total = triangle_count(g)
        vals = []
        for t in range(200):
            mono = monochromatic_triangles(g, random_edge_coloring(g, rng.split_seed(q, t)))
            bound_failures += mono < bound - 1e-9
            vals.append(mono / total)
        fractions[q] = min(vals)
    ok = bound_failures == 0 and fractions[29] >= 0.24
    verdict(12, ok, f"bound violations {bound_failures}; min mono fraction at q=29 is "
                    f"{fractions[29]:.4f} (needs >= 0.24)")


def test_criterion_13_group_removal(verdict):
    gen = rng.Xorshift64Star(1313)
    failures, cases = 0, 0
    for n in (12, 20, 30):
        for m in (3, 4):
            for _ in range(20):
                sets = [gen.sample(n, 1 + gen.randbelow(n)) for _ in range(m)]
                g, labels = group_removal_graph(n, sets)
                failures += part_respecting_cycle_count(g, labels, m) != n * group_solution_count(n, sets)
                cases += 1
    verdict(13, failures == 0, f"{cases - failures}/{cases} families satisfy the identity")


def test_criterion_14_sparse_counting(verdict, tmp_path):
    start = time.perf_counter()
    smoke = run_experiment(ExperimentConfig.from_file(CONFIGS / "counting_ac14.ini"), tmp_path / "a.json")
    elapsed = time.perf_counter() - start
    planted = run_experiment(ExperimentConfig.from_file(CONFIGS / "counting_planted.ini"),
                             tmp_path / "b.json")
    worst = max(t["theta"] for t in smoke.trials)
    planted_theta = planted.trials[0]["theta"]
    ok = smoke.passed and elapsed <= 120 and planted.passed
    verdict(14, ok, f"max theta {worst:.4f} <= 0.05 in {elapsed:.1f}s; planted K3,3 theta "
                    f"{planted_theta:.2f} >= 0.5")


def test_criterion_15_determinism(verdict, tmp_path):
    differing = []
    for path in sorted(CONFIGS.glob("*.ini")):
        cfg = ExperimentConfig.from_file(path)
        run_experiment(cfg, tmp_path / "a.json")
        run_experiment(cfg, tmp_path / "b.json")
        a = (tmp_path / "a.json").read_bytes()
        b = (tmp_path / "b.json").read_bytes()
        ra, rb = load_report(tmp_path / "a.json"), load_report(tmp_path / "b.json")
        same = comparable_report(ra) == comparable_report(rb)
        # outside the timestamp line the files must agree byte for byte
        strip = lambda raw: b"\n".join(l for l in raw.splitlines() if b'"timestamp"' not in l)
        if not same or strip(a) != strip(b) or report_json(ra).encode() != a:
            differing.append(path.name)
    verdict(15, not differing, f"{len(list(CONFIGS.glob('*.ini')))} configs rerun identically"
            if not differing else f"differing reports: {differing}")
