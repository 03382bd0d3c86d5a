from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jumbled.errors import (DensifyObligationFailed, InsufficientLabel, NoCertificate,
                            SearchLimitExceeded)
from jumbled.graph_core import (SimpleGraph, complete_graph, cycle_graph, named_graph, path_graph,
                                star_graph, two_sided_exponent_closed_form)
from jumbled.planner import (DENSE, JUMBLED, SPARSE, LabeledTemplate, ProofTree, canonical_form,
                             certify, cycle_one_sided_exponent, densify, doubling, k_m_constant,
                             known_exponent, minimal_uniform_exponent, remove_all_jumbled,
                             remove_jumbled_edge, subdivision_densify, subdivision_threshold,
                             tree_peel, verify_proof)

F = Fraction


def test_template_validation():
    with pytest.raises(ValueError):
        LabeledTemplate.make([0, 1], [(0, 1, SPARSE, None)])
    with pytest.raises(ValueError):
        LabeledTemplate.make([0, 1], [(0, 1, SPARSE, F(1, 2))])
    with pytest.raises(ValueError):
        LabeledTemplate.make([0, 1], [(0, 1, SPARSE, 1), (1, 0, DENSE, None)])
    t = LabeledTemplate.make([0, 1], [(1, 0, DENSE, 5)])
    assert t.edges == ((0, 1, DENSE, None),)


def test_c4_jumbled_removal_order():
    t = LabeledTemplate.from_graph(cycle_graph(4), 2, kind=JUMBLED)
    rest, steps = remove_all_jumbled(t)
    assert rest.edges == ()
    assert [need for _, _, need in steps] == [2, F(3, 2), F(3, 2), 1]


def test_remove_jumbled_edge_needs_label():
    t = LabeledTemplate.make([0, 1, 2], [(0, 1, JUMBLED, F(3, 2)), (1, 2, SPARSE, 1)])
    assert remove_jumbled_edge(t, (0, 1)).edges == ((1, 2, SPARSE, 1),)
    t = LabeledTemplate.make([0, 1, 2], [(0, 1, JUMBLED, 1), (1, 2, SPARSE, 1)])
    with pytest.raises(InsufficientLabel):
        remove_jumbled_edge(t, (0, 1))
    with pytest.raises(ValueError):
        remove_jumbled_edge(t, (1, 2))


def test_triangle_doubling():
    t = LabeledTemplate.from_graph(complete_graph(3), 3)
    minus, doubled = doubling(t, 0)
    assert minus.edges == ((1, 2, SPARSE, 3),)
    emap = doubled.edge_map()
    assert emap[(1, 2)] == (JUMBLED, 3)
    sparse = sorted(doubled.kinds(SPARSE))
    assert sparse == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert doubled.copies == frozenset({3})


def test_star_doubling_gives_k24():
    t = LabeledTemplate.from_graph(star_graph(4), 1)
    _, doubled = doubling(t, 0)
    assert doubled.kinds(JUMBLED) == [] and len(doubled.kinds(SPARSE)) == 8
    g = SimpleGraph(6, doubled.kinds(SPARSE))
    assert sorted(g.degrees().tolist()) == [2, 2, 2, 2, 4, 4]


def test_densify_path():
    with pytest.raises(DensifyObligationFailed):
        densify(LabeledTemplate.from_graph(path_graph(3), 1), 1)
    t = LabeledTemplate.from_graph(path_graph(3), F(3, 2))
    out, steps = densify(t, 1)
    assert out.edges == ((0, 2, DENSE, None),)
    assert len(steps) == 2


def test_densify_obligation():
    # the cycle's other edges become jumbled and need label 3/2 before densifying
    t = LabeledTemplate.from_graph(cycle_graph(4), 1)
    with pytest.raises(DensifyObligationFailed):
        densify(t, 1)
    out, _ = densify(LabeledTemplate.from_graph(cycle_graph(4), 2), 1)
    assert sorted(out.kinds(DENSE)) == [(0, 2)]


def test_tree_peel():
    steps = tree_peel(LabeledTemplate.from_graph(star_graph(3), 2))
    assert len(steps) == 3
    with pytest.raises(InsufficientLabel):
        tree_peel(LabeledTemplate.from_graph(star_graph(3), 1))
    with pytest.raises(ValueError):
        tree_peel(LabeledTemplate.from_graph(cycle_graph(3), 3))


def test_subdivision_thresholds():
    assert subdivision_threshold(3) == F(5, 4)
    assert subdivision_threshold(4) == F(7, 6)
    path3 = LabeledTemplate.from_graph(path_graph(4), F(5, 4))
    assert subdivision_densify(path3, [0, 1, 2, 3]).edges == ((0, 3, DENSE, None),)
    path4 = LabeledTemplate.from_graph(path_graph(5), 1)
    with pytest.raises(InsufficientLabel):
        subdivision_densify(path4, [0, 1, 2, 3, 4])


def test_k_m_constant():
    assert [k_m_constant(m) for m in (3, 4, 5, 6, 7, 8)] == [3, 2, F(3, 2), F(3, 2), F(5, 4), F(5, 4)]
    with pytest.raises(ValueError):
        k_m_constant(2)


def test_cycle_formula():
    assert [cycle_one_sided_exponent(l) for l in (4, 5, 6, 7, 9)] == [2, F(3, 2), F(3, 2), F(5, 4), F(7, 6)]


def test_certify_and_verify_worked_examples():
    for name, k in [("k3", 3), ("c4", 2), ("k4", 4), ("k2,3", F(5, 2))]:
        t = LabeledTemplate.from_graph(named_graph(name), k)
        assert verify_proof(certify(t))
        with pytest.raises(NoCertificate):
            certify(LabeledTemplate.from_graph(named_graph(name), F(k) - F(1, 2)))


def test_certify_limit():
    with pytest.raises(SearchLimitExceeded):
        certify(LabeledTemplate.from_graph(complete_graph(11), 10))


def test_verify_proof_rejects_tampering():
    tree = certify(LabeledTemplate.from_graph(cycle_graph(4), 2))
    data = tree.to_dict()
    for row in data["template"]["edges"]:
        row[3] = "1"
    with pytest.raises(ValueError):
        verify_proof(ProofTree.from_dict(data))
    bad = ProofTree(LabeledTemplate.from_graph(path_graph(2), 1), "empty", {}, [])
    with pytest.raises(ValueError):
        verify_proof(bad)


def test_subdivision_needs_flag():
    t = LabeledTemplate.from_graph(cycle_graph(5), F(3, 2))
    tree = certify(t, allow_subdivision=True)
    assert verify_proof(tree, allow_subdivision=True)
    moves = {node.move for node in _walk(tree)}
    if "subdivision-densify" in moves:
        with pytest.raises(ValueError):
            verify_proof(tree, allow_subdivision=False)


def _walk(tree):
    yield tree
    for kid in tree.children:
        yield from _walk(kid)


def test_proof_tree_round_trip_and_determinism():
    t = LabeledTemplate.from_graph(named_graph("k2,3"), F(5, 2))
    a, b = certify(t), certify(t)
    assert json.dumps(a.to_dict(), sort_keys=True) == json.dumps(b.to_dict(), sort_keys=True)
    back = ProofTree.from_dict(json.loads(json.dumps(a.to_dict())))
    assert back.to_dict() == a.to_dict() and verify_proof(back)
    assert a.size() >= len(a.leaves()) >= 1


def small_patterns():
    @st.composite
    def build(draw):
        n = draw(st.integers(2, 5))
        pairs = list(itertools.combinations(range(n), 2))
        keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        edges = [e for e, k in zip(pairs, keep) if k] or [(0, 1)]
        return SimpleGraph(n, edges)
    return build()


@settings(max_examples=25, deadline=None)
@given(small_patterns(), st.randoms())
def test_canonical_form_is_invariant(h, rnd):
    labels = [F(rnd.choice([2, 3, 4]), 2) for _ in range(h.m)]
    t = LabeledTemplate.from_graph(h, labels)
    perm = list(range(h.n))
    rnd.shuffle(perm)
    key1, lab1 = canonical_form(t)
    key2, _ = canonical_form(t.relabel(dict(enumerate(perm))))
    assert key1 == key2
    assert sorted(lab1) == list(t.vertices)


@settings(max_examples=20, deadline=None)
@given(small_patterns(), st.randoms())
def test_certify_monotone_under_label_inflation(h, rnd):
    labels = [F(rnd.choice([2, 3, 4, 5]), 2) for _ in range(h.m)]
    t = LabeledTemplate.from_graph(h, labels)
    try:
        tree = certify(t)
    except NoCertificate:
        return
    assert verify_proof(tree)
    bumped = LabeledTemplate.from_graph(h, [x + F(1, 2) for x in labels])
    assert verify_proof(certify(bumped))


@settings(max_examples=15, deadline=None)
@given(small_patterns())
def test_minimal_never_exceeds_closed_form(h):
    verdict = minimal_uniform_exponent(h)
    assert verdict.uniform_k <= two_sided_exponent_closed_form(h)
    if isinstance(verdict.certificate, ProofTree):
        assert verify_proof(verdict.certificate)
    one = minimal_uniform_exponent(h, "one-sided")
    assert one.uniform_k <= verdict.uniform_k


def test_known_exponents():
    assert known_exponent("k5") == 5
    assert known_exponent("c7", "one_sided") == F(5, 4)
    assert known_exponent("k3,4") == 4
    assert known_exponent("k3,4", "one_sided") == 3
    assert known_exponent("k2,5", "one_sided") == F(5, 2)
    assert known_exponent("s4") == F(5, 2)
    assert known_exponent("petersen") is None


def test_minimal_exponent_verdict_dict():
    v = minimal_uniform_exponent(cycle_graph(4), known_value=F(2))
    d = v.to_dict()
    assert d["uniform_k"] == "2" and d["matches_known"] is True
    with pytest.raises(ValueError):
        minimal_uniform_exponent(cycle_graph(4), "sideways")
