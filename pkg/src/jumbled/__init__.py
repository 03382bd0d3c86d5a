"""Counting lemmas in jumbled graphs: generators, pseudorandomness
certificates, homomorphism counting and a symbolic exponent planner."""

from .graph_core import (SimpleGraph, complete_graph, cycle_graph, degeneracy, named_graph,
                         relative_line_degeneracy, two_degeneracy, two_sided_exponent_closed_form)
from .constructions import CayleySpec, cayley, paley, random_graph, random_subgraph
from .pseudorandom import (PairView, disc_epsilon_exact, jumbledness_exact, spectral_jumbledness,
                           character_sum_beta)
from .counting import Template, WeightedHost, hom_density, induced_density, labeled_copies
from .planner import (LabeledTemplate, ProofTree, certify, k_m_constant, minimal_uniform_exponent,
                      verify_proof)

__version__ = "0.1.0"

__all__ = [
    "SimpleGraph", "complete_graph", "cycle_graph", "degeneracy", "named_graph",
    "relative_line_degeneracy", "two_degeneracy", "two_sided_exponent_closed_form",
    "CayleySpec", "cayley", "paley", "random_graph", "random_subgraph",
    "PairView", "disc_epsilon_exact", "jumbledness_exact", "spectral_jumbledness", "character_sum_beta",
    "Template", "WeightedHost", "hom_density", "induced_density", "labeled_copies",
    "LabeledTemplate", "ProofTree", "certify", "k_m_constant", "minimal_uniform_exponent", "verify_proof",
]
