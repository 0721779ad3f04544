"""Minimum Wiener index of unicyclic graphs with a given degree sequence
and girth: closed forms, candidate constructions and an exhaustive oracle."""

from .constructors import (
    CandidateKind,
    ConjectureInput,
    NotApplicable,
    best_candidate,
    build_candidates,
    conjectured_gamma_star,
    cycle_centered,
    greedy_tree,
    greedy_unicyclic,
    out_greedy,
    redistribute_outside_cycle,
)
from .degseq import DegreeSequence, DegreeSequenceError, parse_degree_sequence, validate_unicyclic
from .formulas import delta_of, evaluate, wiener, wiener_closed_form
from .graph_core import RootedTree, UnicyclicGraph, canonical_form, wiener_by_bfs
from .oracle import check_theorems, enumerate_unicyclic, exhaustive_minimum, explore_conjecture

__version__ = "0.1.0"
