"""Homomorphism indistinguishability toolkit: oddomorphisms, CFI graphs,
reductions, graph-class predicates and series-parallel contractors."""

from __future__ import annotations

__version__ = "0.1.0"

from .bilabelled import (
    BilabelledGraph,
    ContractorCombination,
    NoContractorFound,
    enumerate_series_parallel,
    simulate_contraction,
    solve_contractor,
)
from .canon import canonical_form, is_isomorphic
from .cfi import CFIPair, build_cfi_pair, cfi_counts, cfi_distinguishes
from .classes import (
    class_member,
    deletion_distance,
    elimination_distance,
    has_minor,
    has_topological_minor,
    in_clique_sum_closure,
    is_planar,
    predicate,
)
from .corpus import Corpus, ingest_corpus, load_corpus
from .families import FamilySpec, find_distinguisher
from .graph import Graph, GraphError, clique_sum, contract_edge, torso
from .graph6 import decode_graph6, encode_graph6
from .homs import Homomorphism, count_homs
from .oddo import (
    OddoCertificate,
    Parity,
    classify_parity,
    is_oddomorphism,
    search_oddomorphism,
    verify_oddomorphism,
    verify_weak_oddomorphism,
)
from .reductions import (
    ReductionError,
    cut_vertex_reduce,
    reduce_clique_sum,
    remove_isolated,
    remove_twins,
    separator_reduce,
    tree_topological_model,
)
from .suites import SuiteBounds, SuiteReport, run_verification_suite
from .treewidth import exact_treewidth, treewidth

__all__ = [
    "__version__",
    "BilabelledGraph",
    "ContractorCombination",
    "NoContractorFound",
    "enumerate_series_parallel",
    "simulate_contraction",
    "solve_contractor",
    "canonical_form",
    "is_isomorphic",
    "CFIPair",
    "build_cfi_pair",
    "cfi_counts",
    "cfi_distinguishes",
    "class_member",
    "deletion_distance",
    "elimination_distance",
    "has_minor",
    "has_topological_minor",
    "in_clique_sum_closure",
    "is_planar",
    "predicate",
    "Corpus",
    "ingest_corpus",
    "load_corpus",
    "FamilySpec",
    "find_distinguisher",
    "Graph",
    "GraphError",
    "clique_sum",
    "contract_edge",
    "torso",
    "decode_graph6",
    "encode_graph6",
    "Homomorphism",
    "count_homs",
    "OddoCertificate",
    "Parity",
    "classify_parity",
    "is_oddomorphism",
    "search_oddomorphism",
    "verify_oddomorphism",
    "verify_weak_oddomorphism",
    "ReductionError",
    "cut_vertex_reduce",
    "reduce_clique_sum",
    "remove_isolated",
    "remove_twins",
    "separator_reduce",
    "tree_topological_model",
    "SuiteBounds",
    "SuiteReport",
    "run_verification_suite",
    "exact_treewidth",
    "treewidth",
]
