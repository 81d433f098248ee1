"""Parallel d-stable double traces of simple connected graphs.

A double trace walks every edge of a graph exactly twice; it is parallel
when both traversals of each edge run the same way, and d-stable when no
vertex neighborhood splits off a part of size at most d.  This package
constructs such traces for every Eulerian graph whose minimum degree
exceeds d, verifies arbitrary traces, and reproduces the failure modes of
two simpler constructions that cannot handle every admissible graph.
"""

from . import corpus
from .construct import (
    PassageRewrite,
    euler_circuit,
    parallel_1_stable,
    parallel_2_stable_4regular,
    parallel_d_stable,
    remove_2_repetition,
    rewrite_2_repetition,
)
from .errors import StableTraceError
from .graph import (
    BlockDecomposition,
    ContractionSpec,
    Graph,
    blocks_and_cutvertices,
    contract_subtrees,
    is_eulerian,
    parse_graph,
)
from .heuristics import (
    Failure,
    TransitionFunctions,
    block_concatenation,
    euler_concatenation,
)
from .trace import (
    DoubleTrace,
    EdgeClassification,
    Repetition,
    StabilityReport,
    TransitionSystem,
    classify_edges,
    find_repetitions,
    find_repetitions_bruteforce,
    is_parallel_d_stable,
    transition_multigraph,
    validate_double_trace,
)
from .transform import ExpansionMap, expand_to_4_regular, project_trace

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition",
    "ContractionSpec",
    "DoubleTrace",
    "EdgeClassification",
    "ExpansionMap",
    "Failure",
    "Graph",
    "PassageRewrite",
    "Repetition",
    "StabilityReport",
    "StableTraceError",
    "TransitionFunctions",
    "TransitionSystem",
    "block_concatenation",
    "blocks_and_cutvertices",
    "classify_edges",
    "contract_subtrees",
    "corpus",
    "euler_circuit",
    "euler_concatenation",
    "expand_to_4_regular",
    "find_repetitions",
    "find_repetitions_bruteforce",
    "is_eulerian",
    "is_parallel_d_stable",
    "parallel_1_stable",
    "parallel_2_stable_4regular",
    "parallel_d_stable",
    "parse_graph",
    "project_trace",
    "remove_2_repetition",
    "rewrite_2_repetition",
    "transition_multigraph",
    "validate_double_trace",
]
