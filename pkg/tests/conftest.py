"""Shared builders for the test suite.

The seeded trace corpus mixes constructed traces with deliberately
perturbed ones; perturbation reorders the walk segments around a random
vertex, which preserves validity (the arc multiset is untouched) while
scrambling the passage structure.
"""

from __future__ import annotations

import pytest

from stabletrace import corpus
from stabletrace.construct import parallel_1_stable, parallel_d_stable
from stabletrace.corpus import Lcg
from stabletrace.graph import Graph
from stabletrace.trace import (
    DoubleTrace,
    join_segments,
    split_at_vertex,
    validate_double_trace,
)


def antiparallel_double(g: Graph) -> DoubleTrace:
    """Euler circuit followed by its reversal: every edge antiparallel."""
    from stabletrace.construct import euler_circuit

    c = euler_circuit(g)
    return validate_double_trace(g, c + (c[0],) + c[:0:-1])


def perturb_trace(w: DoubleTrace, rng: Lcg) -> DoubleTrace:
    """Reorder the segments around one random vertex; stays a valid trace."""
    vs = w.host.vertices
    v = vs[rng.randrange(len(vs))]
    segments = split_at_vertex(w, v)
    order = list(range(1, len(segments)))
    rng.shuffle(order)
    return join_segments(w.host, v, [segments[0]] + [segments[i] for i in order])


def oracle_graph_pool() -> list[Graph]:
    """Graphs with max degree <= 10 for oracle comparisons."""
    return [
        corpus.complete_graph(5),
        corpus.octahedron(),
        corpus.circulant_graph(7),
        corpus.circulant_graph(9),
        corpus.complete_graph(7),
        corpus.fig7(),
        corpus.complete_graph(9),
        corpus.random_eulerian(8, 11, cycles=2),
        corpus.random_eulerian(10, 12, cycles=3),
        corpus.complete_graph(11),
    ]


def build_trace_corpus(count: int, seed: int = 2024) -> list[DoubleTrace]:
    """Deterministic stream of valid double traces, constructed and perturbed."""
    pool = oracle_graph_pool()
    rng = Lcg(seed)
    out: list[DoubleTrace] = []
    for i in range(count):
        g = pool[i % len(pool)]
        kind = i % 4
        if kind == 0:
            w = parallel_1_stable(g)
        elif kind == 1:
            w = parallel_d_stable(g, 2)
        elif kind == 2:
            w = antiparallel_double(g)
        else:
            w = parallel_1_stable(g)
            for _ in range(1 + rng.randrange(3)):
                w = perturb_trace(w, rng)
        out.append(w)
    return out


@pytest.fixture(scope="session")
def fig7() -> Graph:
    return corpus.fig7()


@pytest.fixture(scope="session")
def fig8() -> Graph:
    return corpus.fig8()


@pytest.fixture(scope="session")
def fig7_trace() -> DoubleTrace:
    return corpus.fig7_trace()


@pytest.fixture(scope="session")
def k5() -> Graph:
    return corpus.complete_graph(5)


@pytest.fixture(scope="session")
def triangle() -> Graph:
    return corpus.complete_graph(3)
