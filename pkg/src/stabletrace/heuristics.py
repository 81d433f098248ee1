"""The two fallible constructions: Euler-circuit concatenation and
block concatenation.

Both can fail on graphs that nevertheless admit parallel 2-stable traces;
the corpus fixtures fig7 and fig8 exist to exercise those failures against
the always-successful general constructor.  Failures are returned as
values with machine-readable reason codes, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .construct import (
    _rewrite_at,
    _vertices_with_small_repetition,
    euler_circuit,
    parallel_1_stable,
    parallel_d_stable,
)
from .errors import InternalStabilityCheckFailed, MinDegreeTooLow, NotEulerian
from .graph import Graph, blocks_and_cutvertices, is_eulerian
from .trace import DoubleTrace, is_parallel_d_stable, validate_double_trace
from .transform import _expand_high_degree, project_trace

DEFAULT_SEARCH_BUDGET = 10_000_000
BLOCK_DEGREE = "BLOCK_DEGREE"
JUNCTION_REPETITION = "JUNCTION_REPETITION"
SEARCH_EXHAUSTED = "SEARCH_EXHAUSTED"
SEARCH_TIMEOUT = "SEARCH_TIMEOUT"


@dataclass(frozen=True)
class Failure:
    """Outcome of a heuristic that could not produce a trace."""

    reason: str
    detail: str
    nodes_explored: int = 0

    def __str__(self) -> str:
        return f"{self.reason}: {self.detail}"


@dataclass(frozen=True)
class TransitionFunctions:
    """Per-vertex partial successor maps induced by a single Euler circuit.

    maps[v][p] = s when the circuit contains p -> v -> s; the circuit
    traverses each edge once, so each map has degree(v)/2 entries and never
    maps a vertex to itself.
    """

    maps: dict[str, dict[str, str]]

    @staticmethod
    def from_circuit(circuit: tuple[str, ...]) -> "TransitionFunctions":
        n = len(circuit)
        maps: dict[str, dict[str, str]] = {}
        for i, v in enumerate(circuit):
            pred = circuit[(i - 1) % n]
            succ = circuit[(i + 1) % n]
            maps.setdefault(v, {})[pred] = succ
        return TransitionFunctions(maps)


class _Budget:
    __slots__ = ("limit", "nodes")

    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0

    def spend(self) -> bool:
        self.nodes += 1
        return self.nodes <= self.limit


class _BudgetExceeded(Exception):
    pass


def _second_circuits(
    out_adj: dict[str, tuple[str, ...]],
    forbidden: dict[str, set[tuple[str, str]]],
    start: str,
    arc_count: int,
    budget: _Budget,
) -> Iterator[tuple[str, ...]]:
    """All Euler circuits of the oriented graph avoiding forbidden
    transitions, in lexicographic arc order from the fixed start vertex.

    The wraparound transition at the start vertex is checked on completion.
    Raises _BudgetExceeded when the node budget runs out.
    """
    path = [start]
    used: set[tuple[str, str]] = set()
    frames: list[Iterator[str]] = [iter(out_adj[start])]
    while frames:
        v = path[-1]
        moved = False
        for nxt in frames[-1]:
            arc = (v, nxt)
            if arc in used:
                continue
            if len(path) >= 2 and (path[-2], nxt) in forbidden.get(v, ()):
                continue
            if not budget.spend():
                raise _BudgetExceeded
            used.add(arc)
            path.append(nxt)
            if len(used) == arc_count:
                if nxt == start and (path[-2], path[1]) not in forbidden.get(
                    start, ()
                ):
                    yield tuple(path[:-1])
                path.pop()
                used.discard(arc)
                continue
            frames.append(iter(out_adj[nxt]))
            moved = True
            break
        if moved:
            continue
        frames.pop()
        path.pop()
        if path:
            used.discard((path[-1], v))


def euler_concatenation(
    g: Graph, budget: int = DEFAULT_SEARCH_BUDGET
) -> DoubleTrace | Failure:
    """Concatenate two compatible Euler circuits into a 2-stable trace.

    Fixes the deterministic Euler circuit as the first circuit, orients the
    graph by it, then backtracks for a second circuit whose transitions
    avoid every transition of the first (in both reading directions).  On
    success the circuits are concatenated at the first junction vertex that
    leaves no repetition of order <= 2; graphs with degree-2 vertices fail
    naturally because the forced second circuit would repeat the first.
    """
    if not is_eulerian(g):
        raise NotEulerian("graph has odd-degree vertices")
    first = euler_circuit(g)
    n = len(first)
    out_lists: dict[str, list[str]] = {v: [] for v in g}
    forbidden: dict[str, set[tuple[str, str]]] = {v: set() for v in g}
    for i, v in enumerate(first):
        out_lists[v].append(first[(i + 1) % n])
        pred, succ = first[(i - 1) % n], first[(i + 1) % n]
        forbidden[v].add((pred, succ))
        forbidden[v].add((succ, pred))
    out_adj = {v: tuple(sorted(lst)) for v, lst in out_lists.items()}
    start = g.vertices[0]

    budget_state = _Budget(budget)
    found_any = False
    try:
        for second in _second_circuits(out_adj, forbidden, start, n, budget_state):
            found_any = True
            trace = _concatenate_circuits(g, first, second)
            if trace is not None:
                return trace
    except _BudgetExceeded:
        return Failure(
            SEARCH_TIMEOUT,
            f"search budget of {budget} nodes exhausted",
            nodes_explored=budget_state.nodes,
        )
    if found_any:
        return Failure(
            JUNCTION_REPETITION,
            "every junction of every compatible second circuit leaves a "
            "repetition of order <= 2",
            nodes_explored=budget_state.nodes,
        )
    return Failure(
        SEARCH_EXHAUSTED,
        "no second Euler circuit avoids the transitions of the first",
        nodes_explored=budget_state.nodes,
    )


def _concatenate_circuits(
    g: Graph, first: tuple[str, ...], second: tuple[str, ...]
) -> DoubleTrace | None:
    """Join two circuits at a junction vertex without small repetitions.

    Junction vertices are tried in ascending order; the first circuit is
    rotated to its first visit, the second to each of its visits in turn.
    """
    for j in g.vertices:
        p1 = first.index(j)
        rot1 = first[p1:] + first[:p1]
        for p2 in (i for i, s in enumerate(second) if s == j):
            rot2 = second[p2:] + second[:p2]
            candidate = validate_double_trace(g, rot1 + rot2)
            report = is_parallel_d_stable(candidate, 2)
            if report.stable:
                return candidate
    return None


def block_concatenation(g: Graph, relaxed: bool = False) -> DoubleTrace | Failure:
    """Build a parallel 2-stable trace blockwise and join at cutvertices.

    Strict mode demands a parallel 2-stable trace of every block, so any
    block in which some vertex has degree 2 (typically a cutvertex) fails.
    Relaxed mode tolerates degree-2 cutvertices inside blocks: their
    doubled passages become repetitions only in the merged graph, where the
    interleaving at the cutvertex dissolves them.
    """
    if not is_eulerian(g):
        raise NotEulerian("graph has odd-degree vertices")
    if g.min_degree < 4:
        raise MinDegreeTooLow(f"minimum degree {g.min_degree} < 4")
    decomposition = blocks_and_cutvertices(g)
    blocks = decomposition.blocks
    traces: list[DoubleTrace] = []
    for index, vertex_set in enumerate(blocks):
        label = "{" + " ".join(sorted(vertex_set)) + "}"
        if len(vertex_set) == 2:
            return Failure(
                BLOCK_DEGREE, f"block {label} is a bridge and carries no parallel trace"
            )
        block = g.induced(vertex_set)
        low = sorted(
            v for v in block if block.degree(v) % 2 or block.degree(v) < 4
        )
        if low and not relaxed:
            v = low[0]
            return Failure(
                BLOCK_DEGREE,
                f"block {label}: vertex {v} has degree {block.degree(v)} "
                "in the block, no parallel 2-stable trace exists there",
            )
        if low:
            bad = sorted(
                v
                for v in low
                if v not in decomposition.cutvertices or block.degree(v) != 2
            )
            if bad:
                v = bad[0]
                return Failure(
                    BLOCK_DEGREE,
                    f"block {label}: vertex {v} has degree {block.degree(v)} "
                    "in the block and is not a degree-2 cutvertex",
                )
            traces.append(_relaxed_block_trace(block))
        else:
            traces.append(parallel_d_stable(block, 2))
    return _concatenate_block_traces(g, blocks, traces)


def _relaxed_block_trace(block: Graph) -> DoubleTrace:
    """Parallel 2-stable trace of a block that may contain degree-2 vertices.

    Degree-2 vertices carry no repetition within the block itself (their
    single doubled passage spans the whole block neighborhood); repetitions
    appear only in the merged graph and are dissolved while splicing.
    """
    expanded, emap = _expand_high_degree(block)
    w = parallel_1_stable(expanded)
    for v in _vertices_with_small_repetition(w):
        w = _rewrite_at(w, v)[0]
    projected = project_trace(w, emap)
    report = is_parallel_d_stable(projected, 2)
    if not report.stable:
        raise InternalStabilityCheckFailed("block trace failed 2-stability")
    return projected


def _concatenate_block_traces(
    g: Graph,
    blocks: tuple[frozenset[str], ...],
    traces: list[DoubleTrace],
    attempt_cap: int = 10_000,
) -> DoubleTrace | Failure:
    """Splice block traces together at shared cutvertices.

    Each splice inserts a rotated block trace at one visit of the shared
    cutvertex; choices are explored by backtracking until the merged trace
    verifies as parallel 2-stable.
    """
    order = list(range(len(blocks)))
    attempts = 0

    def rec(steps: tuple[str, ...], merged_vertices: set[str], remaining: list[int]):
        nonlocal attempts
        if not remaining:
            candidate = validate_double_trace(g, steps)
            report = is_parallel_d_stable(candidate, 2)
            return candidate if report.stable else None
        next_index = None
        shared: set[str] = set()
        for idx in remaining:
            shared = blocks[idx] & merged_vertices
            if shared:
                next_index = idx
                break
        assert next_index is not None and len(shared) == 1
        c = next(iter(shared))
        insert = traces[next_index].steps
        rest = [i for i in remaining if i != next_index]
        for p1 in (i for i, s in enumerate(steps) if s == c):
            for p2 in (i for i, s in enumerate(insert) if s == c):
                attempts += 1
                if attempts > attempt_cap:
                    return None
                rotated = insert[p2:] + insert[:p2]
                spliced = steps[: p1 + 1] + rotated[1:] + (c,) + steps[p1 + 1 :]
                result = rec(spliced, merged_vertices | set(blocks[next_index]), rest)
                if result is not None:
                    return result
        return None

    outcome = rec(traces[0].steps, set(blocks[0]), order[1:])
    if outcome is None:
        return Failure(
            JUNCTION_REPETITION,
            "no interleaving of block traces removes all cutvertex repetitions",
        )
    return outcome
