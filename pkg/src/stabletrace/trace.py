"""Double traces: validation, edge classification, transition systems,
repetition detection.

A double trace is a closed walk traversing every edge of its host graph
exactly twice.  It is stored as the cyclic sequence of visited vertices;
arc i runs from steps[i] to steps[(i+1) % len].  The serialized form does
not repeat the start vertex at the end; the wraparound arc is implicit.

At each vertex v the trace induces a transition multigraph on N(v): one
edge {in, out} per visit.  Each neighbor of v has total incidence exactly
two, so the multigraph is 2-regular and decomposes into cycles.  A
repetition at v is a nonempty proper subset of N(v) closed under passages,
i.e. a proper union of those components; detection therefore reduces to a
component scan, with a subset-enumeration oracle kept alongside as an
independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Literal

from .errors import (
    DegreeTooLargeForOracle,
    EdgeCountMismatch,
    NonEdgeStep,
    WrongLength,
)
from .graph import Edge, Graph, edge_key

ORACLE_MAX_DEGREE = 12


@dataclass(frozen=True)
class DoubleTrace:
    """Validated double trace: host graph plus cyclic vertex sequence."""

    host: Graph
    steps: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    def arcs(self) -> list[tuple[str, str]]:
        """Directed arcs in walk order, including the wraparound arc."""
        n = len(self.steps)
        return [(self.steps[i], self.steps[(i + 1) % n]) for i in range(n)]

    def occurrences(self, v: str) -> list[int]:
        return [i for i, s in enumerate(self.steps) if s == v]

    def to_text(self) -> str:
        return " ".join(self.steps) + "\n"

    def __repr__(self) -> str:
        return f"DoubleTrace({len(self.steps)} steps on {self.host!r})"


def parse_trace_tokens(text: str) -> list[str]:
    """Split serialized trace text into vertex tokens."""
    return text.split()


def validate_double_trace(g: Graph, seq: list[str] | tuple[str, ...]) -> DoubleTrace:
    """Check a vertex sequence and wrap it as a DoubleTrace.

    Raises WrongLength, NonEdgeStep, or EdgeCountMismatch; the sequence is
    cyclic, so the pair (last, first) is checked as well.
    """
    steps = tuple(seq)
    want = 2 * g.edge_count
    if len(steps) != want:
        raise WrongLength(f"trace has {len(steps)} steps, host needs {want}")
    counts: dict[Edge, int] = {}
    n = len(steps)
    for i in range(n):
        u, v = steps[i], steps[(i + 1) % n]
        if not (g.has_vertex(u) and g.has_edge(u, v)):
            raise NonEdgeStep(i, (u, v))
        key = edge_key(u, v)
        counts[key] = counts.get(key, 0) + 1
    for e in sorted(g.edges):
        c = counts.get(e, 0)
        if c != 2:
            raise EdgeCountMismatch(e, c)
    return DoubleTrace(g, steps)


def rotate_trace(w: DoubleTrace, offset: int) -> DoubleTrace:
    """Same cyclic walk, started at a different position."""
    k = offset % len(w.steps)
    return DoubleTrace(w.host, w.steps[k:] + w.steps[:k])


def reverse_trace(w: DoubleTrace) -> DoubleTrace:
    """Walk traversed backwards (keeps the start vertex)."""
    return DoubleTrace(w.host, w.steps[:1] + w.steps[:0:-1])


# -- edge classification ----------------------------------------------------

Tag = Literal["parallel", "antiparallel"]


@dataclass(frozen=True)
class EdgeClassification:
    """Per-edge parallel/antiparallel tags plus the overall kind."""

    tags: dict[Edge, Tag]

    @property
    def kind(self) -> str:
        values = set(self.tags.values())
        if values == {"parallel"}:
            return "parallel"
        if values == {"antiparallel"}:
            return "antiparallel"
        return "mixed"

    @property
    def all_parallel(self) -> bool:
        return self.kind == "parallel"


def classify_edges(w: DoubleTrace) -> EdgeClassification:
    """Tag each edge parallel (same direction twice) or antiparallel."""
    directions: dict[Edge, list[tuple[str, str]]] = {}
    for a, b in w.arcs():
        directions.setdefault(edge_key(a, b), []).append((a, b))
    tags: dict[Edge, Tag] = {}
    for e, pair in directions.items():
        tags[e] = "parallel" if pair[0] == pair[1] else "antiparallel"
    return EdgeClassification(tags)


# -- transition systems ------------------------------------------------------


@dataclass(frozen=True)
class TransitionSystem:
    """Passage structure of a trace at one vertex.

    passages holds unordered {in, out} pairs (loops allowed, stored with
    both slots equal); directed_passages keeps the (in, out) orientation.
    Both are sorted for deterministic comparison.
    """

    center: str
    passages: tuple[tuple[str, str], ...]
    directed_passages: tuple[tuple[str, str], ...]

    def components(self) -> tuple[frozenset[str], ...]:
        """Connected components of the undirected passage multigraph,
        ordered by smallest member."""
        adj: dict[str, set[str]] = {}
        for a, b in self.passages:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        comps: list[frozenset[str]] = []
        left = set(adj)
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                for n in adj[stack.pop()]:
                    if n not in comp:
                        comp.add(n)
                        stack.append(n)
            left -= comp
            comps.append(frozenset(comp))
        return tuple(sorted(comps, key=min))


def transition_multigraph(w: DoubleTrace, v: str) -> TransitionSystem:
    """Build the transition system of the trace at vertex v."""
    if not w.host.has_vertex(v):
        raise ValueError(f"vertex {v!r} not in host graph")
    n = len(w.steps)
    directed: list[tuple[str, str]] = []
    for i in w.occurrences(v):
        pred = w.steps[(i - 1) % n]
        succ = w.steps[(i + 1) % n]
        directed.append((pred, succ))
    undirected = [tuple(sorted(p)) for p in directed]
    return TransitionSystem(
        center=v,
        passages=tuple(sorted(undirected)),  # type: ignore[arg-type]
        directed_passages=tuple(sorted(directed)),
    )


def all_transition_systems(w: DoubleTrace) -> dict[str, TransitionSystem]:
    """Transition systems for every vertex in one pass over the walk."""
    n = len(w.steps)
    directed: dict[str, list[tuple[str, str]]] = {v: [] for v in w.host}
    for i, v in enumerate(w.steps):
        directed[v].append((w.steps[(i - 1) % n], w.steps[(i + 1) % n]))
    return {
        v: TransitionSystem(
            center=v,
            passages=tuple(sorted(tuple(sorted(p)) for p in ps)),  # type: ignore[arg-type]
            directed_passages=tuple(sorted(ps)),
        )
        for v, ps in directed.items()
    }


# -- repetitions --------------------------------------------------------------


@dataclass(frozen=True)
class Repetition:
    """Witness of an N-repetition: the vertex, the neighbor subset, its order."""

    vertex: str
    subset: frozenset[str]
    order: int

    @staticmethod
    def of(vertex: str, subset: frozenset[str]) -> "Repetition":
        return Repetition(vertex, subset, len(subset))

    def __lt__(self, other: "Repetition") -> bool:  # deterministic listings
        return (self.vertex, sorted(self.subset)) < (other.vertex, sorted(other.subset))


def find_repetitions(w: DoubleTrace, d: int) -> list[Repetition]:
    """All minimal repetition witnesses of order <= d.

    A minimal witness is a single component of the transition multigraph at
    a vertex with at least two components.  Every repetition is a union of
    components, and any union of order <= d contains a component of order
    <= d, so component reporting decides the existence question completely.
    """
    if d < 1:
        raise ValueError("repetition order must be >= 1")
    found: list[Repetition] = []
    for v, ts in all_transition_systems(w).items():
        comps = ts.components()
        if len(comps) < 2:
            continue
        for comp in comps:
            if len(comp) <= d:
                found.append(Repetition.of(v, comp))
    return sorted(found)


def find_repetitions_bruteforce(w: DoubleTrace, d: int) -> list[Repetition]:
    """Direct definition check by subset enumeration; test oracle only.

    Enumerates every nonempty proper subset N of N(v) with |N| <= d and
    keeps N iff each passage touching N lies entirely inside N.  Guarded
    against subset explosion on hosts with max degree > 12.
    """
    if d < 1:
        raise ValueError("repetition order must be >= 1")
    if w.host.max_degree > ORACLE_MAX_DEGREE:
        raise DegreeTooLargeForOracle(
            f"host max degree {w.host.max_degree} exceeds {ORACLE_MAX_DEGREE}"
        )
    found: list[Repetition] = []
    for v in w.host:
        neighborhood = w.host.neighbors(v)
        passages = transition_multigraph(w, v).passages
        top = min(d, len(neighborhood) - 1)
        for size in range(1, top + 1):
            for chosen in combinations(neighborhood, size):
                subset = set(chosen)
                if all(
                    (a in subset) == (b in subset) for a, b in passages
                ):
                    found.append(Repetition.of(v, frozenset(subset)))
    return sorted(found)


def minimal_witnesses(reps: list[Repetition]) -> set[Repetition]:
    """Witnesses containing no smaller witness at the same vertex."""
    out: set[Repetition] = set()
    for r in reps:
        if not any(
            s.vertex == r.vertex and s.subset < r.subset for s in reps
        ):
            out.add(r)
    return out


# -- stability ----------------------------------------------------------------


@dataclass(frozen=True)
class StabilityReport:
    """Verdict of is_parallel_d_stable plus per-vertex diagnostics.

    max_stable_order is the largest order at which the trace is stable;
    None means stable at every order (each vertex has a single spanning
    component, a strong trace).
    """

    requested_order: int
    parallel: bool
    repetitions: tuple[Repetition, ...]
    component_sizes: dict[str, tuple[int, ...]]
    max_stable_order: int | None

    @property
    def stable(self) -> bool:
        return self.parallel and not self.repetitions

    @property
    def strong(self) -> bool:
        return self.max_stable_order is None


def is_parallel_d_stable(w: DoubleTrace, d: int) -> StabilityReport:
    """Check that every edge is parallel and no repetition of order <= d exists."""
    if d < 1:
        raise ValueError("stability order must be >= 1")
    classification = classify_edges(w)
    systems = all_transition_systems(w)
    reps: list[Repetition] = []
    sizes: dict[str, tuple[int, ...]] = {}
    limit: int | None = None
    for v, ts in systems.items():
        comps = ts.components()
        sizes[v] = tuple(sorted(len(c) for c in comps))
        if len(comps) >= 2:
            for comp in comps:
                if len(comp) <= d:
                    reps.append(Repetition.of(v, comp))
            smallest = min(len(c) for c in comps)
            limit = smallest if limit is None else min(limit, smallest)
    reps.sort()
    max_stable = None if limit is None else limit - 1
    return StabilityReport(
        requested_order=d,
        parallel=classification.all_parallel,
        repetitions=tuple(reps),
        component_sizes=sizes,
        max_stable_order=max_stable,
    )


def split_at_vertex(w: DoubleTrace, v: str) -> list[tuple[str, ...]]:
    """Cut the cyclic walk at every visit of v.

    Segment i starts with the exit vertex of visit i and ends with the
    entry vertex of visit i+1 (cyclically); v itself appears in no segment.
    Rebuilding as v + seg_0 + v + seg_1 + ... reproduces the walk started
    at its first visit of v.
    """
    positions = w.occurrences(v)
    if not positions:
        raise ValueError(f"vertex {v!r} does not occur in trace")
    n = len(w.steps)
    segments: list[tuple[str, ...]] = []
    for j, start in enumerate(positions):
        end = positions[(j + 1) % len(positions)]
        seg: list[str] = []
        i = (start + 1) % n
        while i != end:
            seg.append(w.steps[i])
            i = (i + 1) % n
        segments.append(tuple(seg))
    return segments


def join_segments(
    g: Graph, v: str, segments: list[tuple[str, ...]]
) -> DoubleTrace:
    """Inverse of split_at_vertex for a chosen segment order."""
    steps: list[str] = []
    for seg in segments:
        steps.append(v)
        steps.extend(seg)
    return validate_double_trace(g, steps)
