"""Simple undirected graphs: parsing, structural predicates, blocks, contraction.

Vertices are opaque string tokens ordered lexicographically.  Every
"arbitrary choice" downstream (start vertices, neighbor scanning) uses this
order, so all algorithms in the package are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DuplicateEdge,
    EmptyGraph,
    GraphFormatError,
    MultiNeighbor,
    NotATree,
    NotConnected,
    OverlappingSubtrees,
    SelfLoop,
)

Edge = tuple[str, str]


def edge_key(u: str, v: str) -> Edge:
    """Canonical unordered-edge key: endpoints in ascending order."""
    return (u, v) if u <= v else (v, u)


class Graph:
    """Immutable simple connected graph.

    Adjacency lists are kept sorted ascending; equality and hashing go by
    the edge set alone (vertex set is derived, isolated vertices cannot
    occur).
    """

    __slots__ = ("_edges", "_adj", "_vertices")

    def __init__(self, edges: Iterable[Edge]):
        canon: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at {u!r}")
            canon.add(edge_key(u, v))
        if not canon:
            raise EmptyGraph("graph has no edges")
        adj: dict[str, list[str]] = {}
        for u, v in canon:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        self._edges: frozenset[Edge] = frozenset(canon)
        self._adj: dict[str, tuple[str, ...]] = {
            v: tuple(sorted(ns)) for v, ns in sorted(adj.items())
        }
        self._vertices: tuple[str, ...] = tuple(self._adj)
        self._check_connected()

    def _check_connected(self) -> None:
        start = self._vertices[0]
        seen = {start}
        stack = [start]
        while stack:
            for n in self._adj[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        if len(seen) != len(self._vertices):
            missing = sorted(set(self._vertices) - seen)
            raise NotConnected(f"unreachable vertices: {' '.join(missing)}")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def degrees(self) -> dict[str, int]:
        return {v: len(ns) for v, ns in self._adj.items()}

    @property
    def min_degree(self) -> int:
        return min(len(ns) for ns in self._adj.values())

    @property
    def max_degree(self) -> int:
        return max(len(ns) for ns in self._adj.values())

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self._edges

    def has_vertex(self, v: str) -> bool:
        return v in self._adj

    def __contains__(self, v: str) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[str]:
        return iter(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._edges == other._edges

    def __hash__(self) -> int:
        return hash(self._edges)

    def __repr__(self) -> str:
        return f"Graph({len(self._vertices)} vertices, {len(self._edges)} edges)"

    def induced(self, vertex_set: Iterable[str]) -> "Graph":
        """Subgraph induced by the given vertices (must stay connected)."""
        keep = set(vertex_set)
        edges = [e for e in self._edges if e[0] in keep and e[1] in keep]
        return Graph(edges)

    def to_text(self) -> str:
        """Serialize to the line-oriented edge-list format."""
        return "\n".join(f"{u} {v}" for u, v in sorted(self._edges)) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse a line-oriented edge list into a Graph.

    One "u v" pair per line; lines starting with '#' and blank lines are
    ignored.  Duplicate edges, self-loops, and disconnected input are
    rejected with distinct errors.
    """
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected two tokens, got {len(tokens)}")
        u, v = tokens
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop at {u!r}")
        key = edge_key(u, v)
        if key in seen:
            raise DuplicateEdge(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
    if not edges:
        raise EmptyGraph("no edges in input")
    return Graph(edges)


def is_eulerian(g: Graph) -> bool:
    """True iff the graph is connected with all degrees even.

    Graph construction already guarantees connectivity, so only degree
    parity is examined.
    """
    return all(len(g.neighbors(v)) % 2 == 0 for v in g)


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (as vertex sets), cutvertices, and per-block bridge flags.

    Blocks are ordered by their smallest contained vertex.  A block is a
    bridge iff it consists of a single edge.
    """

    blocks: tuple[frozenset[str], ...]
    cutvertices: frozenset[str]
    bridge_flags: tuple[bool, ...]

    def block_edges(self, g: Graph, index: int) -> frozenset[Edge]:
        """Edges of one block.

        Two distinct blocks share at most one vertex, so membership of both
        endpoints identifies the block of an edge uniquely.
        """
        keep = self.blocks[index]
        return frozenset(e for e in g.edges if e[0] in keep and e[1] in keep)


def blocks_and_cutvertices(g: Graph) -> BlockDecomposition:
    """Standard block-cutvertex decomposition via iterative low-point DFS."""
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    parent: dict[str, str | None] = {}
    edge_stack: list[Edge] = []
    blocks: list[set[str]] = []
    cutvertices: set[str] = set()
    counter = 0

    root = g.vertices[0]
    parent[root] = None
    # Each stack frame: (vertex, iterator over its neighbors).
    disc[root] = low[root] = counter
    counter += 1
    stack: list[tuple[str, Iterator[str]]] = [(root, iter(g.neighbors(root)))]
    root_children = 0

    def pop_block(u: str, v: str) -> None:
        block: set[str] = set()
        while True:
            e = edge_stack.pop()
            block.update(e)
            if e == edge_key(u, v):
                break
        blocks.append(block)

    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in disc:
                parent[w] = v
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append(edge_key(v, w))
                stack.append((w, iter(g.neighbors(w))))
                if v == root:
                    root_children += 1
                advanced = True
                break
            if w != parent[v] and disc[w] < disc[v]:
                # back edge
                edge_stack.append(edge_key(v, w))
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                if u != root or root_children > 1:
                    cutvertices.add(u)
                pop_block(u, v)

    # Every root child satisfies low >= disc[root], so each subtree pops its
    # block on completion and the stack drains exactly.
    assert not edge_stack

    ordered = sorted((frozenset(b) for b in blocks), key=lambda b: min(b))
    flags = tuple(len(b) == 2 for b in ordered)
    return BlockDecomposition(tuple(ordered), frozenset(cutvertices), flags)


@dataclass(frozen=True)
class ContractionSpec:
    """Vertex-disjoint subtrees H_1..H_k and one target identifier each.

    A target may be a fresh name or a member of its subtree.
    """

    subtrees: tuple[frozenset[str], ...]
    targets: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.subtrees) != len(self.targets):
            raise ValueError("one target per subtree required")


def contract_subtrees(g: Graph, spec: ContractionSpec) -> Graph:
    """Contract each subtree H_i into its target vertex.

    Requires each H_i to induce a tree, subtrees to be pairwise disjoint,
    and every outside vertex to have at most one neighbor in each H_i.
    Internal subtree edges vanish; edges into a subtree are redirected to
    its target.
    """
    if not spec.subtrees:
        return g

    owner: dict[str, int] = {}
    for i, tree in enumerate(spec.subtrees):
        for v in tree:
            if not g.has_vertex(v):
                raise ValueError(f"subtree vertex {v!r} not in graph")
            if v in owner:
                raise OverlappingSubtrees(f"vertex {v} in two subtrees")
            owner[v] = i

    for i, tree in enumerate(spec.subtrees):
        internal = [e for e in g.edges if e[0] in tree and e[1] in tree]
        if len(internal) != len(tree) - 1 or not _induced_connected(g, tree):
            raise NotATree(f"subtree {i} does not induce a tree")
        counts: dict[str, int] = {}
        for u, v in g.edges:
            if (u in tree) != (v in tree):
                outside = v if u in tree else u
                counts[outside] = counts.get(outside, 0) + 1
        for outside, c in sorted(counts.items()):
            if c > 1:
                raise MultiNeighbor(
                    f"vertex {outside} has {c} neighbors in subtree {i}"
                )

    seen_targets: set[str] = set()
    for i, t in enumerate(spec.targets):
        if t in seen_targets:
            raise ValueError(f"duplicate target {t!r}")
        seen_targets.add(t)
        if t in owner:
            if owner[t] != i:
                raise ValueError(f"target {t!r} lies in another subtree")
        elif g.has_vertex(t):
            raise ValueError(f"target {t!r} collides with a surviving vertex")

    def image(v: str) -> str:
        return spec.targets[owner[v]] if v in owner else v

    new_edges: set[Edge] = set()
    for u, v in sorted(g.edges):
        iu, iv = image(u), image(v)
        if iu == iv:
            continue
        key = edge_key(iu, iv)
        if key in new_edges:
            # Only contraction can make two edges collapse onto the same
            # pair; treat as a neighbor-multiplicity breach.
            raise MultiNeighbor(f"contraction would duplicate edge {key[0]}-{key[1]}")
        new_edges.add(key)
    return Graph(new_edges)


def _induced_connected(g: Graph, vertex_set: frozenset[str]) -> bool:
    start = next(iter(vertex_set))
    seen = {start}
    stack = [start]
    while stack:
        for n in g.neighbors(stack.pop()):
            if n in vertex_set and n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(vertex_set)
