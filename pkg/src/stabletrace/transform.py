"""Expansion of high-degree vertices into paths, and trace projection back.

A vertex v with even degree 2k > 4 is replaced by a path P_v of (2k-2)/2
new vertices named v.1, v.2, ...; the two path endpoints absorb three of
v's neighbors each and every inner path vertex absorbs two, so all path
vertices end up with degree exactly 4.  Neighbors are assigned in
ascending order, which makes the expansion deterministic.  Contracting
each P_v back to v inverts the expansion, and a double trace of the
expanded graph projects to a double trace of the original by rewriting
path-vertex endpoints to v and dropping arcs internal to P_v.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MapMismatch, MinDegreeTooLow, OddDegree
from .graph import Edge, Graph, edge_key
from .trace import DoubleTrace, validate_double_trace


@dataclass(frozen=True)
class ExpansionMap:
    """Which path replaced each expanded vertex, and who absorbed whom.

    paths maps an original vertex to its ordered path vertices;
    assignment maps it to {original neighbor -> absorbing path vertex}.
    Sufficient to invert the expansion.
    """

    paths: dict[str, tuple[str, ...]] = field(default_factory=dict)
    assignment: dict[str, dict[str, str]] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return not self.paths

    def path_owner(self) -> dict[str, str]:
        """Inverse lookup: path vertex -> original vertex."""
        return {p: v for v, path in self.paths.items() for p in path}

    def to_text(self) -> str:
        lines = []
        for v in sorted(self.paths):
            path = " ".join(self.paths[v])
            pairs = " ".join(
                f"{n}={p}" for n, p in sorted(self.assignment[v].items())
            )
            lines.append(f"{v} : {path} ; {pairs}")
        return "\n".join(lines) + ("\n" if lines else "")

    @staticmethod
    def from_text(text: str) -> "ExpansionMap":
        paths: dict[str, tuple[str, ...]] = {}
        assignment: dict[str, dict[str, str]] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            head, pair_part = line.split(";")
            v, path_part = head.split(":")
            v = v.strip()
            paths[v] = tuple(path_part.split())
            assignment[v] = dict(
                item.split("=", 1) for item in pair_part.split()
            )
        return ExpansionMap(paths, assignment)


def expand_to_4_regular(g: Graph) -> tuple[Graph, ExpansionMap]:
    """Expand every vertex of degree > 4 into a path; result is 4-regular.

    Requires all degrees even (OddDegree) and minimum degree at least 4
    (MinDegreeTooLow).  Degree-4 vertices are untouched; a 4-regular input
    comes back unchanged with an empty map.
    """
    degs = g.degrees()
    odd = sorted(v for v, d in degs.items() if d % 2)
    if odd:
        raise OddDegree(f"odd-degree vertices: {' '.join(odd)}")
    if g.min_degree < 4:
        raise MinDegreeTooLow(f"minimum degree {g.min_degree} < 4")
    return _expand_high_degree(g)


def _expand_high_degree(g: Graph) -> tuple[Graph, ExpansionMap]:
    """Expansion core: replaces every even vertex of degree > 4.

    Tolerates degree-2 vertices (left untouched); used directly by the
    relaxed block heuristic where cutvertices may have degree 2.
    """
    paths: dict[str, tuple[str, ...]] = {}
    assignment: dict[str, dict[str, str]] = {}
    for v in g.vertices:
        d = g.degree(v)
        if d <= 4:
            continue
        m = (d - 2) // 2
        path = tuple(f"{v}.{j}" for j in range(1, m + 1))
        taken = iter(g.neighbors(v))  # ascending
        share: dict[str, str] = {}
        for j, p in enumerate(path):
            quota = 3 if j in (0, m - 1) else 2
            for _ in range(quota):
                share[next(taken)] = p
        paths[v] = path
        assignment[v] = share
    if not paths:
        return g, ExpansionMap()

    expansion = ExpansionMap(paths, assignment)

    def image(v: str, other: str) -> str:
        if v in paths:
            return assignment[v][other]
        return v

    new_edges: set[Edge] = set()
    for u, w in g.edges:
        new_edges.add(edge_key(image(u, w), image(w, u)))
    for path in paths.values():
        for a, b in zip(path, path[1:]):
            new_edges.add(edge_key(a, b))
    return Graph(new_edges), expansion


def project_trace(w: DoubleTrace, m: ExpansionMap) -> DoubleTrace:
    """Project a trace on the expanded graph back through the expansion.

    Arcs between path vertices of the same P_v are dropped; arcs touching a
    path vertex are rewritten with v as endpoint; all surviving arcs keep
    their direction.
    """
    if m.is_empty:
        return w
    owner = m.path_owner()
    for p in owner:
        if not w.host.has_vertex(p):
            raise MapMismatch(f"path vertex {p} missing from trace host")
    mapped = [owner.get(s, s) for s in w.steps]
    n = len(mapped)
    pivot = next((i for i in range(n) if mapped[i] != mapped[i - 1]), None)
    if pivot is None:
        raise MapMismatch("trace collapses to a single vertex")
    rotated = mapped[pivot:] + mapped[:pivot]
    collapsed = [rotated[0]]
    for s in rotated[1:]:
        if s != collapsed[-1]:
            collapsed.append(s)

    original_edges: set[Edge] = set()
    for u, v in w.host.edges:
        iu, iv = owner.get(u, u), owner.get(v, v)
        if iu != iv:
            original_edges.add(edge_key(iu, iv))
    try:
        original = Graph(original_edges)
    except Exception as exc:  # pragma: no cover - inconsistent map
        raise MapMismatch(str(exc)) from exc
    return validate_double_trace(original, collapsed)


def inversion_spec(m: ExpansionMap):
    """ContractionSpec that undoes the expansion (paths back to originals)."""
    from .graph import ContractionSpec

    vs = sorted(m.paths)
    return ContractionSpec(
        subtrees=tuple(frozenset(m.paths[v]) for v in vs),
        targets=tuple(vs),
    )
