"""Deterministic graph generators and fixture graphs.

Randomized generation uses an explicit 64-bit linear congruential generator
(MMIX constants: state <- state * 6364136223846793005 + 1442695040888963407
mod 2^64, draws take the top 33 bits) so seeded output is identical across
platforms and Python versions.
"""

from __future__ import annotations

from .errors import GraphFormatError
from .graph import Edge, Graph, edge_key
from .trace import DoubleTrace, validate_double_trace

GENERATOR_NAMES = (
    "complete",
    "cycle",
    "octahedron",
    "circulant",
    "fig7",
    "fig8",
    "random_eulerian",
)


class Lcg:
    """Minimal deterministic PRNG; not for cryptography."""

    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = (seed ^ 0x9E3779B97F4A7C15) & self.MASK
        self._next()  # decorrelate small seeds

    def _next(self) -> int:
        self.state = (self.state * self.MULT + self.INC) & self.MASK
        return self.state

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return (self._next() >> 31) % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


def _names(n: int) -> list[str]:
    return [f"v{i}" for i in range(1, n + 1)]


def complete_graph(n: int) -> Graph:
    if n < 3:
        raise GraphFormatError("complete graph needs n >= 3")
    vs = _names(n)
    return Graph(
        edge_key(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)
    )


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphFormatError("cycle needs n >= 3")
    vs = _names(n)
    return Graph(edge_key(vs[i], vs[(i + 1) % n]) for i in range(n))


def octahedron() -> Graph:
    """K_{2,2,2}: six vertices, each adjacent to all but its antipode.

    Antipodal pairs are (v1, v2), (v3, v4), (v5, v6).
    """
    vs = _names(6)
    anti = {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4}
    return Graph(
        edge_key(vs[i], vs[j])
        for i in range(6)
        for j in range(i + 1, 6)
        if anti[i] != j
    )


def circulant_graph(n: int, offsets: tuple[int, ...] = (1, 2)) -> Graph:
    if n < 2 * max(offsets) + 1:
        raise GraphFormatError(f"circulant needs n >= {2 * max(offsets) + 1}")
    vs = _names(n)
    edges = set()
    for i in range(n):
        for off in offsets:
            edges.add(edge_key(vs[i], vs[(i + off) % n]))
    return Graph(edges)


# Two 4-regular fixtures used throughout the heuristics comparisons.
#
# fig7: eleven vertices, one cutvertex (v6) joining two blocks in which v6
# has degree 2; admits parallel 2-stable traces, but neither heuristic can
# build one.
FIG7_EDGES: tuple[Edge, ...] = (
    ("v1", "v2"), ("v2", "v3"), ("v1", "v3"), ("v1", "v4"), ("v2", "v4"),
    ("v3", "v4"), ("v1", "v5"), ("v2", "v5"), ("v3", "v5"), ("v4", "v6"),
    ("v5", "v6"), ("v6", "v7"), ("v6", "v8"), ("v7", "v9"), ("v7", "v10"),
    ("v7", "v11"), ("v8", "v9"), ("v8", "v10"), ("v8", "v11"), ("v9", "v10"),
    ("v10", "v11"), ("v9", "v11"),
)

# The known parallel 2-stable trace of fig7 (44 steps, start vertex first,
# no trailing repeat of the start).
FIG7_TRACE_STEPS: tuple[str, ...] = (
    "v1 v2 v3 v1 v2 v4 v1 v5 v2 v3 v4 v6 v5 v2 v4 v6 v7 v9 v8 v6 v7 v10 "
    "v8 v11 v7 v9 v10 v11 v7 v10 v11 v9 v8 v11 v9 v10 v8 v6 v5 v3 v1 v5 "
    "v3 v4"
).split()  # type: ignore[assignment]

# fig8: sixteen vertices; apexes v1..v4 each feed a triple, the triples are
# joined side-by-side as complete bipartite K_{3,3}, and edges v1v2, v3v4
# tie the two sides together.  Every degree is 4.
_FIG8_SIDES = {
    "v1": ("bl1", "bl2", "bl3"),
    "v2": ("br1", "br2", "br3"),
    "v3": ("tl1", "tl2", "tl3"),
    "v4": ("tr1", "tr2", "tr3"),
}


def _fig8_edges() -> list[Edge]:
    edges: list[Edge] = []
    for apex, trio in _FIG8_SIDES.items():
        edges.extend(edge_key(apex, t) for t in trio)
    edges.append(edge_key("v1", "v2"))
    edges.append(edge_key("v3", "v4"))
    for b in _FIG8_SIDES["v1"]:
        for t in _FIG8_SIDES["v3"]:
            edges.append(edge_key(b, t))
    for b in _FIG8_SIDES["v2"]:
        for t in _FIG8_SIDES["v4"]:
            edges.append(edge_key(b, t))
    return edges


def fig7() -> Graph:
    return Graph(FIG7_EDGES)


def fig8() -> Graph:
    return Graph(_fig8_edges())


def fig7_trace() -> DoubleTrace:
    return validate_double_trace(fig7(), FIG7_TRACE_STEPS)


def random_eulerian(n: int, seed: int, cycles: int | None = None) -> Graph:
    """Connected simple graph with all degrees even and min degree >= 4.

    Union of k edge-disjoint random Hamiltonian cycles (degrees exactly 2k),
    resampling any cycle that collides with edges already chosen.  k defaults
    to 2 or 3 depending on the seed.
    """
    rng = Lcg(seed)
    k = cycles if cycles is not None else 2 + rng.randrange(2)
    if k < 2:
        raise GraphFormatError("need at least two Hamiltonian cycles")
    if n < 2 * k + 1:
        raise GraphFormatError(f"n={n} too small for {k} edge-disjoint cycles")
    vs = _names(n)
    edges: set[Edge] = set()
    for _ in range(k):
        for _attempt in range(1000):
            perm = vs[:]
            rng.shuffle(perm)
            ring = [edge_key(perm[i], perm[(i + 1) % n]) for i in range(n)]
            if len(set(ring)) == n and not edges.intersection(ring):
                edges.update(ring)
                break
        else:  # pragma: no cover - astronomically unlikely for n >= 2k+1
            raise GraphFormatError("failed to sample edge-disjoint cycles")
    return Graph(edges)


def generate(name: str, params: tuple[int, ...] = (), seed: int = 0) -> Graph:
    """Dispatch by generator name; deterministic for fixed (name, params, seed)."""
    if name not in GENERATOR_NAMES:
        raise GraphFormatError(
            f"unknown generator {name!r}; choose from {', '.join(GENERATOR_NAMES)}"
        )
    try:
        if name == "complete":
            (n,) = params
            return complete_graph(n)
        if name == "cycle":
            (n,) = params
            return cycle_graph(n)
        if name == "octahedron":
            if params:
                raise ValueError
            return octahedron()
        if name == "circulant":
            n, *offsets = params
            return circulant_graph(n, tuple(offsets) if offsets else (1, 2))
        if name == "fig7":
            if params:
                raise ValueError
            return fig7()
        if name == "fig8":
            if params:
                raise ValueError
            return fig8()
        if name == "random_eulerian":
            if len(params) == 1:
                return random_eulerian(params[0], seed)
            n, k = params
            return random_eulerian(n, seed, cycles=k)
    except (TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad params {params} for {name!r}") from exc
    raise AssertionError("unreachable")
