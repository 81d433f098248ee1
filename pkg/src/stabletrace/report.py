"""Run reports and figure rendering for the command-line surface.

A RunReport serializes as one "key: value" block, stable across runs for a
fixed seed except for the trailing elapsed_ms line.  When asked, the
report path also renders matplotlib figures next to the delimited text
output: a drawing of the host graph with edges colored by their
parallel/antiparallel classification, and a per-vertex chart of transition
component sizes.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph
from .trace import DoubleTrace, EdgeClassification, StabilityReport


def sha256_of(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class RunReport:
    """Machine-readable outcome block for one CLI invocation."""

    command: str
    digests: dict[str, str] = field(default_factory=dict)
    outcome: str = ""
    fields: dict[str, str] = field(default_factory=dict)
    component_sizes: dict[str, tuple[int, ...]] | None = None
    elapsed_ms: int = 0

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key in sorted(self.digests):
            lines.append(f"{key}: {self.digests[key]}")
        lines.append(f"outcome: {self.outcome}")
        for key, value in self.fields.items():
            lines.append(f"{key}: {value}")
        if self.component_sizes is not None:
            parts = " ".join(
                f"{v}={','.join(map(str, sizes))}"
                for v, sizes in sorted(self.component_sizes.items())
            )
            lines.append(f"vertex_components: {parts}")
        lines.append(f"elapsed_ms: {self.elapsed_ms}")
        return "\n".join(lines) + "\n"


def stability_fields(report: StabilityReport) -> dict[str, str]:
    """Report lines shared by verify/construct outcomes."""
    max_order = "strong" if report.strong else str(report.max_stable_order)
    out = {
        "parallel": "true" if report.parallel else "false",
        "stable_order_checked": str(report.requested_order),
        "stable": "true" if report.stable else "false",
        "max_stable_order": max_order,
    }
    if report.repetitions:
        first = report.repetitions[0]
        out["first_repetition"] = (
            f"{first.vertex}:{{{' '.join(sorted(first.subset))}}}"
        )
    return out


def _circular_layout(g: Graph) -> dict[str, tuple[float, float]]:
    n = len(g.vertices)
    return {
        v: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i, v in enumerate(g.vertices)
    }


def render_figures(
    g: Graph,
    outdir: Path,
    stem: str,
    classification: EdgeClassification | None = None,
    stability: StabilityReport | None = None,
) -> list[Path]:
    """Render report figures to files and return their paths.

    Always draws the graph (edges colored by classification when one is
    given); adds a transition-component chart when a stability report is
    available.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    pos = _circular_layout(g)

    fig, ax = plt.subplots(figsize=(6, 6))
    colors = {"parallel": "tab:blue", "antiparallel": "tab:red"}
    for u, v in sorted(g.edges):
        (x1, y1), (x2, y2) = pos[u], pos[v]
        if classification is None:
            color, style = "0.6", "-"
        else:
            tag = classification.tags[(u, v)]
            color, style = colors[tag], "-" if tag == "parallel" else "--"
        ax.plot([x1, x2], [y1, y2], style, color=color, linewidth=1.4, zorder=1)
    xs = [pos[v][0] for v in g.vertices]
    ys = [pos[v][1] for v in g.vertices]
    ax.scatter(xs, ys, s=240, color="white", edgecolor="black", zorder=2)
    for v in g.vertices:
        ax.annotate(v, pos[v], ha="center", va="center", fontsize=8, zorder=3)
    if classification is not None:
        ax.set_title(f"edge classification: {classification.kind}")
    ax.set_aspect("equal")
    ax.axis("off")
    graph_path = outdir / f"{stem}_graph.png"
    fig.savefig(graph_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(graph_path)

    if stability is not None:
        fig, ax = plt.subplots(figsize=(7, max(2.5, 0.3 * len(g.vertices))))
        names = list(sorted(stability.component_sizes))
        mins = [min(stability.component_sizes[v]) for v in names]
        counts = [len(stability.component_sizes[v]) for v in names]
        bar_colors = [
            "tab:green" if c == 1 else ("tab:orange" if m > 2 else "tab:red")
            for m, c in zip(mins, counts)
        ]
        ax.barh(names, mins, color=bar_colors)
        ax.set_xlabel("smallest transition component")
        title = "strong trace" if stability.strong else (
            f"stable up to order {stability.max_stable_order}"
        )
        ax.set_title(title)
        fig.tight_layout()
        stability_path = outdir / f"{stem}_stability.png"
        fig.savefig(stability_path, dpi=150)
        plt.close(fig)
        written.append(stability_path)

    return written


def analyze_tables(w: DoubleTrace, classification: EdgeClassification) -> str:
    """Tab-delimited per-vertex components and per-edge classification."""
    from .trace import all_transition_systems

    lines = ["# vertex\tcomponents\tsizes\tmembers"]
    for v, ts in sorted(all_transition_systems(w).items()):
        comps = ts.components()
        sizes = ",".join(str(len(c)) for c in comps)
        members = "|".join("{" + " ".join(sorted(c)) + "}" for c in comps)
        lines.append(f"{v}\t{len(comps)}\t{sizes}\t{members}")
    lines.append("# edge\tclassification")
    for (u, v), tag in sorted(classification.tags.items()):
        lines.append(f"{u}-{v}\t{tag}")
    lines.append(f"# overall\t{classification.kind}")
    return "\n".join(lines) + "\n"
