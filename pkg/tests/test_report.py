from __future__ import annotations

from stabletrace.construct import parallel_d_stable
from stabletrace.report import (
    RunReport,
    analyze_tables,
    render_figures,
    sha256_of,
    stability_fields,
)
from stabletrace.trace import classify_edges, is_parallel_d_stable


def test_run_report_layout():
    report = RunReport(
        command="verify --d 2",
        digests={"graph_sha256": "ab", "trace_sha256": "cd"},
        outcome="verified",
        fields={"parallel": "true"},
        component_sizes={"v1": (4,), "v2": (2, 2)},
        elapsed_ms=3,
    )
    text = report.to_text()
    lines = text.splitlines()
    assert lines[0] == "command: verify --d 2"
    assert lines[1] == "graph_sha256: ab"
    assert lines[2] == "trace_sha256: cd"
    assert lines[3] == "outcome: verified"
    assert lines[4] == "parallel: true"
    assert lines[5] == "vertex_components: v1=4 v2=2,2"
    assert lines[6] == "elapsed_ms: 3"
    assert all(": " in line for line in lines)


def test_sha256_stable():
    assert sha256_of("a b\n") == sha256_of("a b\n")
    assert sha256_of("a b\n") != sha256_of("a c\n")


def test_stability_fields_strong_and_failing(k5):
    w = parallel_d_stable(k5, 2)
    good = stability_fields(is_parallel_d_stable(w, 2))
    assert good["stable"] == "true"
    assert good["max_stable_order"] == "strong"

    from stabletrace.construct import parallel_1_stable

    weak = stability_fields(is_parallel_d_stable(parallel_1_stable(k5), 2))
    assert weak["stable"] == "false"
    assert weak["max_stable_order"] == "1"
    assert "first_repetition" in weak


def test_render_figures_graph_only(tmp_path, k5):
    paths = render_figures(k5, tmp_path, "k5")
    assert [p.name for p in paths] == ["k5_graph.png"]
    assert all(p.exists() and p.stat().st_size > 0 for p in paths)


def test_render_figures_with_trace(tmp_path, fig7, fig7_trace):
    classification = classify_edges(fig7_trace)
    stability = is_parallel_d_stable(fig7_trace, 2)
    paths = render_figures(
        fig7, tmp_path / "out", "fig7", classification, stability
    )
    assert [p.name for p in paths] == ["fig7_graph.png", "fig7_stability.png"]
    assert all(p.exists() and p.stat().st_size > 0 for p in paths)


def test_analyze_tables_content(fig7_trace):
    text = analyze_tables(fig7_trace, classify_edges(fig7_trace))
    lines = text.splitlines()
    assert lines[0].startswith("# vertex")
    assert any(line.startswith("v6\t1\t4\t") for line in lines)
    assert "v1-v2\tparallel" in lines
    assert lines[-1] == "# overall\tparallel"
