from __future__ import annotations

import pytest

from conftest import antiparallel_double, build_trace_corpus, perturb_trace

from stabletrace import corpus
from stabletrace.construct import parallel_1_stable
from stabletrace.corpus import Lcg
from stabletrace.errors import (
    DegreeTooLargeForOracle,
    EdgeCountMismatch,
    NonEdgeStep,
    WrongLength,
)
from stabletrace.graph import parse_graph
from stabletrace.trace import (
    Repetition,
    all_transition_systems,
    classify_edges,
    find_repetitions,
    find_repetitions_bruteforce,
    is_parallel_d_stable,
    join_segments,
    minimal_witnesses,
    reverse_trace,
    rotate_trace,
    split_at_vertex,
    transition_multigraph,
    validate_double_trace,
)

K5_CIRCUIT = ("v1", "v2", "v3", "v4", "v5", "v1", "v3", "v5", "v2", "v4")


def k5_doubled():
    return validate_double_trace(corpus.complete_graph(5), K5_CIRCUIT * 2)


def test_validate_fig7_trace(fig7, fig7_trace):
    assert fig7_trace.host == fig7
    assert fig7_trace.length == 44


def test_validate_triangle_doubled(triangle):
    w = validate_double_trace(triangle, ["v1", "v2", "v3", "v1", "v2", "v3"])
    assert w.length == 6


def test_validate_wrong_length(triangle):
    with pytest.raises(WrongLength):
        validate_double_trace(triangle, ["v1", "v2", "v3"])


def test_validate_non_edge_step(triangle):
    with pytest.raises(NonEdgeStep) as err:
        validate_double_trace(triangle, ["v1", "v2", "v3", "v1", "v2", "x"])
    assert err.value.position == 4


def test_validate_non_edge_step_at_wraparound():
    g = corpus.cycle_graph(5)
    steps = ["v1", "v2", "v3", "v4", "v5", "v1", "v2", "v3", "v4", "v3"]
    with pytest.raises(NonEdgeStep) as err:
        validate_double_trace(g, steps)
    assert err.value.position == 9
    assert err.value.pair == ("v3", "v1")


def test_validate_edge_count_mismatch():
    g = corpus.cycle_graph(4)
    steps = ["v1", "v2", "v1", "v2", "v3", "v4", "v3", "v4"]
    with pytest.raises(EdgeCountMismatch) as err:
        validate_double_trace(g, steps)
    assert err.value.count != 2


def test_classify_triangle_parallel(triangle):
    w = validate_double_trace(triangle, ["v1", "v2", "v3", "v1", "v2", "v3"])
    c = classify_edges(w)
    assert c.kind == "parallel"
    assert set(c.tags.values()) == {"parallel"}


def test_classify_triangle_antiparallel(triangle):
    w = validate_double_trace(triangle, ["v1", "v2", "v3", "v1", "v3", "v2"])
    assert classify_edges(w).kind == "antiparallel"


def test_classify_mixed_bowtie():
    g = parse_graph("c a\na b\nb c\nc d\nd e\ne c")
    w = validate_double_trace(g, ["c", "a", "b", "c", "a", "b", "c", "d", "e", "c", "e", "d"])
    c = classify_edges(w)
    assert c.kind == "mixed"
    assert c.tags[("a", "b")] == "parallel"
    assert c.tags[("d", "e")] == "antiparallel"


def test_classify_fig7_all_parallel(fig7_trace):
    c = classify_edges(fig7_trace)
    assert len(c.tags) == 22
    assert c.all_parallel


def test_transition_triangle_doubled(triangle):
    w = validate_double_trace(triangle, ["v1", "v2", "v3", "v1", "v2", "v3"])
    ts = transition_multigraph(w, "v2")
    assert ts.passages == (("v1", "v3"), ("v1", "v3"))
    assert ts.components() == (frozenset({"v1", "v3"}),)


def test_transition_fig7_v6(fig7_trace):
    ts = transition_multigraph(fig7_trace, "v6")
    assert ts.passages == (
        ("v4", "v5"),
        ("v4", "v7"),
        ("v5", "v8"),
        ("v7", "v8"),
    )
    assert len(ts.components()) == 1


def test_transition_k5_doubled_v1():
    ts = transition_multigraph(k5_doubled(), "v1")
    assert sorted(ts.passages) == [
        ("v2", "v4"),
        ("v2", "v4"),
        ("v3", "v5"),
        ("v3", "v5"),
    ]
    comps = ts.components()
    assert set(comps) == {frozenset({"v2", "v4"}), frozenset({"v3", "v5"})}


def test_all_transition_systems_matches_single(fig7_trace):
    everything = all_transition_systems(fig7_trace)
    for v in fig7_trace.host:
        assert everything[v] == transition_multigraph(fig7_trace, v)


@pytest.mark.parametrize("w", build_trace_corpus(24), ids=range(24))
def test_transition_systems_are_2_regular(w):
    for v, ts in all_transition_systems(w).items():
        assert len(ts.passages) == w.host.degree(v)
        incidence: dict[str, int] = {}
        for a, b in ts.passages:
            incidence[a] = incidence.get(a, 0) + 1
            incidence[b] = incidence.get(b, 0) + 1
        assert incidence == {n: 2 for n in w.host.neighbors(v)}


def test_parallel_traces_have_even_components():
    for w in build_trace_corpus(16):
        if not classify_edges(w).all_parallel:
            continue
        for ts in all_transition_systems(w).values():
            assert all(len(c) % 2 == 0 for c in ts.components())


def test_find_repetitions_fig7_empty(fig7_trace):
    assert find_repetitions(fig7_trace, 2) == []


def test_find_repetitions_k5_doubled():
    reps = find_repetitions(k5_doubled(), 2)
    assert {r.vertex for r in reps} == {"v1", "v2", "v3", "v4", "v5"}
    at_v1 = {r.subset for r in reps if r.vertex == "v1"}
    assert at_v1 == {frozenset({"v3", "v5"}), frozenset({"v2", "v4"})}
    assert all(r.order == 2 for r in reps)


def test_find_repetitions_triangle_doubled_empty(triangle):
    w = validate_double_trace(triangle, ["v1", "v2", "v3", "v1", "v2", "v3"])
    assert find_repetitions(w, 1) == []
    # the single spanning component is the full neighborhood, never a witness
    assert find_repetitions(w, 2) == []


def test_find_repetitions_rejects_order_zero(fig7_trace):
    with pytest.raises(ValueError):
        find_repetitions(fig7_trace, 0)
    with pytest.raises(ValueError):
        find_repetitions_bruteforce(fig7_trace, 0)


def test_bruteforce_guard_on_large_degree():
    leaves = [f"l{i:02d}" for i in range(1, 14)]
    star = parse_graph("\n".join(f"s {leaf}" for leaf in leaves))
    steps = []
    for leaf in leaves:
        steps += ["s", leaf]
    w = validate_double_trace(star, steps)
    with pytest.raises(DegreeTooLargeForOracle):
        find_repetitions_bruteforce(w, 2)


def test_bruteforce_matches_fast_on_named_examples(fig7_trace):
    for w in (fig7_trace, k5_doubled()):
        for d in (1, 2, 3):
            fast = set(find_repetitions(w, d))
            brute = find_repetitions_bruteforce(w, d)
            assert minimal_witnesses(brute) == fast


def test_bruteforce_detects_complement():
    brute = find_repetitions_bruteforce(k5_doubled(), 3)
    subsets_v1 = {r.subset for r in brute if r.vertex == "v1"}
    assert frozenset({"v2", "v4"}) in subsets_v1
    assert frozenset({"v3", "v5"}) in subsets_v1


def test_complement_closure_on_perturbed_traces():
    rng = Lcg(5)
    w = perturb_trace(parallel_1_stable(corpus.complete_graph(7)), rng)
    brute = find_repetitions_bruteforce(w, 5)
    by_vertex: dict[str, set[frozenset[str]]] = {}
    for r in brute:
        by_vertex.setdefault(r.vertex, set()).add(r.subset)
    for v, subsets in by_vertex.items():
        whole = set(w.host.neighbors(v))
        for n in subsets:
            complement = frozenset(whole - n)
            if 1 <= len(complement) <= 5:
                assert complement in subsets


def test_reversal_invariance():
    for w in build_trace_corpus(12):
        r = reverse_trace(w)
        for v in w.host:
            assert (
                transition_multigraph(w, v).passages
                == transition_multigraph(r, v).passages
            )
        assert find_repetitions(w, 3) == find_repetitions(r, 3)


def test_rotation_preserves_structure(fig7_trace):
    rot = rotate_trace(fig7_trace, 7)
    assert find_repetitions(rot, 3) == find_repetitions(fig7_trace, 3)
    assert classify_edges(rot).kind == "parallel"


def test_is_parallel_d_stable_fig7(fig7_trace):
    report = is_parallel_d_stable(fig7_trace, 2)
    assert report.stable
    assert report.parallel
    assert report.strong
    assert report.component_sizes["v6"] == (4,)


def test_is_parallel_d_stable_k5_doubled():
    report = is_parallel_d_stable(k5_doubled(), 2)
    assert not report.stable
    assert report.parallel
    assert report.max_stable_order == 1
    assert len(report.repetitions) == 10


def test_is_parallel_d_stable_triangle(triangle):
    w = validate_double_trace(triangle, ["v1", "v2", "v3", "v1", "v2", "v3"])
    report = is_parallel_d_stable(w, 1)
    assert report.stable
    assert report.strong


def test_is_parallel_d_stable_flags_antiparallel(triangle):
    w = antiparallel_double(triangle)
    report = is_parallel_d_stable(w, 1)
    assert not report.parallel
    assert not report.stable


def test_repetition_ordering():
    a = Repetition.of("v1", frozenset({"v2", "v4"}))
    b = Repetition.of("v1", frozenset({"v3", "v5"}))
    c = Repetition.of("v2", frozenset({"v1"}))
    assert sorted([c, b, a]) == [a, b, c]


def test_split_join_roundtrip():
    w = parallel_1_stable(corpus.complete_graph(5))
    segments = split_at_vertex(w, "v3")
    assert len(segments) == 4
    rebuilt = join_segments(w.host, "v3", segments)
    # rebuilt starts at v3's first visit; same cyclic word
    assert rebuilt.steps == rotate_trace(w, w.occurrences("v3")[0]).steps


def test_trace_text_roundtrip(fig7_trace):
    from stabletrace.trace import parse_trace_tokens

    text = fig7_trace.to_text()
    assert not text.strip().endswith(fig7_trace.steps[0] + " ")
    tokens = parse_trace_tokens(text)
    assert tuple(tokens) == fig7_trace.steps
