"""Verification-suite tests: every check passes on honest graphs, fails with
a concrete counterexample on mutated ones, and reports merge
deterministically."""

from __future__ import annotations

import json

import pytest

from dlgraph import (
    DLGraph,
    DLParams,
    DLVertex,
    MutatedGraph,
    Scene3D,
    Segment,
    build_scene,
    check_counts,
    check_degree_law,
    check_lamplighter,
    check_level_condition,
    check_local_homogeneity,
    check_scene_graph_agreement,
    run_checks,
)
from dlgraph.verify import _lamp_state


def graph(p=2, q=3, layers=3):
    return DLGraph(DLParams(p, q, layers))


# ---------------------------------------------------------------------------
# degree law

def test_degree_law_passes_with_histogram():
    result = check_degree_law(graph())
    assert result.status == "pass"
    assert result.detail == {"degree_histogram": {2: 27, 3: 8, 5: 30}}


def test_degree_law_tiny():
    result = check_degree_law(graph(2, 2, 1))
    assert result.status == "pass"
    assert result.detail == {"degree_histogram": {2: 4}}


def test_degree_law_fails_on_removed_edge():
    g = graph()
    removed = next(g.edges())
    result = check_degree_law(MutatedGraph(g, drop_edges=[removed]))
    assert result.status == "fail"
    assert str(tuple(removed[1])) in result.counterexample or str(tuple(removed[0])) in result.counterexample


def test_degree_law_fails_on_added_edge():
    g = graph()
    assert not g.is_edge((2, 0, 0), (1, 1, 2))
    result = check_degree_law(MutatedGraph(g, add_edges=[((2, 0, 0), (1, 1, 2))]))
    assert result.status == "fail"


# ---------------------------------------------------------------------------
# level condition

@pytest.mark.parametrize("p,q,layers", [(2, 3, 3), (2, 2, 1), (3, 2, 1)])
def test_level_condition_passes(p, q, layers):
    result = check_level_condition(graph(p, q, layers))
    assert result.status == "pass"
    assert result.detail["basepoints"] == q**layers


def test_level_condition_counts_all_pairings():
    result = check_level_condition(graph(2, 3, 3))
    assert result.detail == {"basepoints": 27, "pairings": 65 * 27}


def test_level_condition_fails_on_mismatched_pair():
    # brown index 5 cannot sit at height 3 (the brown slot there has 1 vertex)
    result = check_level_condition(MutatedGraph(graph(), add_vertices=[(3, 0, 5)]))
    assert result.status == "fail"
    assert "(3, 0, 5)" in result.counterexample


# ---------------------------------------------------------------------------
# counts

def test_counts_pass():
    result = check_counts(graph())
    assert result.status == "pass"
    assert result.detail == {"vertices": 65, "edges": 114, "degree_sum": 228}


def test_counts_tiny():
    result = check_counts(graph(2, 2, 1))
    assert result.detail == {"vertices": 4, "edges": 4, "degree_sum": 8}


def test_counts_fail_on_mutations():
    g = graph()
    assert check_counts(MutatedGraph(g, drop_edges=[next(g.edges())])).status == "fail"
    assert check_counts(MutatedGraph(g, add_edges=[((2, 0, 0), (1, 1, 2))])).status == "fail"
    assert check_counts(MutatedGraph(g, add_vertices=[(0, 0, 27)])).status == "fail"


# ---------------------------------------------------------------------------
# local homogeneity

def test_local_homogeneity_passes_small():
    result = check_local_homogeneity(graph(2, 3, 4), 2)
    assert result.status == "pass"
    assert result.detail["interior_vertices"] == 36


def test_local_homogeneity_radius_one_ball_size():
    # |B(v, 1)| = 1 + p + q at interior vertices
    result = check_local_homogeneity(graph(2, 3, 2), 1)
    assert result.status == "pass"
    assert result.detail["ball_size"] == 6


def test_local_homogeneity_rejects_shallow_graphs():
    with pytest.raises(ValueError):
        check_local_homogeneity(graph(2, 3, 3), 2)
    with pytest.raises(ValueError):
        check_local_homogeneity(graph(), 0)


def test_local_homogeneity_fails_on_removed_interior_edge():
    g = graph(2, 2, 4)
    assert g.is_edge((3, 7, 1), (2, 3, 3))
    result = check_local_homogeneity(MutatedGraph(g, drop_edges=[((3, 7, 1), (2, 3, 3))]), 2)
    assert result.status == "fail"
    assert "ball around" in result.counterexample


# ---------------------------------------------------------------------------
# lamplighter

def test_lamplighter_four_cycle():
    result = check_lamplighter(graph(2, 2, 1))
    assert result.status == "pass"
    assert result.detail == {"states": 4, "slab_edges": 4}


def test_lamplighter_b2_l4():
    result = check_lamplighter(graph(2, 2, 4))
    assert result.status == "pass"
    assert result.detail["states"] == 80


def test_lamplighter_not_applicable_when_p_differs_from_q():
    result = check_lamplighter(graph(2, 3, 2))
    assert result.status == "skip"
    assert "not applicable" in result.detail["reason"]


def test_lamplighter_fails_on_mutations():
    g = graph(2, 2, 3)
    assert check_lamplighter(MutatedGraph(g, drop_edges=[next(g.edges())])).status == "fail"
    assert not g.is_edge((2, 0, 0), (1, 1, 1))
    assert check_lamplighter(MutatedGraph(g, add_edges=[((2, 0, 0), (1, 1, 1))])).status == "fail"


def test_lamp_encoding_move_semantics():
    # an up-move advances the cursor and writes the chosen orange child digit;
    # a down-move retreats it and writes the chosen brown child digit
    b, layers = 2, 3
    g = graph(b, b, layers)
    for top, bottom in g.edges():
        f_top, cur_top = _lamp_state(top, b, layers)
        f_bot, cur_bot = _lamp_state(bottom, b, layers)
        position = cur_top - 1
        assert cur_bot == position
        assert f_top[position] == top.orange % b
        assert f_bot[position] == bottom.brown % b
        assert all(f_top[i] == f_bot[i] for i in range(layers) if i != position)


def test_lamp_encoding_is_injective():
    b, layers = 3, 3
    g = graph(b, b, layers)
    states = {_lamp_state(v, b, layers) for v in g.vertices()}
    assert len(states) == (layers + 1) * b**layers


# ---------------------------------------------------------------------------
# scene agreement

def test_scene_agreement_passes():
    g = graph()
    result = check_scene_graph_agreement(g, build_scene(g))
    assert result.status == "pass"
    assert result.detail == {"dl_segments": 114}


def test_scene_agreement_fails_on_corrupted_segment():
    g = graph()
    scene = build_scene(g)
    segments = list(scene.segments)
    index = next(i for i, seg in enumerate(segments) if seg.kind == "dl")
    seg = segments[index]
    segments[index] = Segment(seg.kind, seg.a._replace(x=seg.a.x + 1), seg.b)
    result = check_scene_graph_agreement(g, Scene3D(scene.params, scene.view, tuple(segments)))
    assert result.status == "fail"
    assert f"segment {index}" in result.counterexample


def test_scene_agreement_fails_on_dropped_segment():
    g = graph()
    scene = build_scene(g)
    segments = tuple(seg for i, seg in enumerate(scene.segments) if not (seg.kind == "dl" and i < 5))
    result = check_scene_graph_agreement(g, Scene3D(scene.params, scene.view, segments))
    assert result.status == "fail"


def test_scene_agreement_fails_against_mutated_graph():
    g = graph()
    mutated = MutatedGraph(g, drop_edges=[next(g.edges())])
    result = check_scene_graph_agreement(mutated, build_scene(g))
    assert result.status == "fail"


def test_scene_agreement_checks_tree_planes():
    g = graph(2, 2, 1)
    scene = build_scene(g)
    segments = list(scene.segments)
    index = next(i for i, seg in enumerate(segments) if seg.kind == "tree-p")
    seg = segments[index]
    segments[index] = Segment(seg.kind, seg.a._replace(y=seg.a.y + 1), seg.b)
    result = check_scene_graph_agreement(g, Scene3D(scene.params, scene.view, tuple(segments)))
    assert result.status == "fail"
    assert "y=0" in result.counterexample


# ---------------------------------------------------------------------------
# suite runner and report

def test_run_checks_all_pass_on_reference_graph():
    report = run_checks(graph(2, 2, 4))
    assert report.all_passed
    assert [entry.status for entry in report.entries] == ["pass"] * 6


def test_run_checks_marks_inapplicable_entries():
    report = run_checks(graph())  # p != q and layers < 2*radius
    by_name = {entry.name: entry for entry in report.entries}
    assert by_name["check_lamplighter"].status == "skip"
    assert by_name["check_local_homogeneity"].status == "skip"
    assert report.all_passed  # skips do not fail the suite


def test_run_checks_selection_and_unknown_names():
    report = run_checks(graph(), names=["counts", "check_degree_law"])
    assert sorted(entry.name for entry in report.entries) == ["check_counts", "check_degree_law"]
    with pytest.raises(ValueError):
        run_checks(graph(), names=["bogus"])
    with pytest.raises(ValueError):
        run_checks(graph(), radius=4)


def test_report_order_is_deterministic():
    backwards = run_checks(graph(), names=["scene_graph_agreement", "level_condition", "counts"])
    forwards = run_checks(graph(), names=["counts", "level_condition", "scene_graph_agreement"])
    assert [e.name for e in backwards.entries] == [e.name for e in forwards.entries]
    assert [e.name for e in backwards.entries] == sorted(e.name for e in backwards.entries)


def test_report_text_is_stable_and_timing_free():
    report = run_checks(graph(), names=["counts"])
    text = report.to_text()
    assert text == run_checks(graph(), names=["counts"]).to_text()
    assert "[PASS] check_counts(layers=3 p=2 q=3)" in text
    assert "elapsed" not in text and "second" not in text


def test_report_json_shape():
    report = run_checks(graph(), names=["counts", "degree_law"])
    doc = json.loads(report.to_json())
    assert doc["all_passed"] is True
    assert [c["name"] for c in doc["checks"]] == ["check_counts", "check_degree_law"]
    for entry in doc["checks"]:
        assert set(entry) == {"name", "params", "status", "counterexample", "detail", "elapsed_seconds"}


def test_failed_entries_always_carry_counterexamples():
    g = graph()
    mutated = MutatedGraph(g, drop_edges=[next(g.edges())])
    for check in (check_counts, check_degree_law):
        result = check(mutated)
        assert result.status == "fail"
        assert result.counterexample


# ---------------------------------------------------------------------------
# mutation helper

def test_mutated_graph_surface():
    g = graph(2, 2, 2)
    edge = next(g.edges())
    mutated = MutatedGraph(g, drop_edges=[edge])
    assert not mutated.is_edge(*edge)
    assert edge[1] not in mutated.neighbors(edge[0])
    assert sum(1 for _ in mutated.edges()) == g.params.edge_count - 1

    extra = DLVertex(0, 0, 99)
    grown = MutatedGraph(g, add_vertices=[extra], add_edges=[(extra, (1, 0, 0))])
    assert extra in set(grown.vertices())
    assert grown.is_edge(extra, (1, 0, 0))
    assert extra in grown.neighbors((1, 0, 0))
    assert grown.neighbors(extra) == [(1, 0, 0)]
