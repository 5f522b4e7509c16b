from __future__ import annotations

import math
import random

import numpy as np
import pytest

from helpers import bib_entry, bib_text
from slrviz.corpus import canonicalize_references, parse_bibtex, resolve_citations
from slrviz.network import (
    CitationGraph,
    ForceParams,
    _weight_matrix,
    build_citation_graph,
    force_step,
    initial_positions,
    run_layout,
)


def _graph_for(ref_lists: dict[str, list[str]], titles: dict[str, str] | None = None):
    entries = []
    for i, (sid, refs) in enumerate(ref_lists.items()):
        title = (titles or {}).get(sid, f"study about subject number {i}")
        entries.append(bib_entry(sid, title, f"abstract text {i}", keywords=[], references=refs))
    corpus = parse_bibtex(bib_text(entries))
    refs = canonicalize_references(corpus)
    cites = resolve_citations(corpus, refs)
    return build_citation_graph(corpus, refs, cites), cites


# --- graph construction -----------------------------------------------------


def test_shared_reference_counts_hand_example():
    graph, _ = _graph_for(
        {
            "s0": ["Alpha, A. first shared paper", "Beta, B. second shared paper", "Gamma, C. third one"],
            "s1": ["Alpha, A. first shared paper", "Beta, B. second shared paper"],
            "s2": ["Gamma, C. third one"],
            "s3": [],
        }
    )
    assert graph.shared_edges == {("s0", "s1"): 2, ("s0", "s2"): 1}
    assert graph.isolated_nodes() == ["s3"]


def test_identical_reference_lists_share_full_weight():
    refs = [
        "One, A. analysis of widgets and sprockets",
        "Two, B. empirical gadgets in the field",
        "Three, C. review of doohickeys over time",
    ]
    graph, _ = _graph_for({"s0": refs, "s1": list(refs)})
    assert graph.shared_edges == {("s0", "s1"): 3}


def _pool(size: int) -> list[str]:
    # pairwise token overlap stays far below the merge threshold
    nouns = ["widget", "ledger", "kernel", "sensor", "corpus", "lattice", "router", "beacon"]
    return [
        f"Author{i}, X. treatise on {nouns[i % len(nouns)]} variant {i} volume {100 + i}"
        for i in range(size)
    ]


def test_shared_counts_match_pairwise_intersection_oracle():
    rng = random.Random(42)
    pool = _pool(12)
    for trial in range(6):
        picks = {
            f"s{i}": sorted(rng.sample(range(len(pool)), rng.randint(0, 5)))
            for i in range(rng.randint(2, 12))
        }
        graph, _ = _graph_for({sid: [pool[j] for j in idx] for sid, idx in picks.items()})
        ids = sorted(picks, key=lambda s: int(s[1:]))
        for ai, a in enumerate(ids):
            for b in ids[ai + 1 :]:
                expected = len(set(picks[a]) & set(picks[b]))
                got = graph.shared_edges.get((a, b), 0)
                assert got == expected, (trial, a, b)


def test_isolated_nodes_match_degree_oracle():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 12)
        nodes = [f"n{i}" for i in range(n)]
        cite = [
            (rng.choice(nodes), rng.choice(nodes))
            for _ in range(rng.randint(0, n))
        ]
        cite = [(a, b) for a, b in cite if a != b]
        shared = {}
        for _ in range(rng.randint(0, n)):
            i, j = rng.sample(range(n), 2) if n >= 2 else (0, 0)
            if i != j:
                shared[(nodes[min(i, j)], nodes[max(i, j)])] = rng.randint(1, 6)
        graph = CitationGraph(nodes=nodes, cite_edges=cite, shared_edges=shared)
        touched = {x for e in cite for x in e} | {x for pair in shared for x in pair}
        assert graph.isolated_nodes() == [s for s in nodes if s not in touched]


def test_citation_edges_carried_over():
    titles = {
        "s0": "seminal planning of reviews",
        "s1": "follow up work on something else",
    }
    graph, cites = _graph_for(
        {"s0": [], "s1": ["Smith, J. seminal planning of reviews. 2001."]},
        titles=titles,
    )
    assert ("s1", "s0") in cites.edges
    assert graph.cite_edges == cites.edges


# --- spring weights -----------------------------------------------------------


def test_weight_matrix_rules():
    graph = CitationGraph(
        nodes=["a", "b", "c"],
        cite_edges=[("a", "b")],
        shared_edges={("a", "b"): 3, ("b", "c"): 9},
    )
    w = _weight_matrix(graph, ["a", "b", "c"], cap=4.0)
    assert w[0, 1] == 3.0  # shared count dominates the cite minimum of 1
    assert w[1, 2] == 4.0  # capped
    assert w[0, 2] == 0.0
    assert np.array_equal(w, w.T)


def test_cited_pair_without_shared_refs_gets_unit_weight():
    graph = CitationGraph(nodes=["a", "b"], cite_edges=[("b", "a")], shared_edges={})
    w = _weight_matrix(graph, ["a", "b"], cap=4.0)
    assert w[0, 1] == 1.0


# --- simulation ---------------------------------------------------------------


def test_force_step_hand_computed_attraction():
    positions = np.array([[0.0, 0.0], [2.0, 0.0]])
    weights = np.array([[0.0, 1.0], [1.0, 0.0]])
    params = ForceParams()
    moved, biggest = force_step(positions, weights, params)
    pull = params.c4 * params.c1 * math.log(2.0)  # toward the partner
    assert abs(moved[0, 0] - pull) <= 1e-12
    assert abs(moved[1, 0] - (2.0 - pull)) <= 1e-12
    assert moved[0, 1] == moved[1, 1] == 0.0
    assert abs(biggest - pull) <= 1e-12


def test_force_step_hand_computed_repulsion():
    positions = np.array([[0.0, 0.0], [4.0, 0.0]])
    weights = np.zeros((2, 2))
    params = ForceParams()
    moved, _ = force_step(positions, weights, params)
    push = params.c4 * params.c3 / math.sqrt(4.0)
    assert abs(moved[0, 0] - (-push)) <= 1e-12
    assert abs(moved[1, 0] - (4.0 + push)) <= 1e-12


def test_two_connected_nodes_settle_at_rest_length():
    graph = CitationGraph(nodes=["a", "b"], cite_edges=[("a", "b")], shared_edges={})
    params = ForceParams(iterations=500)
    layout = run_layout(graph, params, initial=np.array([[0.0, 0.0], [1.7, 0.0]]))
    d = math.dist(layout.positions["a"], layout.positions["b"])
    assert abs(d - params.c2) / params.c2 <= 0.01
    assert layout.iterations_run < 500  # early stop kicked in


def test_symmetric_chain_stays_symmetric():
    graph = CitationGraph(
        nodes=["a", "b", "c"],
        cite_edges=[],
        shared_edges={("a", "b"): 1, ("b", "c"): 1},
    )
    initial = np.array([[-1.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    layout = run_layout(graph, ForceParams(iterations=200), initial=initial)
    ax, ay = layout.positions["a"]
    bx, by = layout.positions["b"]
    cx, cy = layout.positions["c"]
    assert abs(ax + cx) <= 1e-9
    assert abs(bx) <= 1e-9
    assert ay == by == cy == 0.0


def test_isolated_nodes_sit_out_of_the_simulation():
    graph = CitationGraph(
        nodes=["a", "b", "lonely"],
        cite_edges=[("a", "b")],
        shared_edges={},
    )
    layout = run_layout(graph)
    assert layout.isolated == ["lonely"]
    assert "lonely" not in layout.positions
    assert set(layout.positions) == {"a", "b"}


def test_layout_deterministic_per_seed():
    graph = CitationGraph(
        nodes=[f"n{i}" for i in range(8)],
        cite_edges=[("n0", "n1"), ("n2", "n3")],
        shared_edges={("n1", "n2"): 2, ("n4", "n5"): 1, ("n5", "n6"): 3, ("n6", "n7"): 1},
    )
    a = run_layout(graph, ForceParams(seed=5))
    b = run_layout(graph, ForceParams(seed=5))
    c = run_layout(graph, ForceParams(seed=6))
    assert a.positions == b.positions
    assert a.positions != c.positions


def test_coincident_start_stays_finite():
    graph = CitationGraph(
        nodes=["a", "b", "c"],
        cite_edges=[("a", "b"), ("b", "c"), ("a", "c")],
        shared_edges={},
    )
    layout = run_layout(graph, ForceParams(iterations=50), initial=np.zeros((3, 2)))
    for x, y in layout.positions.values():
        assert np.isfinite(x) and np.isfinite(y)


def test_initial_positions_shape_validated():
    graph = CitationGraph(nodes=["a", "b"], cite_edges=[("a", "b")], shared_edges={})
    with pytest.raises(ValueError):
        run_layout(graph, initial=np.zeros((3, 2)))


def test_initial_positions_seeded():
    assert np.array_equal(initial_positions(5, 1), initial_positions(5, 1))
    assert not np.array_equal(initial_positions(5, 1), initial_positions(5, 2))


def test_iteration_budget_respected():
    graph = CitationGraph(
        nodes=["a", "b", "c", "d"],
        cite_edges=[("a", "b"), ("c", "d")],
        shared_edges={("b", "c"): 1},
    )
    layout = run_layout(graph, ForceParams(iterations=7, tol=0.0))
    assert layout.iterations_run == 7


def test_json_export_shape():
    graph = CitationGraph(
        nodes=["a", "b", "z"],
        cite_edges=[("a", "b")],
        shared_edges={("a", "b"): 2},
    )
    doc = run_layout(graph).to_json_dict()
    assert {n["id"] for n in doc["nodes"]} == {"a", "b"}
    for n in doc["nodes"]:
        assert 0.0 <= n["x"] <= 1.0 and 0.0 <= n["y"] <= 1.0
    assert doc["isolated"] == ["z"]
    assert doc["cite_edges"] == [{"source": "a", "target": "b"}]
    assert doc["shared_edges"] == [{"source": "a", "target": "b", "weight": 2}]
    assert doc["iterations_run"] >= 1
