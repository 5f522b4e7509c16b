"""Citation network: direct study-to-study citations plus undirected
edges weighted by how many canonical references two studies share,
laid out with a log-spring / inverse-sqrt-repulsion force simulation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import CanonicalReference, CitationLinks, Corpus

__all__ = [
    "CitationGraph",
    "ForceParams",
    "NetworkLayout",
    "build_citation_graph",
    "initial_positions",
    "force_step",
    "run_layout",
]


@dataclass
class CitationGraph:
    nodes: list[str]
    cite_edges: list[tuple[str, str]]
    shared_edges: dict[tuple[str, str], int]  # unordered pair (corpus order) -> count

    def degree(self, study_id: str) -> int:
        d = sum(1 for a, b in self.cite_edges if study_id in (a, b))
        d += sum(1 for pair in self.shared_edges if study_id in pair)
        return d

    def isolated_nodes(self) -> list[str]:
        touched = {s for e in self.cite_edges for s in e}
        touched.update(s for pair in self.shared_edges for s in pair)
        return [sid for sid in self.nodes if sid not in touched]


def build_citation_graph(
    corpus: Corpus,
    references: list[CanonicalReference],
    citations: CitationLinks,
) -> CitationGraph:
    """Shared-reference weights come from an inverted ref -> citing-studies
    index, so each canonical reference contributes one count to every pair
    of studies that lists it."""
    order = {sid: i for i, sid in enumerate(corpus.ids)}
    by_study: dict[str, set[str]] = {sid: set() for sid in corpus.ids}
    for ref in references:
        for study_id, _ in ref.aliases:
            by_study[study_id].add(ref.ref_id)

    weights: dict[tuple[str, str], int] = {}
    ref_to_studies: dict[str, list[str]] = {}
    for sid in corpus.ids:  # corpus order keeps pair keys deterministic
        for rid in by_study[sid]:
            ref_to_studies.setdefault(rid, []).append(sid)
    for rid, studies in ref_to_studies.items():
        for i in range(len(studies)):
            for j in range(i + 1, len(studies)):
                a, b = studies[i], studies[j]
                if order[a] > order[b]:
                    a, b = b, a
                weights[(a, b)] = weights.get((a, b), 0) + 1

    return CitationGraph(
        nodes=list(corpus.ids),
        cite_edges=list(citations.edges),
        shared_edges=dict(sorted(weights.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]]))),
    )


@dataclass(frozen=True)
class ForceParams:
    c1: float = 2.0  # spring strength
    c2: float = 1.0  # spring rest length
    c3: float = 1.0  # repulsion strength
    c4: float = 0.1  # step size
    iterations: int = 300
    weight_cap: float = 4.0
    tol: float = 1e-4  # stop once max displacement per step falls below
    seed: int = 0


@dataclass
class NetworkLayout:
    positions: dict[str, tuple[float, float]]
    isolated: list[str]
    iterations_run: int
    graph: CitationGraph
    warnings: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        from .projection import normalize_unit_square

        normalized = normalize_unit_square(self.positions)
        return {
            "nodes": [
                {"id": sid, "x": normalized[sid][0], "y": normalized[sid][1]}
                for sid in self.positions
            ],
            "isolated": list(self.isolated),
            "cite_edges": [
                {"source": a, "target": b}
                for a, b in self.graph.cite_edges
                if a in self.positions and b in self.positions
            ],
            "shared_edges": [
                {"source": a, "target": b, "weight": w}
                for (a, b), w in self.graph.shared_edges.items()
            ],
            "iterations_run": self.iterations_run,
        }


def initial_positions(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).random((n, 2))


def _weight_matrix(graph: CitationGraph, ids: list[str], cap: float) -> np.ndarray:
    """Symmetric per-pair spring weights: shared-reference count, at least 1
    for cited pairs, capped so heavy bundles cannot collapse the spring."""
    index = {sid: i for i, sid in enumerate(ids)}
    n = len(ids)
    w = np.zeros((n, n))
    for a, b in graph.cite_edges:
        if a in index and b in index and a != b:
            i, j = index[a], index[b]
            w[i, j] = max(w[i, j], 1.0)
            w[j, i] = w[i, j]
    for (a, b), count in graph.shared_edges.items():
        if a in index and b in index:
            i, j = index[a], index[b]
            w[i, j] = max(w[i, j], float(count))
            w[j, i] = w[i, j]
    return np.minimum(w, cap)


def force_step(
    positions: np.ndarray, weights: np.ndarray, params: ForceParams
) -> tuple[np.ndarray, float]:
    """One synchronous update.  Adjacent pairs feel a log spring toward
    rest length c2; non-adjacent pairs repel with c3 / sqrt(d).  Returns
    (new positions, max node displacement)."""
    n = positions.shape[0]
    if n <= 1:
        return positions.copy(), 0.0
    delta = positions[None, :, :] - positions[:, None, :]  # [i, j] = p_j - p_i
    dist = np.sqrt(np.sum(delta**2, axis=2))
    np.fill_diagonal(dist, 1.0)
    dist = np.maximum(dist, 1e-9)
    unit = delta / dist[:, :, None]

    adjacent = weights > 0
    spring = np.where(adjacent, params.c1 * np.log(dist / params.c2) * weights, 0.0)
    repel = np.where(adjacent, 0.0, -params.c3 / np.sqrt(dist))
    np.fill_diagonal(spring, 0.0)
    np.fill_diagonal(repel, 0.0)
    force = np.sum((spring + repel)[:, :, None] * unit, axis=1)

    step = params.c4 * force
    moved = positions + step
    return moved, float(np.max(np.sqrt(np.sum(step**2, axis=1))))


def run_layout(
    graph: CitationGraph,
    params: ForceParams | None = None,
    *,
    initial: np.ndarray | None = None,
) -> NetworkLayout:
    """Simulate the connected nodes; degree-zero nodes sit out and are
    reported in ``isolated``."""
    params = params or ForceParams()
    isolated = graph.isolated_nodes()
    sitting_out = set(isolated)
    active = [sid for sid in graph.nodes if sid not in sitting_out]

    if initial is not None:
        positions = np.array(initial, dtype=float)
        if positions.shape != (len(active), 2):
            raise ValueError(
                f"initial positions must be shaped ({len(active)}, 2)"
            )
    else:
        positions = initial_positions(len(active), params.seed)

    weights = _weight_matrix(graph, active, params.weight_cap)
    iterations = 0
    for _ in range(params.iterations):
        positions, biggest = force_step(positions, weights, params)
        iterations += 1
        if biggest < params.tol:
            break

    return NetworkLayout(
        positions={sid: (float(x), float(y)) for sid, (x, y) in zip(active, positions)},
        isolated=isolated,
        iterations_run=iterations,
        graph=graph,
    )
