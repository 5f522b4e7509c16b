"""Document map: anchor a subset of studies with classical MDS, then place
every other study at the mean of its term-space nearest neighbors by
solving the constrained Laplacian system exactly."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kmeans import fit_kmeans, medoid
from .textpipe import TermDocumentMatrix

__all__ = [
    "ProjectionConfig",
    "DocumentMapLayout",
    "default_control_count",
    "select_control_points",
    "project_controls",
    "lsp_project",
    "build_document_map",
    "normalize_unit_square",
]


@dataclass(frozen=True)
class ProjectionConfig:
    control_count: int | None = None  # None -> max(10, round(sqrt(N))), clamped
    neighborhood_k: int = 10
    seed: int = 0

    def resolved_control_count(self, n: int) -> int:
        c = self.control_count
        if c is None:
            c = max(10, round(math.sqrt(n)))
        c = min(c, n)
        if n >= 3 and c < 3:
            c = 3
        if not 1 <= c <= n:
            raise ValueError(f"control_count {c} out of range for corpus size {n}")
        return c

    def resolved_k(self, n: int) -> int:
        return max(1, min(self.neighborhood_k, n - 1))


@dataclass
class DocumentMapLayout:
    positions: dict[str, tuple[float, float]]
    control_ids: list[str]
    quality: float
    warnings: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        """Export with coordinates normalized to the unit square."""
        normalized = normalize_unit_square(self.positions)
        return {
            "points": [
                {
                    "id": sid,
                    "x": normalized[sid][0],
                    "y": normalized[sid][1],
                    "is_control": sid in set(self.control_ids),
                }
                for sid in self.positions
            ],
            "quality": self.quality,
        }


def normalize_unit_square(
    positions: dict[str, tuple[float, float]]
) -> dict[str, tuple[float, float]]:
    if not positions:
        return {}
    xs = [p[0] for p in positions.values()]
    ys = [p[1] for p in positions.values()]
    span_x = max(xs) - min(xs)
    span_y = max(ys) - min(ys)

    def scale(v: float, lo: float, span: float) -> float:
        return (v - lo) / span if span > 0 else 0.5

    return {
        sid: (scale(x, min(xs), span_x), scale(y, min(ys), span_y))
        for sid, (x, y) in positions.items()
    }


def select_control_points(
    matrix: TermDocumentMatrix, config: ProjectionConfig
) -> tuple[list[str], list[str]]:
    """Cluster the corpus and return one medoid study per cluster.

    Returns (control ids, warnings).  Degenerate corpora with fewer
    distinct vectors than requested controls fall back to the first
    ``control_count`` studies.
    """
    n = len(matrix.study_ids)
    count = config.resolved_control_count(n)
    warnings: list[str] = []
    normed = matrix.normalized_rows()
    distinct = len(np.unique(np.round(normed, 12), axis=0))
    if distinct < count:
        warnings.append(
            f"only {distinct} distinct vectors for {count} controls; "
            "falling back to the first studies in corpus order"
        )
        return [matrix.study_ids[i] for i in range(count)], warnings

    result = fit_kmeans(matrix.weights, count, config.seed)
    controls = []
    for c in range(count):
        members = np.nonzero(result.labels == c)[0]
        controls.append(matrix.study_ids[medoid(normed, members)])
    return controls, warnings


def project_controls(
    matrix: TermDocumentMatrix,
    control_ids: list[str],
    *,
    seed: int = 0,
) -> tuple[np.ndarray, list[str]]:
    """Classical metric MDS of the controls on d = 1 - cosine.

    Squared distances are double-centered, the top two eigenpairs give
    coordinates eigenvector * sqrt(eigenvalue), and each axis is sign-fixed
    so its first nonzero coordinate is positive.  If every control
    coincides (no positive eigenvalue) the controls go on a seeded unit
    circle instead.
    """
    if len(control_ids) < 3:
        raise ValueError("need at least 3 controls")
    idx = [matrix.index_of(sid) for sid in control_ids]
    normed = matrix.normalized_rows()[idx]
    sims = np.clip(normed @ normed.T, -1.0, 1.0)
    d = 1.0 - sims
    np.fill_diagonal(d, 0.0)

    c = len(idx)
    j = np.eye(c) - np.full((c, c), 1.0 / c)
    b = -0.5 * j @ (d**2) @ j
    b = (b + b.T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(b)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]

    tol = max(1e-12, 1e-9 * max(abs(float(eigvals[0])), 1e-30))
    warnings: list[str] = []
    if eigvals[0] <= tol:
        warnings.append("controls are mutually identical; placing on a unit circle")
        rng = np.random.default_rng(seed)
        offset = rng.random() * 2 * math.pi
        angles = offset + 2 * math.pi * np.arange(c) / c
        return np.column_stack([np.cos(angles), np.sin(angles)]), warnings

    coords = np.zeros((c, 2))
    for axis in range(2):
        lam = float(eigvals[axis])
        if lam > tol:
            coords[:, axis] = eigvecs[:, axis] * math.sqrt(lam)
    # deterministic sign: first nonzero coordinate of each axis positive
    for axis in range(2):
        col = coords[:, axis]
        nonzero = np.nonzero(np.abs(col) > 1e-12)[0]
        if len(nonzero) and col[nonzero[0]] < 0:
            coords[:, axis] = -col
    return coords, warnings


def _knn_sets(normed: np.ndarray, k: int) -> list[list[int]]:
    """Per row: indices of the k most cosine-similar other rows,
    ties broken by ascending index."""
    n = normed.shape[0]
    sims = normed @ normed.T
    out = []
    for i in range(n):
        order = sorted((j for j in range(n) if j != i), key=lambda j: (-sims[i, j], j))
        out.append(order[:k])
    return out


def lsp_project(
    matrix: TermDocumentMatrix,
    control_ids: list[str],
    control_coords: np.ndarray,
    config: ProjectionConfig,
) -> DocumentMapLayout:
    """Place non-control studies so each equals the mean of its term-space
    neighbors' positions, with controls hard-constrained.

    Components of the neighbor graph that cannot reach a control get an
    extra edge from their medoid to the nearest control (warned), which
    makes the reduced system nonsingular.
    """
    ids = matrix.study_ids
    n = len(ids)
    k = config.resolved_k(n)
    normed = matrix.normalized_rows()
    neighbor_sets = _knn_sets(normed, k)
    control_index = {sid: ci for ci, sid in enumerate(control_ids)}
    is_control = np.array([sid in control_index for sid in ids])
    warnings: list[str] = []

    neighbors = [list(ns) for ns in neighbor_sets]
    _attach_unreachable(neighbors, is_control, normed, ids, control_index, warnings)

    positions = np.zeros((n, 2))
    for sid, ci in control_index.items():
        positions[ids.index(sid)] = control_coords[ci]

    free = np.nonzero(~is_control)[0]
    if len(free):
        free_pos = {int(g): fi for fi, g in enumerate(free)}
        a = np.eye(len(free))
        rhs = np.zeros((len(free), 2))
        for fi, g in enumerate(free):
            w = 1.0 / len(neighbors[g])
            for j in neighbors[g]:
                if is_control[j]:
                    rhs[fi] += w * positions[j]
                else:
                    a[fi, free_pos[j]] -= w
        solution = np.linalg.solve(a, rhs)
        for fi, g in enumerate(free):
            positions[g] = solution[fi]

    quality = _neighborhood_preservation(positions, neighbor_sets, k)
    return DocumentMapLayout(
        positions={sid: (float(x), float(y)) for sid, (x, y) in zip(ids, positions)},
        control_ids=list(control_ids),
        quality=quality,
        warnings=warnings,
    )


def _attach_unreachable(
    neighbors: list[list[int]],
    is_control: np.ndarray,
    normed: np.ndarray,
    ids: list[str],
    control_index: dict[str, int],
    warnings: list[str],
) -> None:
    """Add medoid->nearest-control edges until every free node can reach a
    control along its out-edges."""
    n = len(neighbors)
    controls = [i for i in range(n) if is_control[i]]
    if not controls:
        return

    def reachable() -> np.ndarray:
        # reverse BFS: nodes whose out-edges eventually hit a control
        incoming: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            for j in neighbors[i]:
                incoming[j].append(i)
        seen = np.array(is_control, dtype=bool)
        stack = list(controls)
        while stack:
            j = stack.pop()
            for i in incoming[j]:
                if not seen[i]:
                    seen[i] = True
                    stack.append(i)
        return seen

    while True:
        seen = reachable()
        stuck = [i for i in range(n) if not seen[i]]
        if not stuck:
            return
        component = _weak_component(stuck, neighbors)
        m = medoid(normed, np.array(component))
        control_sims = normed[m] @ normed[controls].T
        target = controls[int(np.argmax(control_sims))]
        neighbors[m].append(target)
        warnings.append(
            f"no path from component of {ids[m]} to any control; "
            f"attached its medoid to {ids[target]}"
        )


def _weak_component(stuck: list[int], neighbors: list[list[int]]) -> list[int]:
    """Weakly-connected component (within the stuck set) containing the
    lowest-index stuck node."""
    stuck_set = set(stuck)
    adj: dict[int, set[int]] = {i: set() for i in stuck}
    for i in stuck:
        for j in neighbors[i]:
            if j in stuck_set:
                adj[i].add(j)
                adj[j].add(i)
    start = min(stuck)
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return sorted(seen)


def _neighborhood_preservation(
    positions: np.ndarray, term_neighbors: list[list[int]], k: int
) -> float:
    n = positions.shape[0]
    if n <= 1 or k < 1:
        return 1.0
    deltas = positions[:, None, :] - positions[None, :, :]
    dists = np.sqrt(np.sum(deltas**2, axis=2))
    scores = []
    for i in range(n):
        order = sorted((j for j in range(n) if j != i), key=lambda j: (dists[i, j], j))
        layout_nn = set(order[:k])
        scores.append(len(layout_nn & set(term_neighbors[i])) / k)
    return float(np.mean(scores))


def build_document_map(
    matrix: TermDocumentMatrix, config: ProjectionConfig | None = None
) -> DocumentMapLayout:
    """Full pipeline: controls -> MDS anchors -> Laplacian placement.

    Corpora of one or two studies skip the projection machinery and get
    fixed positions.
    """
    config = config or ProjectionConfig()
    ids = matrix.study_ids
    n = len(ids)
    if n == 0:
        return DocumentMapLayout(positions={}, control_ids=[], quality=1.0)
    if n == 1:
        return DocumentMapLayout(
            positions={ids[0]: (0.0, 0.0)}, control_ids=list(ids), quality=1.0
        )
    if n == 2:
        return DocumentMapLayout(
            positions={ids[0]: (0.0, 0.0), ids[1]: (1.0, 0.0)},
            control_ids=list(ids),
            quality=1.0,
        )
    controls, warnings = select_control_points(matrix, config)
    coords, mds_warnings = project_controls(matrix, controls, seed=config.seed)
    layout = lsp_project(matrix, controls, coords, config)
    layout.warnings = warnings + mds_warnings + layout.warnings
    return layout
