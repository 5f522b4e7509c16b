"""Seeded spherical k-means over unit-normalized row vectors.

Distance is cosine-derived (1 - dot on unit rows); centroids are
re-normalized means, so the within-cluster objective is non-increasing
across iterations, which the fit asserts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class KMeansResult:
    labels: np.ndarray  # (n,) int cluster index
    centers: np.ndarray  # (k, d) unit rows (zero rows possible)
    objective: float
    iterations: int


def _normalize_rows(x: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(x, axis=1)
    safe = np.where(norms > 0, norms, 1.0)
    return x / safe[:, None]


def _objective(normed: np.ndarray, centers: np.ndarray, labels: np.ndarray) -> float:
    sims = np.einsum("ij,ij->i", normed, centers[labels])
    return float(np.sum(1.0 - sims))


def _seed_centers(normed: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++-style seeding with squared cosine distance."""
    n = normed.shape[0]
    centers = np.empty((k, normed.shape[1]))
    first = int(rng.integers(n))
    centers[0] = normed[first]
    d2 = (1.0 - normed @ centers[0]) ** 2
    for c in range(1, k):
        total = float(d2.sum())
        if total <= 0:
            # remaining points coincide with a chosen center
            idx = int(rng.integers(n))
        else:
            r = rng.random() * total
            idx = int(np.searchsorted(np.cumsum(d2), r))
            idx = min(idx, n - 1)
        centers[c] = normed[idx]
        d2 = np.minimum(d2, (1.0 - normed @ centers[c]) ** 2)
    return centers


def _repair_empty(labels: np.ndarray, centers: np.ndarray, normed: np.ndarray) -> None:
    """Give each empty cluster the member of the largest cluster that is
    farthest from its center (split-the-largest repair)."""
    k = centers.shape[0]
    while True:
        sizes = np.bincount(labels, minlength=k)
        empties = np.nonzero(sizes == 0)[0]
        if len(empties) == 0:
            return
        empty = int(empties[0])
        largest = int(np.argmax(sizes))
        members = np.nonzero(labels == largest)[0]
        sims = normed[members] @ centers[largest]
        moved = int(members[int(np.argmin(sims))])
        labels[moved] = empty
        centers[empty] = normed[moved]


def fit_kmeans(
    vectors: np.ndarray,
    k: int,
    seed: int,
    *,
    max_iter: int = 100,
    tol: float = 1e-6,
) -> KMeansResult:
    x = np.asarray(vectors, dtype=float)
    n = x.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must be in [1, {n}]")
    normed = _normalize_rows(x)
    rng = np.random.default_rng(seed)
    centers = _seed_centers(normed, k, rng)

    labels = np.zeros(n, dtype=int)
    prev_objective = np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        sims = normed @ centers.T
        labels = np.argmax(sims, axis=1)
        _repair_empty(labels, centers, normed)
        objective = _objective(normed, centers, labels)
        assert objective <= prev_objective + 1e-9, "k-means objective increased"
        prev_objective = objective

        new_centers = np.zeros_like(centers)
        for c in range(k):
            members = labels == c
            new_centers[c] = normed[members].mean(axis=0)
        new_centers = _normalize_rows(new_centers)
        movement = float(np.max(np.linalg.norm(new_centers - centers, axis=1)))
        centers = new_centers
        if movement < tol:
            break

    sims = normed @ centers.T
    labels = np.argmax(sims, axis=1)
    _repair_empty(labels, centers, normed)
    return KMeansResult(
        labels=labels,
        centers=centers,
        objective=_objective(normed, centers, labels),
        iterations=iterations,
    )


def medoid(normed: np.ndarray, member_indices: np.ndarray) -> int:
    """Index (into the full array) of the member with the highest mean
    similarity to its group; ties break to the lowest index."""
    block = normed[member_indices]
    mean_sims = block @ block.mean(axis=0)
    best = int(np.argmax(mean_sims))
    return int(member_indices[best])
