"""Bundled citation edges: each edge is routed through the topic hierarchy
(leaf, ancestors to the lowest common one, down to the other leaf) and the
resulting control polygon is straightened toward its chord and sampled as
a clamped uniform cubic B-spline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clusters import HierarchyTree

__all__ = [
    "BundleParams",
    "BundledEdge",
    "BundleLayout",
    "control_path",
    "straighten",
    "sample_spline",
    "bundle",
    "build_bundle_layout",
]


@dataclass(frozen=True)
class BundleParams:
    beta: float = 0.85  # 1 = hug the hierarchy, 0 = straight chords
    samples: int = 50

    def __post_init__(self) -> None:
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must be in [0, 1]")
        if self.samples < 2:
            raise ValueError("samples must be >= 2")


@dataclass
class BundledEdge:
    source: str
    target: str
    points: list[tuple[float, float]]

    def to_json_dict(self) -> dict:
        ts = np.linspace(0.0, 1.0, len(self.points))
        return {
            "source": self.source,
            "target": self.target,
            "points": [
                {"x": x, "y": y, "t": float(t)} for (x, y), t in zip(self.points, ts)
            ],
        }


@dataclass
class BundleLayout:
    edges: list[BundledEdge]
    warnings: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"edges": [e.to_json_dict() for e in self.edges]}


def control_path(tree: HierarchyTree, a: str, b: str) -> list[tuple[float, float]]:
    """Positions along leaf a -> ancestors -> lowest common ancestor ->
    ancestors -> leaf b.  Length is depth(a) + depth(b) - 2*depth(lca) + 1.
    """
    if a == b:
        raise ValueError("edge endpoints must differ")
    up_a = tree.path_to_root(a)
    up_b = tree.path_to_root(b)
    ancestors_a = {key: i for i, key in enumerate(up_a)}
    lca_b = next(i for i, key in enumerate(up_b) if key in ancestors_a)
    lca_a = ancestors_a[up_b[lca_b]]
    keys = up_a[: lca_a + 1] + list(reversed(up_b[:lca_b]))
    return [tree.position_of(key) for key in keys]


def straighten(points: list[tuple[float, float]], beta: float) -> np.ndarray:
    """Pull interior control points toward the chord: each point becomes
    beta * itself + (1 - beta) * its parameter-matched chord point."""
    pts = np.asarray(points, dtype=float)
    m = len(pts)
    if m < 2:
        raise ValueError("need at least two control points")
    ts = np.linspace(0.0, 1.0, m)[:, None]
    chord = pts[0] + ts * (pts[-1] - pts[0])
    return beta * pts + (1.0 - beta) * chord


def sample_spline(controls: np.ndarray, samples: int) -> np.ndarray:
    """Evaluate the clamped uniform cubic B-spline over the control
    polygon at ``samples`` evenly spaced parameters.

    Two controls degenerate to the straight segment; three are promoted
    to the cubic Bezier [P0, P1, P1, P2].
    """
    pts = np.asarray(controls, dtype=float)
    ts = np.linspace(0.0, 1.0, samples)
    if len(pts) == 2:
        return pts[0] + ts[:, None] * (pts[1] - pts[0])
    if len(pts) == 3:
        pts = np.array([pts[0], pts[1], pts[1], pts[2]])
    return np.array([_deboor(pts, float(t)) for t in ts])


def _deboor(controls: np.ndarray, t: float) -> np.ndarray:
    """Cubic de Boor on a clamped uniform knot vector, t in [0, 1]."""
    m = len(controls)
    p = 3
    spans = m - p
    knots = np.concatenate(
        [np.zeros(p + 1), np.arange(1, spans) / spans, np.ones(p + 1)]
    )
    k = int(np.searchsorted(knots, t, side="right")) - 1
    k = min(max(k, p), m - 1)
    d = [controls[j + k - p].copy() for j in range(p + 1)]
    for r in range(1, p + 1):
        for j in range(p, r - 1, -1):
            lo = knots[j + k - p]
            hi = knots[j + 1 + k - r]
            alpha = 0.0 if hi == lo else (t - lo) / (hi - lo)
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j]
    return d[p]


def bundle(
    path: list[tuple[float, float]], params: BundleParams | None = None
) -> list[tuple[float, float]]:
    params = params or BundleParams()
    raw = np.asarray(path, dtype=float)
    controls = straighten(path, params.beta)
    sampled = sample_spline(controls, params.samples)
    # the clamped spline interpolates its end controls up to rounding in
    # straighten(); pin the ends to the original leaf positions bit-exactly
    sampled[0] = raw[0]
    sampled[-1] = raw[-1]
    return [(float(x), float(y)) for x, y in sampled]


def build_bundle_layout(
    tree: HierarchyTree,
    edges: list[tuple[str, str]],
    params: BundleParams | None = None,
) -> BundleLayout:
    params = params or BundleParams()
    out: list[BundledEdge] = []
    warnings: list[str] = []
    seen: set[tuple[str, str]] = set()
    for src, dst in edges:
        if (src, dst) in seen:
            continue
        seen.add((src, dst))
        if src not in tree.leaves or dst not in tree.leaves:
            missing = src if src not in tree.leaves else dst
            warnings.append(f"edge {src}->{dst} skipped: {missing} not in hierarchy")
            continue
        if src == dst:
            warnings.append(f"edge {src}->{dst} skipped: self loop")
            continue
        path = control_path(tree, src, dst)
        out.append(BundledEdge(source=src, target=dst, points=bundle(path, params)))
    return BundleLayout(edges=out, warnings=warnings)
