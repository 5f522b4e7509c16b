"""Topic clustering over the term matrix and the balanced binary
hierarchy used for edge bundling.

Cluster labels are picked by contrast (mean weight inside the cluster
minus mean weight outside), and a term may label at most one cluster:
on a collision the cluster where the term is heavier inside keeps it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kmeans import fit_kmeans
from .projection import DocumentMapLayout
from .textpipe import TermDocumentMatrix

__all__ = [
    "ClusterModel",
    "cluster",
    "extract_topics",
    "StudyLeaf",
    "GroupNode",
    "HierarchyTree",
    "build_hierarchy",
]


@dataclass
class ClusterModel:
    labels: dict[str, int]
    topics: dict[int, list[str]]
    k: int
    seed: int

    def members(self, c: int) -> list[str]:
        return [sid for sid, lbl in self.labels.items() if lbl == c]

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "clusters": [
                {"cluster": c, "topics": self.topics.get(c, []), "studies": self.members(c)}
                for c in range(self.k)
            ],
        }


def cluster(
    matrix: TermDocumentMatrix,
    k: int,
    seed: int = 0,
    *,
    terms_per_cluster: int = 3,
) -> ClusterModel:
    n = len(matrix.study_ids)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for {n} studies")
    result = fit_kmeans(matrix.weights, k, seed)
    labels = {sid: int(result.labels[i]) for i, sid in enumerate(matrix.study_ids)}
    topics = extract_topics(matrix, labels, terms_per_cluster=terms_per_cluster)
    return ClusterModel(labels=labels, topics=topics, k=k, seed=seed)


def extract_topics(
    matrix: TermDocumentMatrix,
    labels: dict[str, int],
    *,
    terms_per_cluster: int = 3,
) -> dict[int, list[str]]:
    """Contrast-ranked label terms, unique across clusters.

    Every cluster ranks terms by inside-mean minus outside-mean weight.
    Clusters then claim candidates best-first; when two clusters want the
    same term, the one with the higher inside-mean keeps it (ties go to
    the lower cluster index) and the other moves down its list.
    """
    if terms_per_cluster < 1:
        raise ValueError("terms_per_cluster must be >= 1")
    ids = matrix.study_ids
    ks = sorted(set(labels.values()))
    w = matrix.weights
    n = len(ids)

    inside_mean: dict[int, np.ndarray] = {}
    ranked: dict[int, list[str]] = {}
    for c in ks:
        members = [i for i, sid in enumerate(ids) if labels[sid] == c]
        rest = [i for i in range(n) if i not in set(members)]
        mean_in = w[members].mean(axis=0)
        mean_out = w[rest].mean(axis=0) if rest else np.zeros(w.shape[1])
        score = mean_in - mean_out
        inside_mean[c] = mean_in
        ranked[c] = sorted(
            matrix.vocabulary, key=lambda t: (-score[matrix.term_index[t]], t)
        )

    held: dict[int, list[str]] = {c: [] for c in ks}
    owner: dict[str, int] = {}
    cursor: dict[int, int] = {c: 0 for c in ks}
    active = True
    while active:
        active = False
        for c in ks:
            while len(held[c]) < terms_per_cluster and cursor[c] < len(ranked[c]):
                term = ranked[c][cursor[c]]
                cursor[c] += 1
                rival = owner.get(term)
                if rival is None:
                    owner[term] = c
                    held[c].append(term)
                elif _beats(inside_mean, matrix.term_index[term], c, rival):
                    held[rival].remove(term)
                    owner[term] = c
                    held[c].append(term)
                    active = True  # rival must go shopping again
    return {c: held[c] for c in ks}


def _beats(inside_mean: dict[int, np.ndarray], ti: int, challenger: int, holder: int) -> bool:
    a, b = inside_mean[challenger][ti], inside_mean[holder][ti]
    if a != b:
        return a > b
    return challenger < holder


# --- edge-bundling hierarchy -------------------------------------------------


@dataclass
class StudyLeaf:
    study_id: str
    position: tuple[float, float]


@dataclass
class GroupNode:
    node_id: str
    children: list["GroupNode | StudyLeaf"]
    position: tuple[float, float] = (0.0, 0.0)


@dataclass
class HierarchyTree:
    root: GroupNode
    parents: dict[str, str] = field(default_factory=dict)  # child key -> group id
    leaves: dict[str, StudyLeaf] = field(default_factory=dict)
    groups: dict[str, GroupNode] = field(default_factory=dict)

    @staticmethod
    def _key(node: "GroupNode | StudyLeaf") -> str:
        return node.study_id if isinstance(node, StudyLeaf) else node.node_id

    def index(self) -> None:
        self.parents.clear()
        self.leaves.clear()
        self.groups.clear()
        stack: list[GroupNode] = [self.root]
        self.groups[self.root.node_id] = self.root
        while stack:
            g = stack.pop()
            for child in g.children:
                self.parents[self._key(child)] = g.node_id
                if isinstance(child, StudyLeaf):
                    self.leaves[child.study_id] = child
                else:
                    self.groups[child.node_id] = child
                    stack.append(child)

    def path_to_root(self, study_id: str) -> list[str]:
        """Keys from the leaf up to (and including) the root."""
        if study_id not in self.leaves:
            raise KeyError(study_id)
        path = [study_id]
        while path[-1] != self.root.node_id:
            path.append(self.parents[path[-1]])
        return path

    def depth_in_edges(self, study_id: str) -> int:
        return len(self.path_to_root(study_id)) - 1

    def position_of(self, key: str) -> tuple[float, float]:
        if key in self.leaves:
            return self.leaves[key].position
        return self.groups[key].position


def build_hierarchy(
    matrix: TermDocumentMatrix,
    layout: DocumentMapLayout,
    *,
    leaf_capacity: int = 8,
    seed: int = 0,
) -> HierarchyTree:
    """Balanced binary topic hierarchy over the corpus.

    Splits are 2-means refined to an exact half split (members ranked by
    similarity-to-A minus similarity-to-B, top half to A), so a corpus of
    N studies bottoms out after ceil(log2(N / leaf_capacity)) halvings and
    every leaf sits at most one edge deeper.  Group positions are the mean
    of their children; leaves carry their map position.
    """
    if leaf_capacity < 1:
        raise ValueError("leaf_capacity must be >= 1")
    ids = matrix.study_ids
    normed = matrix.normalized_rows()
    counter = [0]

    def next_id() -> str:
        counter[0] += 1
        return f"g{counter[0] - 1:04d}"

    def make_leaf(i: int) -> StudyLeaf:
        sid = ids[i]
        return StudyLeaf(study_id=sid, position=layout.positions[sid])

    def build(members: list[int], rng: np.random.Generator) -> GroupNode | StudyLeaf:
        if len(members) == 1:
            return make_leaf(members[0])
        gid = next_id()
        if len(members) <= leaf_capacity:
            return GroupNode(gid, [make_leaf(i) for i in members])
        half_a, half_b = _balanced_split(normed, members, rng)
        return GroupNode(gid, [build(half_a, rng), build(half_b, rng)])

    rng = np.random.default_rng(seed)
    if not ids:
        root = GroupNode(next_id(), [])
    else:
        built = build(list(range(len(ids))), rng)
        if isinstance(built, StudyLeaf):
            root = GroupNode(next_id(), [built])
        else:
            root = built
    _fill_positions(root)
    tree = HierarchyTree(root=root)
    tree.index()
    return tree


def _balanced_split(
    normed: np.ndarray, members: list[int], rng: np.random.Generator
) -> tuple[list[int], list[int]]:
    """Split members into ceil(n/2) / floor(n/2) along a 2-means direction."""
    vecs = normed[members]
    seed = int(rng.integers(0, 2**31 - 1))
    result = fit_kmeans(vecs, 2, seed)
    sims_a = vecs @ result.centers[0]
    sims_b = vecs @ result.centers[1]
    order = sorted(range(len(members)), key=lambda i: (-(sims_a[i] - sims_b[i]), i))
    cut = math.ceil(len(members) / 2)
    half_a = sorted(members[i] for i in order[:cut])
    half_b = sorted(members[i] for i in order[cut:])
    return half_a, half_b


def _fill_positions(node: GroupNode | StudyLeaf) -> tuple[float, float]:
    if isinstance(node, StudyLeaf):
        return node.position
    if not node.children:
        node.position = (0.0, 0.0)
        return node.position
    pts = [_fill_positions(child) for child in node.children]
    node.position = (
        sum(p[0] for p in pts) / len(pts),
        sum(p[1] for p in pts) / len(pts),
    )
    return node.position
