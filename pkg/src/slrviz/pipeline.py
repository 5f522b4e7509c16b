"""End-to-end project state: corpus in, coordinated views out.

A Project owns the term matrix, the document map, the topic hierarchy,
the citation network and the review session for one corpus + config
pair, computing each lazily and exactly once.  All JSON views share the
same unit-square coordinates so a frontend can overlay them directly.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .bundles import BundleLayout, BundleParams, build_bundle_layout
from .clusters import ClusterModel, HierarchyTree, build_hierarchy, cluster
from .corpus import (
    CanonicalReference,
    CitationLinks,
    Corpus,
    canonicalize_references,
    resolve_citations,
)
from .network import CitationGraph, ForceParams, NetworkLayout, build_citation_graph, run_layout
from .projection import (
    DocumentMapLayout,
    ProjectionConfig,
    build_document_map,
    normalize_unit_square,
)
from .session import GoldStandard, ReviewSession, Status, compute_metrics
from .svg import render_bundles_svg, render_map_svg, render_network_svg
from .textpipe import PipelineConfig, TermDocumentMatrix, build_matrix, expression_frequency, knn

__all__ = ["ProjectConfig", "Project", "MissingGoldError"]

VIEW_KINDS = ("map", "bundles", "network")
OVERLAYS = ("none", "status", "clusters", "expression", "knn")


class MissingGoldError(RuntimeError):
    """Metrics were requested before a gold standard was supplied."""


def default_cluster_k(n: int) -> int:
    if n <= 1:
        return 1
    return max(2, min(12, round(math.sqrt(n))))


@dataclass(frozen=True)
class ProjectConfig:
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    projection: ProjectionConfig = field(default_factory=ProjectionConfig)
    bundle: BundleParams = field(default_factory=BundleParams)
    force: ForceParams = field(default_factory=ForceParams)
    cluster_k: int | None = None  # None -> default_cluster_k(N)
    leaf_capacity: int = 8
    seed: int = 0

    def seeded(self) -> "ProjectConfig":
        """Push the project seed into every stochastic component."""
        return replace(
            self,
            projection=replace(self.projection, seed=self.seed),
            force=replace(self.force, seed=self.seed),
        )

    def fingerprint(self) -> str:
        payload = json.dumps(
            {
                "stopwords": sorted(self.pipeline.stopwords),
                "min_term_length": self.pipeline.min_term_length,
                "min_document_frequency": self.pipeline.min_document_frequency,
                "weighting": self.pipeline.weighting,
                "knn_k": self.pipeline.knn_k,
                "control_count": self.projection.control_count,
                "neighborhood_k": self.projection.neighborhood_k,
                "beta": self.bundle.beta,
                "samples": self.bundle.samples,
                "force": [
                    self.force.c1, self.force.c2, self.force.c3, self.force.c4,
                    self.force.iterations, self.force.weight_cap, self.force.tol,
                ],
                "cluster_k": self.cluster_k,
                "leaf_capacity": self.leaf_capacity,
                "seed": self.seed,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class Project:
    def __init__(self, corpus: Corpus, config: ProjectConfig | None = None) -> None:
        self.corpus = corpus
        self.config = (config or ProjectConfig()).seeded()
        self.session = ReviewSession(
            corpus_hash=corpus.content_hash(), study_ids=list(corpus.ids)
        )
        self.gold: GoldStandard | None = None
        self.selection: list[str] = []
        self._cache: dict[str, object] = {}
        # an unusable corpus should fail at ingest, not at first view;
        # an empty corpus is fine and yields empty views
        if corpus.studies:
            self.matrix

    def _memo(self, key: str, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # --- computed layers ------------------------------------------------

    @property
    def matrix(self) -> TermDocumentMatrix:
        def build() -> TermDocumentMatrix:
            if not self.corpus.studies:
                return TermDocumentMatrix(
                    vocabulary=[],
                    study_ids=[],
                    weights=np.zeros((0, 0)),
                    norms=np.zeros(0),
                )
            return build_matrix(self.corpus, self.config.pipeline)

        return self._memo("matrix", build)

    @property
    def document_map(self) -> DocumentMapLayout:
        return self._memo(
            "map", lambda: build_document_map(self.matrix, self.config.projection)
        )

    @property
    def map_positions(self) -> dict[str, tuple[float, float]]:
        """Unit-square positions shared by every view and export."""
        return self._memo(
            "map_unit", lambda: normalize_unit_square(self.document_map.positions)
        )

    @property
    def cluster_model(self) -> ClusterModel:
        def build() -> ClusterModel:
            if not self.corpus.studies:
                return ClusterModel(labels={}, topics={}, k=0, seed=self.config.seed)
            k = self.config.cluster_k or default_cluster_k(len(self.corpus.ids))
            return cluster(self.matrix, k, self.config.seed)

        return self._memo("clusters", build)

    @property
    def hierarchy(self) -> HierarchyTree:
        def build() -> HierarchyTree:
            normalized = replace_positions(self.document_map, self.map_positions)
            return build_hierarchy(
                self.matrix,
                normalized,
                leaf_capacity=self.config.leaf_capacity,
                seed=self.config.seed,
            )

        return self._memo("hierarchy", build)

    @property
    def references(self) -> list[CanonicalReference]:
        return self._memo("refs", lambda: canonicalize_references(self.corpus))

    @property
    def citations(self) -> CitationLinks:
        return self._memo(
            "cites", lambda: resolve_citations(self.corpus, self.references)
        )

    @property
    def bundle_layout(self) -> BundleLayout:
        return self._memo(
            "bundles",
            lambda: build_bundle_layout(
                self.hierarchy, self.citations.edges, self.config.bundle
            ),
        )

    @property
    def citation_graph(self) -> CitationGraph:
        return self._memo(
            "graph",
            lambda: build_citation_graph(self.corpus, self.references, self.citations),
        )

    @property
    def network_layout(self) -> NetworkLayout:
        return self._memo(
            "network", lambda: run_layout(self.citation_graph, self.config.force)
        )

    # --- review ----------------------------------------------------------

    def set_gold(self, gold: GoldStandard) -> None:
        unknown = sorted(gold.included - set(self.corpus.ids))
        if unknown:
            raise ValueError(f"gold ids not in corpus: {', '.join(unknown)}")
        self.gold = gold

    def metrics(self):
        if self.gold is None:
            raise MissingGoldError("no gold standard loaded")
        return compute_metrics(self.session, self.gold)

    # --- overlays ---------------------------------------------------------

    def _overlay_payload(
        self,
        overlay: str,
        *,
        expression: str | None = None,
        focus: str | None = None,
        k: int | None = None,
    ) -> dict:
        if overlay not in OVERLAYS:
            raise ValueError(f"unknown overlay {overlay!r}; expected one of {OVERLAYS}")
        if overlay == "expression":
            if not expression:
                raise ValueError("expression overlay needs an expression")
            heat = expression_frequency(self.corpus, expression)
            return {
                "expression": heat.expression,
                "counts": {sid: heat.counts[sid] for sid in self.corpus.ids},
                "shade": {sid: heat.shade[sid] for sid in self.corpus.ids},
            }
        if overlay == "knn":
            if not focus:
                raise ValueError("knn overlay needs a focus study")
            kk = k or self.config.pipeline.knn_k
            neighbors = knn(self.matrix, focus, kk)
            return {"focus": focus, "k": kk, "neighbors": [sid for sid, _ in neighbors]}
        return {}

    # --- serialized views --------------------------------------------------

    def _points(self) -> list[dict]:
        statuses = self.session.statuses()
        labels = self.cluster_model.labels
        controls = set(self.document_map.control_ids)
        return [
            {
                "id": sid,
                "x": self.map_positions[sid][0],
                "y": self.map_positions[sid][1],
                "is_control": sid in controls,
                "status": statuses[sid].value,
                "cluster": labels[sid],
            }
            for sid in self.corpus.ids
        ]

    def view_json(
        self,
        kind: str,
        *,
        overlay: str = "none",
        expression: str | None = None,
        focus: str | None = None,
        k: int | None = None,
    ) -> dict:
        if kind not in VIEW_KINDS:
            raise KeyError(f"unknown view {kind!r}; expected one of {VIEW_KINDS}")
        extra = self._overlay_payload(overlay, expression=expression, focus=focus, k=k)
        if kind == "map":
            body = {
                "kind": "map",
                "points": self._points(),
                "quality": self.document_map.quality,
                "clusters": [
                    {"cluster": c, "topics": ts}
                    for c, ts in sorted(self.cluster_model.topics.items())
                ],
            }
        elif kind == "bundles":
            body = {
                "kind": "bundles",
                "points": self._points(),
                "edges": [e.to_json_dict() for e in self.bundle_layout.edges],
            }
        else:
            statuses = self.session.statuses()
            net = self.network_layout.to_json_dict()
            for node in net["nodes"]:
                node["status"] = statuses[node["id"]].value
            body = {
                "kind": "network",
                **net,
                "isolated_status": {
                    sid: statuses[sid].value for sid in self.network_layout.isolated
                },
            }
        if overlay != "none":
            body["overlay"] = {"name": overlay, **extra}
        return body

    def view_svg(
        self,
        kind: str,
        *,
        overlay: str = "none",
        expression: str | None = None,
        focus: str | None = None,
        k: int | None = None,
    ) -> str:
        if kind not in VIEW_KINDS:
            raise KeyError(f"unknown view {kind!r}; expected one of {VIEW_KINDS}")
        extra = self._overlay_payload(overlay, expression=expression, focus=focus, k=k)
        statuses = self.session.statuses() if overlay == "status" else None
        if kind == "map":
            clusters = self.cluster_model.labels if overlay == "clusters" else None
            topics = self.cluster_model.topics if overlay == "clusters" else None
            shade = extra.get("shade") if overlay == "expression" else None
            highlight = None
            if overlay == "knn":
                highlight = set(extra["neighbors"]) | {extra["focus"]}
            return render_map_svg(
                self.document_map,
                statuses=statuses,
                clusters=clusters,
                topics=topics,
                shade=shade,
                highlight=highlight,
            )
        if kind == "bundles":
            return render_bundles_svg(self.document_map, self.bundle_layout, statuses=statuses)
        return render_network_svg(self.network_layout, statuses=statuses)

    def studies_json(self) -> dict:
        statuses = self.session.statuses()
        cited = self.citations.cited_counts
        return {
            "studies": [
                {
                    "id": s.id,
                    "title": s.title,
                    "abstract": s.abstract,
                    "keywords": s.keywords,
                    "status": statuses[s.id].value,
                    "cited_count": cited.get(s.id, 0),
                }
                for s in self.corpus.studies
            ]
        }

    def study_json(self, study_id: str) -> dict:
        study = self.corpus.get(study_id)
        return {
            "id": study.id,
            "title": study.title,
            "abstract": study.abstract,
            "keywords": study.keywords,
            "references": study.references,
            "status": self.session.status_of(study_id).value,
            "cited_count": self.citations.cited_counts.get(study_id, 0),
        }

    def warnings(self) -> list[str]:
        out = list(self.corpus.warnings)
        out += self.document_map.warnings
        out += self.citations.warnings
        out += self.bundle_layout.warnings
        return out


def replace_positions(
    layout: DocumentMapLayout, positions: dict[str, tuple[float, float]]
) -> DocumentMapLayout:
    return DocumentMapLayout(
        positions=dict(positions),
        control_ids=list(layout.control_ids),
        quality=layout.quality,
        warnings=list(layout.warnings),
    )
