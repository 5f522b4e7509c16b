"""Visual study-selection workbench for systematic literature reviews:
bibtex corpus in; document map, bundled citation edges, citation network,
and a scored review session out."""

from .corpus import (
    BibtexParseError,
    CanonicalReference,
    CitationLinks,
    Corpus,
    StudyRecord,
    canonicalize_references,
    corpus_to_bibtex,
    normalize_reference,
    parse_bibtex,
    resolve_citations,
)
from .textpipe import (
    EmptyVocabularyError,
    ExpressionHeat,
    PipelineConfig,
    TermDocumentMatrix,
    build_matrix,
    cosine_similarity,
    expression_frequency,
    knn,
    preprocess,
    tokenize,
)
from .porter import stem
from .projection import (
    DocumentMapLayout,
    ProjectionConfig,
    build_document_map,
    lsp_project,
    project_controls,
    select_control_points,
)
from .clusters import (
    ClusterModel,
    GroupNode,
    HierarchyTree,
    StudyLeaf,
    build_hierarchy,
    cluster,
    extract_topics,
)
from .bundles import BundleLayout, BundleParams, build_bundle_layout, bundle, control_path
from .network import (
    CitationGraph,
    ForceParams,
    NetworkLayout,
    build_citation_graph,
    run_layout,
)
from .session import (
    Decision,
    GoldStandard,
    ReviewMetrics,
    ReviewSession,
    Status,
    TimeRegressionError,
    compute_metrics,
    export_decision_table,
    import_decision_table,
    load_gold,
    load_session,
    save_session,
)
from .pipeline import MissingGoldError, Project, ProjectConfig
from .service import create_app

__version__ = "0.1.0"

__all__ = [
    "BibtexParseError",
    "BundleLayout",
    "BundleParams",
    "CanonicalReference",
    "CitationGraph",
    "CitationLinks",
    "ClusterModel",
    "Corpus",
    "Decision",
    "DocumentMapLayout",
    "EmptyVocabularyError",
    "ExpressionHeat",
    "ForceParams",
    "GoldStandard",
    "GroupNode",
    "HierarchyTree",
    "MissingGoldError",
    "NetworkLayout",
    "PipelineConfig",
    "Project",
    "ProjectConfig",
    "ProjectionConfig",
    "ReviewMetrics",
    "ReviewSession",
    "Status",
    "StudyLeaf",
    "TermDocumentMatrix",
    "TimeRegressionError",
    "build_citation_graph",
    "build_document_map",
    "build_hierarchy",
    "build_matrix",
    "build_bundle_layout",
    "bundle",
    "canonicalize_references",
    "cluster",
    "compute_metrics",
    "control_path",
    "corpus_to_bibtex",
    "cosine_similarity",
    "create_app",
    "expression_frequency",
    "export_decision_table",
    "extract_topics",
    "import_decision_table",
    "knn",
    "load_gold",
    "load_session",
    "lsp_project",
    "normalize_reference",
    "parse_bibtex",
    "preprocess",
    "project_controls",
    "resolve_citations",
    "run_layout",
    "save_session",
    "select_control_points",
    "stem",
    "tokenize",
]
