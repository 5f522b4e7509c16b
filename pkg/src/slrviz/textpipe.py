"""Term-vector representation of a corpus plus the similarity,
nearest-neighbor and expression-frequency queries built on it."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus, StudyRecord
from .porter import stem
from .stopwords import DEFAULT_STOPWORDS

__all__ = [
    "PipelineConfig",
    "TermDocumentMatrix",
    "ExpressionHeat",
    "EmptyVocabularyError",
    "tokenize",
    "preprocess",
    "build_matrix",
    "cosine_similarity",
    "knn",
    "expression_frequency",
]


class EmptyVocabularyError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    min_term_length: int = 2
    min_document_frequency: int = 2
    weighting: str = "tfidf"  # "tf" or "tfidf"
    knn_k: int = 5

    def __post_init__(self):
        if self.knn_k < 1:
            raise ValueError("knn_k must be >= 1")
        if self.min_document_frequency < 1:
            raise ValueError("min_document_frequency must be >= 1")
        if self.weighting not in ("tf", "tfidf"):
            raise ValueError(f"unknown weighting {self.weighting!r}")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric runs."""
    out = []
    current = []
    for ch in text.lower():
        if ch.isalnum():
            current.append(ch)
        elif current:
            out.append("".join(current))
            current = []
    if current:
        out.append("".join(current))
    return out


def preprocess(study: StudyRecord, config: PipelineConfig | None = None) -> list[str]:
    """Title + abstract + keywords -> filtered, stemmed token stream.

    Stopwords and short terms are dropped before stemming; token order
    is preserved.
    """
    config = config or PipelineConfig()
    tokens = tokenize(study.text())
    kept = [
        t
        for t in tokens
        if t not in config.stopwords and len(t) >= config.min_term_length
    ]
    return [stem(t) for t in kept]


@dataclass
class TermDocumentMatrix:
    """Dense weighted term-document matrix (desk-scale corpora)."""

    vocabulary: list[str]
    study_ids: list[str]
    weights: np.ndarray  # shape (n_studies, n_terms)
    norms: np.ndarray  # shape (n_studies,)
    term_index: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.term_index:
            self.term_index = {t: i for i, t in enumerate(self.vocabulary)}

    def index_of(self, study_id: str) -> int:
        try:
            return self.study_ids.index(study_id)
        except ValueError:
            raise KeyError(f"unknown study id {study_id!r}") from None

    def vector(self, study_id: str) -> np.ndarray:
        return self.weights[self.index_of(study_id)]

    def normalized_rows(self) -> np.ndarray:
        """Rows scaled to unit norm; zero rows stay zero."""
        safe = np.where(self.norms > 0, self.norms, 1.0)
        return self.weights / safe[:, None]

    def to_json_dict(self) -> dict:
        """Sparse (index, weight) export for debugging."""
        docs = {}
        for i, sid in enumerate(self.study_ids):
            row = self.weights[i]
            nz = np.nonzero(row)[0]
            docs[sid] = [[int(j), float(row[j])] for j in nz]
        return {"vocabulary": self.vocabulary, "documents": docs}


def build_matrix(corpus: Corpus, config: PipelineConfig | None = None) -> TermDocumentMatrix:
    """Vectorize the corpus.

    tf-idf weight is tf(t,d) * ln(N / df(t)); plain tf is selectable.
    Vocabulary keeps stemmed terms present in at least
    ``min_document_frequency`` documents, sorted lexicographically.
    """
    config = config or PipelineConfig()
    if len(corpus) == 0:
        raise ValueError("corpus is empty")
    token_lists = [preprocess(s, config) for s in corpus.studies]

    df: dict[str, int] = {}
    for tokens in token_lists:
        for t in set(tokens):
            df[t] = df.get(t, 0) + 1
    vocabulary = sorted(t for t, n in df.items() if n >= config.min_document_frequency)
    if not vocabulary:
        raise EmptyVocabularyError(
            "no terms survive filtering; relax min_document_frequency, "
            "min_term_length or the stopword list"
        )
    term_index = {t: i for i, t in enumerate(vocabulary)}

    n = len(corpus)
    weights = np.zeros((n, len(vocabulary)))
    for d, tokens in enumerate(token_lists):
        for t in tokens:
            j = term_index.get(t)
            if j is not None:
                weights[d, j] += 1.0
    if config.weighting == "tfidf":
        idf = np.array([math.log(n / df[t]) for t in vocabulary])
        weights *= idf[None, :]
    norms = np.linalg.norm(weights, axis=1)
    return TermDocumentMatrix(
        vocabulary=vocabulary,
        study_ids=corpus.ids,
        weights=weights,
        norms=norms,
        term_index=term_index,
    )


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """dot(a,b) / (|a||b|), clamped to [0,1]; 0 when either norm is 0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    value = float(np.dot(a, b)) / (na * nb)
    return min(1.0, max(0.0, value))


def knn(matrix: TermDocumentMatrix, study_id: str, k: int) -> list[tuple[str, float]]:
    """The k most similar studies to ``study_id``, descending similarity,
    ties broken by ascending corpus index."""
    n = len(matrix.study_ids)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k >= n:
        raise ValueError(f"k={k} must be smaller than the corpus size {n}")
    d = matrix.index_of(study_id)
    normed = matrix.normalized_rows()
    sims = normed @ normed[d]
    np.clip(sims, 0.0, 1.0, out=sims)
    order = sorted((i for i in range(n) if i != d), key=lambda i: (-sims[i], i))
    return [(matrix.study_ids[i], float(sims[i])) for i in order[:k]]


@dataclass
class ExpressionHeat:
    expression: str
    counts: dict[str, int]
    shade: dict[str, float]  # 0 = black (absent), 1 = white (corpus max)


def _count_token_sequence(haystack: list[str], needle: list[str]) -> int:
    m = len(needle)
    if m == 0 or m > len(haystack):
        return 0
    return sum(
        1
        for i in range(len(haystack) - m + 1)
        if haystack[i : i + m] == needle
    )


def expression_frequency(corpus: Corpus, expression: str) -> ExpressionHeat:
    """Count case-insensitive occurrences of the expression as a contiguous
    token sequence in each study's title+abstract+keywords.  No stemming
    and no stopword removal: the query is matched literally."""
    needle = tokenize(expression)
    if not needle:
        raise ValueError("expression is empty after trimming")
    counts: dict[str, int] = {}
    for s in corpus.studies:
        counts[s.id] = _count_token_sequence(tokenize(s.text()), needle)
    max_count = max(counts.values(), default=0)
    if max_count > 0:
        shade = {sid: c / max_count for sid, c in counts.items()}
    else:
        shade = {sid: 0.0 for sid in counts}
    return ExpressionHeat(expression=expression, counts=counts, shade=shade)
