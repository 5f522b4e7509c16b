"""Builders for synthetic corpora shared across the test modules."""

from __future__ import annotations

import random

TOPIC_VOCABS = [
    # disjoint content vocabularies, one per planted topic
    [
        "testing", "coverage", "mutation", "oracle", "assertion", "regression",
        "fault", "defect", "suite", "fixture", "branch", "verdict",
    ],
    [
        "projection", "embedding", "distance", "neighborhood", "scatter",
        "dimension", "manifold", "stress", "gradient", "layout", "plane", "axis",
    ],
    [
        "requirement", "stakeholder", "elicitation", "interview", "workshop",
        "traceability", "specification", "scenario", "goal", "conflict",
        "negotiation", "priority",
    ],
]

GENERIC_WORDS = ["study", "approach", "result", "method", "analysis"]


def bib_entry(
    key: str,
    title: str,
    abstract: str,
    keywords: list[str] | None = None,
    references: list[str] | None = None,
) -> str:
    fields = [f"  title = {{{title}}}", f"  abstract = {{{abstract}}}"]
    if keywords is not None:
        fields.append(f"  keywords = {{{'; '.join(keywords)}}}")
    if references is not None:
        fields.append(f"  references = {{{'; '.join(references)}}}")
    return f"@article{{{key},\n" + ",\n".join(fields) + "\n}"


def bib_text(entries: list[str]) -> str:
    return "\n\n".join(entries) + "\n"


def planted_topic_bibtex(
    per_topic: int = 20,
    n_topics: int = 3,
    seed: int = 11,
    words_per_doc: int = 30,
) -> tuple[str, dict[str, int]]:
    """Corpus with disjoint topic vocabularies: documents of the same
    topic share most of their terms, documents of different topics share
    only a few generic words."""
    rng = random.Random(seed)
    entries = []
    labels: dict[str, int] = {}
    for topic in range(n_topics):
        vocab = TOPIC_VOCABS[topic % len(TOPIC_VOCABS)]
        for i in range(per_topic):
            key = f"t{topic}d{i:02d}"
            words = [rng.choice(vocab) for _ in range(words_per_doc)]
            words += [rng.choice(GENERIC_WORDS) for _ in range(2)]
            title = f"{vocab[i % len(vocab)]} {vocab[(i + 1) % len(vocab)]} study"
            entries.append(
                bib_entry(key, title, " ".join(words), keywords=vocab[:2])
            )
            labels[key] = topic
    return bib_text(entries), labels


def citation_bibtex(seed: int = 5, n: int = 15) -> str:
    """Corpus whose references are built to exercise canonicalization,
    in-corpus citation resolution, and shared-reference counting."""
    rng = random.Random(seed)
    titles = [f"technique number {i} for software work" for i in range(n)]
    external = [
        "Kruskal 1964 multidimensional scaling",
        "Eades 1984 a heuristic for graph drawing",
        "Salton 1975 vector space model",
        "Porter 1980 suffix stripping",
        "Holten 2006 hierarchical edge bundles",
    ]
    entries = []
    for i in range(n):
        refs = []
        if i > 0:
            refs.append(titles[rng.randrange(i)])  # cite an earlier study
        k = rng.randrange(1, 4)
        refs += rng.sample(external, k)
        entries.append(
            bib_entry(
                f"s{i:02d}",
                titles[i],
                f"the abstract for study {i} covering software work and analysis "
                + " ".join(rng.choice(GENERIC_WORDS) for _ in range(6)),
                keywords=["software", "work"],
                references=refs,
            )
        )
    return bib_text(entries)
