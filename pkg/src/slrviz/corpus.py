"""Bibtex ingestion: parse candidate studies, canonicalize their free-text
reference strings, and resolve which references point back into the corpus.

The bibtex dialect accepted here is ``@type{key, field = value, ...}`` where
a value is a balanced ``{...}`` group, a ``"..."`` string, or a bare token.
Reference lists live in a single ``references`` field whose entries are
separated by a configurable delimiter (semicolon by default, blank lines
also accepted); standard bibtex has no such field, so a convention is
required and this one is documented in the README.
"""

from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field

__all__ = [
    "BibtexParseError",
    "StudyRecord",
    "Corpus",
    "CanonicalReference",
    "CitationLinks",
    "parse_bibtex",
    "normalize_reference",
    "tokenize_normalized",
    "token_jaccard",
    "canonicalize_references",
    "resolve_citations",
    "corpus_to_bibtex",
]


class BibtexParseError(ValueError):
    """Raised for malformed bibtex; carries the byte offset and the index
    of the entry being parsed when the problem was found."""

    def __init__(self, message: str, offset: int, entry_index: int):
        super().__init__(f"{message} (byte offset {offset}, entry {entry_index})")
        self.message = message
        self.offset = offset
        self.entry_index = entry_index


@dataclass
class StudyRecord:
    """One candidate primary study."""

    id: str
    title: str
    abstract: str = ""
    keywords: list[str] = field(default_factory=list)
    references: list[str] = field(default_factory=list)
    raw_fields: dict[str, str] = field(default_factory=dict)

    def text(self) -> str:
        """Title, abstract and keywords joined; the content the term
        vectors and expression queries are built from."""
        return " ".join([self.title, self.abstract, " ".join(self.keywords)])


@dataclass
class Corpus:
    studies: list[StudyRecord]
    source: str = "<string>"
    loaded_at: float = 0.0
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        seen: dict[str, int] = {}
        for i, s in enumerate(self.studies):
            if s.id in seen:
                raise ValueError(
                    f"duplicate study id {s.id!r} (entries {seen[s.id]} and {i})"
                )
            seen[s.id] = i

    def __len__(self) -> int:
        return len(self.studies)

    @property
    def ids(self) -> list[str]:
        return [s.id for s in self.studies]

    def index_of(self, study_id: str) -> int:
        for i, s in enumerate(self.studies):
            if s.id == study_id:
                return i
        raise KeyError(f"unknown study id {study_id!r}")

    def get(self, study_id: str) -> StudyRecord:
        return self.studies[self.index_of(study_id)]

    def content_hash(self) -> str:
        """Stable identity over parsed content; excludes provenance."""
        payload = [
            [s.id, s.title, s.abstract, s.keywords, s.references]
            for s in self.studies
        ]
        blob = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass
class CanonicalReference:
    """A group of raw reference strings judged to denote the same work."""

    ref_id: str
    normalized_text: str
    aliases: list[tuple[str, int]]  # (study id, index in its reference list)
    matched_study: str | None = None


@dataclass
class CitationLinks:
    edges: list[tuple[str, str]]  # (citing study id, cited study id)
    cited_counts: dict[str, int]
    warnings: list[str] = field(default_factory=list)


# --------------------------------------------------------------------------
# parsing

_KNOWN_FIELDS = ("title", "abstract", "keywords", "references")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while not self.eof() and self.text[self.pos].isspace():
            self.pos += 1


def _parse_value(sc: _Scanner, entry_index: int) -> str:
    """A braced group, a quoted string, or a bare token."""
    text = sc.text
    c = sc.peek()
    if c == "{":
        depth = 0
        start = sc.pos
        while not sc.eof():
            ch = text[sc.pos]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    sc.pos += 1
                    return text[start + 1 : sc.pos - 1]
            sc.pos += 1
        raise BibtexParseError(
            "unbalanced braces in field value", _byte_offset(text, start), entry_index
        )
    if c == '"':
        start = sc.pos
        sc.pos += 1
        depth = 0
        while not sc.eof():
            ch = text[sc.pos]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            elif ch == '"' and depth == 0:
                sc.pos += 1
                return text[start + 1 : sc.pos - 1]
            sc.pos += 1
        raise BibtexParseError(
            "unterminated quoted value", _byte_offset(text, start), entry_index
        )
    # bare token (number or plain word)
    start = sc.pos
    while not sc.eof() and text[sc.pos] not in ",}" and not text[sc.pos].isspace():
        sc.pos += 1
    if sc.pos == start:
        raise BibtexParseError(
            "expected a field value", _byte_offset(text, start), entry_index
        )
    return text[start:sc.pos]


def _clean(value: str) -> str:
    """Drop grouping braces and collapse whitespace; light-touch only."""
    value = value.replace("{", "").replace("}", "")
    return " ".join(value.split())


def _split_keywords(value: str) -> list[str]:
    parts = re.split(r"[,;]", value)
    return [p.strip() for p in parts if p.strip()]


def _split_references(value: str, delimiter: str) -> list[str]:
    # blank lines separate entries too, regardless of the delimiter
    normalized = re.sub(r"\n\s*\n", delimiter, value)
    parts = normalized.split(delimiter)
    return [" ".join(p.split()) for p in parts if p.strip()]


def parse_bibtex(
    text: str,
    *,
    source: str = "<string>",
    reference_delimiter: str = ";",
    loaded_at: float | None = None,
) -> Corpus:
    """Parse bibtex source into a :class:`Corpus`, preserving entry order.

    Missing title falls back to the citation key (warned); missing
    abstract/keywords/references yield empty values plus a warning.
    Malformed entries and duplicate citation keys raise
    :class:`BibtexParseError` / :class:`ValueError`.
    """
    sc = _Scanner(text)
    studies: list[StudyRecord] = []
    warnings: list[str] = []
    seen_keys: dict[str, int] = {}
    entry_index = 0

    while True:
        sc.skip_ws()
        if sc.eof():
            break
        if sc.peek() != "@":
            raise BibtexParseError(
                f"expected '@' to start an entry, found {sc.peek()!r}",
                _byte_offset(text, sc.pos),
                entry_index,
            )
        sc.pos += 1
        type_start = sc.pos
        while not sc.eof() and (sc.peek().isalnum() or sc.peek() == "_"):
            sc.pos += 1
        entry_type = text[type_start:sc.pos].lower()
        if not entry_type:
            raise BibtexParseError(
                "missing entry type after '@'", _byte_offset(text, type_start), entry_index
            )
        sc.skip_ws()
        if entry_type in ("comment", "preamble", "string"):
            # skip the balanced group; @string values are not expanded
            if sc.peek() not in "{(":
                raise BibtexParseError(
                    f"expected '{{' after @{entry_type}",
                    _byte_offset(text, sc.pos),
                    entry_index,
                )
            opener = sc.peek()
            closer = "}" if opener == "{" else ")"
            depth = 0
            while not sc.eof():
                ch = text[sc.pos]
                if ch == opener:
                    depth += 1
                elif ch == closer:
                    depth -= 1
                    if depth == 0:
                        sc.pos += 1
                        break
                sc.pos += 1
            else:
                raise BibtexParseError(
                    f"unterminated @{entry_type}", _byte_offset(text, sc.pos), entry_index
                )
            if entry_type == "string":
                warnings.append("@string macros are not expanded; entry skipped")
            continue

        if sc.peek() != "{":
            raise BibtexParseError(
                "expected '{' after entry type", _byte_offset(text, sc.pos), entry_index
            )
        sc.pos += 1
        sc.skip_ws()
        key_start = sc.pos
        while not sc.eof() and sc.peek() not in ",}" and not sc.peek().isspace():
            sc.pos += 1
        key = text[key_start:sc.pos].strip()
        if not key:
            raise BibtexParseError(
                "missing citation key", _byte_offset(text, key_start), entry_index
            )
        if key in seen_keys:
            raise ValueError(
                f"duplicate citation key {key!r} (entries {seen_keys[key]} and {entry_index})"
            )
        seen_keys[key] = entry_index

        fields: dict[str, str] = {}
        sc.skip_ws()
        while True:
            sc.skip_ws()
            if sc.eof():
                raise BibtexParseError(
                    "unterminated entry", _byte_offset(text, sc.pos), entry_index
                )
            if sc.peek() == "}":
                sc.pos += 1
                break
            if sc.peek() == ",":
                sc.pos += 1
                continue
            name_start = sc.pos
            while not sc.eof() and (sc.peek().isalnum() or sc.peek() in "_-"):
                sc.pos += 1
            name = text[name_start:sc.pos].lower()
            if not name:
                raise BibtexParseError(
                    f"expected a field name, found {sc.peek()!r}",
                    _byte_offset(text, sc.pos),
                    entry_index,
                )
            sc.skip_ws()
            if sc.peek() != "=":
                raise BibtexParseError(
                    f"expected '=' after field {name!r}",
                    _byte_offset(text, sc.pos),
                    entry_index,
                )
            sc.pos += 1
            sc.skip_ws()
            fields[name] = _parse_value(sc, entry_index)

        title = _clean(fields.get("title", ""))
        if not title:
            title = key
            warnings.append(f"entry {key}: missing title, using citation key")
        abstract = _clean(fields.get("abstract", ""))
        if "abstract" not in fields:
            warnings.append(f"entry {key}: missing abstract")
        keywords = _split_keywords(_clean(fields.get("keywords", "")))
        if "keywords" not in fields:
            warnings.append(f"entry {key}: missing keywords")
        references = _split_references(
            fields.get("references", ""), reference_delimiter
        )
        if "references" not in fields:
            warnings.append(f"entry {key}: missing references")
        raw = {
            k: _clean(v) for k, v in fields.items() if k not in _KNOWN_FIELDS
        }
        raw["entry_type"] = entry_type
        studies.append(
            StudyRecord(
                id=key,
                title=title,
                abstract=abstract,
                keywords=keywords,
                references=references,
                raw_fields=raw,
            )
        )
        entry_index += 1

    if not studies:
        warnings.append("no entries found")
    stamp = time.time() if loaded_at is None else loaded_at
    return Corpus(studies=studies, source=source, loaded_at=stamp, warnings=warnings)


def corpus_to_bibtex(corpus: Corpus, *, reference_delimiter: str = ";") -> str:
    """Serialize back to the accepted dialect; parse -> serialize -> parse
    is field-for-field stable."""
    chunks = []
    for s in corpus.studies:
        entry_type = s.raw_fields.get("entry_type", "article")
        lines = [f"@{entry_type}{{{s.id},"]
        lines.append(f"  title = {{{s.title}}},")
        lines.append(f"  abstract = {{{s.abstract}}},")
        lines.append(f"  keywords = {{{', '.join(s.keywords)}}},")
        refs = (reference_delimiter + " ").join(s.references)
        lines.append(f"  references = {{{refs}}},")
        for k in sorted(s.raw_fields):
            if k == "entry_type":
                continue
            lines.append(f"  {k} = {{{s.raw_fields[k]}}},")
        lines.append("}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + ("\n" if chunks else "")


# --------------------------------------------------------------------------
# reference canonicalization

def normalize_reference(raw: str) -> str:
    """Lowercase, squash every non-alphanumeric run to one space, strip.
    Idempotent."""
    lowered = raw.lower()
    out = []
    for ch in lowered:
        out.append(ch if ch.isalnum() else " ")
    return " ".join("".join(out).split())


def tokenize_normalized(normalized: str) -> frozenset[str]:
    return frozenset(normalized.split())


def token_jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 1.0
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller root for deterministic group ordering
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def canonicalize_references(
    corpus: Corpus, *, jaccard_threshold: float = 0.8
) -> list[CanonicalReference]:
    """Group raw reference strings into canonical references.

    Two occurrences unify when their normalized texts are equal or their
    token-set Jaccard similarity reaches the threshold; unification runs
    through a union-find so grouping is transitive by construction.
    """
    occurrences: list[tuple[str, int, str]] = []
    for s in corpus.studies:
        for i, raw in enumerate(s.references):
            occurrences.append((s.id, i, normalize_reference(raw)))

    # distinct normalized strings, in first-occurrence order
    distinct: list[str] = []
    index_of: dict[str, int] = {}
    for _, _, norm in occurrences:
        if norm not in index_of:
            index_of[norm] = len(distinct)
            distinct.append(norm)

    tokens = [tokenize_normalized(t) for t in distinct]
    uf = _UnionFind(len(distinct))

    # candidate pairs share at least one token; Jaccard >= threshold > 0
    # implies a shared token, so blocking by token is lossless
    by_token: dict[str, list[int]] = {}
    for i, toks in enumerate(tokens):
        for t in toks:
            by_token.setdefault(t, []).append(i)
    candidates: set[tuple[int, int]] = set()
    for members in by_token.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                candidates.add((members[a], members[b]))
    for a, b in sorted(candidates):
        if token_jaccard(tokens[a], tokens[b]) >= jaccard_threshold:
            uf.union(a, b)

    groups: dict[int, list[int]] = {}
    for i in range(len(distinct)):
        groups.setdefault(uf.find(i), []).append(i)

    refs: list[CanonicalReference] = []
    member_to_ref: dict[int, int] = {}
    for root in sorted(groups, key=lambda r: min(groups[r])):
        members = sorted(groups[root])
        ref_index = len(refs)
        for m in members:
            member_to_ref[m] = ref_index
        refs.append(
            CanonicalReference(
                ref_id=f"ref{ref_index:04d}",
                normalized_text=distinct[members[0]],
                aliases=[],
            )
        )
    for study_id, i, norm in occurrences:
        refs[member_to_ref[index_of[norm]]].aliases.append((study_id, i))
    return refs


def resolve_citations(
    corpus: Corpus,
    refs: list[CanonicalReference],
    *,
    jaccard_threshold: float = 0.8,
) -> CitationLinks:
    """Match canonical references to corpus studies and derive the
    directed citation edges among studies.

    A reference matches a study when the study's normalized title appears
    verbatim inside the reference's normalized text, or when the title
    token set and the reference token set reach the Jaccard threshold.
    References matching two or more studies are ambiguous: warned and
    dropped, never guessed.  Fills ``matched_study`` on the given refs.
    """
    titles = [
        (s.id, normalize_reference(s.title), tokenize_normalized(normalize_reference(s.title)))
        for s in corpus.studies
    ]
    warnings: list[str] = []
    edges: list[tuple[str, str]] = []
    seen_edges: set[tuple[str, str]] = set()

    for ref in refs:
        ref.matched_study = None
        ref_tokens = tokenize_normalized(ref.normalized_text)
        matched: list[str] = []
        for sid, norm_title, title_tokens in titles:
            if not norm_title:
                continue
            contained = f" {norm_title} " in f" {ref.normalized_text} "
            if contained or token_jaccard(title_tokens, ref_tokens) >= jaccard_threshold:
                matched.append(sid)
        if len(matched) > 1:
            warnings.append(
                f"{ref.ref_id}: ambiguous reference matches studies "
                f"{', '.join(matched)}; edge omitted"
            )
            continue
        if not matched:
            continue
        target = matched[0]
        ref.matched_study = target
        for citing, _ in ref.aliases:
            if citing == target:
                continue
            edge = (citing, target)
            if edge not in seen_edges:
                seen_edges.add(edge)
                edges.append(edge)

    counts = {s.id: 0 for s in corpus.studies}
    for _, cited in edges:
        counts[cited] += 1
    return CitationLinks(edges=edges, cited_counts=counts, warnings=warnings)
