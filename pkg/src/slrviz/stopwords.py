"""Default English stopword list (articles, prepositions, conjunctions,
pronouns and other low-content function words).  Override by passing a
custom set in the pipeline configuration or loading a file with
:func:`load_stopwords`."""

from __future__ import annotations

from pathlib import Path

DEFAULT_STOPWORDS = frozenset("""
a about above after again against all also although am among an and any are
aren as at be because been before being below between both but by can cannot
could couldn did didn do does doesn doing don down during each either few for
from further had hadn has hasn have haven having he her here hers herself him
himself his how however i if in into is isn it its itself just let may me
might more most mustn my myself neither no nor not of off on once only onto
or other ought our ours ourselves out over own per rather same shan she
should shouldn since so some such than that the their theirs them themselves
then there these they this those through thus to too under until up upon us
very was wasn we were weren what when where which while who whom why will
with within without won would wouldn yet you your yours yourself yourselves
""".split())


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword file, one term per line, UTF-8; blank lines and
    lines starting with '#' are skipped."""
    terms = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        term = line.strip().lower()
        if term and not term.startswith("#"):
            terms.append(term)
    return frozenset(terms)
