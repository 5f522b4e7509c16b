"""Study selection bookkeeping: an append-only decision log per corpus,
gold-standard scoring, a CSV decision table, and JSONL persistence that
replays cleanly."""

from __future__ import annotations

import csv
import io
import json
import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

__all__ = [
    "Status",
    "Decision",
    "TimeRegressionError",
    "ReviewSession",
    "GoldStandard",
    "ReviewMetrics",
    "compute_metrics",
    "export_decision_table",
    "import_decision_table",
    "save_session",
    "load_session",
    "load_gold",
]


class Status(str, Enum):
    INCLUDED = "included"
    EXCLUDED = "excluded"
    UNDECIDED = "undecided"

    @classmethod
    def parse(cls, value: "Status | str") -> "Status":
        if isinstance(value, Status):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(
                f"unknown status {value!r}; expected included/excluded/undecided"
            ) from None


@dataclass(frozen=True)
class Decision:
    study_id: str
    status: Status
    at: float  # seconds, same clock as the session start
    note: str = ""


class TimeRegressionError(ValueError):
    """A decision was stamped earlier than one already logged."""


class ReviewSession:
    """Append-only log of include/exclude/undecide decisions.

    The latest decision per study wins.  Timestamps must not run
    backwards; replaying the log reproduces the same statuses.
    """

    def __init__(
        self,
        corpus_hash: str,
        study_ids: list[str],
        started_at: float | None = None,
    ) -> None:
        if len(set(study_ids)) != len(study_ids):
            raise ValueError("duplicate study ids")
        self.corpus_hash = corpus_hash
        self.study_ids = list(study_ids)
        self.started_at = time.time() if started_at is None else float(started_at)
        self.log: list[Decision] = []
        self._ids = set(study_ids)
        self._lock = threading.Lock()

    def decide(
        self,
        study_id: str,
        status: Status | str,
        at: float | None = None,
        note: str = "",
    ) -> Decision:
        status = Status.parse(status)
        if study_id not in self._ids:
            raise KeyError(f"unknown study {study_id!r}")
        with self._lock:
            stamp = time.time() if at is None else float(at)
            if stamp < self.started_at:
                raise TimeRegressionError(
                    f"decision at {stamp} precedes session start {self.started_at}"
                )
            if self.log and stamp < self.log[-1].at:
                raise TimeRegressionError(
                    f"decision at {stamp} precedes last logged at {self.log[-1].at}"
                )
            decision = Decision(study_id=study_id, status=status, at=stamp, note=note)
            self.log.append(decision)
            return decision

    def status_of(self, study_id: str) -> Status:
        if study_id not in self._ids:
            raise KeyError(f"unknown study {study_id!r}")
        for decision in reversed(self.log):
            if decision.study_id == study_id:
                return decision.status
        return Status.UNDECIDED

    def statuses(self) -> dict[str, Status]:
        current = {sid: Status.UNDECIDED for sid in self.study_ids}
        for decision in self.log:
            current[decision.study_id] = decision.status
        return current

    def elapsed_minutes(self) -> float:
        if not self.log:
            return 0.0
        return (self.log[-1].at - self.started_at) / 60.0

    def replay(self, upto: float | None = None) -> dict[str, Status]:
        """Statuses as of time ``upto`` (inclusive); None means the full log."""
        current = {sid: Status.UNDECIDED for sid in self.study_ids}
        for decision in self.log:
            if upto is not None and decision.at > upto:
                break
            current[decision.study_id] = decision.status
        return current


@dataclass(frozen=True)
class GoldStandard:
    included: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "included", frozenset(self.included))


@dataclass(frozen=True)
class ReviewMetrics:
    n_studies: int
    included: int
    excluded: int
    undecided: int
    correct: int
    incorrect: int
    false_negatives: int
    false_positives: int
    elapsed_minutes: float

    def to_json_dict(self) -> dict:
        return {
            "n_studies": self.n_studies,
            "included": self.included,
            "excluded": self.excluded,
            "undecided": self.undecided,
            "correct": self.correct,
            "incorrect": self.incorrect,
            "false_negatives": self.false_negatives,
            "false_positives": self.false_positives,
            "elapsed_minutes": self.elapsed_minutes,
        }


def compute_metrics(session: ReviewSession, gold: GoldStandard) -> ReviewMetrics:
    """Score decided studies against the gold inclusion set.

    correct + incorrect + undecided == number of studies, and
    incorrect == false_negatives + false_positives.
    """
    unknown = sorted(gold.included - set(session.study_ids))
    if unknown:
        raise ValueError(f"gold ids not in session corpus: {', '.join(unknown)}")
    statuses = session.statuses()
    included = sum(1 for s in statuses.values() if s is Status.INCLUDED)
    excluded = sum(1 for s in statuses.values() if s is Status.EXCLUDED)
    undecided = sum(1 for s in statuses.values() if s is Status.UNDECIDED)
    fn = sum(
        1
        for sid, s in statuses.items()
        if s is Status.EXCLUDED and sid in gold.included
    )
    fp = sum(
        1
        for sid, s in statuses.items()
        if s is Status.INCLUDED and sid not in gold.included
    )
    incorrect = fn + fp
    correct = included + excluded - incorrect
    return ReviewMetrics(
        n_studies=len(session.study_ids),
        included=included,
        excluded=excluded,
        undecided=undecided,
        correct=correct,
        incorrect=incorrect,
        false_negatives=fn,
        false_positives=fp,
        elapsed_minutes=session.elapsed_minutes(),
    )


# --- decision table (CSV) ----------------------------------------------------

_COLUMNS = ["study_id", "status", "decided_at", "note"]


def export_decision_table(session: ReviewSession) -> str:
    """One row per study in corpus order with its current status.
    Undecided rows leave decided_at empty."""
    latest: dict[str, Decision] = {}
    for decision in session.log:
        latest[decision.study_id] = decision
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(_COLUMNS)
    for sid in session.study_ids:
        decision = latest.get(sid)
        if decision is None:
            writer.writerow([sid, Status.UNDECIDED.value, "", ""])
        else:
            writer.writerow([sid, decision.status.value, repr(decision.at), decision.note])
    return buf.getvalue()


def import_decision_table(text: str) -> list[dict]:
    """Parse rows written by export_decision_table.  Returns dicts with
    study_id, status (Status), decided_at (float or None) and note."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty decision table") from None
    if header != _COLUMNS:
        raise ValueError(f"unexpected decision table header: {header!r}")
    rows = []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(_COLUMNS):
            raise ValueError(f"line {line}: expected {len(_COLUMNS)} fields, got {len(row)}")
        sid, status_text, at_text, note = row
        rows.append(
            {
                "study_id": sid,
                "status": Status.parse(status_text),
                "decided_at": float(at_text) if at_text else None,
                "note": note,
            }
        )
    return rows


# --- persistence (JSONL) ------------------------------------------------------


def save_session(session: ReviewSession, path: str | Path) -> None:
    """Header line with corpus hash, ids and start time, then one line per
    logged decision.  The file alone is enough to rebuild the session."""
    lines = [
        json.dumps(
            {
                "kind": "review-session",
                "version": 1,
                "corpus_hash": session.corpus_hash,
                "study_ids": session.study_ids,
                "started_at": session.started_at,
            },
            separators=(",", ":"),
        )
    ]
    for decision in session.log:
        lines.append(
            json.dumps(
                {
                    "study_id": decision.study_id,
                    "status": decision.status.value,
                    "at": decision.at,
                    "note": decision.note,
                },
                separators=(",", ":"),
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_session(path: str | Path) -> ReviewSession:
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty session file")
    header = json.loads(lines[0])
    if header.get("kind") != "review-session" or header.get("version") != 1:
        raise ValueError(f"{path}: not a version-1 review-session file")
    session = ReviewSession(
        corpus_hash=header["corpus_hash"],
        study_ids=list(header["study_ids"]),
        started_at=float(header["started_at"]),
    )
    for line in lines[1:]:
        entry = json.loads(line)
        session.decide(
            entry["study_id"],
            entry["status"],
            at=float(entry["at"]),
            note=entry.get("note", ""),
        )
    return session


def load_gold(path: str | Path) -> GoldStandard:
    """Gold inclusion set: one study id per line, # starts a comment."""
    included = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            included.append(line)
    return GoldStandard(included=frozenset(included))
