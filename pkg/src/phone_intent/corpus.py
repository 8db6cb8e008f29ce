"""Corpus data model and JSONL manifest I/O.

A manifest is UTF-8 JSON Lines, one utterance object per line. Required
fields: ``id``, ``intent``, ``phones`` (phones as one space-separated
string). Optional string fields: ``speaker``, ``language``,
``parallel_group``, ``audio_path``. Unknown fields are ignored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

REQUIRED_FIELDS = ("id", "intent", "phones")
OPTIONAL_FIELDS = ("speaker", "language", "parallel_group", "audio_path")


class CorpusError(ValueError):
    """A manifest line or corpus value failed validation."""


def tokenize_phones(raw: str) -> tuple[str, ...]:
    """Split recognizer output on runs of whitespace into phone tokens."""
    return tuple(raw.split())


def _check_token(token: str) -> None:
    if not token or any(ch.isspace() for ch in token):
        raise CorpusError(f"invalid phone token {token!r}: must be non-empty and whitespace-free")


@dataclass(frozen=True)
class Utterance:
    """One spoken sample: a phone-token sequence plus intent metadata."""

    id: str
    intent: str
    phones: tuple[str, ...]
    speaker: str = ""
    language: str = ""
    parallel_group: str | None = None
    audio_path: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusError("utterance id must be non-empty")
        for token in self.phones:
            _check_token(token)


@dataclass(frozen=True)
class Corpus:
    """Immutable, ordered collection of utterances.

    ``labels`` is the deduplicated list of intents in first-appearance
    order; it defines the canonical class ordering everywhere downstream.
    """

    utterances: tuple[Utterance, ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.utterances)

    @classmethod
    def from_utterances(cls, utterances: Iterable[Utterance]) -> "Corpus":
        utts = tuple(utterances)
        seen_ids: set[str] = set()
        labels: list[str] = []
        for u in utts:
            if u.id in seen_ids:
                raise CorpusError(f"duplicate utterance id {u.id!r}")
            seen_ids.add(u.id)
            if u.intent not in labels:
                labels.append(u.intent)
        return cls(utterances=utts, labels=tuple(labels))


@dataclass(frozen=True)
class CorpusStats:
    label_counts: dict[str, int] = field(default_factory=dict)
    total: int = 0


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Per-label utterance counts (in label order) plus the total."""
    counts = {label: 0 for label in corpus.labels}
    for u in corpus.utterances:
        counts[u.intent] += 1
    return CorpusStats(label_counts=counts, total=len(corpus.utterances))


def _parse_line(text: str, line_no: int, strict: bool) -> Utterance:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"line {line_no}: malformed JSON: {exc.msg}") from exc
    if not isinstance(record, dict):
        raise CorpusError(f"line {line_no}: expected a JSON object, got {type(record).__name__}")

    for name in REQUIRED_FIELDS:
        if name not in record:
            raise CorpusError(f"line {line_no}: missing required field {name!r}")
        if not isinstance(record[name], str):
            raise CorpusError(f"line {line_no}: field {name!r} must be a string")
    for name in OPTIONAL_FIELDS:
        if name in record and not isinstance(record[name], str):
            raise CorpusError(f"line {line_no}: field {name!r} must be a string")

    phones = tokenize_phones(record["phones"])
    if strict and not phones:
        raise CorpusError(f"line {line_no}: empty phone sequence (strict mode)")
    try:
        return Utterance(
            id=record["id"],
            intent=record["intent"],
            phones=phones,
            speaker=record.get("speaker", ""),
            language=record.get("language", ""),
            parallel_group=record.get("parallel_group"),
            audio_path=record.get("audio_path"),
        )
    except CorpusError as exc:
        raise CorpusError(f"line {line_no}: {exc}") from exc


def parse_corpus(path: str | Path, strict: bool = True) -> Corpus:
    """Parse a JSONL manifest into a Corpus, preserving file order.

    Strict mode rejects duplicate ids and empty phone sequences. Lenient
    mode keeps empty-phone utterances and keeps only the first utterance
    of any duplicated id.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"manifest not found: {path}")
    utterances: list[Utterance] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            utt = _parse_line(line, line_no, strict)
            if utt.id in seen_ids:
                if strict:
                    raise CorpusError(f"line {line_no}: duplicate id {utt.id!r}")
                continue
            seen_ids.add(utt.id)
            utterances.append(utt)
    return Corpus.from_utterances(utterances)


def utterance_to_record(u: Utterance) -> dict:
    """Manifest-line dict for one utterance; optional empty fields are omitted."""
    record: dict[str, str] = {"id": u.id, "intent": u.intent, "phones": " ".join(u.phones)}
    if u.speaker:
        record["speaker"] = u.speaker
    if u.language:
        record["language"] = u.language
    if u.parallel_group is not None:
        record["parallel_group"] = u.parallel_group
    if u.audio_path is not None:
        record["audio_path"] = u.audio_path
    return record


def corpus_to_jsonl(corpus: Corpus) -> str:
    lines = [json.dumps(utterance_to_record(u), ensure_ascii=False, sort_keys=True) for u in corpus.utterances]
    return "".join(line + "\n" for line in lines)


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    Path(path).write_text(corpus_to_jsonl(corpus), encoding="utf-8")
