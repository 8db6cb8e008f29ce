"""N-gram extraction, per-class count tables, and smoothing estimators.

Probabilities come from one of two estimators over a fixed vocabulary of
size V:

* add-one:            P(w|c) = (count(w,c) + 1) / (total(c) + V)
* absolute discount:  P(w|c) = max(count(w,c) - delta, 0) / total(c)
                               + R(c) / V
  where R(c) = sum_w min(count(w,c), delta) / total(c) is the reserved
  mass. The reserved mass is redistributed uniformly over the whole
  vocabulary, which keeps the distribution exactly normalized for any
  delta >= 0. A class with total(c) = 0 scores uniformly 1/V.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .corpus import Corpus

NGram = tuple[str, ...]

ADD_ONE = "add_one"
ABSOLUTE_DISCOUNT = "absolute_discount"

EMPIRICAL = "empirical"
UNIFORM = "uniform"


def extract_ngrams(tokens: Sequence[str], order: int) -> list[NGram]:
    """All contiguous n-grams of ``tokens`` in order; no boundary padding.

    A sequence shorter than ``order`` yields the empty list.
    """
    if order < 1:
        raise ValueError(f"n-gram order must be >= 1, got {order}")
    return [tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1)]


@dataclass(frozen=True)
class Smoothing:
    """Which estimator turns counts into probabilities."""

    kind: str
    delta: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in (ADD_ONE, ABSOLUTE_DISCOUNT):
            raise ValueError(f"unknown smoothing kind {self.kind!r}")
        if not (self.delta >= 0.0):
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if self.kind == ADD_ONE and self.delta != 0.0:
            raise ValueError("add-one smoothing takes no delta")

    @classmethod
    def add_one(cls) -> "Smoothing":
        return cls(kind=ADD_ONE)

    @classmethod
    def absolute_discount(cls, delta: float) -> "Smoothing":
        return cls(kind=ABSOLUTE_DISCOUNT, delta=float(delta))


@dataclass(frozen=True)
class NGramCountModel:
    """Per-class n-gram counts of one order over a fixed vocabulary.

    ``vocab`` keeps first-appearance order so that builds are
    deterministic; zero counts are omitted from ``counts``.
    """

    order: int
    vocab: tuple[NGram, ...]
    counts: Mapping[str, Mapping[NGram, int]]
    totals: Mapping[str, int]
    class_utterances: Mapping[str, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_vocab_set", frozenset(self.vocab))

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.totals)

    @property
    def total_utterances(self) -> int:
        return sum(self.class_utterances.values())

    def __contains__(self, ngram: NGram) -> bool:
        return ngram in self._vocab_set  # type: ignore[attr-defined]


def build_counts(corpus: Corpus, order: int) -> NGramCountModel:
    """Count each utterance's n-grams toward its intent class."""
    if not corpus.utterances:
        raise ValueError("cannot build counts from an empty corpus")
    vocab: dict[NGram, None] = {}
    counts: dict[str, dict[NGram, int]] = {label: {} for label in corpus.labels}
    totals: dict[str, int] = {label: 0 for label in corpus.labels}
    class_utterances: dict[str, int] = {label: 0 for label in corpus.labels}
    for utt in corpus.utterances:
        class_utterances[utt.intent] += 1
        class_counts = counts[utt.intent]
        for ngram in extract_ngrams(utt.phones, order):
            vocab.setdefault(ngram, None)
            class_counts[ngram] = class_counts.get(ngram, 0) + 1
            totals[utt.intent] += 1
    return NGramCountModel(
        order=order,
        vocab=tuple(vocab),
        counts=counts,
        totals=totals,
        class_utterances=class_utterances,
    )


def _check_scorable(model: NGramCountModel, label: str) -> None:
    if label not in model.totals:
        raise ValueError(f"unknown class {label!r}")
    if model.vocab_size == 0:
        raise ValueError("vocabulary is empty; no probabilities are defined")


def reserved_mass(model: NGramCountModel, label: str, delta: float) -> float:
    """Discounted probability mass R(c) = sum_w min(count(w,c), delta) / total(c)."""
    _check_scorable(model, label)
    total = model.totals[label]
    if total == 0:
        return 1.0
    return sum(min(count, delta) for count in model.counts[label].values()) / total


def smoothed_prob(model: NGramCountModel, smoothing: Smoothing, ngram: NGram, label: str) -> float:
    """Smoothed P(ngram | label); ``ngram`` must be in the vocabulary."""
    _check_scorable(model, label)
    if ngram not in model:
        raise ValueError(f"n-gram {ngram!r} is not in the vocabulary")
    vocab_size = model.vocab_size
    total = model.totals[label]
    count = model.counts[label].get(ngram, 0)
    if smoothing.kind == ADD_ONE:
        return (count + 1) / (total + vocab_size)
    if total == 0:
        return 1.0 / vocab_size
    discounted = max(count - smoothing.delta, 0.0) / total
    return discounted + reserved_mass(model, label, smoothing.delta) / vocab_size


def class_distribution(model: NGramCountModel, smoothing: Smoothing, label: str) -> dict[NGram, float]:
    """P(w | label) for every vocabulary entry, with the reserved mass computed once."""
    _check_scorable(model, label)
    vocab_size = model.vocab_size
    total = model.totals[label]
    class_counts = model.counts[label]
    if smoothing.kind == ADD_ONE:
        denom = total + vocab_size
        return {w: (class_counts.get(w, 0) + 1) / denom for w in model.vocab}
    if total == 0:
        return {w: 1.0 / vocab_size for w in model.vocab}
    floor = reserved_mass(model, label, smoothing.delta) / vocab_size
    delta = smoothing.delta
    return {w: max(class_counts.get(w, 0) - delta, 0.0) / total + floor for w in model.vocab}


def class_prior(model: NGramCountModel, mode: str, label: str) -> float:
    """Class prior: empirical utterance frequency or uniform over classes."""
    if label not in model.class_utterances:
        raise ValueError(f"unknown class {label!r}")
    if mode == EMPIRICAL:
        return model.class_utterances[label] / model.total_utterances
    if mode == UNIFORM:
        return 1.0 / len(model.class_utterances)
    raise ValueError(f"unknown prior mode {mode!r}")


def log_prob(p: float) -> float:
    """Natural log that maps 0 to -inf instead of raising."""
    return math.log(p) if p > 0.0 else -math.inf
