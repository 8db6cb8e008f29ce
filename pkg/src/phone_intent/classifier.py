"""Naive Bayes training, log-space scoring, order combination, model files.

Scores live in the natural-log domain throughout: a few hundred trigram
factors underflow linear-domain doubles. The combined score of class c is

    log_score(c) = ln prior(c) + sum_orders weight_o * score_order_o(c)

with the prior added exactly once. Out-of-vocabulary n-grams are skipped
(they contribute the same factor 1 to every class), and zero-weight
orders are never evaluated.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Corpus, corpus_to_jsonl
from .ngrams import (
    ADD_ONE,
    EMPIRICAL,
    UNIFORM,
    NGram,
    NGramCountModel,
    Smoothing,
    build_counts,
    class_prior,
    extract_ngrams,
    log_prob,
    reserved_mass,
)

MODEL_FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    """A model file is corrupted, truncated, or from an unknown version."""


@dataclass(frozen=True)
class ModelConfig:
    """Orders, per-order smoothing, prior mode, and combination weights.

    ``smoothing`` and ``weights`` default to add-one and 1.0 for every
    order. All-zero weights are allowed and yield prior-only scores.
    """

    orders: tuple[int, ...] = (1, 2, 3)
    smoothing: tuple[Smoothing, ...] = ()
    prior_mode: str = EMPIRICAL
    weights: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        orders = tuple(self.orders)
        if not orders:
            raise ValueError("at least one n-gram order is required")
        if any(n < 1 for n in orders):
            raise ValueError(f"n-gram orders must be >= 1, got {orders}")
        if len(set(orders)) != len(orders):
            raise ValueError(f"duplicate n-gram orders: {orders}")
        smoothing = tuple(self.smoothing) or tuple(Smoothing.add_one() for _ in orders)
        weights = tuple(float(w) for w in self.weights) or tuple(1.0 for _ in orders)
        if len(smoothing) != len(orders):
            raise ValueError(f"expected {len(orders)} smoothing specs, got {len(smoothing)}")
        if len(weights) != len(orders):
            raise ValueError(f"expected {len(orders)} weights, got {len(weights)}")
        if any(not (w >= 0.0) for w in weights):
            raise ValueError(f"weights must be >= 0, got {weights}")
        if self.prior_mode not in (EMPIRICAL, UNIFORM):
            raise ValueError(f"unknown prior mode {self.prior_mode!r}")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "smoothing", smoothing)
        object.__setattr__(self, "weights", weights)

    def smoothing_for(self, order: int) -> Smoothing:
        return self.smoothing[self.orders.index(order)]


@dataclass(frozen=True)
class ClassifierModel:
    """Trained per-order count models plus everything needed to score."""

    config: ModelConfig
    labels: tuple[str, ...]
    order_models: Mapping[int, NGramCountModel]
    corpus_fingerprint: str


def corpus_fingerprint(corpus: Corpus) -> str:
    return hashlib.sha256(corpus_to_jsonl(corpus).encode("utf-8")).hexdigest()


def train(corpus: Corpus, config: ModelConfig) -> ClassifierModel:
    """Build one count model per configured order over the whole corpus.

    Deterministic: the same corpus and config always serialize to
    byte-identical model files. Orders whose vocabulary is empty are kept
    (they score 0 for every class), but at least one order must observe
    some n-gram.
    """
    if not corpus.utterances:
        raise ValueError("cannot train on an empty corpus")
    order_models = {order: build_counts(corpus, order) for order in config.orders}
    if all(m.vocab_size == 0 for m in order_models.values()):
        raise ValueError("no n-grams observed for any configured order")
    return ClassifierModel(
        config=config,
        labels=corpus.labels,
        order_models=order_models,
        corpus_fingerprint=corpus_fingerprint(corpus),
    )


def score_order(model: ClassifierModel, order: int, tokens: Sequence[str]) -> dict[str, float]:
    """Per-class sum of ln P(w|c) over in-vocabulary n-grams of one order.

    The prior is NOT included. Unseen-at-train n-grams are skipped, so a
    token sequence with no in-vocabulary n-grams scores 0.0 everywhere.
    """
    if order not in model.order_models:
        raise ValueError(f"order {order} is not part of this model")
    counts = model.order_models[order]
    spec = model.config.smoothing_for(order)
    ngrams = [g for g in extract_ngrams(tokens, order) if g in counts]
    scores = {}
    for label in model.labels:
        if not ngrams:
            scores[label] = 0.0
            continue
        total = counts.totals[label]
        class_counts = counts.counts[label]
        vocab_size = counts.vocab_size
        if spec.kind == ADD_ONE:
            denom = total + vocab_size
            scores[label] = sum(log_prob((class_counts.get(g, 0) + 1) / denom) for g in ngrams)
        elif total == 0:
            scores[label] = len(ngrams) * log_prob(1.0 / vocab_size)
        else:
            floor = reserved_mass(counts, label, spec.delta) / vocab_size
            scores[label] = sum(
                log_prob(max(class_counts.get(g, 0) - spec.delta, 0.0) / total + floor) for g in ngrams
            )
    return scores


def combine(model: ClassifierModel, tokens: Sequence[str]) -> dict[str, float]:
    """Weighted per-order log-likelihoods plus a single prior term."""
    any_counts = next(iter(model.order_models.values()))
    scores = {
        label: log_prob(class_prior(any_counts, model.config.prior_mode, label)) for label in model.labels
    }
    for order, weight in zip(model.config.orders, model.config.weights):
        if weight == 0.0:
            continue
        order_scores = score_order(model, order, tokens)
        for label in model.labels:
            scores[label] += weight * order_scores[label]
    return scores


def predict(model: ClassifierModel, tokens: Sequence[str]) -> tuple[str, dict[str, float]]:
    """Argmax over all trained labels; ties go to the first label in model order."""
    scores = combine(model, tokens)
    best = model.labels[0]
    for label in model.labels[1:]:
        if scores[label] > scores[best]:
            best = label
    return best, scores


def _ngram_key(ngram: NGram) -> str:
    return " ".join(ngram)


def _model_payload(model: ClassifierModel) -> dict:
    orders_doc = {}
    for order, counts in model.order_models.items():
        orders_doc[str(order)] = {
            "vocab": [_ngram_key(w) for w in counts.vocab],
            "counts": {
                label: {_ngram_key(w): n for w, n in class_counts.items()}
                for label, class_counts in counts.counts.items()
            },
            "totals": dict(counts.totals),
            "class_utterances": dict(counts.class_utterances),
        }
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "config": {
            "orders": list(model.config.orders),
            "smoothing": [{"kind": s.kind, "delta": s.delta} for s in model.config.smoothing],
            "prior_mode": model.config.prior_mode,
            "weights": list(model.config.weights),
        },
        "labels": list(model.labels),
        "corpus_fingerprint": model.corpus_fingerprint,
        "orders": orders_doc,
    }


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def model_to_json(model: ClassifierModel) -> str:
    payload = _model_payload(model)
    payload["checksum"] = hashlib.sha256(_canonical_json(payload).encode("utf-8")).hexdigest()
    return _canonical_json(payload) + "\n"


def write_atomic(path: str | Path, text: str) -> None:
    """Write via a same-directory temp file and rename; no partial files."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def save_model(model: ClassifierModel, path: str | Path) -> None:
    write_atomic(path, model_to_json(model))


def load_model(path: str | Path) -> ClassifierModel:
    """Load a model file, verifying format version and content checksum."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"unreadable model file {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ModelFormatError(f"model file {path} is not a JSON object")
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {version!r} (expected {MODEL_FORMAT_VERSION})")
    stored = payload.pop("checksum", None)
    actual = hashlib.sha256(_canonical_json(payload).encode("utf-8")).hexdigest()
    if stored != actual:
        raise ModelFormatError(f"model file {path} failed its checksum; file is corrupted")
    try:
        cfg = payload["config"]
        config = ModelConfig(
            orders=tuple(cfg["orders"]),
            smoothing=tuple(Smoothing(kind=s["kind"], delta=s["delta"]) for s in cfg["smoothing"]),
            prior_mode=cfg["prior_mode"],
            weights=tuple(cfg["weights"]),
        )
        order_models = {}
        for order_key, doc in payload["orders"].items():
            order = int(order_key)
            order_models[order] = NGramCountModel(
                order=order,
                vocab=tuple(tuple(entry.split(" ")) for entry in doc["vocab"]),
                counts={
                    label: {tuple(key.split(" ")): n for key, n in class_counts.items()}
                    for label, class_counts in doc["counts"].items()
                },
                totals=dict(doc["totals"]),
                class_utterances=dict(doc["class_utterances"]),
            )
        return ClassifierModel(
            config=config,
            labels=tuple(payload["labels"]),
            order_models=order_models,
            corpus_fingerprint=payload["corpus_fingerprint"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"model file {path} has an invalid structure: {exc}") from exc
