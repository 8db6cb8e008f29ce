"""Leave-k-out cross-validation, accuracy/confusion reporting, delta sweeps.

Folds never test on excluded labels, but excluded-label utterances stay
in every training set. Vocabularies and priors are rebuilt per fold from
the training split only.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .classifier import ModelConfig, predict, train
from .corpus import Corpus
from .ngrams import EMPIRICAL, Smoothing, build_counts

EXHAUSTIVE = "exhaustive"
RANDOM_SAMPLE = "random"

# Best-delta selection reuses the same folds that produce the reported
# accuracy; treat swept accuracies as tuned, not held-out.
SWEEP_CAVEAT = "best delta per order is selected on the same cross-validation folds it is scored on"


@dataclass(frozen=True)
class CvSpec:
    """Cross-validation protocol: test-set size, label exclusions, fold selection."""

    k: int = 2
    exclude_from_test: tuple[str, ...] = ()
    mode: str = EXHAUSTIVE
    sample_count: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.mode not in (EXHAUSTIVE, RANDOM_SAMPLE):
            raise ValueError(f"unknown CV mode {self.mode!r}")
        if self.mode == RANDOM_SAMPLE:
            if self.sample_count is None or self.sample_count < 1:
                raise ValueError("random sampling requires a positive sample count")
            if self.seed is None:
                raise ValueError("random sampling requires an explicit seed")
        object.__setattr__(self, "exclude_from_test", tuple(self.exclude_from_test))


@dataclass(frozen=True)
class Fold:
    test_ids: tuple[str, ...]
    train_ids: tuple[str, ...]


def enumerate_folds(corpus: Corpus, spec: CvSpec) -> list[Fold]:
    """Deterministic fold list.

    Exhaustive mode yields all C(E, k) test sets over the E eligible
    (non-excluded) utterances, ordered lexicographically by sorted id
    tuple. Random mode draws ``sample_count`` distinct test sets from a
    seeded generator.
    """
    excluded = set(spec.exclude_from_test)
    all_ids = [u.id for u in corpus.utterances]
    eligible = sorted(u.id for u in corpus.utterances if u.intent not in excluded)
    if len(eligible) < spec.k:
        raise ValueError(f"need at least k={spec.k} eligible utterances, have {len(eligible)}")

    if spec.mode == EXHAUSTIVE:
        test_sets: Iterable[tuple[str, ...]] = combinations(eligible, spec.k)
    else:
        n_subsets = math.comb(len(eligible), spec.k)
        assert spec.sample_count is not None
        if spec.sample_count > n_subsets:
            raise ValueError(f"cannot draw {spec.sample_count} distinct folds from C({len(eligible)},{spec.k})={n_subsets}")
        rng = random.Random(spec.seed)
        drawn: dict[tuple[str, ...], None] = {}
        while len(drawn) < spec.sample_count:
            drawn.setdefault(tuple(sorted(rng.sample(eligible, spec.k))), None)
        test_sets = drawn.keys()

    folds = []
    for test_ids in test_sets:
        test_set = set(test_ids)
        train_ids = tuple(i for i in all_ids if i not in test_set)
        folds.append(Fold(test_ids=tuple(test_ids), train_ids=train_ids))
    return folds


@dataclass(frozen=True)
class FoldResult:
    fold_id: int
    test_ids: tuple[str, ...]
    gold: tuple[str, ...]
    predicted: tuple[str, ...]

    @property
    def n_correct(self) -> int:
        return sum(g == p for g, p in zip(self.gold, self.predicted))


@dataclass(frozen=True)
class EvalReport:
    folds: tuple[FoldResult, ...]
    accuracy: float
    confusion: dict[str, dict[str, int]]
    vocab_sizes: dict[int, int]
    labels: tuple[str, ...] = ()


def run_cv(corpus: Corpus, config: ModelConfig, spec: CvSpec) -> EvalReport:
    """Train and score every fold; aggregate accuracy and confusion counts.

    The confusion matrix spans every corpus label on both axes (a test
    utterance may be classified into any trained class). ``vocab_sizes``
    reports per-order unique n-gram counts over the full corpus, for
    reference alongside the per-fold vocabularies actually used.
    """
    folds = enumerate_folds(corpus, spec)
    by_id = {u.id: u for u in corpus.utterances}
    labels = corpus.labels
    confusion = {gold: {pred: 0 for pred in labels} for gold in labels}
    results = []
    n_correct = 0
    n_total = 0
    for fold_id, fold in enumerate(folds):
        train_ids = set(fold.train_ids)
        sub_corpus = Corpus.from_utterances(u for u in corpus.utterances if u.id in train_ids)
        model = train(sub_corpus, config)
        gold = []
        predicted = []
        for test_id in fold.test_ids:
            utt = by_id[test_id]
            label, _ = predict(model, utt.phones)
            gold.append(utt.intent)
            predicted.append(label)
            confusion[utt.intent][label] += 1
            n_correct += label == utt.intent
            n_total += 1
        results.append(
            FoldResult(fold_id=fold_id, test_ids=fold.test_ids, gold=tuple(gold), predicted=tuple(predicted))
        )
    vocab_sizes = {order: build_counts(corpus, order).vocab_size for order in config.orders}
    return EvalReport(
        folds=tuple(results),
        accuracy=n_correct / n_total,
        confusion=confusion,
        vocab_sizes=vocab_sizes,
        labels=labels,
    )


@dataclass(frozen=True)
class SweepRow:
    order: int
    delta: float
    accuracy: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    best: dict[int, SweepRow] = field(default_factory=dict)
    caveat: str = SWEEP_CAVEAT


def delta_sweep(
    corpus: Corpus,
    orders: Sequence[int],
    delta_grid: Sequence[float],
    spec: CvSpec,
    prior_mode: str = EMPIRICAL,
) -> SweepResult:
    """Cross-validate every (order, delta) pair with absolute discounting.

    Best delta per order is the accuracy argmax, ties broken toward the
    smallest delta.
    """
    if not delta_grid:
        raise ValueError("delta grid must be non-empty")
    if not orders:
        raise ValueError("at least one n-gram order is required")
    deltas = [float(d) for d in delta_grid]
    rows = []
    best: dict[int, SweepRow] = {}
    for order in orders:
        for delta in deltas:
            config = ModelConfig(
                orders=(order,),
                smoothing=(Smoothing.absolute_discount(delta),),
                prior_mode=prior_mode,
                weights=(1.0,),
            )
            report = run_cv(corpus, config, spec)
            row = SweepRow(order=order, delta=delta, accuracy=report.accuracy)
            rows.append(row)
            incumbent = best.get(order)
            if (
                incumbent is None
                or row.accuracy > incumbent.accuracy
                or (row.accuracy == incumbent.accuracy and row.delta < incumbent.delta)
            ):
                best[order] = row
    return SweepResult(rows=tuple(rows), best=best)


def report_to_json(report: EvalReport) -> str:
    doc = {
        "accuracy": report.accuracy,
        "labels": list(report.labels),
        "vocab_sizes": {str(order): v for order, v in report.vocab_sizes.items()},
        "confusion": report.confusion,
        "folds": [
            {
                "fold_id": f.fold_id,
                "test_ids": list(f.test_ids),
                "gold": list(f.gold),
                "predicted": list(f.predicted),
            }
            for f in report.folds
        ],
    }
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def report_to_csv(report: EvalReport) -> str:
    """One row per fold; multi-valued cells are space-joined."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["fold_id", "test_ids", "gold", "predicted", "correct"])
    for f in report.folds:
        writer.writerow([f.fold_id, " ".join(f.test_ids), " ".join(f.gold), " ".join(f.predicted), f.n_correct])
    return out.getvalue()


def sweep_to_csv(result: SweepResult) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["order", "delta", "accuracy"])
    for row in result.rows:
        writer.writerow([row.order, row.delta, row.accuracy])
    return out.getvalue()
