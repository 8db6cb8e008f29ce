"""Brute-force reference scorer used to cross-check the library.

Deliberately independent of phone_intent: probabilities are exact
Fractions, per-order likelihoods are linear-domain products, and logs
are taken only at the very end. Works from raw (label, tokens) pairs.
"""

from __future__ import annotations

import math
from fractions import Fraction

NEG_INF = float("-inf")


def sliding(tokens, n):
    out = []
    for i in range(len(tokens) - n + 1):
        out.append(tuple(tokens[i : i + n]))
    return out


def class_table(class_counts: dict, total: int, vocab: list, kind: str, delta: float) -> dict:
    """Exact probability of every vocabulary entry for one class."""
    vocab_size = len(vocab)
    if kind == "add_one":
        return {w: Fraction(class_counts.get(w, 0) + 1, total + vocab_size) for w in vocab}
    d = Fraction(delta)  # exact binary value of the float, matching float arithmetic
    if total == 0:
        return {w: Fraction(1, vocab_size) for w in vocab}
    reserved = sum(min(Fraction(class_counts.get(w, 0)), d) for w in vocab) / total
    table = {}
    for w in vocab:
        kept = max(Fraction(class_counts.get(w, 0)) - d, Fraction(0)) / total
        table[w] = kept + reserved / vocab_size
    return table


def count_tables(train_pairs, order):
    """(vocab list, per-class counts, per-class totals) for one order."""
    vocab = []
    seen = set()
    labels = []
    for label, _ in train_pairs:
        if label not in labels:
            labels.append(label)
    counts = {label: {} for label in labels}
    totals = {label: 0 for label in labels}
    for label, tokens in train_pairs:
        for g in sliding(tokens, order):
            if g not in seen:
                seen.add(g)
                vocab.append(g)
            counts[label][g] = counts[label].get(g, 0) + 1
            totals[label] += 1
    return vocab, counts, totals


def oracle_combine(train_pairs, test_tokens, orders, smoothings, weights, prior_mode) -> dict:
    """Per-class combined log score, computed the slow exact way.

    ``smoothings`` is a list of ("add_one", 0.0) or
    ("absolute_discount", delta) pairs aligned with ``orders``.
    """
    labels = []
    for label, _ in train_pairs:
        if label not in labels:
            labels.append(label)
    n_utts = {label: 0 for label in labels}
    for label, _ in train_pairs:
        n_utts[label] += 1
    per_order = {order: count_tables(train_pairs, order) for order in orders}

    scores = {}
    for label in labels:
        if prior_mode == "empirical":
            prior = Fraction(n_utts[label], len(train_pairs))
        else:
            prior = Fraction(1, len(labels))
        log_score = math.log(prior)
        for (kind, delta), order, weight in zip(smoothings, orders, weights):
            if weight == 0:
                continue
            vocab, counts, totals = per_order[order]
            if not vocab:
                continue
            table = class_table(counts[label], totals[label], vocab, kind, delta)
            product = Fraction(1)
            for g in sliding(test_tokens, order):
                if g in table:
                    product *= table[g]
            if product == 0:
                log_score = NEG_INF
            elif log_score != NEG_INF:
                log_score += weight * math.log(product)
        scores[label] = log_score
    return scores


def oracle_predict(train_pairs, test_tokens, orders, smoothings, weights, prior_mode) -> str:
    """Argmax with ties broken toward the first-seen training label."""
    scores = oracle_combine(train_pairs, test_tokens, orders, smoothings, weights, prior_mode)
    labels = list(scores)
    best = labels[0]
    for label in labels[1:]:
        if scores[label] > scores[best]:
            best = label
    return best
