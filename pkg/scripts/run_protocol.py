#!/usr/bin/env python3
"""Run the full evaluation protocol on a manifest and print both tables.

First table: add-one smoothing per order, with whole-corpus unique
n-gram counts. Second table: best-delta absolute discounting per order
from a grid sweep, then the equal-weight combination of all orders at
their best deltas.
"""

from __future__ import annotations

import argparse
import sys

from phone_intent.classifier import ModelConfig
from phone_intent.corpus import parse_corpus
from phone_intent.evaluation import CvSpec, delta_sweep, run_cv
from phone_intent.ngrams import Smoothing, build_counts


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-i", "--input", required=True, help="JSONL manifest")
    parser.add_argument("--orders", default="1,2,3")
    parser.add_argument("--deltas", default="0.5,1,2,5")
    parser.add_argument("--k", type=int, default=2)
    parser.add_argument("--exclude-test", default="", dest="exclude_test")
    parser.add_argument("--prior", choices=["empirical", "uniform"], default="empirical")
    args = parser.parse_args(argv)

    orders = [int(n) for n in args.orders.split(",") if n]
    deltas = [float(d) for d in args.deltas.split(",") if d]
    excluded = tuple(label for label in args.exclude_test.split(",") if label)
    corpus = parse_corpus(args.input)
    spec = CvSpec(k=args.k, exclude_from_test=excluded)

    print(f"corpus: {len(corpus.utterances)} utterances, {len(corpus.labels)} intents")
    print(f"protocol: leave-{args.k}-out, excluded from test: {', '.join(excluded) or 'none'}")
    print()

    print("add-one smoothing")
    print("order  unique n-grams  accuracy")
    for order in orders:
        vocab_size = build_counts(corpus, order).vocab_size
        config = ModelConfig(orders=(order,), prior_mode=args.prior)
        report = run_cv(corpus, config, spec)
        print(f"{order:>5}  {vocab_size:>14}  {report.accuracy:.2f}")
    print()

    sweep = delta_sweep(corpus, orders, deltas, spec, prior_mode=args.prior)
    print(f"absolute discounting (grid {deltas}; note: {sweep.caveat})")
    print("order  best delta  accuracy")
    for order in orders:
        row = sweep.best[order]
        print(f"{order:>5}  {row.delta:>10g}  {row.accuracy:.2f}")
    print()

    combo = ModelConfig(
        orders=tuple(orders),
        smoothing=tuple(Smoothing.absolute_discount(sweep.best[o].delta) for o in orders),
        prior_mode=args.prior,
    )
    report = run_cv(corpus, combo, spec)
    best = ", ".join(f"{sweep.best[o].delta:g}" for o in orders)
    print(f"combination ({best}) with equal weights: accuracy {report.accuracy:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
