#!/usr/bin/env python3
"""Generate seeded synthetic JSONL manifests for experiments.

Shapes:
  banking    25 utterances, label counts 11/9/3/1/1, shared phone pool
  separable  three intents with disjoint phone inventories (CV should hit 1.0)
  shuffled   the separable corpus with its labels randomly reassigned
"""

from __future__ import annotations

import argparse
import random
import sys

from phone_intent.corpus import Corpus, Utterance, write_corpus

BANKING_LABEL_COUNTS = {
    "send_money": 11,
    "check_balance": 9,
    "check_last_transaction": 3,
    "withdraw_money": 1,
    "deposit_money": 1,
}

SHARED_INVENTORY = ["a", "e", "i", "k", "m", "n", "p", "r", "s", "t", "u", "ʃ"]


def banking_shape(rng: random.Random) -> Corpus:
    utterances = []
    idx = 0
    for label, count in BANKING_LABEL_COUNTS.items():
        for _ in range(count):
            idx += 1
            phones = tuple(rng.choice(SHARED_INVENTORY) for _ in range(rng.randint(4, 10)))
            utterances.append(Utterance(id=f"u{idx:02d}", intent=label, phones=phones, speaker=f"s{idx % 11}"))
    return Corpus.from_utterances(utterances)


def separable_shape(rng: random.Random) -> Corpus:
    utterances = []
    idx = 0
    for class_no, (label, count) in enumerate({"go": 8, "stop": 6, "status": 4}.items()):
        inventory = [f"p{class_no}{suffix}" for suffix in ("a", "b", "c")]
        for _ in range(count):
            idx += 1
            offset = rng.randrange(3)
            phones = tuple(inventory[(offset + j) % 3] for j in range(rng.randint(9, 12)))
            utterances.append(Utterance(id=f"u{idx:02d}", intent=label, phones=phones))
    return Corpus.from_utterances(utterances)


def shuffled_shape(rng: random.Random) -> Corpus:
    corpus = separable_shape(rng)
    labels = [u.intent for u in corpus.utterances]
    rng.shuffle(labels)
    return Corpus.from_utterances(
        Utterance(id=u.id, intent=label, phones=u.phones) for u, label in zip(corpus.utterances, labels)
    )


SHAPES = {"banking": banking_shape, "separable": separable_shape, "shuffled": shuffled_shape}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("shape", choices=sorted(SHAPES))
    parser.add_argument("-o", "--output", required=True, help="manifest path to write")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args(argv)
    corpus = SHAPES[args.shape](random.Random(args.seed))
    write_corpus(corpus, args.output)
    print(f"wrote {len(corpus.utterances)} utterances ({len(corpus.labels)} intents) to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
