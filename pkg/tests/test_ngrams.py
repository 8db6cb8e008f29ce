from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phone_intent.corpus import Corpus, Utterance
from phone_intent.ngrams import (
    EMPIRICAL,
    UNIFORM,
    NGramCountModel,
    Smoothing,
    build_counts,
    class_distribution,
    class_prior,
    extract_ngrams,
    smoothed_prob,
)

from synth import banking_corpus


class TestExtractNgrams:
    def test_bigrams(self):
        assert extract_ngrams(["a", "b", "c"], 2) == [("a", "b"), ("b", "c")]

    def test_shorter_than_order(self):
        assert extract_ngrams(["a"], 3) == []

    def test_trigrams(self):
        assert extract_ngrams(["a", "b", "c", "d"], 3) == [("a", "b", "c"), ("b", "c", "d")]

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            extract_ngrams(["a"], 0)

    @given(st.lists(st.sampled_from("abc"), max_size=12), st.integers(min_value=1, max_value=5))
    def test_window_count(self, tokens, order):
        assert len(extract_ngrams(tokens, order)) == max(0, len(tokens) - order + 1)


class TestBuildCounts:
    def test_unigram_hand_corpus(self, hand_corpus):
        model = build_counts(hand_corpus, 1)
        assert set(model.vocab) == {("p",), ("q",), ("r",)}
        assert model.vocab_size == 3
        assert model.counts["A"] == {("p",): 2, ("q",): 1}
        assert model.totals["A"] == 3
        assert model.counts["B"] == {("q",): 1, ("r",): 1}
        assert model.totals["B"] == 2
        assert model.class_utterances == {"A": 1, "B": 1}

    def test_trigram_hand_corpus(self, hand_corpus):
        model = build_counts(hand_corpus, 3)
        assert model.vocab == (("p", "p", "q"),)
        assert model.vocab_size == 1
        assert model.totals == {"A": 1, "B": 0}

    def test_no_bigrams_in_single_token(self):
        corpus = Corpus.from_utterances([Utterance(id="u1", intent="A", phones=("a",))])
        model = build_counts(corpus, 2)
        assert model.vocab_size == 0
        assert model.totals == {"A": 0}

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            build_counts(Corpus.from_utterances([]), 1)

    def test_vocab_first_seen_order(self, hand_corpus):
        model = build_counts(hand_corpus, 1)
        assert model.vocab == (("p",), ("q",), ("r",))

    @given(
        st.lists(
            st.tuples(st.sampled_from(["A", "B"]), st.lists(st.sampled_from("xyz"), min_size=1, max_size=6)),
            min_size=1,
            max_size=8,
        ),
        st.integers(min_value=1, max_value=4),
    )
    def test_totals_match_window_counts(self, pairs, order):
        utts = [Utterance(id=f"u{i}", intent=intent, phones=tuple(ph)) for i, (intent, ph) in enumerate(pairs)]
        corpus = Corpus.from_utterances(utts)
        model = build_counts(corpus, order)
        expected = sum(max(0, len(ph) - order + 1) for _, ph in pairs)
        assert sum(model.totals.values()) == expected
        for label in corpus.labels:
            assert model.totals[label] == sum(model.counts[label].values())


def _table(counts: dict[str, int], vocab: list[str], utterances: int = 1) -> NGramCountModel:
    """One-class unigram count model from a plain {phone: count} table."""
    return NGramCountModel(
        order=1,
        vocab=tuple((w,) for w in vocab),
        counts={"A": {(w,): n for w, n in counts.items()}},
        totals={"A": sum(counts.values())},
        class_utterances={"A": utterances},
    )


class TestSmoothedProb:
    def test_add_one_worked_values(self):
        model = _table({"p": 2, "q": 1}, ["p", "q", "r"])
        add1 = Smoothing.add_one()
        assert smoothed_prob(model, add1, ("p",), "A") == pytest.approx(0.5, abs=1e-12)
        assert smoothed_prob(model, add1, ("r",), "A") == pytest.approx(1 / 6, abs=1e-12)

    def test_absolute_discount_delta5_worked_values(self):
        model = _table({"p": 7, "q": 2}, ["p", "q", "r"])
        spec = Smoothing.absolute_discount(5)
        assert smoothed_prob(model, spec, ("p",), "A") == pytest.approx(13 / 27, abs=1e-12)
        assert smoothed_prob(model, spec, ("q",), "A") == pytest.approx(7 / 27, abs=1e-12)
        assert smoothed_prob(model, spec, ("r",), "A") == pytest.approx(7 / 27, abs=1e-12)
        total = sum(smoothed_prob(model, spec, w, "A") for w in model.vocab)
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_delta_zero_is_mle(self):
        model = _table({"p": 7, "q": 2}, ["p", "q", "r"])
        spec = Smoothing.absolute_discount(0)
        assert smoothed_prob(model, spec, ("p",), "A") == pytest.approx(7 / 9, abs=1e-12)
        assert smoothed_prob(model, spec, ("q",), "A") == pytest.approx(2 / 9, abs=1e-12)
        assert smoothed_prob(model, spec, ("r",), "A") == 0.0

    def test_zero_total_class(self):
        model = NGramCountModel(
            order=1,
            vocab=(("p",), ("q",)),
            counts={"A": {("p",): 1}, "B": {}},
            totals={"A": 1, "B": 0},
            class_utterances={"A": 1, "B": 1},
        )
        assert smoothed_prob(model, Smoothing.add_one(), ("p",), "B") == pytest.approx(0.5)
        assert smoothed_prob(model, Smoothing.absolute_discount(2), ("p",), "B") == pytest.approx(0.5)

    def test_oov_ngram_rejected(self):
        model = _table({"p": 1}, ["p"])
        with pytest.raises(ValueError, match="vocabulary"):
            smoothed_prob(model, Smoothing.add_one(), ("z",), "A")

    def test_unknown_class_rejected(self):
        model = _table({"p": 1}, ["p"])
        with pytest.raises(ValueError, match="class"):
            smoothed_prob(model, Smoothing.add_one(), ("p",), "Z")

    def test_empty_vocab_rejected(self):
        model = _table({}, [])
        with pytest.raises(ValueError, match="empty"):
            smoothed_prob(model, Smoothing.add_one(), ("p",), "A")


count_tables_st = st.dictionaries(
    st.sampled_from([f"w{i}" for i in range(12)]),
    st.integers(min_value=0, max_value=100),
    min_size=1,
    max_size=12,
)
delta_st = st.sampled_from([0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 100.0])


class TestSmoothingProperties:
    @given(count_tables_st, delta_st)
    def test_normalization(self, counts, delta):
        vocab = sorted(counts)
        model = _table(counts, vocab)
        for spec in (Smoothing.add_one(), Smoothing.absolute_discount(delta)):
            dist = class_distribution(model, spec, "A")
            assert sum(dist.values()) == pytest.approx(1.0, abs=1e-9)

    @given(count_tables_st, delta_st)
    def test_batch_matches_pointwise(self, counts, delta):
        vocab = sorted(counts)
        model = _table(counts, vocab)
        for spec in (Smoothing.add_one(), Smoothing.absolute_discount(delta)):
            dist = class_distribution(model, spec, "A")
            for w in model.vocab:
                assert dist[w] == pytest.approx(smoothed_prob(model, spec, w, "A"), abs=1e-15)

    @given(count_tables_st)
    def test_add_one_strictly_positive(self, counts):
        model = _table(counts, sorted(counts))
        dist = class_distribution(model, Smoothing.add_one(), "A")
        assert all(p > 0 for p in dist.values())

    @given(count_tables_st, delta_st)
    def test_absolute_discount_nonnegative(self, counts, delta):
        model = _table(counts, sorted(counts))
        dist = class_distribution(model, Smoothing.absolute_discount(delta), "A")
        assert all(p >= 0 for p in dist.values())

    def test_small_delta_keeps_seen_types_linear(self):
        # delta below the smallest positive count never clamps at zero
        counts = {"p": 3, "q": 7, "r": 2}
        model = _table(counts, ["p", "q", "r", "s"])
        delta = 1.5
        spec = Smoothing.absolute_discount(delta)
        total = 12
        reserved = 3 * delta / total
        for w, c in counts.items():
            expected = (c - delta) / total + reserved / 4
            assert smoothed_prob(model, spec, (w,), "A") == pytest.approx(expected, abs=1e-12)


class TestClassPrior:
    def test_empirical_banking_counts(self):
        model = build_counts(banking_corpus(), 1)
        assert class_prior(model, EMPIRICAL, "send_money") == pytest.approx(11 / 25, abs=1e-12)
        assert class_prior(model, EMPIRICAL, "deposit_money") == pytest.approx(1 / 25, abs=1e-12)

    def test_uniform_five_classes(self):
        model = build_counts(banking_corpus(), 1)
        assert class_prior(model, UNIFORM, "send_money") == pytest.approx(0.2, abs=1e-12)

    def test_single_class_empirical(self):
        corpus = Corpus.from_utterances([Utterance(id="u", intent="A", phones=("x",))])
        model = build_counts(corpus, 1)
        assert class_prior(model, EMPIRICAL, "A") == 1.0

    def test_unknown_class(self):
        corpus = Corpus.from_utterances([Utterance(id="u", intent="A", phones=("x",))])
        model = build_counts(corpus, 1)
        with pytest.raises(ValueError, match="class"):
            class_prior(model, EMPIRICAL, "Z")

    def test_priors_sum_to_one(self):
        model = build_counts(banking_corpus(), 1)
        for mode in (EMPIRICAL, UNIFORM):
            total = sum(class_prior(model, mode, label) for label in model.labels)
            assert total == pytest.approx(1.0, abs=1e-12)


class TestSmoothingSpec:
    def test_negative_delta_rejected(self):
        with pytest.raises(ValueError):
            Smoothing.absolute_discount(-1)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            Smoothing(kind="katz")

    def test_add_one_takes_no_delta(self):
        with pytest.raises(ValueError):
            Smoothing(kind="add_one", delta=2.0)
