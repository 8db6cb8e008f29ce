from __future__ import annotations

import pytest

from phone_intent.corpus import Corpus, Utterance


@pytest.fixture
def hand_corpus() -> Corpus:
    """Two classes: A says 'p p q', B says 'q r'."""
    return Corpus.from_utterances(
        [
            Utterance(id="u1", intent="A", phones=("p", "p", "q")),
            Utterance(id="u2", intent="B", phones=("q", "r")),
        ]
    )


@pytest.fixture
def symmetry_corpus() -> Corpus:
    """Two classes with mirrored vocabularies: X says a's, Y says b's."""
    return Corpus.from_utterances(
        [
            Utterance(id="x1", intent="X", phones=("a", "a")),
            Utterance(id="y1", intent="Y", phones=("b", "b")),
        ]
    )


@pytest.fixture
def toy_separable_corpus() -> Corpus:
    """Disjoint vocabularies and >=2 utterances per class; k=1 CV is perfect."""
    return Corpus.from_utterances(
        [
            Utterance(id="x1", intent="X", phones=("a", "a")),
            Utterance(id="x2", intent="X", phones=("a", "a", "a")),
            Utterance(id="y1", intent="Y", phones=("b", "b")),
            Utterance(id="y2", intent="Y", phones=("b", "b", "b")),
        ]
    )
