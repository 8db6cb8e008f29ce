"""Intent classification for spoken utterances from universal-phone transcriptions."""

from .classifier import (
    ClassifierModel,
    ModelConfig,
    ModelFormatError,
    combine,
    load_model,
    predict,
    save_model,
    score_order,
    train,
)
from .corpus import (
    Corpus,
    CorpusError,
    CorpusStats,
    Utterance,
    corpus_stats,
    parse_corpus,
    tokenize_phones,
    write_corpus,
)
from .evaluation import (
    CvSpec,
    EvalReport,
    Fold,
    SweepResult,
    delta_sweep,
    enumerate_folds,
    run_cv,
)
from .ngrams import (
    NGramCountModel,
    Smoothing,
    build_counts,
    class_distribution,
    class_prior,
    extract_ngrams,
    smoothed_prob,
)

__all__ = [
    "ClassifierModel",
    "Corpus",
    "CorpusError",
    "CorpusStats",
    "CvSpec",
    "EvalReport",
    "Fold",
    "ModelConfig",
    "ModelFormatError",
    "NGramCountModel",
    "Smoothing",
    "SweepResult",
    "Utterance",
    "build_counts",
    "class_distribution",
    "class_prior",
    "combine",
    "corpus_stats",
    "delta_sweep",
    "enumerate_folds",
    "extract_ngrams",
    "load_model",
    "parse_corpus",
    "predict",
    "run_cv",
    "save_model",
    "score_order",
    "smoothed_prob",
    "tokenize_phones",
    "train",
    "write_corpus",
]

__version__ = "0.1.0"
