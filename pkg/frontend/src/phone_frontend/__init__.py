"""Audio-to-phone frontend producing phone-intent JSONL manifests."""

from .adapter import (
    AudioError,
    AudioJob,
    BuildReport,
    ManifestBuildError,
    RecognizerConfig,
    RecognizerUnavailableError,
    build_manifest,
    load_recognizer,
    recognize,
)

__all__ = [
    "AudioError",
    "AudioJob",
    "BuildReport",
    "ManifestBuildError",
    "RecognizerConfig",
    "RecognizerUnavailableError",
    "build_manifest",
    "load_recognizer",
    "recognize",
]

__version__ = "0.1.0"
