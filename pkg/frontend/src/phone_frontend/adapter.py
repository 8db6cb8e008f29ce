"""Audio-to-manifest adapter around a universal phone recognizer.

Converts WAV files into the JSONL manifest format the classifier
consumes (one object per line with ``id``, ``intent`` and a
space-separated ``phones`` string). The recognizer itself (Allosaurus)
is an optional dependency loaded at runtime; when it is missing a
distinct :class:`RecognizerUnavailableError` is raised so CI can skip.

Phone symbols pass through verbatim: the adapter only joins them with
single spaces and never invents or normalizes tokens.
"""

from __future__ import annotations

import audioop
import json
import os
import tempfile
import wave
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

TARGET_RATE = 16000
TARGET_WIDTH = 2  # 16-bit samples

Recognizer = Callable[[str], str]


class RecognizerUnavailableError(RuntimeError):
    """The recognizer library or its acoustic model is not installed."""


class AudioError(ValueError):
    """An audio file is unreadable, corrupt, or empty."""


class ManifestBuildError(RuntimeError):
    """One or more jobs failed in strict mode; nothing was written."""

    def __init__(self, failures: list[tuple[str, str]]):
        self.failures = failures
        detail = "; ".join(f"{job_id}: {message}" for job_id, message in failures)
        super().__init__(f"{len(failures)} job(s) failed: {detail}")


@dataclass(frozen=True)
class AudioJob:
    """One WAV file plus the metadata carried through to its manifest line."""

    audio_path: str
    id: str
    speaker: str = ""
    language: str = ""
    intent: str = ""
    parallel_group: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("job id must be non-empty")


@dataclass(frozen=True)
class RecognizerConfig:
    """Pinned recognizer identity, recorded in every emitted manifest line."""

    model: str
    lang_id: str = "ipa"

    @property
    def tag(self) -> str:
        return f"allosaurus/{self.model}/{self.lang_id}"


def load_recognizer(config: RecognizerConfig) -> Recognizer:
    """Build the Allosaurus-backed recognizer callable for a pinned model."""
    try:
        from allosaurus.app import read_recognizer
    except ImportError as exc:
        raise RecognizerUnavailableError(
            "the allosaurus package is not installed (pip install allosaurus)"
        ) from exc
    try:
        model = read_recognizer(config.model)
    except Exception as exc:
        raise RecognizerUnavailableError(f"could not load recognizer model {config.model!r}: {exc}") from exc

    def run(wav_path: str) -> str:
        return model.recognize(wav_path, config.lang_id)

    return run


def _read_wav(path: str) -> tuple[bytes, int, int, int]:
    try:
        with wave.open(path, "rb") as wav:
            params = wav.getparams()
            frames = wav.readframes(params.nframes)
    except (wave.Error, EOFError, OSError) as exc:
        raise AudioError(f"unreadable WAV file {path}: {exc}") from exc
    if params.nframes == 0 or not frames:
        raise AudioError(f"WAV file {path} contains no audio frames")
    if params.nchannels not in (1, 2):
        raise AudioError(f"WAV file {path} has {params.nchannels} channels; expected mono or stereo")
    return frames, params.nchannels, params.sampwidth, params.framerate


def ensure_mono_16k(path: str) -> tuple[str, bool]:
    """Return a path to mono/16 kHz/16-bit audio for ``path``.

    The second element tells the caller whether the returned path is a
    temporary conversion that must be deleted.
    """
    frames, channels, width, rate = _read_wav(path)
    if channels == 1 and width == TARGET_WIDTH and rate == TARGET_RATE:
        return path, False
    if width != TARGET_WIDTH:
        frames = audioop.lin2lin(frames, width, TARGET_WIDTH)
    if channels == 2:
        frames = audioop.tomono(frames, TARGET_WIDTH, 0.5, 0.5)
    if rate != TARGET_RATE:
        frames, _ = audioop.ratecv(frames, TARGET_WIDTH, 1, rate, TARGET_RATE, None)
    fd, tmp_name = tempfile.mkstemp(suffix=".wav")
    os.close(fd)
    with wave.open(tmp_name, "wb") as out:
        out.setnchannels(1)
        out.setsampwidth(TARGET_WIDTH)
        out.setframerate(TARGET_RATE)
        out.writeframes(frames)
    return tmp_name, True


def recognize(job: AudioJob, recognizer: Recognizer) -> str:
    """Run the recognizer on one job; returns a space-joined phone string.

    Tokens are passed through verbatim apart from whitespace joining, so
    the output re-splits into the same tokens on the consumer side.
    """
    wav_path, is_temp = ensure_mono_16k(job.audio_path)
    try:
        raw = recognizer(wav_path)
    finally:
        if is_temp:
            os.unlink(wav_path)
    return " ".join(raw.split())


def _manifest_line(job: AudioJob, phones: str, tag: str) -> str:
    record = {"id": job.id, "intent": job.intent, "phones": phones}
    if job.speaker:
        record["speaker"] = job.speaker
    if job.language:
        record["language"] = job.language
    if job.parallel_group:
        record["parallel_group"] = job.parallel_group
    record["audio_path"] = job.audio_path
    record["frontend"] = tag
    return json.dumps(record, ensure_ascii=False, sort_keys=True)


@dataclass(frozen=True)
class BuildReport:
    written: int
    failures: tuple[tuple[str, str], ...]


def build_manifest(
    jobs: Sequence[AudioJob],
    out_path: str | Path,
    recognizer: Recognizer,
    config: RecognizerConfig,
    lenient: bool = False,
) -> BuildReport:
    """Transcribe every job and write one manifest line per success.

    Lines preserve job order. In strict mode any failure (including an
    empty phone sequence) aborts before anything is written; in lenient
    mode failed jobs are reported and skipped, and empty phone sequences
    are emitted.
    """
    lines: list[str] = []
    failures: list[tuple[str, str]] = []
    for job in jobs:
        try:
            phones = recognize(job, recognizer)
        except AudioError as exc:
            failures.append((job.id, str(exc)))
            continue
        if not phones and not lenient:
            failures.append((job.id, "recognizer produced no phones"))
            continue
        lines.append(_manifest_line(job, phones, config.tag))
    if failures and not lenient:
        raise ManifestBuildError(failures)

    out_path = Path(out_path)
    fd, tmp_name = tempfile.mkstemp(dir=out_path.parent or Path("."), prefix=out_path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in lines))
        os.replace(tmp_name, out_path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return BuildReport(written=len(lines), failures=tuple(failures))
