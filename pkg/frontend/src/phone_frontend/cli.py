"""CLI: transcribe a CSV of audio jobs into a classifier-ready manifest.

Exit codes: 0 success, 1 user/input error or failed jobs, 2 internal
error, 3 recognizer unavailable (distinct so CI can skip).
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .adapter import (
    AudioJob,
    ManifestBuildError,
    RecognizerConfig,
    RecognizerUnavailableError,
    build_manifest,
    load_recognizer,
)

PROG = "phone-frontend"

REQUIRED_COLUMNS = ("audio_path", "id", "intent")
OPTIONAL_COLUMNS = ("speaker", "language", "parallel_group")


def read_jobs(path: str | Path) -> list[AudioJob]:
    """Parse the jobs CSV (header row with audio_path,id,speaker,language,intent,parallel_group)."""
    path = Path(path)
    if not path.exists():
        raise ValueError(f"jobs file not found: {path}")
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [col for col in REQUIRED_COLUMNS if col not in header]
        if missing:
            raise ValueError(f"jobs CSV is missing required columns: {', '.join(missing)}")
        jobs = []
        for row_no, row in enumerate(reader, 2):
            try:
                jobs.append(
                    AudioJob(
                        audio_path=row["audio_path"],
                        id=row["id"],
                        intent=row["intent"],
                        speaker=row.get("speaker") or "",
                        language=row.get("language") or "",
                        parallel_group=row.get("parallel_group") or "",
                    )
                )
            except ValueError as exc:
                raise ValueError(f"jobs CSV line {row_no}: {exc}") from exc
    return jobs


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog=PROG, description="Batch phone transcription into a JSONL manifest")
    parser.add_argument("--jobs", required=True, help="CSV of audio jobs")
    parser.add_argument("--out", required=True, help="manifest path to write")
    parser.add_argument("--model", required=True, help="pinned recognizer model id (recorded per line)")
    parser.add_argument("--lang", default="ipa", help="recognizer phone inventory (default ipa)")
    parser.add_argument("--lenient", action="store_true", help="skip failed jobs and allow empty phone strings")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 1

    try:
        jobs = read_jobs(args.jobs)
        config = RecognizerConfig(model=args.model, lang_id=args.lang)
        recognizer = load_recognizer(config)
        report = build_manifest(jobs, args.out, recognizer, config, lenient=args.lenient)
    except RecognizerUnavailableError as exc:
        print(f"{PROG}: recognizer unavailable: {exc}", file=sys.stderr)
        return 3
    except (ManifestBuildError, ValueError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"{PROG}: internal error: {exc!r}", file=sys.stderr)
        return 2

    print(f"wrote {report.written} manifest line(s) to {args.out}")
    for job_id, message in report.failures:
        print(f"skipped {job_id}: {message}", file=sys.stderr)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
