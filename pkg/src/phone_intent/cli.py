"""Command-line entry point: train, predict, eval-cv, sweep, inspect.

Exit codes: 0 success, 1 user/input error, 2 internal error. Output
files are written atomically after all work succeeds, so a nonzero exit
never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .classifier import (
    ClassifierModel,
    ModelConfig,
    ModelFormatError,
    load_model,
    predict,
    save_model,
    train,
    write_atomic,
)
from .corpus import CorpusError, corpus_stats, parse_corpus, tokenize_phones
from .evaluation import (
    EXHAUSTIVE,
    RANDOM_SAMPLE,
    CvSpec,
    EvalReport,
    SweepResult,
    delta_sweep,
    report_to_csv,
    report_to_json,
    run_cv,
    sweep_to_csv,
)
from .ngrams import ADD_ONE, EMPIRICAL, UNIFORM, Smoothing, extract_ngrams

PROG = "phone-intent"


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _parse_ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part != "")
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated list of integers, got {text!r}")


def _parse_floats(text: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part != "")
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated list of numbers, got {text!r}")


def _parse_labels(text: str) -> tuple[str, ...]:
    return tuple(part for part in text.split(",") if part != "")


def _model_config(args: argparse.Namespace) -> ModelConfig:
    orders = _parse_ints(args.orders, "--orders")
    if not orders:
        raise UsageError("--orders must name at least one n-gram order")
    if args.smoothing == "add1":
        if args.delta is not None:
            raise UsageError("--delta requires --smoothing abs")
        smoothing = tuple(Smoothing.add_one() for _ in orders)
    else:
        if args.delta is None:
            raise UsageError("--smoothing abs requires --delta")
        deltas = _parse_floats(args.delta, "--delta")
        if len(deltas) == 1:
            deltas = deltas * len(orders)
        if len(deltas) != len(orders):
            raise UsageError(f"--delta expects 1 or {len(orders)} values, got {len(deltas)}")
        smoothing = tuple(Smoothing.absolute_discount(d) for d in deltas)
    weights = _parse_floats(args.weights, "--weights") if args.weights else tuple(1.0 for _ in orders)
    prior = EMPIRICAL if args.prior == "empirical" else UNIFORM
    return ModelConfig(orders=orders, smoothing=smoothing, prior_mode=prior, weights=weights)


def _cv_spec(args: argparse.Namespace) -> CvSpec:
    return CvSpec(
        k=args.k,
        exclude_from_test=_parse_labels(args.exclude_test),
        mode=EXHAUSTIVE if args.mode == "exhaustive" else RANDOM_SAMPLE,
        sample_count=args.count,
        seed=args.seed,
    )


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        write_atomic(output, text)


def _smoothing_label(spec: Smoothing) -> str:
    if spec.kind == ADD_ONE:
        return "add1"
    return f"abs(delta={spec.delta:g})"


def cmd_train(args: argparse.Namespace) -> int:
    config = _model_config(args)
    corpus = parse_corpus(args.input, strict=not args.lenient)
    model = train(corpus, config)
    save_model(model, args.output)
    stats = corpus_stats(corpus)
    print(f"corpus: {stats.total} utterances, {len(corpus.labels)} intents")
    for label, count in stats.label_counts.items():
        print(f"  {label}: {count}")
    for order, spec in zip(config.orders, config.smoothing):
        v = model.order_models[order].vocab_size
        print(f"order {order}: {v} unique n-grams, smoothing {_smoothing_label(spec)}")
    print(f"model written to {args.output}")
    return 0


def _predict_rows(model: ClassifierModel, items: list[tuple[str, tuple[str, ...]]]) -> list[dict]:
    rows = []
    for utt_id, phones in items:
        label, scores = predict(model, phones)
        rows.append({"id": utt_id, "predicted": label, "scores": scores})
    return rows


def _render_predictions(rows: list[dict], labels: tuple[str, ...], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, ensure_ascii=False, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        lines = ["id,predicted," + ",".join(f"logscore_{label}" for label in labels)]
        for row in rows:
            scores = ",".join(repr(row["scores"][label]) for label in labels)
            lines.append(f"{row['id']},{row['predicted']},{scores}")
        return "\n".join(lines) + "\n"
    lines = []
    for row in rows:
        scores = " ".join(f"{label}={row['scores'][label]:.6f}" for label in labels)
        lines.append(f"{row['id']}\t{row['predicted']}\t{scores}")
    return "\n".join(lines) + "\n" if lines else ""


def cmd_predict(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    if args.phones is not None:
        items = [("-", tokenize_phones(args.phones))]
    else:
        corpus = parse_corpus(args.input, strict=False)
        items = [(u.id, u.phones) for u in corpus.utterances]
    rows = _predict_rows(model, items)
    _emit(_render_predictions(rows, model.labels, args.format), args.output)
    return 0


def _render_report_text(report: EvalReport, spec: CvSpec) -> str:
    lines = [
        f"folds: {len(report.folds)} (k={spec.k}, mode={spec.mode})",
        f"test predictions: {sum(len(f.test_ids) for f in report.folds)}",
        f"accuracy: {report.accuracy:.4f}",
        "vocabulary (full corpus): "
        + ", ".join(f"order {order}: {v}" for order, v in report.vocab_sizes.items()),
        "confusion (rows gold, columns predicted):",
    ]
    width = max((len(label) for label in report.labels), default=4) + 2
    header = " " * width + "".join(label.rjust(width) for label in report.labels)
    lines.append(header)
    for gold in report.labels:
        row = gold.rjust(width) + "".join(
            str(report.confusion[gold][pred]).rjust(width) for pred in report.labels
        )
        lines.append(row)
    return "\n".join(lines) + "\n"


def cmd_eval_cv(args: argparse.Namespace) -> int:
    config = _model_config(args)
    spec = _cv_spec(args)
    corpus = parse_corpus(args.input, strict=not args.lenient)
    report = run_cv(corpus, config, spec)
    if args.format == "json":
        rendered = report_to_json(report)
    elif args.format == "csv":
        rendered = report_to_csv(report)
    else:
        rendered = _render_report_text(report, spec)
    _emit(rendered, args.output)
    if args.output is not None:
        print(f"accuracy: {report.accuracy:.4f}")
        print(f"report written to {args.output}")
    return 0


def _render_sweep_text(result: SweepResult) -> str:
    lines = [f"note: {result.caveat}", "order  delta  accuracy"]
    for row in result.rows:
        lines.append(f"{row.order:>5}  {row.delta:>5g}  {row.accuracy:.4f}")
    lines.append("best per order:")
    for order in sorted(result.best):
        row = result.best[order]
        lines.append(f"  order {order}: delta={row.delta:g} accuracy={row.accuracy:.4f}")
    return "\n".join(lines) + "\n"


def _render_sweep_json(result: SweepResult) -> str:
    doc = {
        "note": result.caveat,
        "rows": [{"order": r.order, "delta": r.delta, "accuracy": r.accuracy} for r in result.rows],
        "best": {str(order): {"delta": r.delta, "accuracy": r.accuracy} for order, r in result.best.items()},
    }
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def cmd_sweep(args: argparse.Namespace) -> int:
    orders = _parse_ints(args.orders, "--orders")
    deltas = _parse_floats(args.deltas, "--deltas")
    if not deltas:
        raise UsageError("--deltas must name at least one delta value")
    spec = _cv_spec(args)
    prior = EMPIRICAL if args.prior == "empirical" else UNIFORM
    corpus = parse_corpus(args.input, strict=not args.lenient)
    result = delta_sweep(corpus, orders, deltas, spec, prior_mode=prior)
    if args.format == "json":
        rendered = _render_sweep_json(result)
    elif args.format == "csv":
        rendered = sweep_to_csv(result)
    else:
        rendered = _render_sweep_text(result)
    _emit(rendered, args.output)
    if args.output is not None:
        print(f"note: {result.caveat}")
        print(f"sweep written to {args.output}")
    return 0


def cmd_inspect(args: argparse.Namespace) -> int:
    corpus = parse_corpus(args.input, strict=not args.lenient)
    orders = _parse_ints(args.orders, "--orders")
    stats = corpus_stats(corpus)
    unique = {}
    for order in orders:
        seen = set()
        for utt in corpus.utterances:
            seen.update(extract_ngrams(utt.phones, order))
        unique[order] = len(seen)
    histogram = Counter(len(u.phones) for u in corpus.utterances)
    if args.format == "json":
        doc = {
            "total": stats.total,
            "labels": stats.label_counts,
            "unique_ngrams": {str(order): v for order, v in unique.items()},
            "length_histogram": {str(length): histogram[length] for length in sorted(histogram)},
        }
        _emit(json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n", args.output)
    else:
        lines = [f"corpus: {stats.total} utterances, {len(corpus.labels)} intents"]
        for label, count in stats.label_counts.items():
            lines.append(f"  {label}: {count}")
        for order in orders:
            lines.append(f"order {order}: {unique[order]} unique n-grams")
        lines.append("phone-length histogram:")
        for length in sorted(histogram):
            lines.append(f"  {length}: {histogram[length]}")
        _emit("\n".join(lines) + "\n", args.output)
    if not corpus.utterances:
        print("warning: corpus is empty", file=sys.stderr)
    return 0


def _add_manifest_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-i", "--input", required=True, help="JSONL manifest path")
    parser.add_argument("--lenient", action="store_true", help="allow empty phone sequences and duplicate ids")


def _add_model_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--orders", default="1,2,3", help="comma-separated n-gram orders (default 1,2,3)")
    parser.add_argument("--smoothing", choices=["add1", "abs"], default="add1", help="estimator (default add1)")
    parser.add_argument("--delta", default=None, help="comma-separated discounts, one per order (abs only)")
    parser.add_argument("--weights", default=None, help="comma-separated combination weights (default all 1)")
    parser.add_argument("--prior", choices=["empirical", "uniform"], default="empirical")


def _add_cv_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=2, help="held-out utterances per fold (default 2)")
    parser.add_argument("--exclude-test", default="", dest="exclude_test", help="labels never used for testing")
    parser.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    parser.add_argument("--count", type=int, default=None, help="folds to draw in random mode")
    parser.add_argument("--seed", type=int, default=None, help="PRNG seed for random mode")


def _add_output_flags(parser: argparse.ArgumentParser, formats: list[str]) -> None:
    parser.add_argument("--format", choices=formats, default=formats[0])
    parser.add_argument("-o", "--output", default=None, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Phone-sequence intent classification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model from a manifest")
    _add_manifest_flags(p)
    p.add_argument("-o", "--output", required=True, help="model file to write")
    _add_model_config_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="classify phone sequences with a trained model")
    p.add_argument("-m", "--model", required=True, help="model file from `train`")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("-i", "--input", default=None, help="JSONL manifest to classify")
    source.add_argument("--phones", default=None, help="one space-separated phone string")
    _add_output_flags(p, ["text", "json", "csv"])
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval-cv", help="leave-k-out cross-validation")
    _add_manifest_flags(p)
    _add_model_config_flags(p)
    _add_cv_flags(p)
    _add_output_flags(p, ["text", "json", "csv"])
    p.set_defaults(func=cmd_eval_cv)

    p = sub.add_parser("sweep", help="cross-validate a grid of discount deltas per order")
    _add_manifest_flags(p)
    p.add_argument("--orders", default="1,2,3", help="comma-separated n-gram orders (default 1,2,3)")
    p.add_argument("--deltas", required=True, help="comma-separated delta grid")
    p.add_argument("--prior", choices=["empirical", "uniform"], default="empirical")
    _add_cv_flags(p)
    _add_output_flags(p, ["text", "csv", "json"])
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("inspect", help="corpus statistics and vocabulary sizes")
    _add_manifest_flags(p)
    p.add_argument("--orders", default="1,2,3", help="orders to count unique n-grams for")
    _add_output_flags(p, ["text", "json"])
    p.set_defaults(func=cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CorpusError, ModelFormatError, UsageError, ValueError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"{PROG}: internal error: {exc!r}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
