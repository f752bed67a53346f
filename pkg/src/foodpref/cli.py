"""Command-line front end: label logs, emit preference profiles, compare
methods, fine-tune embeddings, and print dataset summaries.

One binary with subcommands. Options can come from a config file (JSON or
TOML, via --config or the FOODPREF_CONFIG environment variable); explicit
flags always win over config values, which win over built-in defaults.
Output is deterministic for a fixed config and seed: JSON keys are sorted,
CSV rows use "\n" terminators, and nothing timestamps its output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import defaults
from .embed import (
    EmbeddingStore,
    FinetuneConfig,
    build_sentences,
    finetune,
    load_vectors,
    save_vectors,
)
from .errors import FoodPrefError
from .ingest import DEFAULT_EXCLUSION_TERMS, FoodLog, load_fndds, parse_food_log
from .label import build_index, label_log, serialize_predictions
from .metrics import (
    METRIC_FIELDS,
    build_synonym_groups,
    evaluate,
    load_annotations,
)
from .prefs import GROUP_NAMES, build_profile, default_group_map, load_group_map
from .textprep import derive_generic_words, read_word_list

# Keys accepted in config files; "logs"/"annotations" may be a string or a
# list of strings. Everything else mirrors one flag.
CONFIG_KEYS = frozenset({
    "fndds", "embeddings", "logs", "annotations", "generic_words",
    "group_map", "synonym_stopwords", "method", "top_k", "seed", "out",
    "format", "workers", "epochs", "learning_rate", "negative_samples",
    "window", "dim",
})

_DEFAULTS = {
    "method": None,
    "top_k": 10,
    "seed": 0,
    "out": "-",
    "format": "json",
    "workers": 1,
    "epochs": 5,
    "learning_rate": 0.025,
    "negative_samples": 5,
    "window": "sentence",
    "dim": 300,
}


def _load_config_file(path: str) -> dict:
    text = Path(path).read_bytes()
    if path.endswith(".toml"):
        try:
            import tomllib  # py3.11+
        except ModuleNotFoundError:
            import tomli as tomllib
        return tomllib.loads(text.decode("utf-8"))
    return json.loads(text.decode("utf-8"))


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    path = args.config or os.environ.get("FOODPREF_CONFIG")
    if path:
        try:
            config = _load_config_file(path)
        except (OSError, ValueError) as exc:
            parser.error(f"cannot read config {path!r}: {exc}")
        if not isinstance(config, dict):
            parser.error(f"config {path!r} must hold a table of options")
        for key, value in config.items():
            if key not in CONFIG_KEYS:
                parser.error(f"unknown config key {key!r}")
            if hasattr(args, key) and getattr(args, key) is None:
                setattr(args, key, value)
    for key, value in _DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)


def _as_path_list(value) -> list[str]:
    if value is None:
        return []
    if isinstance(value, (str, Path)):
        return [str(value)]
    return [str(v) for v in value]


def _parse_method(value, parser, allow_all: bool):
    if value == "all" or value is None and allow_all:
        if allow_all:
            return "all"
        parser.error("method 'all' is only supported by the evaluate command")
    try:
        method = int(value)
    except (TypeError, ValueError):
        parser.error(f"--method must be 1..6{' or all' if allow_all else ''}, got {value!r}")
    if method not in range(1, 7):
        parser.error(f"--method must be 1..6{' or all' if allow_all else ''}, got {value!r}")
    return method


def _positive(value, parser, flag: str, minimum: int = 1) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        parser.error(f"{flag} must be an integer, got {value!r}")
    if number < minimum:
        parser.error(f"{flag} must be >= {minimum}, got {number}")
    return number


def _load_db(args, raw: bool = False):
    terms = () if raw else DEFAULT_EXCLUSION_TERMS
    if args.fndds:
        return load_fndds(args.fndds, exclusion_terms=terms)
    return defaults.load_reference_db(exclusion_terms=terms)


def _load_generic(args, db):
    if args.generic_words:
        curation = frozenset(read_word_list(args.generic_words))
    else:
        curation = defaults.generic_curation()
    return derive_generic_words(db.word_freq, curation)


def _load_stopwords(args) -> frozenset[str]:
    if args.synonym_stopwords:
        return frozenset(read_word_list(args.synonym_stopwords))
    return defaults.synonym_stopwords()


def _load_group_map(args):
    if args.group_map:
        return load_group_map(args.group_map)
    return default_group_map()


def _load_logs(args, parser) -> list[FoodLog]:
    paths = _as_path_list(args.logs)
    logs = []
    seen: set[str] = set()
    for path in paths:
        log_id = Path(path).stem
        if log_id in seen:
            parser.error(f"duplicate log name {log_id!r}; rename one file")
        seen.add(log_id)
        logs.append(parse_food_log(path, log_id=log_id))
    return logs


def _single_log(args, parser) -> FoodLog:
    logs = _load_logs(args, parser)
    if len(logs) != 1:
        parser.error("exactly one --logs file is required for this command")
    return logs[0]


def _require_embeddings(args, parser) -> EmbeddingStore:
    if not args.embeddings:
        parser.error("--embeddings is required for this command")
    return load_vectors(args.embeddings)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(args, payload: dict, csv_rows: tuple[list[str], list[list]]) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header, rows = csv_rows
        writer.writerow(header)
        writer.writerows([[_fmt(v) for v in row] for row in rows])
        text = buf.getvalue()
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_label(args, parser) -> int:
    method = _parse_method(args.method, parser, allow_all=False)
    workers = _positive(args.workers, parser, "--workers")
    db = _load_db(args)
    store = _require_embeddings(args, parser)
    log = _single_log(args, parser)
    generic = _load_generic(args, db)

    predictions = label_log(log, method, db, store, generic, workers=workers)
    rows = serialize_predictions(log, predictions, db.categories)
    payload = {"log_id": log.log_id, "method": method, "entries": rows}
    header = ["entry_id", "name_raw", "top_category_id", "top_category_name", "similarity"]
    csv_rows = [[r[h] for h in header] for r in rows]
    _emit(args, payload, (header, csv_rows))
    return 0


def cmd_prefs(args, parser) -> int:
    method = _parse_method(args.method, parser, allow_all=False)
    top_k = _positive(args.top_k, parser, "--top-k")
    workers = _positive(args.workers, parser, "--workers")
    db = _load_db(args)
    store = _require_embeddings(args, parser)
    log = _single_log(args, parser)
    generic = _load_generic(args, db)
    group_map = _load_group_map(args)

    predictions = label_log(log, method, db, store, generic, workers=workers)
    profile = build_profile(log.log_id, method, predictions, db.categories,
                            group_map, k=top_k)

    names = db.categories
    payload = {
        "log_id": profile.log_id,
        "method": profile.method,
        "top": [
            {"category_id": cat, "category_name": names.get(cat, ""), "count": n}
            for cat, n in profile.top
        ],
        "favorites": {
            group: (
                None if profile.favorites.get(group) is None else {
                    "category_id": profile.favorites[group],
                    "category_name": names.get(profile.favorites[group], ""),
                }
            )
            for group in GROUP_NAMES
        },
    }
    header = ["record", "key", "category_id", "category_name", "count"]
    rows = []
    for group in GROUP_NAMES:
        fav = profile.favorites.get(group)
        rows.append([
            "favorite", group, fav,
            names.get(fav, "") if fav is not None else "",
            profile.counts.get(fav, "") if fav is not None else "",
        ])
    for rank, (cat, count) in enumerate(profile.top, start=1):
        rows.append(["top", rank, cat, names.get(cat, ""), count])
    _emit(args, payload, (header, rows))
    return 0


def cmd_evaluate(args, parser) -> int:
    method = _parse_method(args.method if args.method is not None else "all",
                           parser, allow_all=True)
    top_k = _positive(args.top_k, parser, "--top-k")
    workers = _positive(args.workers, parser, "--workers")
    if not args.annotations:
        parser.error("--annotations is required for the evaluate command")

    db = _load_db(args)
    store = _require_embeddings(args, parser)
    logs = _load_logs(args, parser)
    if not logs:
        parser.error("at least one --logs file is required for the evaluate command")
    annotation_paths = _as_path_list(args.annotations)
    if len(annotation_paths) not in (1, len(logs)):
        parser.error(
            f"expected 1 or {len(logs)} --annotations files, got {len(annotation_paths)}"
        )
    if len(annotation_paths) == 1:
        shared = load_annotations(annotation_paths[0])
        annotations = {log.log_id: shared for log in logs}
    else:
        annotations = {
            log.log_id: load_annotations(path)
            for log, path in zip(logs, annotation_paths)
        }

    generic = _load_generic(args, db)
    group_map = _load_group_map(args)
    groups = build_synonym_groups(db.categories, _load_stopwords(args))
    index = build_index(db, store)

    methods = list(range(1, 7)) if method == "all" else [method]
    reports = {}
    for m in methods:
        reports[m] = evaluate(
            logs, annotations, m, db, store, generic, groups,
            group_map=group_map, index=index, workers=workers, k=top_k,
        )

    payload = {
        "methods": {
            str(m): {
                "averaged": report.averaged.as_dict(),
                "per_log": {
                    log_id: row.as_dict() for log_id, row in report.per_log.items()
                },
            }
            for m, report in reports.items()
        }
    }
    header = ["method"] + list(METRIC_FIELDS)
    rows = [
        [m] + [report.averaged.as_dict()[f] for f in METRIC_FIELDS]
        for m, report in reports.items()
    ]
    _emit(args, payload, (header, rows))
    return 0


def _random_store(tokens: Sequence[str], dim: int, seed: int) -> EmbeddingStore:
    # word2vec-style init for training without a pretrained store
    rng = np.random.default_rng(seed)
    vectors = {
        t: rng.uniform(-0.5 / dim, 0.5 / dim, size=dim) for t in sorted(set(tokens))
    }
    return EmbeddingStore(vectors, dim)


def cmd_finetune(args, parser) -> int:
    epochs = _positive(args.epochs, parser, "--epochs")
    negative = _positive(args.negative_samples, parser, "--negative-samples")
    dim = _positive(args.dim, parser, "--dim")
    seed = int(args.seed)
    try:
        lr = float(args.learning_rate)
    except (TypeError, ValueError):
        parser.error(f"--learning-rate must be a number, got {args.learning_rate!r}")
    window = args.window
    if window != "sentence":
        window = _positive(window, parser, "--window")

    db = _load_db(args)
    sentences = build_sentences(db)
    if args.embeddings:
        store = load_vectors(args.embeddings)
    else:
        store = _random_store(
            [t for sentence in sentences for t in sentence], dim, seed
        )
    try:
        cfg = FinetuneConfig(
            epochs=epochs, learning_rate=lr, negative_samples=negative,
            window=window, seed=seed,
        )
    except ValueError as exc:
        parser.error(str(exc))

    tuned = finetune(store, sentences, cfg)
    if args.out in (None, "-"):
        save_vectors(tuned, sys.stdout)
    else:
        save_vectors(tuned, args.out)
    return 0


def _db_stats(db) -> dict:
    counts = Counter(food.category_id for food in db.foods)
    n = len(counts)
    total = len(db.foods)
    mean = total / n if n else 0.0
    std = math.sqrt(sum((c - mean) ** 2 for c in counts.values()) / n) if n else 0.0
    return {
        "foods": total,
        "categories": n,
        "mean_foods_per_category": mean,
        "std_foods_per_category": std,
        "categories_under_ten_foods": sum(1 for c in counts.values() if c < 10),
        "vocabulary_tokens": len(db.vocabulary),
    }


def cmd_summary(args, parser) -> int:
    logs = _load_logs(args, parser)
    raw = _load_db(args, raw=True)
    retained = _load_db(args)

    log_stats = {}
    for log in logs:
        days = {e.date for e in log.entries if e.date is not None}
        log_stats[log.log_id] = {
            "entries": len(log.entries),
            "days": len(days),
            "skipped_rows": log.skipped,
        }
    retained_stats = _db_stats(retained)
    retained_stats["excluded_foods"] = len(raw.foods) - len(retained.foods)
    payload = {
        "logs": log_stats,
        "reference": _db_stats(raw),
        "reference_retained": retained_stats,
    }

    header = ["scope", "key", "value"]
    rows = []
    for log in logs:
        for key, value in log_stats[log.log_id].items():
            rows.append([f"log:{log.log_id}", key, value])
    for scope in ("reference", "reference_retained"):
        for key, value in payload[scope].items():
            rows.append([scope, key, value])
    _emit(args, payload, (header, rows))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foodpref",
        description="Learn food preferences from food-log exports by labeling "
                    "entries with reference-database categories.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON or TOML option file "
                        "(FOODPREF_CONFIG sets a default path)")
    common.add_argument("--fndds", help="reference food database CSV "
                        "(default: bundled copy)")
    common.add_argument("--out", help="output path; '-' for stdout (default)")
    common.add_argument("--format", help="output format: json or csv (default json)")
    common.add_argument("--seed", type=int, help="seed for all randomness (default 0)")

    pipeline = argparse.ArgumentParser(add_help=False)
    pipeline.add_argument("--embeddings", help="word-vector text file")
    pipeline.add_argument("--logs", nargs="+", help="food-log CSV export(s)")
    pipeline.add_argument("--generic-words", dest="generic_words",
                          help="curated generic-word list (one per line)")
    pipeline.add_argument("--method", help="preprocessing method 1..6")
    pipeline.add_argument("--workers", help="parallel labeling threads (default 1)")

    sub = parser.add_subparsers(dest="command", required=True)

    p_label = sub.add_parser("label", parents=[common, pipeline],
                             help="label each log entry with a category")
    p_label.set_defaults(func=cmd_label)

    p_prefs = sub.add_parser("prefs", parents=[common, pipeline],
                             help="aggregate labels into a preference profile")
    p_prefs.add_argument("--top-k", dest="top_k", help="profile size (default 10)")
    p_prefs.add_argument("--group-map", dest="group_map",
                         help="macro-group definition JSON")
    p_prefs.set_defaults(func=cmd_prefs)

    p_eval = sub.add_parser("evaluate", parents=[common, pipeline],
                            help="score methods against gold annotations")
    p_eval.add_argument("--annotations", nargs="+",
                        help="gold label CSV(s): one shared file or one per log")
    p_eval.add_argument("--top-k", dest="top_k", help="profile size (default 10)")
    p_eval.add_argument("--group-map", dest="group_map",
                        help="macro-group definition JSON")
    p_eval.add_argument("--synonym-stopwords", dest="synonym_stopwords",
                        help="stopword list for category-name synonym groups")
    p_eval.set_defaults(func=cmd_evaluate)

    p_fine = sub.add_parser("finetune", parents=[common],
                            help="fine-tune word vectors on the reference foods")
    p_fine.add_argument("--embeddings", help="initial word-vector text file "
                        "(default: seeded random vectors)")
    p_fine.add_argument("--epochs", help="training epochs (default 5)")
    p_fine.add_argument("--learning-rate", dest="learning_rate",
                        help="initial learning rate (default 0.025)")
    p_fine.add_argument("--negative-samples", dest="negative_samples",
                        help="negative samples per pair (default 5)")
    p_fine.add_argument("--window", help="context window size or 'sentence'")
    p_fine.add_argument("--dim", help="dimension for random init (default 300)")
    p_fine.set_defaults(func=cmd_finetune)

    p_sum = sub.add_parser("summary", parents=[common],
                           help="dataset statistics for logs and the reference db")
    p_sum.add_argument("--logs", nargs="*", help="food-log CSV export(s)")
    p_sum.set_defaults(func=cmd_summary)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _merge_config(args, parser)
    if args.format not in ("json", "csv"):
        parser.error(f"--format must be json or csv, got {args.format!r}")
    try:
        return args.func(args, parser)
    except FoodPrefError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
