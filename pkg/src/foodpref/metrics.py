"""Labeling and preference metrics, per log and averaged across logs.

Eight numbers per log: strict and synonymous labeling accuracy over unique
entry names, mean reciprocal rank and its synonymous variant, strict and
synonymous preference accuracy over the five macro groups, and strict and
synonymous top-10 identification percentages. Category synonymy is the
transitive closure of "names share a non-stopword token".
"""

from __future__ import annotations

import csv
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from . import textprep
from .embed import EmbeddingStore
from .errors import MissingAnnotation
from .ingest import FnddsDatabase, FoodLog, normalize_name
from .label import DbEmbeddingIndex, RankedPrediction, build_index, label_log
from .prefs import (
    GROUP_NAMES,
    GroupMap,
    PreferenceProfile,
    category_frequencies,
    profile_from_counts,
)
from .textprep import GenericWordList

logger = logging.getLogger(__name__)

DEFAULT_SYNONYM_STOPWORDS = frozenset(
    {"and", "other", "not", "further", "specified", "dishes", "than", "as", "ingredient"}
)

METRIC_FIELDS = (
    "accuracy",
    "syn_accuracy",
    "mrr",
    "smrr",
    "pref_accuracy",
    "syn_pref_accuracy",
    "top10_pct",
    "syn_top10_pct",
)


class UnionFind:
    """Disjoint sets over hashable items with path compression."""

    def __init__(self):
        self.parent: dict = {}

    def add(self, item) -> None:
        self.parent.setdefault(item, item)

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b) -> None:
        self.add(a)
        self.add(b)
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class SynonymGroups:
    """Partition of category ids; each group keyed by its smallest member."""

    group_of: Mapping[int, int]
    groups: Mapping[int, frozenset[int]]

    def __len__(self) -> int:
        return len(self.groups)

    def same(self, a: int, b: int) -> bool:
        if a == b:
            return True
        ra = self.group_of.get(a)
        return ra is not None and ra == self.group_of.get(b)

    def members_of(self, category_id: int) -> frozenset[int]:
        rep = self.group_of.get(category_id)
        if rep is None:
            return frozenset({category_id})
        return self.groups[rep]


def build_synonym_groups(
    categories: Mapping[int, str],
    stopwords: frozenset[str] = DEFAULT_SYNONYM_STOPWORDS,
) -> SynonymGroups:
    """Merge categories whose names share any non-stopword token.

    The merge is transitive, so the result is a partition; it depends only
    on the category set, not on input order.
    """
    uf = UnionFind()
    token_owner: dict[str, int] = {}
    for cat in sorted(categories):
        uf.add(cat)
        tokens = set(textprep.tokenize(categories[cat]).all_tokens) - stopwords
        for tok in sorted(tokens):
            if tok in token_owner:
                uf.union(token_owner[tok], cat)
            else:
                token_owner[tok] = cat

    clusters: dict[int, set[int]] = defaultdict(set)
    for cat in categories:
        clusters[uf.find(cat)].add(cat)
    group_of: dict[int, int] = {}
    groups: dict[int, frozenset[int]] = {}
    for members in clusters.values():
        rep = min(members)
        groups[rep] = frozenset(members)
        for cat in members:
            group_of[cat] = rep
    return SynonymGroups(group_of=group_of, groups=groups)


def _gold_for(name: str, gold: Mapping[str, int]) -> int:
    try:
        return gold[name]
    except KeyError:
        raise MissingAnnotation(f"no gold category for entry name {name!r}") from None


def labeling_accuracy(
    predictions: Mapping[str, RankedPrediction], gold: Mapping[str, int]
) -> float:
    """Fraction of unique names whose top-ranked category is the gold one.

    Empty rankings count as incorrect; an unannotated name raises
    :class:`MissingAnnotation`.
    """
    if not predictions:
        return 0.0
    correct = sum(
        1 for name, pred in predictions.items() if pred.top_category == _gold_for(name, gold)
    )
    return correct / len(predictions)


def synonymous_accuracy(
    predictions: Mapping[str, RankedPrediction],
    gold: Mapping[str, int],
    groups: SynonymGroups,
) -> float:
    """As accuracy, but a prediction in the gold synonym group counts."""
    if not predictions:
        return 0.0
    correct = 0
    for name, pred in predictions.items():
        want = _gold_for(name, gold)
        top = pred.top_category
        if top is not None and groups.same(top, want):
            correct += 1
    return correct / len(predictions)


def mean_reciprocal_rank(
    predictions: Mapping[str, RankedPrediction], gold: Mapping[str, int]
) -> float:
    """Mean of 1/rank of the gold category; absent gold contributes 0."""
    if not predictions:
        return 0.0
    total = 0.0
    for name, pred in predictions.items():
        rank = pred.rank_of(_gold_for(name, gold))
        if rank is not None:
            total += 1.0 / rank
    return total / len(predictions)


def synonymous_mrr(
    predictions: Mapping[str, RankedPrediction],
    gold: Mapping[str, int],
    groups: SynonymGroups,
) -> float:
    """As MRR, using the best-ranked member of the gold synonym group."""
    if not predictions:
        return 0.0
    total = 0.0
    for name, pred in predictions.items():
        want = _gold_for(name, gold)
        rank = pred.best_rank_among(groups.members_of(want))
        if rank is not None:
            total += 1.0 / rank
    return total / len(predictions)


def preference_accuracy(
    pred_profile: PreferenceProfile,
    gold_profile: PreferenceProfile,
    groups: SynonymGroups,
) -> tuple[float, float]:
    """(strict, synonymous) agreement of per-group favorites.

    A group where both favorites are absent counts as a match; exactly one
    absent counts as a mismatch. Both profiles must come from the same
    group map for the comparison to mean anything.
    """
    strict = synonymous = 0
    for group in GROUP_NAMES:
        mine = pred_profile.favorite(group)
        want = gold_profile.favorite(group)
        if mine is None and want is None:
            strict += 1
            synonymous += 1
        elif mine is None or want is None:
            continue
        else:
            if mine == want:
                strict += 1
            if groups.same(mine, want):
                synonymous += 1
    n = len(GROUP_NAMES)
    return strict / n, synonymous / n


def top10_identified(
    pred_profile: PreferenceProfile,
    gold_profile: PreferenceProfile,
    groups: SynonymGroups,
) -> tuple[float, float]:
    """(strict, synonymous) share of the gold top-10 found in the predicted top-10.

    The denominator is the gold list's length (fewer than 10 distinct
    categories shrink it). An empty gold list is vacuously identified.
    """
    gold_top = [cat for cat, _ in gold_profile.top]
    if not gold_top:
        return 1.0, 1.0
    pred_top = {cat for cat, _ in pred_profile.top}
    strict = sum(1 for cat in gold_top if cat in pred_top) / len(gold_top)
    pred_reps = {groups.group_of.get(cat, cat) for cat in pred_top}
    synonymous = sum(
        1 for cat in gold_top if groups.group_of.get(cat, cat) in pred_reps
    ) / len(gold_top)
    return strict, synonymous


@dataclass(frozen=True)
class MetricRow:
    """The eight metrics for one log (or their average across logs)."""

    accuracy: float
    syn_accuracy: float
    mrr: float
    smrr: float
    pref_accuracy: float
    syn_pref_accuracy: float
    top10_pct: float
    syn_top10_pct: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRIC_FIELDS}


@dataclass(frozen=True)
class EvaluationReport:
    method: int
    per_log: Mapping[str, MetricRow]
    averaged: MetricRow


def _average_rows(rows: Sequence[MetricRow]) -> MetricRow:
    n = len(rows)
    return MetricRow(
        **{name: sum(getattr(r, name) for r in rows) / n for name in METRIC_FIELDS}
    )


def unique_predictions(
    log: FoodLog, predictions: Sequence[RankedPrediction]
) -> dict[str, RankedPrediction]:
    """One prediction per unique normalized name: its first occurrence."""
    out: dict[str, RankedPrediction] = {}
    for entry, pred in zip(log.entries, predictions):
        out.setdefault(normalize_name(entry.name_raw), pred)
    return out


def evaluate_log(
    log: FoodLog,
    gold: Mapping[str, int],
    method: int,
    db: FnddsDatabase,
    store: EmbeddingStore,
    generic: GenericWordList,
    groups: SynonymGroups,
    group_map: Optional[GroupMap] = None,
    index: Optional[DbEmbeddingIndex] = None,
    workers: int = 1,
    k: int = 10,
) -> MetricRow:
    """All eight metrics for one annotated log under one method."""
    predictions = label_log(log, method, db, store, generic, index=index, workers=workers)
    by_name = unique_predictions(log, predictions)

    gold_counts: Counter = Counter(
        _gold_for(normalize_name(entry.name_raw), gold) for entry in log.entries
    )
    pred_profile = profile_from_counts(
        log.log_id, method, category_frequencies(predictions), db.categories, group_map, k
    )
    gold_profile = profile_from_counts(
        log.log_id, method, gold_counts, db.categories, group_map, k
    )

    pref, syn_pref = preference_accuracy(pred_profile, gold_profile, groups)
    top10, syn_top10 = top10_identified(pred_profile, gold_profile, groups)
    return MetricRow(
        accuracy=labeling_accuracy(by_name, gold),
        syn_accuracy=synonymous_accuracy(by_name, gold, groups),
        mrr=mean_reciprocal_rank(by_name, gold),
        smrr=synonymous_mrr(by_name, gold, groups),
        pref_accuracy=pref,
        syn_pref_accuracy=syn_pref,
        top10_pct=top10,
        syn_top10_pct=syn_top10,
    )


def evaluate(
    logs: Sequence[FoodLog],
    annotations: Mapping[str, Mapping[str, int]],
    method: int,
    db: FnddsDatabase,
    store: EmbeddingStore,
    generic: GenericWordList,
    groups: SynonymGroups,
    group_map: Optional[GroupMap] = None,
    index: Optional[DbEmbeddingIndex] = None,
    workers: int = 1,
    k: int = 10,
) -> EvaluationReport:
    """Per-log metrics for one method, then their arithmetic mean."""
    if not logs:
        raise ValueError("no logs to evaluate")
    if index is None:
        index = build_index(db, store)
    per_log: dict[str, MetricRow] = {}
    for log in logs:
        if log.log_id not in annotations:
            raise MissingAnnotation(f"no annotations for log {log.log_id!r}")
        per_log[log.log_id] = evaluate_log(
            log, annotations[log.log_id], method, db, store, generic,
            groups, group_map, index=index, workers=workers, k=k,
        )
    return EvaluationReport(
        method=method,
        per_log=per_log,
        averaged=_average_rows(list(per_log.values())),
    )


def load_annotations(source) -> dict[str, int]:
    """Read gold labels from CSV rows of (normalized_name, category_id).

    A header row is detected by a non-integer second column. Names are
    re-normalized so hand-written files need not be exact.
    """
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    else:
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    gold: dict[str, int] = {}
    for i, row in enumerate(rows):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) < 2:
            raise MissingAnnotation(f"annotation row {i + 1} has no category column")
        name, raw_cat = row[0], row[1].strip()
        if i == 0 and not raw_cat.lstrip("-").isdigit():
            continue
        try:
            gold[normalize_name(name)] = int(raw_cat)
        except ValueError:
            raise MissingAnnotation(
                f"annotation row {i + 1} category {raw_cat!r} is not an integer"
            ) from None
    return gold
