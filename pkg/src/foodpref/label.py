"""1-nearest-neighbor category labeling over reference food embeddings.

Every retained reference food is embedded once into a dense index; each
preprocessed log entry is compared against all of them (or the Method-6
restricted subset) by cosine similarity. The per-food sort is similarity
descending with ties broken by ascending food code, and the category
ranking lists each category at its best food's position.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import AbstractSet, Optional, Sequence

import numpy as np

from . import textprep
from .embed import EmbeddingStore, embed_tokens
from .errors import EmptyCandidateSet, EmptyIndex, ZeroNorm
from .ingest import FnddsDatabase, FoodLog
from .textprep import GenericWordList

logger = logging.getLogger(__name__)


class DbEmbeddingIndex:
    """Dense embedding matrix over reference foods, sorted by food code."""

    def __init__(
        self,
        food_codes: np.ndarray,
        category_ids: np.ndarray,
        matrix: np.ndarray,
        excluded_count: int = 0,
    ):
        order = np.argsort(food_codes, kind="stable")
        self.food_codes = food_codes[order]
        self.category_ids = category_ids[order]
        self.matrix = matrix[order]
        self.norms = np.linalg.norm(self.matrix, axis=1)
        self.excluded_count = excluded_count

    def __len__(self) -> int:
        return len(self.food_codes)


def build_index(db: FnddsDatabase, store: EmbeddingStore) -> DbEmbeddingIndex:
    """Embed every reference food description into a searchable index.

    Foods whose descriptions have no store-covered tokens (or average to a
    zero vector) are excluded and counted. Raises :class:`EmptyIndex` when
    nothing is embeddable.
    """
    codes, cats, rows = [], [], []
    excluded = 0
    for food in db.foods:
        vec = embed_tokens(textprep.tokenize(food.description).all_tokens, store)
        if vec is None or not np.any(vec):
            excluded += 1
            continue
        codes.append(food.food_code)
        cats.append(food.category_id)
        rows.append(vec)
    if not rows:
        raise EmptyIndex("no reference food could be embedded")
    if excluded:
        logger.warning("excluded %d foods with no embedding", excluded)
    return DbEmbeddingIndex(
        np.asarray(codes, dtype=np.int64),
        np.asarray(cats, dtype=np.int64),
        np.asarray(rows, dtype=np.float64),
        excluded_count=excluded,
    )


@dataclass(frozen=True)
class RankedPrediction:
    """Ordered (category, best similarity) list for one log entry.

    An empty ranking means the entry had no embedding; metrics count it as
    incorrect.
    """

    entry_id: int
    ranking: tuple[tuple[int, float], ...]

    @property
    def top_category(self) -> Optional[int]:
        return self.ranking[0][0] if self.ranking else None

    @property
    def top_similarity(self) -> Optional[float]:
        return self.ranking[0][1] if self.ranking else None

    def rank_of(self, category_id: int) -> Optional[int]:
        """1-based rank of a category, or None when absent."""
        for position, (cat, _) in enumerate(self.ranking, start=1):
            if cat == category_id:
                return position
        return None

    def best_rank_among(self, category_ids: AbstractSet[int]) -> Optional[int]:
        """1-based rank of the best-ranked category in the given set."""
        for position, (cat, _) in enumerate(self.ranking, start=1):
            if cat in category_ids:
                return position
        return None


def label_entry(
    entry_vec: np.ndarray,
    index: DbEmbeddingIndex,
    restriction: Optional[AbstractSet[int]] = None,
    entry_id: int = 0,
) -> RankedPrediction:
    """Rank candidate categories for one entry embedding.

    Candidates are all indexed foods, or only those in ``restriction``'s
    categories when given. Foods sort by cosine similarity descending with
    ascending food code breaking ties; the ranking lists each distinct
    category at its first (best) occurrence.
    """
    qnorm = float(np.linalg.norm(entry_vec))
    if qnorm == 0.0:
        raise ZeroNorm("entry embedding has zero norm")

    if restriction is None:
        codes, cats, matrix, norms = (
            index.food_codes, index.category_ids, index.matrix, index.norms,
        )
    else:
        mask = np.isin(index.category_ids, np.fromiter(restriction, dtype=np.int64))
        if not mask.any():
            raise EmptyCandidateSet("category restriction excludes every indexed food")
        codes, cats = index.food_codes[mask], index.category_ids[mask]
        matrix, norms = index.matrix[mask], index.norms[mask]

    sims = (matrix @ np.asarray(entry_vec, dtype=np.float64)) / (norms * qnorm)
    order = np.lexsort((codes, -sims))

    cats_in_order = cats[order]
    first_pos = np.unique(cats_in_order, return_index=True)[1]
    first_pos.sort()
    ranking = tuple(
        (int(cats_in_order[i]), float(sims[order[i]])) for i in first_pos
    )
    return RankedPrediction(entry_id=entry_id, ranking=ranking)


def _label_one(
    entry_id: int,
    name_raw: str,
    method: int,
    db: FnddsDatabase,
    store: EmbeddingStore,
    generic: GenericWordList,
    index: DbEmbeddingIndex,
) -> RankedPrediction:
    prep = textprep.preprocess(textprep.tokenize(name_raw), method, db, generic)
    vec = embed_tokens(prep.tokens, store)
    if vec is None or not np.any(vec):
        return RankedPrediction(entry_id=entry_id, ranking=())
    restriction = None if prep.fallback_to_all else prep.category_restriction
    try:
        return label_entry(vec, index, restriction, entry_id=entry_id)
    except EmptyCandidateSet:
        # Restricted categories had no embeddable foods; fall back to all.
        return label_entry(vec, index, None, entry_id=entry_id)


def label_log(
    log: FoodLog,
    method: int,
    db: FnddsDatabase,
    store: EmbeddingStore,
    generic: GenericWordList,
    index: Optional[DbEmbeddingIndex] = None,
    workers: int = 1,
) -> list[RankedPrediction]:
    """Label every entry of a log; output order matches entry order.

    Entries yielding no embedding produce an empty ranking. The result is
    independent of ``workers``; pass a prebuilt ``index`` to reuse it
    across logs or methods.
    """
    if index is None:
        index = build_index(db, store)

    def run(entry) -> RankedPrediction:
        return _label_one(entry.entry_id, entry.name_raw, method, db, store, generic, index)

    if workers <= 1 or len(log.entries) < 2:
        return [run(entry) for entry in log.entries]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, log.entries))


def serialize_predictions(
    log: FoodLog,
    predictions: Sequence[RankedPrediction],
    categories: dict[int, str],
    include_ranking: bool = False,
) -> list[dict]:
    """Rows of (entry_id, name_raw, top category, similarity) for output."""
    rows = []
    for entry, pred in zip(log.entries, predictions):
        top = pred.top_category
        row = {
            "entry_id": entry.entry_id,
            "name_raw": entry.name_raw,
            "top_category_id": top,
            "top_category_name": categories.get(top, "") if top is not None else "",
            "similarity": pred.top_similarity,
        }
        if include_ranking:
            row["ranking"] = [
                {"category_id": cat, "similarity": sim} for cat, sim in pred.ranking
            ]
        rows.append(row)
    return rows
