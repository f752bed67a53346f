"""Word-vector store, phrase embedding by averaging, cosine similarity, and
skip-gram fine-tuning over artificial description+category sentences.

The store reads/writes the plain word-vector text format: an optional
"count dimension" header line, then one "token v1 ... vd" line per token.
Fine-tuning is skip-gram with negative sampling; negatives are drawn from
the unigram^(3/4) distribution over the training sentences, and every run
is reproducible from the config seed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Optional, Sequence, TextIO, Union

import numpy as np

from . import textprep
from .errors import DimensionMismatch, EmptyStore, ZeroNorm

if TYPE_CHECKING:
    from .ingest import FnddsDatabase

logger = logging.getLogger(__name__)

Source = Union[str, Path, TextIO]


class EmbeddingStore:
    """Immutable-by-convention map from token to fixed-dimension vector."""

    def __init__(self, vectors: dict[str, np.ndarray], dimension: int):
        self.dimension = dimension
        self.vectors = vectors

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, token: str) -> Optional[np.ndarray]:
        return self.vectors.get(token)

    def tokens(self) -> Iterable[str]:
        return self.vectors.keys()


def load_vectors(source: Source) -> EmbeddingStore:
    """Parse a word-vector text stream into an :class:`EmbeddingStore`.

    The dimension is inferred from the first vector line (an optional
    "count dimension" header is accepted); duplicate tokens keep their
    first occurrence. Raises :class:`DimensionMismatch` on a wrong-arity
    line and :class:`EmptyStore` when no vector parses.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return _parse_vectors(fh)
    return _parse_vectors(source)


def _parse_vectors(stream: TextIO) -> EmbeddingStore:
    vectors: dict[str, np.ndarray] = {}
    dimension = None
    for line_no, line in enumerate(stream, start=1):
        parts = line.split()
        if not parts:
            continue
        if line_no == 1 and len(parts) == 2:
            try:
                int(parts[0]), int(parts[1])
                continue  # header line
            except ValueError:
                pass
        token, values = parts[0], parts[1:]
        if dimension is None:
            if not values:
                raise DimensionMismatch(f"line {line_no}: no vector components")
            dimension = len(values)
        elif len(values) != dimension:
            raise DimensionMismatch(
                f"line {line_no}: expected {dimension} components, got {len(values)}"
            )
        if token in vectors:
            continue
        vectors[token] = np.asarray([float(v) for v in values], dtype=np.float64)
    if not vectors:
        raise EmptyStore("no vectors parsed from source")
    return EmbeddingStore(vectors, dimension)


def save_vectors(store: EmbeddingStore, dest: Source) -> None:
    """Write a store in the same text format (with a count/dimension header)."""
    def _write(fh: TextIO) -> None:
        fh.write(f"{len(store)} {store.dimension}\n")
        for token, vec in store.vectors.items():
            fh.write(token + " " + " ".join(f"{v:.17g}" for v in vec) + "\n")

    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8") as fh:
            _write(fh)
    else:
        _write(dest)


def embed_tokens(tokens: Sequence[str], store: EmbeddingStore) -> Optional[np.ndarray]:
    """Average the vectors of the tokens present in the store.

    Tokens absent from the store are skipped; returns None when no token is
    covered (the entry has no embedding).
    """
    rows = [store.vectors[t] for t in tokens if t in store.vectors]
    if not rows:
        return None
    return np.mean(np.asarray(rows, dtype=np.float64), axis=0)


def cosine(x: np.ndarray, y: np.ndarray) -> float:
    """Cosine similarity x.y / (|x| |y|), computed in double precision."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    nx = np.linalg.norm(x)
    ny = np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ZeroNorm("cosine similarity is undefined for zero-norm vectors")
    return float(np.dot(x, y) / (nx * ny))


def build_sentences(db: "FnddsDatabase") -> list[list[str]]:
    """One artificial sentence per food: description tokens then category tokens."""
    sentences = []
    for food in db.foods:
        tokens = list(textprep.tokenize(food.description).all_tokens)
        tokens.extend(textprep.tokenize(food.category_name).all_tokens)
        sentences.append(tokens)
    return sentences


@dataclass(frozen=True)
class FinetuneConfig:
    epochs: int = 5
    learning_rate: float = 0.025
    negative_samples: int = 5
    window: Union[int, str] = "sentence"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if not 0 < self.learning_rate <= 1:
            raise ValueError("learning_rate must be in (0, 1]")
        if self.negative_samples < 1:
            raise ValueError("negative_samples must be >= 1")
        if isinstance(self.window, str):
            if self.window != "sentence":
                raise ValueError('window must be a positive integer or "sentence"')
        elif self.window < 1:
            raise ValueError("window must be >= 1")


_SCORE_FLOOR = 1e-12  # keeps log() finite at saturated scores


def _sigmoid(x: np.ndarray | float) -> np.ndarray | float:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -500.0, 500.0)))


def pair_loss(
    center: np.ndarray, context: np.ndarray, negatives: np.ndarray
) -> float:
    """Negative-sampling logistic loss for one (center, context, negatives)."""
    loss = -math.log(max(_SCORE_FLOOR, _sigmoid(float(np.dot(center, context)))))
    for neg in negatives:
        loss -= math.log(max(_SCORE_FLOOR, _sigmoid(-float(np.dot(center, neg)))))
    return loss


def pair_gradients(
    center: np.ndarray, context: np.ndarray, negatives: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Loss and analytic gradients for one negative-sampling update.

    Returns (loss, d/d-center, d/d-context, d/d-negatives); the negatives
    gradient has one row per negative vector.
    """
    pos_score = _sigmoid(float(np.dot(center, context)))
    neg_scores = _sigmoid(negatives @ center) if len(negatives) else np.empty(0)

    g_center = (pos_score - 1.0) * context
    if len(negatives):
        g_center = g_center + neg_scores @ negatives
    g_context = (pos_score - 1.0) * center
    g_negatives = np.outer(neg_scores, center)

    loss = -math.log(max(_SCORE_FLOOR, pos_score))
    for s in neg_scores:
        loss -= math.log(max(_SCORE_FLOOR, 1.0 - s))
    return loss, g_center, g_context, g_negatives


class SkipGramTrainer:
    """Skip-gram negative-sampling trainer over token sentences.

    Input vectors start from the supplied store; tokens missing from the
    store are initialized uniformly in [-0.5/d, 0.5/d]. Context vectors
    start at zero. Training is single-threaded and deterministic for a
    fixed seed; per-epoch mean losses are kept in ``epoch_losses``.
    """

    def __init__(
        self,
        store: EmbeddingStore,
        sentences: Sequence[Sequence[str]],
        cfg: FinetuneConfig,
    ):
        if not len(store):
            raise EmptyStore("cannot finetune an empty store")
        if not sentences:
            raise ValueError("cannot finetune on an empty sentence list")
        self.cfg = cfg
        self.dimension = store.dimension
        self._rng = np.random.default_rng(cfg.seed)

        counts: dict[str, int] = {}
        for sentence in sentences:
            for token in sentence:
                counts[token] = counts.get(token, 0) + 1
        self.tokens = sorted(counts)
        self._token_ids = {t: i for i, t in enumerate(self.tokens)}
        self.sentences = [
            np.asarray([self._token_ids[t] for t in s], dtype=np.int64)
            for s in sentences
            if len(s) > 1
        ]

        d = self.dimension
        self.inputs = np.empty((len(self.tokens), d), dtype=np.float64)
        for i, token in enumerate(self.tokens):
            known = store.get(token)
            if known is not None:
                self.inputs[i] = known
            else:
                self.inputs[i] = self._rng.uniform(-0.5 / d, 0.5 / d, size=d)
        self.outputs = np.zeros((len(self.tokens), d), dtype=np.float64)

        freqs = np.asarray([counts[t] for t in self.tokens], dtype=np.float64)
        noise = freqs ** 0.75
        self._noise_cdf = np.cumsum(noise / noise.sum())
        self.epoch_losses: list[float] = []
        self._store = store

    def _pairs_per_epoch(self) -> int:
        total = 0
        for sent in self.sentences:
            n = len(sent)
            if self.cfg.window == "sentence":
                total += n * (n - 1)
            else:
                w = int(self.cfg.window)
                total += sum(min(i + w, n - 1) - max(i - w, 0) for i in range(n))
        return total

    def _draw_negatives(self, exclude: int) -> np.ndarray:
        k = self.cfg.negative_samples
        draws = np.searchsorted(self._noise_cdf, self._rng.random(k))
        return draws[draws != exclude]

    def train(self) -> EmbeddingStore:
        cfg = self.cfg
        lr0 = cfg.learning_rate
        min_lr = lr0 * 1e-4
        total_updates = max(1, self._pairs_per_epoch() * cfg.epochs)
        done = 0

        for _ in range(cfg.epochs):
            epoch_loss = 0.0
            epoch_pairs = 0
            for sent in self.sentences:
                n = len(sent)
                for i in range(n):
                    if cfg.window == "sentence":
                        lo, hi = 0, n
                    else:
                        w = int(cfg.window)
                        lo, hi = max(0, i - w), min(n, i + w + 1)
                    center = sent[i]
                    for j in range(lo, hi):
                        if j == i:
                            continue
                        context = sent[j]
                        lr = max(min_lr, lr0 * (1.0 - done / total_updates))
                        negatives = self._draw_negatives(exclude=context)
                        loss, g_c, g_ctx, g_neg = pair_gradients(
                            self.inputs[center],
                            self.outputs[context],
                            self.outputs[negatives],
                        )
                        self.inputs[center] -= lr * g_c
                        self.outputs[context] -= lr * g_ctx
                        if len(negatives):
                            self.outputs[negatives] -= lr * g_neg
                        epoch_loss += loss
                        epoch_pairs += 1
                        done += 1
            self.epoch_losses.append(epoch_loss / max(1, epoch_pairs))
        return self._to_store()

    def _to_store(self) -> EmbeddingStore:
        vectors = dict(self._store.vectors)
        for token, idx in self._token_ids.items():
            vectors[token] = self.inputs[idx].copy()
        return EmbeddingStore(vectors, self.dimension)


def finetune(
    store: EmbeddingStore,
    sentences: Sequence[Sequence[str]],
    cfg: FinetuneConfig = FinetuneConfig(),
) -> EmbeddingStore:
    """Fine-tune a store with skip-gram negative sampling over sentences.

    Returns a new store: sentence tokens carry updated vectors, all other
    tokens are unchanged. Two runs with equal seeds produce equal stores.
    """
    return SkipGramTrainer(store, sentences, cfg).train()
