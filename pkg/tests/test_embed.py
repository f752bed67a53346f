"""Vector I/O, phrase embedding, cosine, and the skip-gram trainer."""

import io
import math

import numpy as np
import pytest

from foodpref.embed import (
    EmbeddingStore,
    FinetuneConfig,
    SkipGramTrainer,
    build_sentences,
    cosine,
    embed_tokens,
    finetune,
    load_vectors,
    pair_gradients,
    pair_loss,
    save_vectors,
)
from foodpref.errors import DimensionMismatch, EmptyStore, ZeroNorm


def test_load_vectors_with_count_header():
    src = io.StringIO("2 3\napple 1 2 3\nbread 4 5 6\n")
    store = load_vectors(src)
    assert len(store) == 2
    assert store.dimension == 3
    np.testing.assert_array_equal(store.get("apple"), [1.0, 2.0, 3.0])


def test_load_vectors_without_header():
    store = load_vectors(io.StringIO("apple 1 2 3\nbread 4 5 6\n"))
    assert len(store) == 2
    assert store.dimension == 3


def test_load_vectors_duplicate_keeps_first():
    store = load_vectors(io.StringIO("apple 1 2\napple 9 9\n"))
    np.testing.assert_array_equal(store.get("apple"), [1.0, 2.0])


def test_load_vectors_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        load_vectors(io.StringIO("apple 1 2 3\nbread 4 5\n"))


def test_load_vectors_empty():
    with pytest.raises(EmptyStore):
        load_vectors(io.StringIO(""))


def test_save_load_round_trip_is_exact():
    rng = np.random.default_rng(7)
    store = EmbeddingStore({f"t{i}": rng.normal(size=4) for i in range(5)}, 4)
    buf = io.StringIO()
    save_vectors(store, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "5 4"
    reloaded = load_vectors(io.StringIO(text))
    for token in store.tokens():
        np.testing.assert_array_equal(reloaded.get(token), store.get(token))


def test_embed_tokens_is_mean():
    store = EmbeddingStore({"a": np.array([1.0, 0.0]), "b": np.array([0.0, 2.0])}, 2)
    np.testing.assert_allclose(embed_tokens(["a", "b"], store), [0.5, 1.0])
    # unknown tokens are skipped, not zero-filled
    np.testing.assert_allclose(embed_tokens(["a", "zz"], store), [1.0, 0.0])
    assert embed_tokens(["zz"], store) is None
    assert embed_tokens([], store) is None


def test_cosine_oracle():
    got = cosine(np.array([1.0, 2.0, 3.0]), np.array([4.0, 5.0, 6.0]))
    want = 32.0 / (math.sqrt(14.0) * math.sqrt(77.0))
    assert abs(got - want) < 1e-15


def test_cosine_zero_norm():
    with pytest.raises(ZeroNorm):
        cosine(np.zeros(3), np.array([1.0, 0.0, 0.0]))


def test_build_sentences(make_db):
    db = make_db([
        (1001, "Bread, white", 10, "Yeast breads"),
        (2001, "Chicken, grilled", 30, "Poultry"),
    ])
    sents = build_sentences(db)
    assert ["bread", "white", "yeast", "breads"] in sents
    assert ["chicken", "grilled", "poultry"] in sents
    assert len(sents) == 2


def test_finetune_config_validation():
    with pytest.raises(ValueError):
        FinetuneConfig(epochs=0)
    with pytest.raises(ValueError):
        FinetuneConfig(learning_rate=0.0)
    with pytest.raises(ValueError):
        FinetuneConfig(negative_samples=0)
    with pytest.raises(ValueError):
        FinetuneConfig(window="document")
    with pytest.raises(ValueError):
        FinetuneConfig(window=0)
    assert FinetuneConfig().window == "sentence"


def test_pair_loss_matches_gradient_loss():
    rng = np.random.default_rng(3)
    center = rng.normal(size=6)
    context = rng.normal(size=6)
    negatives = rng.normal(size=(4, 6))
    loss, *_ = pair_gradients(center, context, negatives)
    assert abs(loss - pair_loss(center, context, negatives)) < 1e-12


def test_pair_gradients_match_finite_differences():
    rng = np.random.default_rng(11)
    center = rng.normal(size=5)
    context = rng.normal(size=5)
    negatives = rng.normal(size=(3, 5))
    _, g_center, g_context, g_negatives = pair_gradients(center, context, negatives)

    eps = 1e-6

    def numeric(vec, grad):
        for i in range(vec.size):
            bump = np.zeros_like(vec)
            bump.flat[i] = eps
            plus = pair_loss(center + bump if vec is center else center,
                             context + bump if vec is context else context,
                             negatives)
            minus = pair_loss(center - bump if vec is center else center,
                              context - bump if vec is context else context,
                              negatives)
            approx = (plus - minus) / (2 * eps)
            assert abs(approx - grad.flat[i]) < 1e-5 * max(1.0, abs(grad.flat[i]))

    numeric(center, g_center)
    numeric(context, g_context)
    for r in range(negatives.shape[0]):
        for c in range(negatives.shape[1]):
            bump = np.zeros_like(negatives)
            bump[r, c] = eps
            approx = (pair_loss(center, context, negatives + bump)
                      - pair_loss(center, context, negatives - bump)) / (2 * eps)
            assert abs(approx - g_negatives[r, c]) < 1e-5 * max(1.0, abs(g_negatives[r, c]))


def test_pair_loss_finite_at_extremes():
    big = np.full(4, 1e4)
    assert math.isfinite(pair_loss(big, big, np.stack([big])))
    assert math.isfinite(pair_loss(big, -big, np.stack([-big])))


def test_trainer_pairs_per_epoch():
    store = EmbeddingStore({"a": np.zeros(2)}, 2)
    sents = [["a", "b", "c"], ["a", "b"]]
    trainer = SkipGramTrainer(store, sents, FinetuneConfig(window="sentence"))
    assert trainer._pairs_per_epoch() == 3 * 2 + 2 * 1
    trainer = SkipGramTrainer(store, sents, FinetuneConfig(window=1))
    # window 1 over [a,b,c]: a-b, b-a, b-c, c-b
    assert trainer._pairs_per_epoch() == 4 + 2


def test_trainer_initialization():
    store = EmbeddingStore({"a": np.array([1.0, 2.0])}, 2)
    trainer = SkipGramTrainer(store, [["a", "b"]], FinetuneConfig(seed=5))
    np.testing.assert_array_equal(trainer.inputs[trainer._token_ids["a"]], [1.0, 2.0])
    unseen = trainer.inputs[trainer._token_ids["b"]]
    assert np.all(np.abs(unseen) <= 0.25)
    assert np.any(unseen != 0.0)
    assert np.all(trainer.outputs == 0.0)


def test_trainer_requires_input():
    with pytest.raises(EmptyStore):
        SkipGramTrainer(EmbeddingStore({}, 2), [["a", "b"]], FinetuneConfig())
    store = EmbeddingStore({"a": np.zeros(2)}, 2)
    with pytest.raises(ValueError):
        SkipGramTrainer(store, [], FinetuneConfig())


def test_finetune_deterministic_and_nondestructive():
    rng = np.random.default_rng(2)
    vectors = {t: rng.normal(size=8) for t in ("a", "b", "c", "d")}
    store = EmbeddingStore({t: v.copy() for t, v in vectors.items()}, 8)
    sents = [["a", "b", "c"], ["b", "c", "d"], ["a", "d"]]
    cfg = FinetuneConfig(epochs=2, seed=9)

    first = finetune(store, sents, cfg)
    second = finetune(store, sents, cfg)
    for token in first.tokens():
        np.testing.assert_array_equal(first.get(token), second.get(token))
    # the original store is left untouched
    for token, vec in vectors.items():
        np.testing.assert_array_equal(store.get(token), vec)
    # trained vectors actually moved
    assert any(
        not np.array_equal(first.get(t), vectors[t]) for t in ("a", "b", "c", "d")
    )


def test_finetune_loss_decreases_on_toy_corpus():
    rng = np.random.default_rng(4)
    tokens = [f"w{i}" for i in range(6)]
    store = EmbeddingStore({t: rng.normal(size=10) * 0.1 for t in tokens}, 10)
    sents = [["w0", "w1", "w2"], ["w0", "w1", "w3"], ["w4", "w5"]] * 5
    trainer = SkipGramTrainer(store, sents, FinetuneConfig(epochs=5, seed=1))
    trainer.train()
    assert len(trainer.epoch_losses) == 5
    assert trainer.epoch_losses[-1] < trainer.epoch_losses[0]


def test_finetune_keeps_unrelated_tokens():
    store = EmbeddingStore(
        {"a": np.ones(3), "b": np.ones(3) * 2, "spare": np.ones(3) * 7}, 3
    )
    out = finetune(store, [["a", "b"]], FinetuneConfig(epochs=1))
    np.testing.assert_array_equal(out.get("spare"), store.get("spare"))
