"""Synonym groups, the eight metrics, and the evaluation pipeline."""

import io
import random

import numpy as np
import pytest

from foodpref.embed import EmbeddingStore
from foodpref.errors import MissingAnnotation
from foodpref.ingest import parse_food_log
from foodpref.label import RankedPrediction
from foodpref.metrics import (
    METRIC_FIELDS,
    DEFAULT_SYNONYM_STOPWORDS,
    SynonymGroups,
    build_synonym_groups,
    evaluate,
    evaluate_log,
    labeling_accuracy,
    load_annotations,
    mean_reciprocal_rank,
    preference_accuracy,
    synonymous_accuracy,
    synonymous_mrr,
    top10_identified,
    unique_predictions,
)
from foodpref.prefs import GroupMap, profile_from_counts
from foodpref.textprep import GenericWordList


def pred(*cats, entry_id=0):
    return RankedPrediction(
        entry_id=entry_id,
        ranking=tuple((c, 1.0 - 0.05 * i) for i, c in enumerate(cats)),
    )


def groups_of(*clusters):
    group_of = {}
    groups = {}
    for members in clusters:
        rep = min(members)
        groups[rep] = frozenset(members)
        for m in members:
            group_of[m] = rep
    return SynonymGroups(group_of=group_of, groups=groups)


def test_build_synonym_groups_shared_token_merges():
    cats = {
        1: "Milk, whole",
        2: "Milk shakes and other dairy drinks",
        3: "Cheese",
    }
    groups = build_synonym_groups(cats)
    assert len(groups) == 2
    assert groups.same(1, 2)
    assert not groups.same(1, 3)
    assert groups.members_of(1) == frozenset({1, 2})
    assert groups.members_of(3) == frozenset({3})


def test_build_synonym_groups_stopwords_do_not_merge():
    cats = {1: "Rice and beans", 2: "Pasta and sauce"}
    assert len(build_synonym_groups(cats)) == 2
    # without the stopword list, "and" would chain them
    assert len(build_synonym_groups(cats, stopwords=frozenset())) == 1


def test_build_synonym_groups_transitive():
    cats = {1: "Apple pie", 2: "Pie crust", 3: "Crust only"}
    groups = build_synonym_groups(cats, stopwords=frozenset({"only"}))
    assert groups.same(1, 3)
    assert len(groups) == 1


def test_build_synonym_groups_order_independent():
    cats = {10: "Grilled chicken", 20: "Chicken soup", 30: "Tomato soup", 40: "Plain rice"}
    forward = build_synonym_groups(cats)
    backward = build_synonym_groups(dict(reversed(list(cats.items()))))
    assert forward.group_of == backward.group_of
    assert forward.groups == backward.groups


def test_members_of_unknown_category_is_singleton():
    groups = groups_of({1, 2})
    assert groups.members_of(99) == frozenset({99})
    assert groups.same(99, 99)
    assert not groups.same(99, 1)


def test_bundled_categories_group_count(full_db):
    groups = build_synonym_groups(full_db.categories)
    assert len(groups) == 98


def test_labeling_accuracy():
    preds = {"a": pred(10), "b": pred(20, 10), "c": pred()}
    gold = {"a": 10, "b": 10, "c": 10}
    assert labeling_accuracy(preds, gold) == pytest.approx(1 / 3)
    assert labeling_accuracy({}, {}) == 0.0
    with pytest.raises(MissingAnnotation):
        labeling_accuracy({"zzz": pred(10)}, gold)


def test_synonymous_accuracy_uses_groups():
    groups = groups_of({10, 11})
    preds = {"a": pred(11), "b": pred(20)}
    gold = {"a": 10, "b": 10}
    assert labeling_accuracy(preds, gold) == 0.0
    assert synonymous_accuracy(preds, gold, groups) == 0.5


def test_mrr_harmonic_fixture():
    preds = {
        "a": pred(10, 20, 30, 40),   # gold at rank 1
        "b": pred(20, 10, 30, 40),   # gold at rank 2
        "c": pred(20, 30, 40, 10),   # gold at rank 4
    }
    gold = {"a": 10, "b": 10, "c": 10}
    assert abs(mean_reciprocal_rank(preds, gold) - 7 / 12) < 1e-12


def test_mrr_absent_gold_scores_zero():
    preds = {"a": pred(20, 30), "b": pred()}
    gold = {"a": 10, "b": 10}
    assert mean_reciprocal_rank(preds, gold) == 0.0


def test_mrr_equals_accuracy_for_single_item_rankings():
    rng = random.Random(17)
    for _ in range(20):
        names = [f"n{i}" for i in range(rng.randint(1, 8))]
        preds = {n: pred(rng.randint(1, 4)) for n in names}
        gold = {n: rng.randint(1, 4) for n in names}
        assert mean_reciprocal_rank(preds, gold) == labeling_accuracy(preds, gold)


def test_synonymous_mrr_takes_best_group_member():
    groups = groups_of({10, 11})
    preds = {"a": pred(11, 20, 10)}
    gold = {"a": 10}
    assert mean_reciprocal_rank(preds, gold) == pytest.approx(1 / 3)
    assert synonymous_mrr(preds, gold, groups) == 1.0


def make_profile(favorites, top=()):
    cats = {c: f"cat {c}" for c, _ in top}
    profile = profile_from_counts("log", 1, dict(top), cats, GroupMap(rules={}), k=10)
    object.__setattr__(profile, "favorites", favorites)
    return profile


def test_preference_accuracy_fixture():
    groups = groups_of({31, 32})
    mine = make_profile(
        {"grains": 10, "vegetables": 21, "proteins": 31, "fruits": None, "dairy": 51}
    )
    gold = make_profile(
        {"grains": 10, "vegetables": 20, "proteins": 32, "fruits": None, "dairy": 52}
    )
    # strict: grains + fruits(None/None) = 2/5; synonymous adds proteins
    strict, synonymous = preference_accuracy(mine, gold, groups)
    assert strict == pytest.approx(0.4)
    assert synonymous == pytest.approx(0.6)


def test_preference_accuracy_none_conventions():
    groups = groups_of()
    both_none = make_profile({g: None for g in ("grains", "vegetables", "proteins", "fruits", "dairy")})
    assert preference_accuracy(both_none, both_none, groups) == (1.0, 1.0)

    one_none = make_profile(
        {"grains": 10, "vegetables": None, "proteins": None, "fruits": None, "dairy": None}
    )
    strict, synonymous = preference_accuracy(one_none, both_none, groups)
    assert strict == pytest.approx(0.8)
    assert synonymous == pytest.approx(0.8)


def test_top10_identified_denominator_is_gold_length():
    groups = groups_of({15, 16})
    gold = make_profile({}, top=[(10, 9), (11, 8), (12, 7), (13, 6), (14, 5), (15, 4)])
    mine = make_profile({}, top=[(10, 9), (11, 8), (12, 7), (99, 6), (98, 5), (16, 4)])
    strict, synonymous = top10_identified(mine, gold, groups)
    assert strict == pytest.approx(3 / 6)
    assert synonymous == pytest.approx(4 / 6)


def test_top10_identified_empty_gold_is_vacuous():
    groups = groups_of()
    empty = make_profile({}, top=[])
    full = make_profile({}, top=[(10, 1)])
    assert top10_identified(full, empty, groups) == (1.0, 1.0)
    assert top10_identified(empty, full, groups) == (0.0, 0.0)


def test_synonymous_variants_never_below_strict():
    rng = random.Random(20240817)
    for _ in range(200):
        n_cats = rng.randint(2, 12)
        cats = list(range(1, n_cats + 1))
        # random partition of the categories
        clusters = {}
        for c in cats:
            clusters.setdefault(rng.randint(1, 4), set()).add(c)
        groups = groups_of(*clusters.values())

        names = [f"n{i}" for i in range(rng.randint(1, 10))]
        preds = {}
        for i, name in enumerate(names):
            depth = rng.randint(0, n_cats)
            preds[name] = pred(*rng.sample(cats, depth), entry_id=i)
        gold = {name: rng.choice(cats) for name in names}

        acc = labeling_accuracy(preds, gold)
        syn_acc = synonymous_accuracy(preds, gold, groups)
        mrr = mean_reciprocal_rank(preds, gold)
        smrr = synonymous_mrr(preds, gold, groups)
        for value in (acc, syn_acc, mrr, smrr):
            assert 0.0 <= value <= 1.0
        assert syn_acc >= acc
        assert smrr >= mrr


def test_unique_predictions_first_occurrence():
    buf = io.StringIO(
        "Day,Time,Food Name\n"
        "2024-01-01,08:00,Apple\n"
        "2024-01-01,09:00,apple\n"
        "2024-01-01,10:00,Banana\n"
    )
    log = parse_food_log(buf)
    preds = [pred(10, entry_id=0), pred(20, entry_id=1), pred(30, entry_id=2)]
    by_name = unique_predictions(log, preds)
    assert set(by_name) == {"apple", "banana"}
    assert by_name["apple"].entry_id == 0


@pytest.fixture
def eval_setup(make_db):
    db = make_db([
        (1001, "Bread", 10, "Breads"),
        (2001, "Salad", 20, "Salads"),
        (3001, "Chicken", 30, "Poultry"),
    ])
    store = EmbeddingStore(
        {
            "bread": np.array([1.0, 0.0, 0.0]),
            "salad": np.array([0.0, 1.0, 0.0]),
            "chicken": np.array([0.0, 0.0, 1.0]),
        },
        3,
    )
    groups = build_synonym_groups(db.categories)
    gmap = GroupMap(rules={"grains": [10], "vegetables": [20], "proteins": [30]})
    return db, store, groups, gmap


def make_log(names, log_id):
    buf = io.StringIO(
        "Day,Time,Food Name\n"
        + "".join(f"2024-01-01,08:00,{n}\n" for n in names)
    )
    return parse_food_log(buf, log_id=log_id)


def test_evaluate_log_perfect_labels(eval_setup):
    db, store, groups, gmap = eval_setup
    log = make_log(["Bread", "Salad", "Chicken", "Bread"], "one")
    gold = {"bread": 10, "salad": 20, "chicken": 30}
    row = evaluate_log(log, gold, 2, db, store, GenericWordList(), groups, gmap)
    assert row.accuracy == 1.0
    assert row.mrr == 1.0
    assert row.pref_accuracy == 1.0
    assert row.top10_pct == 1.0
    assert row.syn_accuracy == 1.0


def test_evaluate_log_counts_unique_names_once(eval_setup):
    db, store, groups, gmap = eval_setup
    # "Bread" repeats; annotated wrong, it must cost one unique name, not two
    log = make_log(["Bread", "bread", "Salad"], "one")
    gold = {"bread": 20, "salad": 20}
    row = evaluate_log(log, gold, 2, db, store, GenericWordList(), groups, gmap)
    assert row.accuracy == pytest.approx(0.5)


def test_evaluate_averages_per_log_rows(eval_setup):
    db, store, groups, gmap = eval_setup
    logs = [
        make_log(["Bread", "Salad"], "a"),
        make_log(["Bread", "Chicken"], "b"),
    ]
    annotations = {
        "a": {"bread": 10, "salad": 20},
        "b": {"bread": 20, "chicken": 30},  # bread marked wrong on purpose
    }
    report = evaluate(logs, annotations, 2, db, store, GenericWordList(), groups, gmap)
    assert set(report.per_log) == {"a", "b"}
    for field in METRIC_FIELDS:
        values = [getattr(report.per_log[x], field) for x in ("a", "b")]
        assert getattr(report.averaged, field) == pytest.approx(sum(values) / 2)
    assert report.per_log["a"].accuracy == 1.0
    assert report.per_log["b"].accuracy == 0.5


def test_evaluate_requires_logs_and_annotations(eval_setup):
    db, store, groups, gmap = eval_setup
    with pytest.raises(ValueError):
        evaluate([], {}, 2, db, store, GenericWordList(), groups, gmap)
    log = make_log(["Bread"], "solo")
    with pytest.raises(MissingAnnotation):
        evaluate([log], {}, 2, db, store, GenericWordList(), groups, gmap)


def test_load_annotations_header_and_normalization():
    text = 'name,category\n"  Rice,   White ",50\napple,40\n'
    gold = load_annotations(io.StringIO(text))
    assert gold == {"rice, white": 50, "apple": 40}


def test_load_annotations_headerless():
    gold = load_annotations(io.StringIO("apple,40\nbanana,41\n"))
    assert gold == {"apple": 40, "banana": 41}


def test_load_annotations_errors():
    with pytest.raises(MissingAnnotation):
        load_annotations(io.StringIO("apple,40\nbanana\n"))
    with pytest.raises(MissingAnnotation):
        load_annotations(io.StringIO("apple,40\nbanana,forty\n"))


def test_default_stopwords_frozen():
    assert "and" in DEFAULT_SYNONYM_STOPWORDS
    assert "dishes" in DEFAULT_SYNONYM_STOPWORDS
