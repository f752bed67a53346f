"""End-to-end runs of the foodpref command line, in process."""

import csv
import hashlib
import io
import json

import numpy as np
import pytest

from foodpref import cli
from foodpref.embed import EmbeddingStore, save_vectors

FNDDS_TEXT = """\
food_code,main_food_description,wweia_category_number,wweia_category_description
1001,"Bread, white",10,Yeast breads
1002,"Bread, wheat",10,Yeast breads
2001,"Salad, cobb",20,Salads
3001,"Chicken, grilled",30,Poultry
4001,"Apple, raw",40,Apples
5001,"Milk, whole",50,"Milk, whole"
"""

LOG_TEXT = """\
Day,Time,Food Name
2024-01-01,08:00,"Bread, white"
2024-01-01,12:00,"Salad, cobb"
2024-01-02,08:00,"Bread, white"
2024-01-02,12:30,"Chicken, grilled"
2024-01-03,09:00,"Milk, whole"
"""

ANNOTATIONS_TEXT = """\
name,category
"bread, white",10
"salad, cobb",20
"chicken, grilled",30
"milk, whole",50
"""


@pytest.fixture
def work(tmp_path):
    fndds = tmp_path / "reference.csv"
    fndds.write_text(FNDDS_TEXT)
    log = tmp_path / "mylog.csv"
    log.write_text(LOG_TEXT)
    annotations = tmp_path / "gold.csv"
    annotations.write_text(ANNOTATIONS_TEXT)

    tokens = sorted({
        "bread", "white", "wheat", "salad", "cobb", "chicken",
        "grilled", "apple", "raw", "milk", "whole",
    })
    rng = np.random.default_rng(8)
    store = EmbeddingStore({t: rng.normal(size=8) for t in tokens}, 8)
    vectors = tmp_path / "vectors.txt"
    save_vectors(store, vectors)
    return tmp_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def base(work, *extra):
    return (
        "--fndds", str(work / "reference.csv"),
        "--embeddings", str(work / "vectors.txt"),
        "--logs", str(work / "mylog.csv"),
        *extra,
    )


def test_label_csv(work, capsys):
    code, out, err = run(
        capsys, "label", *base(work), "--method", "2", "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == [
        "entry_id", "name_raw", "top_category_id", "top_category_name", "similarity",
    ]
    assert len(rows) == 6
    assert rows[1][1] == "Bread, white"
    assert rows[1][2] == "10"
    assert rows[1][3] == "Yeast breads"


def test_label_json(work, capsys):
    code, out, _ = run(capsys, "label", *base(work), "--method", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["log_id"] == "mylog"
    assert payload["method"] == 1
    assert len(payload["entries"]) == 5
    assert payload["entries"][0]["top_category_id"] == 10


def test_prefs_json(work, capsys):
    code, out, _ = run(capsys, "prefs", *base(work), "--method", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["log_id"] == "mylog"
    top = {row["category_name"]: row["count"] for row in payload["top"]}
    assert top["Yeast breads"] == 2
    assert top["Salads"] == 1
    assert payload["favorites"]["grains"]["category_id"] == 10
    assert payload["favorites"]["dairy"]["category_id"] == 50
    assert payload["favorites"]["fruits"] is None


def test_prefs_csv(work, capsys):
    code, out, _ = run(capsys, "prefs", *base(work), "--method", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["record", "key", "category_id", "category_name", "count"]
    kinds = {row[0] for row in rows[1:]}
    assert kinds == {"top", "favorite"}


def test_evaluate_single_method(work, capsys):
    code, out, _ = run(
        capsys, "evaluate", *base(work),
        "--annotations", str(work / "gold.csv"),
        "--method", "2", "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "method"
    assert len(rows[0]) == 9
    assert len(rows) == 2
    assert rows[1][0] == "2"
    # every bundled metric lands in [0, 1]
    assert all(0.0 <= float(v) <= 1.0 for v in rows[1][1:])


def test_evaluate_all_methods(work, capsys):
    code, out, _ = run(
        capsys, "evaluate", *base(work),
        "--annotations", str(work / "gold.csv"), "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert [r[0] for r in rows[1:]] == ["1", "2", "3", "4", "5", "6"]


def test_evaluate_json_structure(work, capsys):
    code, out, _ = run(
        capsys, "evaluate", *base(work),
        "--annotations", str(work / "gold.csv"), "--method", "3",
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload["methods"]) == {"3"}
    block = payload["methods"]["3"]
    assert set(block["averaged"]) == {
        "accuracy", "syn_accuracy", "mrr", "smrr",
        "pref_accuracy", "syn_pref_accuracy", "top10_pct", "syn_top10_pct",
    }
    assert set(block["per_log"]) == {"mylog"}


def test_evaluate_deterministic(work, capsys):
    args = (
        "evaluate", *base(work),
        "--annotations", str(work / "gold.csv"), "--format", "csv",
    )
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    _, threaded, _ = run(capsys, *args, "--workers", "4")
    assert threaded == first


def test_summary(work, capsys):
    code, out, _ = run(
        capsys, "summary",
        "--fndds", str(work / "reference.csv"),
        "--logs", str(work / "mylog.csv"),
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["logs"]["mylog"]["entries"] == 5
    assert payload["logs"]["mylog"]["days"] == 3
    assert payload["logs"]["mylog"]["skipped_rows"] == 0
    assert payload["reference"]["foods"] == 6
    assert payload["reference"]["categories"] == 5
    assert payload["reference_retained"]["excluded_foods"] == 0


def test_summary_bundled_reference(capsys):
    code, out, _ = run(capsys, "summary")
    assert code == 0
    payload = json.loads(out)
    assert payload["reference"]["foods"] == 8691
    assert payload["reference"]["categories"] == 155
    assert payload["reference_retained"]["foods"] == 8421
    assert payload["reference_retained"]["categories"] == 145
    assert payload["reference_retained"]["excluded_foods"] == 270


def test_output_file(work, capsys):
    out_path = work / "labels.json"
    code, out, _ = run(
        capsys, "label", *base(work), "--method", "2", "--out", str(out_path),
    )
    assert code == 0
    assert out == ""
    payload = json.loads(out_path.read_text())
    assert len(payload["entries"]) == 5


def test_config_file_supplies_defaults(work, capsys):
    config = work / "run.json"
    config.write_text(json.dumps({
        "fndds": str(work / "reference.csv"),
        "embeddings": str(work / "vectors.txt"),
        "logs": [str(work / "mylog.csv")],
        "method": 2,
        "format": "csv",
    }))
    code, out, _ = run(capsys, "label", "--config", str(config))
    assert code == 0
    assert out.splitlines()[0].startswith("entry_id,")


def test_config_env_var(work, capsys, monkeypatch):
    config = work / "run.json"
    config.write_text(json.dumps({
        "fndds": str(work / "reference.csv"),
        "embeddings": str(work / "vectors.txt"),
        "logs": [str(work / "mylog.csv")],
        "method": 1,
    }))
    monkeypatch.setenv("FOODPREF_CONFIG", str(config))
    code, out, _ = run(capsys, "label")
    assert code == 0
    assert json.loads(out)["method"] == 1


def test_flags_beat_config(work, capsys):
    config = work / "run.json"
    config.write_text(json.dumps({
        "fndds": str(work / "reference.csv"),
        "embeddings": str(work / "vectors.txt"),
        "logs": [str(work / "mylog.csv")],
        "method": 1,
        "format": "json",
    }))
    code, out, _ = run(
        capsys, "label", "--config", str(config), "--method", "4",
    )
    assert code == 0
    assert json.loads(out)["method"] == 4


def test_unknown_config_key_is_usage_error(work, capsys):
    config = work / "run.json"
    config.write_text(json.dumps({"methodz": 1}))
    with pytest.raises(SystemExit) as exc:
        cli.main(["label", "--config", str(config)])
    assert exc.value.code == 2


def test_usage_errors_exit_2(work):
    for argv in (
        ["label", *base(work), "--method", "7"],
        ["label", *base(work)],  # no method
        ["label", "--fndds", str(work / "reference.csv"),
         "--logs", str(work / "mylog.csv"), "--method", "2"],  # no embeddings
        ["prefs", *base(work), "--method", "2", "--top-k", "0"],
        ["evaluate", *base(work)],  # no annotations
        ["label", *base(work), "--method", "2", "--format", "yaml"],
        ["finetune", "--fndds", str(work / "reference.csv"), "--epochs", "0"],
    ):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 2


def test_missing_file_is_runtime_error(work, capsys):
    code, out, err = run(
        capsys, "label",
        "--fndds", str(work / "nope.csv"),
        "--embeddings", str(work / "vectors.txt"),
        "--logs", str(work / "mylog.csv"),
        "--method", "2",
    )
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_finetune_deterministic(work, capsys):
    args = (
        "finetune",
        "--fndds", str(work / "reference.csv"),
        "--embeddings", str(work / "vectors.txt"),
        "--epochs", "2", "--seed", "3",
    )
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert first.splitlines()[0].split()[1] == "8"  # dimension preserved


def test_finetune_random_init_without_embeddings(work, capsys):
    code, out, _ = run(
        capsys, "finetune",
        "--fndds", str(work / "reference.csv"),
        "--epochs", "1", "--dim", "12", "--seed", "0",
    )
    assert code == 0
    header = out.splitlines()[0].split()
    assert header[1] == "12"


def test_inputs_never_mutated(work, capsys):
    def digest(path):
        return hashlib.sha256(path.read_bytes()).hexdigest()

    before = {p: digest(work / p) for p in ("reference.csv", "mylog.csv", "vectors.txt", "gold.csv")}
    run(capsys, "label", *base(work), "--method", "2")
    run(
        capsys, "evaluate", *base(work),
        "--annotations", str(work / "gold.csv"),
    )
    run(
        capsys, "finetune",
        "--fndds", str(work / "reference.csv"),
        "--embeddings", str(work / "vectors.txt"),
        "--epochs", "1",
    )
    after = {p: digest(work / p) for p in before}
    assert after == before
