"""Shared fixtures: the bundled reference database and seeded embeddings."""

from __future__ import annotations

import csv
import io

import numpy as np
import pytest

from foodpref import defaults
from foodpref.embed import EmbeddingStore, save_vectors
from foodpref.ingest import load_fndds
from foodpref.textprep import tokenize

FNDDS_HEADER = [
    "food_code", "main_food_description",
    "wweia_category_number", "wweia_category_description",
]


def db_from_rows(rows, exclusion_terms=()):
    """Build a database from (code, description, category_id, category_name)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(FNDDS_HEADER)
    writer.writerows(rows)
    buf.seek(0)
    return load_fndds(buf, exclusion_terms=exclusion_terms)


@pytest.fixture
def make_db():
    return db_from_rows


@pytest.fixture(scope="session")
def full_db():
    """All 155 categories, infant foods included."""
    return defaults.load_reference_db(exclusion_terms=None)


@pytest.fixture(scope="session")
def db():
    """The pipeline's view of the bundled data: infant categories excluded."""
    return defaults.load_reference_db()


@pytest.fixture(scope="session")
def store(full_db):
    """Seeded random vectors covering every description and category token."""
    tokens = set(full_db.vocabulary)
    for name in full_db.categories.values():
        tokens.update(tokenize(name).all_tokens)
    rng = np.random.default_rng(20240817)
    return EmbeddingStore({t: rng.normal(size=50) for t in sorted(tokens)}, 50)


@pytest.fixture(scope="session")
def generic(db):
    return defaults.generic_words_for(db)


@pytest.fixture(scope="session")
def store_file(store, tmp_path_factory):
    path = tmp_path_factory.mktemp("vectors") / "vectors.txt"
    save_vectors(store, path)
    return path
