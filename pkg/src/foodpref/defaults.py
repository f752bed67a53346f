"""Access to the bundled reference data and default word lists."""

from __future__ import annotations

from importlib import resources
from typing import Optional, Sequence

from .ingest import DEFAULT_EXCLUSION_TERMS, FnddsDatabase, load_fndds
from .textprep import GenericWordList, derive_generic_words, read_word_list

REFERENCE_DB_FILE = "reference_foods.csv"
GENERIC_WORDS_FILE = "generic_words.txt"
SYNONYM_STOPWORDS_FILE = "synonym_stopwords.txt"


def _data(name: str):
    return resources.files(__package__).joinpath("data", name)


def data_path(name: str) -> str:
    """Filesystem path of a bundled data file."""
    return str(_data(name))


def load_reference_db(
    exclusion_terms: Optional[Sequence[str]] = DEFAULT_EXCLUSION_TERMS,
) -> FnddsDatabase:
    """The bundled reference food database.

    Pass ``exclusion_terms=None`` (or an empty sequence) to keep every
    category, including the infant-food ones dropped by default.
    """
    with _data(REFERENCE_DB_FILE).open("r", encoding="utf-8", newline="") as fh:
        return load_fndds(fh, exclusion_terms=exclusion_terms or ())


def generic_curation() -> frozenset[str]:
    """The shipped hand-curated generic-word candidates."""
    with _data(GENERIC_WORDS_FILE).open("r", encoding="utf-8") as fh:
        return frozenset(read_word_list(fh))


def synonym_stopwords() -> frozenset[str]:
    """The shipped stopword list for category-name synonym matching."""
    with _data(SYNONYM_STOPWORDS_FILE).open("r", encoding="utf-8") as fh:
        return frozenset(read_word_list(fh))


def generic_words_for(db: FnddsDatabase) -> GenericWordList:
    """The effective generic-word list for one database.

    Curated candidates count as generic only while they sit in the
    database's 250 most frequent tokens.
    """
    return derive_generic_words(db.word_freq, generic_curation())
