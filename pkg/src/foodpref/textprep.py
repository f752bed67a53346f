"""Food-name tokenization and the six log-entry preprocessing methods.

Food names are a series of comma-separated phrases ("Panera Bread, salad,
cobb, ..."). The preprocessing methods decide whether the first phrase is a
brand phrase, select which phrases survive, filter tokens against the
reference vocabulary, and (methods 4+) drop generic words. Method 6
additionally restricts the candidate categories to those sharing a token
with the processed entry.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, AbstractSet, Iterable, Mapping, Optional, Sequence

from .errors import EmptyPhrase

if TYPE_CHECKING:
    from .ingest import FnddsDatabase

# Surrounding punctuation stripped from tokens; "&" survives as its own token.
_STRIP_CHARS = string.punctuation + "‘’“”"


@dataclass(frozen=True)
class TokenizedName:
    """A food name split into comma-separated phrases of normalized tokens."""

    phrases: tuple[tuple[str, ...], ...]

    @property
    def all_tokens(self) -> tuple[str, ...]:
        return tuple(tok for phrase in self.phrases for tok in phrase)


@dataclass(frozen=True)
class PreprocessResult:
    """Tokens selected for embedding, plus Method 6's category restriction.

    ``tokens`` may be empty (the entry is unembeddable downstream).
    ``category_restriction`` is set only by Method 6; when Method 6 finds no
    token-sharing category it leaves the restriction unset and marks
    ``fallback_to_all`` so labeling compares against the full database.
    """

    tokens: tuple[str, ...]
    category_restriction: Optional[frozenset[int]] = None
    fallback_to_all: bool = False


@dataclass(frozen=True)
class GenericWordList:
    """High-frequency, low-discrimination words removed by methods 4-6."""

    words: frozenset[str] = field(default_factory=frozenset)

    def __contains__(self, token: str) -> bool:
        return token in self.words


def _normalize_token(word: str) -> str:
    w = word.lower()
    if w == "&":
        return w
    w = w.strip(_STRIP_CHARS)
    if w.endswith("'s") or w.endswith("’s"):
        w = w[:-2]
    return w.strip(_STRIP_CHARS)


def tokenize(name_raw: str) -> TokenizedName:
    """Split a raw food name into phrases of lowercase tokens.

    Phrases are comma-separated; tokens are whitespace-separated within a
    phrase, lowercased, stripped of surrounding punctuation (a standalone
    "&" is kept), and stripped of a possessive "'s". Phrases that normalize
    to nothing are dropped; an all-empty name yields one empty phrase.
    """
    phrases = []
    for segment in name_raw.split(","):
        tokens = tuple(t for t in (_normalize_token(w) for w in segment.split()) if t)
        if tokens:
            phrases.append(tokens)
    if not phrases:
        phrases = [()]
    return TokenizedName(tuple(phrases))


def vocab_count(phrase: Sequence[str], vocabulary: AbstractSet[str]) -> int:
    """Number of phrase tokens present in the reference vocabulary."""
    return sum(1 for tok in phrase if tok in vocabulary)


def vocab_fraction(phrase: Sequence[str], vocabulary: AbstractSet[str]) -> float:
    """Fraction of phrase tokens present in the reference vocabulary."""
    if not phrase:
        raise EmptyPhrase("vocabulary fraction of an empty phrase is undefined")
    return vocab_count(phrase, vocabulary) / len(phrase)


def _first_phrase_is_brand(
    phrases: Sequence[Sequence[str]], method: int, vocabulary: AbstractSet[str]
) -> bool:
    # Single-phrase names have nothing to compare; the phrase is kept.
    # Ties keep phrase 1 (a brand-led name like "Panera Bread" still ties).
    if len(phrases) < 2:
        return False
    if method in (1, 2):
        return vocab_count(phrases[0], vocabulary) < vocab_count(phrases[1], vocabulary)
    return vocab_fraction(phrases[0], vocabulary) < vocab_fraction(phrases[1], vocabulary)


def preprocess(
    name: TokenizedName,
    method: int,
    db: "FnddsDatabase",
    generic: GenericWordList,
) -> PreprocessResult:
    """Apply one of the six preprocessing methods to a tokenized name.

    All methods first judge whether phrase 1 is a brand phrase (methods 1-2
    compare vocabulary counts of phrases 1 and 2, methods 3-6 compare
    vocabulary fractions) and all filter the surviving tokens to vocabulary
    members. Methods 4-6 then remove generic words; method 5 re-adds the
    brand phrase's vocabulary members; method 6 also computes the category
    restriction from the final tokens.
    """
    if method not in range(1, 7):
        raise ValueError(f"preprocessing method must be 1..6, got {method!r}")
    vocabulary = db.vocabulary
    phrases = name.phrases
    brand = _first_phrase_is_brand(phrases, method, vocabulary)

    if method == 1:
        chosen = phrases[1] if brand else phrases[0]
        tokens = [t for t in chosen if t in vocabulary]
        return PreprocessResult(tuple(tokens))

    kept = phrases[1:] if brand else phrases
    tokens = [t for phrase in kept for t in phrase if t in vocabulary]
    if method == 5 and brand:
        tokens = [t for t in phrases[0] if t in vocabulary] + tokens
    if method >= 4:
        tokens = [t for t in tokens if t not in generic]

    if method != 6:
        return PreprocessResult(tuple(tokens))

    restricted: set[int] = set()
    for tok in set(tokens):
        restricted.update(db.token_categories.get(tok, ()))
    if restricted:
        return PreprocessResult(tuple(tokens), category_restriction=frozenset(restricted))
    return PreprocessResult(tuple(tokens), fallback_to_all=True)


def derive_generic_words(
    word_freq: Mapping[str, int], curation: AbstractSet[str]
) -> GenericWordList:
    """Intersect a curated generic-word set with the top-250 frequency list.

    Ranks tokens by descending frequency, ties broken lexicographically, and
    keeps curated words ranked 250 or better.
    """
    ranked = sorted(word_freq.items(), key=lambda kv: (-kv[1], kv[0]))
    top = {tok for tok, _ in ranked[:250]}
    return GenericWordList(frozenset(curation & top))


def read_word_list(source: str | Path | Iterable[str]) -> list[str]:
    """Read a one-token-per-line word file; "#" starts a comment."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            lines = fh.readlines()
    else:
        lines = list(source)
    words = []
    for line in lines:
        token = line.split("#", 1)[0].strip().lower()
        if token:
            words.append(token)
    return words
