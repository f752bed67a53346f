"""Exception types raised across the foodpref pipeline."""


class FoodPrefError(Exception):
    """Base class for all foodpref errors."""


# --- ingest ---

class MalformedCsv(FoodPrefError):
    """CSV input could not be parsed (unbalanced quotes, wrong column count)."""


class MissingColumn(FoodPrefError):
    """A configured column is absent from the file header."""


class MalformedRow(FoodPrefError):
    """A reference-database row is structurally invalid."""


class DuplicateFoodCode(FoodPrefError):
    """The same food code appears more than once in the reference database."""


# --- textprep ---

class EmptyPhrase(FoodPrefError):
    """Vocabulary fraction requested for a phrase with no tokens."""


# --- embed ---

class DimensionMismatch(FoodPrefError):
    """A vector line's arity disagrees with the store dimension."""


class EmptyStore(FoodPrefError):
    """No vectors could be parsed from the embedding source."""


class ZeroNorm(FoodPrefError):
    """Cosine similarity requested for a zero-norm vector."""


# --- label ---

class EmptyIndex(FoodPrefError):
    """No reference food could be embedded."""


class EmptyCandidateSet(FoodPrefError):
    """A category restriction excluded every indexed food."""


# --- prefs ---

class UnknownGroup(FoodPrefError):
    """A macro-group name outside the five known groups was requested."""


# --- metrics ---

class MissingAnnotation(FoodPrefError):
    """An evaluated food-log name has no gold category annotation."""
