"""Parse food-log CSV exports and the FNDDS-style reference database.

Food logs are CSV exports from tracking apps (default column mapping matches
Cronometer: Day / Time / Food Name). The reference database is delimited
text (CSV or TSV, autodetected from the header) with one row per food:
code, description, category number, category name.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

from . import textprep
from .errors import DuplicateFoodCode, MalformedCsv, MalformedRow, MissingColumn

logger = logging.getLogger(__name__)

Source = Union[str, Path, TextIO]

DEFAULT_EXCLUSION_TERMS = ("baby", "formula")

_DATE_FORMATS = ("%Y-%m-%d", "%m/%d/%Y", "%m/%d/%y", "%d-%b-%Y", "%B %d, %Y")
_TIME_FORMATS = ("%H:%M", "%H:%M:%S", "%I:%M %p", "%I:%M:%S %p")


@dataclass(frozen=True)
class FoodLogEntry:
    """One raw food-log record: what was eaten and when."""

    date: Optional[dt.date]
    time: Optional[dt.time]
    name_raw: str
    entry_id: int


@dataclass
class FoodLog:
    """A user's journal: ordered entries plus the count of skipped rows."""

    log_id: str
    entries: list[FoodLogEntry]
    skipped: int = 0


@dataclass(frozen=True)
class FnddsFood:
    food_code: int
    description: str
    category_id: int
    category_name: str


@dataclass
class FnddsDatabase:
    """Reference foods with category labels and description vocabulary.

    ``vocabulary`` and ``word_freq`` are built from the retained (post
    exclusion) descriptions with :func:`textprep.tokenize`; every occurrence
    of a token counts. ``token_categories`` maps each vocabulary token to
    the categories containing at least one food whose description uses it
    (the candidate-restriction index for preprocessing method 6).
    """

    foods: list[FnddsFood]
    categories: dict[int, str]
    vocabulary: frozenset[str]
    word_freq: dict[str, int]
    token_categories: dict[str, frozenset[int]] = field(default_factory=dict)
    excluded_count: int = 0


@dataclass(frozen=True)
class LogColumns:
    """Column mapping for a food-log export; defaults match Cronometer."""

    date: str = "Day"
    time: str = "Time"
    name: str = "Food Name"


def _as_text_stream(source: Source):
    if isinstance(source, (str, Path)):
        return open(source, encoding="utf-8", newline="")
    return _NonClosingWrapper(source)


class _NonClosingWrapper:
    def __init__(self, stream: TextIO):
        self._stream = stream

    def __enter__(self) -> TextIO:
        return self._stream

    def __exit__(self, *exc) -> None:
        pass


def _parse_date(text: str) -> Optional[dt.date]:
    text = text.strip()
    for fmt in _DATE_FORMATS:
        try:
            return dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    return None


def _parse_time(text: str) -> Optional[dt.time]:
    text = text.strip()
    for fmt in _TIME_FORMATS:
        try:
            return dt.datetime.strptime(text, fmt).time()
        except ValueError:
            continue
    return None


def parse_food_log(
    source: Source,
    columns: LogColumns = LogColumns(),
    log_id: str = "log",
) -> FoodLog:
    """Parse a food-log CSV export into a :class:`FoodLog`.

    One entry per data row, in file order; rows whose food-name cell is
    empty are skipped and counted. Dates and times are parsed leniently and
    never block ingestion. Raises :class:`MissingColumn` when a configured
    column is absent and :class:`MalformedCsv` on quoting/arity damage.
    """
    with _as_text_stream(source) as stream:
        reader = csv.reader(stream, strict=True)
        try:
            header = next(reader, None)
        except csv.Error as exc:
            raise MalformedCsv(f"unreadable CSV header: {exc}") from exc
        if header is None:
            raise MalformedCsv("empty file: expected a header row")

        index = {}
        for col in (columns.date, columns.time, columns.name):
            if col not in header:
                raise MissingColumn(f"column {col!r} not found in header {header}")
            index[col] = header.index(col)

        entries: list[FoodLogEntry] = []
        skipped = 0
        try:
            for row_no, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != len(header):
                    raise MalformedCsv(
                        f"row {row_no}: expected {len(header)} fields, got {len(row)}"
                    )
                name = row[index[columns.name]].strip()
                if not name:
                    skipped += 1
                    continue
                entries.append(
                    FoodLogEntry(
                        date=_parse_date(row[index[columns.date]]),
                        time=_parse_time(row[index[columns.time]]),
                        name_raw=name,
                        entry_id=len(entries),
                    )
                )
        except csv.Error as exc:
            raise MalformedCsv(f"CSV parse failure: {exc}") from exc

    if skipped:
        logger.warning("%s: skipped %d rows with empty food names", log_id, skipped)
    return FoodLog(log_id=log_id, entries=entries, skipped=skipped)


_FNDDS_COLUMNS = {
    "food_code": ("food_code", "food code"),
    "description": ("main_food_description", "main food description", "description"),
    "category_id": ("wweia_category_number", "wweia category number"),
    "category_name": ("wweia_category_description", "wweia category description"),
}


def _header_index(header: list[str]) -> dict[str, int]:
    normalized = [h.strip().lower().replace("_", " ") for h in header]
    index = {}
    for key, aliases in _FNDDS_COLUMNS.items():
        for alias in aliases:
            alias = alias.replace("_", " ")
            if alias in normalized:
                index[key] = normalized.index(alias)
                break
        else:
            raise MissingColumn(f"no column for {key!r} in header {header}")
    return index


def load_fndds(
    source: Source,
    exclusion_terms: Iterable[str] = DEFAULT_EXCLUSION_TERMS,
) -> FnddsDatabase:
    """Load the reference database, dropping excluded categories.

    Foods whose category name contains any exclusion term
    (case-insensitive substring; default "baby"/"formula") are removed
    before the vocabulary and word-frequency tables are built.
    """
    terms = tuple(t.lower() for t in exclusion_terms)

    with _as_text_stream(source) as stream:
        first_line = stream.readline()
        if not first_line:
            raise MalformedCsv("empty reference database file")
        delimiter = "\t" if "\t" in first_line else ","
        reader = csv.reader(
            io.StringIO(first_line.rstrip("\r\n") + "\n"), delimiter=delimiter
        )
        header = next(reader)
        index = _header_index(header)

        foods: list[FnddsFood] = []
        seen_codes: set[int] = set()
        excluded = 0
        body = csv.reader(stream, delimiter=delimiter, strict=True)
        try:
            for row_no, row in enumerate(body, start=2):
                if not row:
                    continue
                if len(row) != len(header):
                    raise MalformedRow(
                        f"row {row_no}: expected {len(header)} fields, got {len(row)}"
                    )
                try:
                    code = int(row[index["food_code"]])
                    category_id = int(row[index["category_id"]])
                except ValueError as exc:
                    raise MalformedRow(f"row {row_no}: non-numeric code: {exc}") from exc
                description = row[index["description"]].strip()
                category_name = row[index["category_name"]].strip()
                if not description:
                    raise MalformedRow(f"row {row_no}: empty food description")
                if code in seen_codes:
                    raise DuplicateFoodCode(f"row {row_no}: food code {code} repeated")
                seen_codes.add(code)
                if any(term in category_name.lower() for term in terms):
                    excluded += 1
                    continue
                foods.append(FnddsFood(code, description, category_id, category_name))
        except csv.Error as exc:
            raise MalformedCsv(f"CSV parse failure: {exc}") from exc

    categories: dict[int, str] = {}
    word_freq: Counter[str] = Counter()
    token_cats: dict[str, set[int]] = {}
    for food in foods:
        categories.setdefault(food.category_id, food.category_name)
        for token in textprep.tokenize(food.description).all_tokens:
            word_freq[token] += 1
            token_cats.setdefault(token, set()).add(food.category_id)

    return FnddsDatabase(
        foods=foods,
        categories=categories,
        vocabulary=frozenset(word_freq),
        word_freq=dict(word_freq),
        token_categories={t: frozenset(c) for t, c in token_cats.items()},
        excluded_count=excluded,
    )


def normalize_name(name: str) -> str:
    """Lowercase and collapse whitespace; the identity used for unique names."""
    return " ".join(name.split()).lower()


def unique_entry_names(log: FoodLog) -> list[tuple[str, int]]:
    """Distinct normalized entry names with occurrence counts.

    Ordered by descending count, ties by first appearance in the log.
    """
    counts: Counter[str] = Counter()
    first_seen: dict[str, int] = {}
    for position, entry in enumerate(log.entries):
        name = normalize_name(entry.name_raw)
        counts[name] += 1
        first_seen.setdefault(name, position)
    return sorted(counts.items(), key=lambda kv: (-kv[1], first_seen[kv[0]]))
