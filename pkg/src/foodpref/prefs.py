"""Aggregation of per-entry category labels into a preference profile.

A profile counts how often each category was predicted across a log, lists
the top-k categories, and picks one favorite per macro group (grains,
vegetables, proteins, fruits, dairy). Group membership comes from a
configurable map of category ids or name substrings.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .errors import UnknownGroup
from .label import RankedPrediction

GROUP_NAMES = ("grains", "vegetables", "proteins", "fruits", "dairy")

# Substring rules applied to lowercased category names, first match wins.
# Ids listed under "exclude" never join any group.
_DEFAULT_GROUP_RULES: dict[str, list[Union[int, str]]] = {
    "grains": [
        "bread", "rolls", "tortilla", "bagel", "muffin", "rice", "pasta",
        "noodle", "cereal", "oatmeal", "grits", "grain", "crackers",
        "pancakes", "waffle", "french toast", "biscuit", "cornbread",
    ],
    "vegetables": [
        "vegetable", "lettuce", "salad greens", "spinach", "greens",
        "broccoli", "carrot", "corn", "potato", "tomatoes", "beans, peas",
        "onion", "pepper, raw", "squash", "cabbage", "coleslaw",
    ],
    "proteins": [
        "chicken", "beef", "pork", "turkey", "fish", "shrimp", "shellfish",
        "seafood", "egg", "sausage", "bacon", "ham", "meat", "burger",
        "frankfurter", "nuts", "seeds", "peanut butter", "tofu", "jerky",
    ],
    "fruits": [
        "fruit", "apple", "banana", "berries", "melon", "grape", "citrus",
        "orange", "peach", "pear", "pineapple", "mango",
    ],
    "dairy": [
        "milk", "cheese", "yogurt", "ice cream", "dairy", "cream",
    ],
}


@dataclass(frozen=True)
class GroupMap:
    """Assignment of category ids to macro groups.

    ``rules`` maps group name to a list of exact category ids (int) and
    lowercase name substrings (str); the first matching group claims a
    category. Excluded ids match no group.
    """

    rules: Mapping[str, Sequence[Union[int, str]]]
    exclude: frozenset[int] = frozenset()

    def group_of(self, category_id: int, category_name: str) -> Optional[str]:
        if category_id in self.exclude:
            return None
        lowered = category_name.lower()
        for group in GROUP_NAMES:
            for rule in self.rules.get(group, ()):
                if isinstance(rule, int):
                    if rule == category_id:
                        return group
                elif rule in lowered:
                    return group
        return None

    def members(self, group: str, categories: Mapping[int, str]) -> frozenset[int]:
        """All category ids the map assigns to one group."""
        if group not in GROUP_NAMES:
            raise UnknownGroup(f"unknown group {group!r}")
        return frozenset(
            cat for cat, name in categories.items() if self.group_of(cat, name) == group
        )


def default_group_map() -> GroupMap:
    return GroupMap(rules=_DEFAULT_GROUP_RULES)


def load_group_map(source) -> GroupMap:
    """Read a group map from a JSON file object or path.

    Schema: ``{"exclude": [ids...], "groups": {"grains": [id-or-substring,
    ...], ...}}``. Group keys outside the five known names raise
    :class:`UnknownGroup`.
    """
    if hasattr(source, "read"):
        raw = json.load(source)
    else:
        with open(source, encoding="utf-8") as fh:
            raw = json.load(fh)
    groups = raw.get("groups", {})
    for key in groups:
        if key not in GROUP_NAMES:
            raise UnknownGroup(f"unknown group {key!r} in group map")
    rules = {
        name: [r if isinstance(r, int) else str(r).lower() for r in rules_in]
        for name, rules_in in groups.items()
    }
    return GroupMap(rules=rules, exclude=frozenset(int(x) for x in raw.get("exclude", ())))


def category_frequencies(predictions: Sequence[RankedPrediction]) -> Counter:
    """Count top-ranked categories; entries with no ranking are skipped."""
    counts: Counter = Counter()
    for pred in predictions:
        if pred.top_category is not None:
            counts[pred.top_category] += 1
    return counts


def top_k(counts: Mapping[int, int], k: int = 10) -> list[tuple[int, int]]:
    """Most frequent k categories, ties broken by ascending category id."""
    if k < 1:
        raise ValueError("k must be at least 1")
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ordered[:k]


def group_favorite(
    counts: Mapping[int, int],
    group: str,
    group_map: GroupMap,
    categories: Mapping[int, str],
) -> Optional[int]:
    """Most frequent category within one macro group, or None if unseen."""
    members = group_map.members(group, categories)
    seen = [(cat, n) for cat, n in counts.items() if cat in members and n > 0]
    if not seen:
        return None
    seen.sort(key=lambda item: (-item[1], item[0]))
    return seen[0][0]


@dataclass(frozen=True)
class PreferenceProfile:
    """Aggregated preferences for one log under one method."""

    log_id: str
    method: int
    counts: Mapping[int, int]
    top: tuple[tuple[int, int], ...]
    favorites: Mapping[str, Optional[int]] = field(default_factory=dict)

    def favorite(self, group: str) -> Optional[int]:
        if group not in GROUP_NAMES:
            raise UnknownGroup(f"unknown group {group!r}")
        return self.favorites.get(group)


def profile_from_counts(
    log_id: str,
    method: int,
    counts: Mapping[int, int],
    categories: Mapping[int, str],
    group_map: Optional[GroupMap] = None,
    k: int = 10,
) -> PreferenceProfile:
    """Profile from precomputed category counts (predicted or gold)."""
    if group_map is None:
        group_map = default_group_map()
    favorites = {
        group: group_favorite(counts, group, group_map, categories)
        for group in GROUP_NAMES
    }
    return PreferenceProfile(
        log_id=log_id,
        method=method,
        counts=dict(counts),
        top=tuple(top_k(counts, k)) if counts else (),
        favorites=favorites,
    )


def build_profile(
    log_id: str,
    method: int,
    predictions: Sequence[RankedPrediction],
    categories: Mapping[int, str],
    group_map: Optional[GroupMap] = None,
    k: int = 10,
) -> PreferenceProfile:
    counts = category_frequencies(predictions)
    return profile_from_counts(log_id, method, counts, categories, group_map, k)
