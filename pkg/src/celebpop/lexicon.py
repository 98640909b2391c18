"""Category dictionaries (LIWC-compatible) and word-valence lexicons."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping, Sequence

from .exceptions import ValidationError

__all__ = [
    "Lexicon",
    "SentimentLexicon",
    "load_lexicon",
    "load_sentiment_lexicon",
    "default_lexicon",
    "default_sentiment_lexicon",
    "default_dictionary",
]


def _data_path(name):
    return resources.files("celebpop") / "data" / name


@dataclass(frozen=True)
class Lexicon:
    """Named categories of word patterns.

    A pattern is either a literal lowercase token or a prefix ending in ``*``
    (``happi*`` matches ``happiness``).
    """

    name: str
    categories: Mapping[str, Sequence[str]]
    _exact: dict = field(init=False, repr=False, compare=False)
    _prefix: dict = field(init=False, repr=False, compare=False)
    _cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        exact, prefix = {}, {}
        cats = {}
        for cat, patterns in self.categories.items():
            patterns = tuple(patterns)
            if not patterns:
                raise ValidationError(f"lexicon category {cat!r} has no patterns")
            for pat in patterns:
                if not pat or "*" in pat[:-1]:
                    raise ValidationError(f"{cat}: bad pattern {pat!r} ('*' only as final char)")
                if pat.endswith("*"):
                    prefix.setdefault(pat[:-1].lower(), set()).add(cat)
                else:
                    exact.setdefault(pat.lower(), set()).add(cat)
            cats[cat] = patterns
        object.__setattr__(self, "categories", cats)
        object.__setattr__(self, "_exact", exact)
        object.__setattr__(self, "_prefix", prefix)
        object.__setattr__(self, "_cache", {})

    @property
    def category_names(self) -> list[str]:
        return list(self.categories)

    def match(self, token: str) -> frozenset[str]:
        """Categories whose patterns match ``token``."""
        hit = self._cache.get(token)
        if hit is None:
            cats = set(self._exact.get(token, ()))
            for i in range(len(token), -1, -1):
                cats.update(self._prefix.get(token[:i], ()))
            hit = frozenset(cats)
            self._cache[token] = hit
        return hit


@dataclass(frozen=True)
class SentimentLexicon:
    valences: Mapping[str, float]

    def __post_init__(self):
        for tok, v in self.valences.items():
            if not -4.0 <= v <= 4.0:
                raise ValidationError(f"valence for {tok!r} outside [-4, 4]: {v}")

    def valence(self, token: str) -> float:
        return self.valences.get(token, 0.0)


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or not isinstance(obj.get("categories"), dict):
        raise ValidationError(f"{path}: expected {{'name': ..., 'categories': {{...}}}}")
    return Lexicon(obj.get("name", str(path)), obj["categories"])


def load_sentiment_lexicon(path) -> SentimentLexicon:
    valences = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            try:
                tok, val = line.split("\t")
                valences[tok.strip().lower()] = float(val)
            except ValueError:
                raise ValidationError(f"{path}:{lineno}: expected 'token<TAB>valence'") from None
    return SentimentLexicon(valences)


def default_lexicon() -> Lexicon:
    with resources.as_file(_data_path("demo_lexicon.json")) as p:
        return load_lexicon(p)


def default_sentiment_lexicon() -> SentimentLexicon:
    with resources.as_file(_data_path("sentiment.tsv")) as p:
        return load_sentiment_lexicon(p)


def default_dictionary() -> frozenset[str]:
    from .corpus import read_word_list

    with resources.as_file(_data_path("dictionary.txt")) as p:
        return read_word_list(p)
