"""Tweet corpus and celebrity roster: loading, validation and text preprocessing."""

from __future__ import annotations

import csv
import enum
import json
import logging
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable

from .exceptions import NotFoundError, UndefinedDensityError, ValidationError
from .porter import porter_stem

logger = logging.getLogger(__name__)

ROSTER_HEADER = ("handle", "category", "followers_future")


class Category(str, enum.Enum):
    MOVIES = "Movies"
    MUSIC = "Music"
    NEWS = "News"
    TECH = "Tech"
    SPORTS = "Sports"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TweetRecord:
    id: str
    author: str
    text: str
    timestamp: datetime
    retweet_of: str | None = None
    mentions: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValidationError("tweet id must be non-empty")
        if not self.author:
            raise ValidationError(f"tweet {self.id!r}: author must be non-empty")
        if self.retweet_of is not None and self.retweet_of == self.author:
            raise ValidationError(f"tweet {self.id!r}: retweet_of equals author")
        if self.timestamp.tzinfo is None:
            object.__setattr__(self, "timestamp", self.timestamp.replace(tzinfo=timezone.utc))
        object.__setattr__(self, "mentions", tuple(self.mentions))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "author": self.author,
            "text": self.text,
            "timestamp": self.timestamp.isoformat(),
            "retweet_of": self.retweet_of,
            "mentions": list(self.mentions),
        }


@dataclass(frozen=True)
class CelebrityProfile:
    handle: str
    category: Category
    followers_future: int

    def __post_init__(self):
        if not self.handle:
            raise ValidationError("celebrity handle must be non-empty")
        try:
            object.__setattr__(self, "category", Category(self.category))
        except ValueError:
            raise ValidationError(
                f"{self.handle}: unknown category {self.category!r}; "
                f"expected one of {[c.value for c in Category]}"
            ) from None
        if self.followers_future < 0:
            raise ValidationError(f"{self.handle}: followers_future must be >= 0")


@dataclass(frozen=True)
class Corpus:
    """Immutable tweet collection plus roster.

    ``dropped`` counts input records rejected at load time; it is not part of
    equality so a reloaded corpus compares equal to its source.
    """

    tweets: tuple[TweetRecord, ...]
    roster: tuple[CelebrityProfile, ...]
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tweets", tuple(self.tweets))
        object.__setattr__(self, "roster", tuple(self.roster))
        seen = set()
        for t in self.tweets:
            if t.id in seen:
                raise ValidationError(f"duplicate tweet id {t.id!r}")
            seen.add(t.id)
        handles = set()
        for p in self.roster:
            if p.handle in handles:
                raise ValidationError(f"duplicate roster handle {p.handle!r}")
            handles.add(p.handle)

    @cached_property
    def profiles(self) -> dict[str, CelebrityProfile]:
        return {p.handle: p for p in self.roster}

    @cached_property
    def handles(self) -> frozenset[str]:
        return frozenset(self.profiles)

    @cached_property
    def _by_author(self) -> dict[str, list[TweetRecord]]:
        index: dict[str, list[TweetRecord]] = {}
        for t in self.tweets:
            index.setdefault(t.author, []).append(t)
        return index


# -- I/O ---------------------------------------------------------------------


def _parse_timestamp(value: str) -> datetime:
    if value.endswith("Z"):
        value = value[:-1] + "+00:00"
    return datetime.fromisoformat(value)


def parse_tweet(obj) -> TweetRecord:
    """Validate one decoded JSON object; raise ValidationError if it is not a tweet."""
    if not isinstance(obj, dict):
        raise ValidationError("record is not a JSON object")
    for key in ("id", "author", "text", "timestamp"):
        if not isinstance(obj.get(key), str):
            raise ValidationError(f"missing or non-string field {key!r}")
    retweet_of = obj.get("retweet_of")
    if retweet_of is not None and not (isinstance(retweet_of, str) and retweet_of):
        raise ValidationError("retweet_of must be a non-empty string or null")
    mentions = obj.get("mentions", [])
    if not isinstance(mentions, list) or not all(isinstance(m, str) for m in mentions):
        raise ValidationError("mentions must be an array of strings")
    try:
        ts = _parse_timestamp(obj["timestamp"])
    except ValueError as exc:
        raise ValidationError(f"bad timestamp: {exc}") from None
    return TweetRecord(
        id=obj["id"],
        author=obj["author"],
        text=obj["text"],
        timestamp=ts,
        retweet_of=retweet_of,
        mentions=tuple(mentions),
    )


def read_tweets(path) -> tuple[list[TweetRecord], int]:
    """Read a JSONL tweets file. Returns (unique valid tweets, dropped count)."""
    tweets: list[TweetRecord] = []
    seen: set[str] = set()
    dropped = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                tweet = parse_tweet(json.loads(line))
            except (json.JSONDecodeError, ValidationError) as exc:
                logger.debug("%s:%d dropped: %s", path, lineno, exc)
                dropped += 1
                continue
            if tweet.id in seen:
                dropped += 1
                continue
            seen.add(tweet.id)
            tweets.append(tweet)
    return tweets, dropped


def read_roster(path) -> list[CelebrityProfile]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != ROSTER_HEADER:
            raise ValidationError(
                f"{path}: roster header must be {','.join(ROSTER_HEADER)}, "
                f"got {reader.fieldnames}"
            )
        roster = []
        seen = set()
        for row in reader:
            handle = (row["handle"] or "").strip()
            if handle in seen:
                raise ValidationError(f"{path}: duplicate roster handle {handle!r}")
            seen.add(handle)
            try:
                followers = int(row["followers_future"])
            except (TypeError, ValueError):
                raise ValidationError(
                    f"{path}: {handle}: followers_future is not an integer"
                ) from None
            roster.append(CelebrityProfile(handle, (row["category"] or "").strip(), followers))
    return roster


def load_corpus(tweets_path, roster_path) -> Corpus:
    """Load and validate a corpus.

    Invalid tweet records and repeated ids (first occurrence wins) are dropped
    and counted in ``Corpus.dropped``. A malformed roster is fatal.
    """
    roster = read_roster(roster_path)
    tweets, dropped = read_tweets(tweets_path)
    if dropped:
        logger.warning("dropped %d invalid or duplicate tweet records", dropped)
    return Corpus(tweets, roster, dropped=dropped)


def write_corpus(corpus: Corpus, tweets_path, roster_path) -> None:
    with open(tweets_path, "w", encoding="utf-8", newline="\n") as fh:
        for t in corpus.tweets:
            fh.write(json.dumps(t.to_json(), ensure_ascii=False, sort_keys=True))
            fh.write("\n")
    with open(roster_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ROSTER_HEADER)
        for p in corpus.roster:
            writer.writerow([p.handle, p.category.value, p.followers_future])


def read_word_list(path) -> frozenset[str]:
    """Newline-delimited lowercase words; blank lines and ``#`` comments skipped."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(
            w.strip().lower() for w in fh if w.strip() and not w.lstrip().startswith("#")
        )


def default_stopwords() -> frozenset[str]:
    with resources.as_file(resources.files("celebpop") / "data" / "stopwords.txt") as p:
        return read_word_list(p)


# -- text preprocessing ------------------------------------------------------

_URL_RE = re.compile(r"https?://\S*", re.IGNORECASE)
_NON_ASCII_RE = re.compile(r"[^\x00-\x7f]")
_STRIP_CHARS = str.maketrans("", "", "#@{}")
_TOKEN_RE = re.compile(r"[a-z0-9]+(?:'[a-z0-9]+)*")
_SENTENCE_RE = re.compile(r"[.!?]+")


def clean_text(raw: str) -> str:
    """Steps shared by every text feature: URLs, non-ASCII, ellipses, ``#@{}``, case."""
    text = _URL_RE.sub(" ", raw)
    text = text.replace("…", " ")
    text = _NON_ASCII_RE.sub("", text)
    text = text.replace("...", " ")
    text = text.translate(_STRIP_CHARS)
    return text.lower()


def tokenize(raw: str) -> list[str]:
    """Cleaned, lowercased word tokens; no stopword removal, no stemming."""
    return _TOKEN_RE.findall(clean_text(raw))


def sentences(raw: str) -> list[list[str]]:
    """Split one tweet into tokenized sentences on ``.``, ``!`` and ``?``.

    Sentences without tokens are dropped. Ellipses are not boundaries since
    cleaning removes them first.
    """
    out = []
    for chunk in _SENTENCE_RE.split(clean_text(raw)):
        toks = _TOKEN_RE.findall(chunk)
        if toks:
            out.append(toks)
    return out


def preprocess_text(raw: str, stopwords: Iterable[str] = frozenset()) -> list[str]:
    """Full preprocessing: clean, tokenize, drop stopwords, Porter-stem.

    >>> preprocess_text("Check https://t.co/x #wow running")
    ['check', 'wow', 'run']
    """
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else set(stopwords)
    return [porter_stem(tok) for tok in tokenize(raw) if tok not in stop]


# -- queries -----------------------------------------------------------------


def celebrity_tweets(corpus: Corpus, handle: str) -> list[TweetRecord]:
    """Tweets authored by ``handle``, oldest first (ties keep file order)."""
    if handle not in corpus.profiles:
        raise NotFoundError(f"unknown celebrity handle {handle!r}")
    return sorted(corpus._by_author.get(handle, ()), key=lambda t: t.timestamp)


def average_retweet_density(corpus: Corpus, category) -> float:
    """Retweets received per authored tweet, pooled over a category's celebrities."""
    category = Category(category)
    members = {p.handle for p in corpus.roster if p.category is category}
    authored = sum(len(corpus._by_author.get(h, ())) for h in members)
    if authored == 0:
        raise UndefinedDensityError(f"no tweets authored by {category.value} celebrities")
    retweets = sum(1 for t in corpus.tweets if t.retweet_of in members)
    return retweets / authored


def retweet_density_table(corpus: Corpus) -> dict[Category, float | None]:
    """Per-category density, ``None`` where no celebrity of the category tweeted."""
    table: dict[Category, float | None] = {}
    for cat in Category:
        try:
            table[cat] = average_retweet_density(corpus, cat)
        except UndefinedDensityError:
            table[cat] = None
    return table

