"""Per-celebrity linguistic features.

Feature families: lexicon category densities, in-vocabulary proportion,
valence sentiment, part-of-speech tag entropy, style ratios and the
automated readability index. Every public function takes the celebrity's
tweets (``TweetRecord`` objects or raw strings) and raises
``UndefinedProfileError`` when there is nothing to measure.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .corpus import Corpus, celebrity_tweets, sentences, tokenize
from .exceptions import UndefinedProfileError
from .lexicon import Lexicon, SentimentLexicon
from .tagger import RuleTagger

COMPOUND_ALPHA = 15

FIRST_PERSON = frozenset("i me my mine we us our ours".split())
SECOND_PERSON = frozenset("you your yours".split())
THIRD_PERSON = frozenset("he she him her his hers they them their theirs".split())

# the displayed coefficients, kept exact so hand-built cases evaluate exactly
_ARI_CPW = Fraction("4.17")
_ARI_WPS = Fraction("0.15")
_ARI_CONST = Fraction("21.53")

SENTIMENT_FEATURES = ("sent_pos", "sent_neg", "sent_neu", "sent_comp")
STYLE_FEATURES = ("ttr", "cpw", "wps", "p1", "p2", "p3", "it")


class Sentiment(NamedTuple):
    pos: float
    neg: float
    neu: float
    comp: float


class Style(NamedTuple):
    ttr: float
    cpw: float
    wps: float
    p1: float
    p2: float
    p3: float
    it: float


def _text(tweet) -> str:
    return tweet if isinstance(tweet, str) else tweet.text


def _token_lists(tweets) -> list[list[str]]:
    return [tokenize(_text(t)) for t in tweets]


def _require_tokens(n, what="tokens"):
    if n == 0:
        raise UndefinedProfileError(f"no {what} to measure")


def liwc_feature(category: str) -> str:
    return f"liwc_{category.lower()}"


# -- category density --------------------------------------------------------


def _category_density(token_lists, lexicon: Lexicon) -> dict[str, float]:
    sums = dict.fromkeys(lexicon.category_names, 0.0)
    used = 0
    for toks in token_lists:
        if not toks:
            continue
        used += 1
        counts = Counter()
        for tok in toks:
            counts.update(lexicon.match(tok))
        for cat, n in counts.items():
            sums[cat] += n / len(toks)
    _require_tokens(used, "tweets with tokens")
    return {cat: s / used for cat, s in sums.items()}


def category_density(tweets, lexicon: Lexicon) -> dict[str, float]:
    """Mean over tweets of the fraction of a tweet's tokens matching each category.

    Matching runs on cleaned, lowercased tokens before stopword removal and
    stemming. A token may count toward several categories.
    """
    return _category_density(_token_lists(tweets), lexicon)


# -- vocabulary --------------------------------------------------------------


def _in_vocab(token_lists, dictionary, stopwords) -> float:
    total = hits = 0
    for toks in token_lists:
        for tok in toks:
            if tok in stopwords:
                continue
            total += 1
            hits += tok in dictionary
    _require_tokens(total)
    return hits / total


def in_vocab_proportion(tweets, dictionary: Iterable[str], stopwords: Iterable[str] = ()) -> float:
    """Share of non-stopword, unstemmed tokens found in ``dictionary``."""
    return _in_vocab(_token_lists(tweets), frozenset(dictionary), frozenset(stopwords))


# -- sentiment ---------------------------------------------------------------


def compound(total_valence: float, alpha: float = COMPOUND_ALPHA) -> float:
    return total_valence / math.sqrt(total_valence * total_valence + alpha)


def _score_tokens(tokens, lex: SentimentLexicon) -> Sentiment:
    n = len(tokens)
    pos = neg = 0
    s = 0.0
    for tok in tokens:
        v = lex.valence(tok)
        s += v
        if v > 0:
            pos += 1
        elif v < 0:
            neg += 1
    return Sentiment(pos / n, neg / n, (n - pos - neg) / n, compound(s))


def _sentiment(token_lists, lex, per_tweet_mean=False) -> Sentiment:
    if not per_tweet_mean:
        pooled = [tok for toks in token_lists for tok in toks]
        _require_tokens(len(pooled))
        return _score_tokens(pooled, lex)
    scores = [_score_tokens(toks, lex) for toks in token_lists if toks]
    _require_tokens(len(scores))
    return Sentiment(*(float(np.mean(col)) for col in zip(*scores)))


def sentiment(tweets, lex: SentimentLexicon, per_tweet_mean: bool = False) -> Sentiment:
    """Fractions of positive/negative/neutral tokens plus the compound score.

    By default all of a celebrity's tokens are pooled; with ``per_tweet_mean``
    each tweet is scored separately and the four scores averaged.
    """
    return _sentiment(_token_lists(tweets), lex, per_tweet_mean)


# -- POS entropy -------------------------------------------------------------


def _entropy(counts: Iterable[int], log_base: float | None = None) -> float:
    counts = [c for c in counts if c]
    total = sum(counts)
    _require_tokens(total)
    h = -math.fsum((c / total) * math.log(c / total) for c in counts)
    if log_base is not None:
        h /= math.log(log_base)
    return h + 0.0  # normalise -0.0


def pos_entropy(tweets, tagger: Callable[[str], str] | None = None, log_base: float | None = None) -> float:
    """Shannon entropy of the tag distribution over all tokens (natural log by default)."""
    tagger = tagger or RuleTagger()
    tags = Counter(tagger(tok) for toks in _token_lists(tweets) for tok in toks)
    return _entropy(tags.values(), log_base)


# -- style & readability -----------------------------------------------------


def _sentence_lists(tweets) -> list[list[str]]:
    return [s for t in tweets for s in sentences(_text(t))]


def _style(sents, pronouns) -> Style:
    tokens = [tok for s in sents for tok in s]
    n = len(tokens)
    _require_tokens(n)
    p1, p2, p3 = pronouns
    counts = Counter(tokens)
    return Style(
        ttr=len(counts) / n,
        cpw=sum(len(t) for t in tokens) / n,
        wps=n / len(sents),
        p1=sum(c for t, c in counts.items() if t in p1) / n,
        p2=sum(c for t, c in counts.items() if t in p2) / n,
        p3=sum(c for t, c in counts.items() if t in p3) / n,
        it=counts.get("it", 0) / n,
    )


def style_features(tweets, pronouns=(FIRST_PERSON, SECOND_PERSON, THIRD_PERSON)) -> Style:
    """Type-token ratio, characters per word, words per sentence, pronoun and "it" rates.

    Tokens are not stopword-filtered or stemmed. Sentences end at ``.``, ``!``,
    ``?`` and at tweet boundaries.
    """
    return _style(_sentence_lists(tweets), pronouns)


def ari_from_counts(characters: int, words: int, sentences: int) -> float:
    if words == 0 or sentences == 0:
        raise UndefinedProfileError("readability needs at least one word and one sentence")
    value = (
        _ARI_CPW * Fraction(characters, words)
        + _ARI_WPS * Fraction(words, sentences)
        - _ARI_CONST
    )
    return float(value)


def _ari(sents) -> float:
    words = sum(len(s) for s in sents)
    chars = sum(ch.isalnum() for s in sents for tok in s for ch in tok)
    return ari_from_counts(chars, words, len(sents))


def ari(tweets) -> float:
    """Automated readability index; lower reads easier. May be negative."""
    return _ari(_sentence_lists(tweets))


# -- full profile ------------------------------------------------------------


@dataclass(frozen=True)
class LinguisticProfile:
    handle: str
    category_density: Mapping[str, float]
    in_vocab_proportion: float
    sentiment: Sentiment
    pos_entropy: float
    style: Style
    ari: float

    def as_features(self) -> dict[str, float]:
        row = {liwc_feature(c): v for c, v in self.category_density.items()}
        row["in_vocab"] = self.in_vocab_proportion
        row.update(zip(SENTIMENT_FEATURES, self.sentiment))
        row["pos_entropy"] = self.pos_entropy
        row.update(zip(STYLE_FEATURES, self.style))
        row["ari"] = self.ari
        return row


@dataclass(frozen=True)
class LinguisticOptions:
    per_tweet_mean: bool = False
    log_base: float | None = None
    pronouns: tuple = (FIRST_PERSON, SECOND_PERSON, THIRD_PERSON)


def profile_from_tweets(
    handle,
    tweets,
    lexicon: Lexicon,
    sentiment_lex: SentimentLexicon,
    dictionary,
    tagger=None,
    stopwords=frozenset(),
    options: LinguisticOptions = LinguisticOptions(),
) -> LinguisticProfile:
    tagger = tagger or RuleTagger()
    token_lists = _token_lists(tweets)
    if not any(token_lists):
        raise UndefinedProfileError(f"{handle}: no usable tokens")
    sents = _sentence_lists(tweets)
    tags = Counter(tagger(tok) for toks in token_lists for tok in toks)
    return LinguisticProfile(
        handle=handle,
        category_density=_category_density(token_lists, lexicon),
        in_vocab_proportion=_in_vocab(token_lists, frozenset(dictionary), frozenset(stopwords)),
        sentiment=_sentiment(token_lists, sentiment_lex, options.per_tweet_mean),
        pos_entropy=_entropy(tags.values(), options.log_base),
        style=_style(sents, options.pronouns),
        ari=_ari(sents),
    )


def linguistic_profile(
    corpus: Corpus,
    handle: str,
    lexicon: Lexicon,
    sentiment_lex: SentimentLexicon,
    dictionary,
    tagger=None,
    stopwords=frozenset(),
    options: LinguisticOptions = LinguisticOptions(),
) -> LinguisticProfile:
    """All linguistic features of one celebrity's authored tweets."""
    tweets = celebrity_tweets(corpus, handle)
    return profile_from_tweets(
        handle, tweets, lexicon, sentiment_lex, dictionary, tagger, stopwords, options
    )


def feature_names(lexicon: Lexicon) -> list[str]:
    return (
        [liwc_feature(c) for c in lexicon.category_names]
        + ["in_vocab", *SENTIMENT_FEATURES, "pos_entropy", *STYLE_FEATURES, "ari"]
    )


class LinguisticFeaturizer(TransformerMixin, BaseEstimator):
    """Transformer from per-celebrity tweet collections to a feature matrix.

    ``X`` is a sequence whose items are each one celebrity's tweets (strings or
    ``TweetRecord``). Stateless: ``fit`` only checks the resources.
    """

    def __init__(
        self,
        lexicon=None,
        sentiment_lexicon=None,
        dictionary=None,
        stopwords=None,
        tagger=None,
        per_tweet_mean=False,
        log_base=None,
    ):
        self.lexicon = lexicon
        self.sentiment_lexicon = sentiment_lexicon
        self.dictionary = dictionary
        self.stopwords = stopwords
        self.tagger = tagger
        self.per_tweet_mean = per_tweet_mean
        self.log_base = log_base

    def _resources(self):
        from .lexicon import default_dictionary, default_lexicon, default_sentiment_lexicon
        from .corpus import default_stopwords

        return (
            self.lexicon if self.lexicon is not None else default_lexicon(),
            self.sentiment_lexicon if self.sentiment_lexicon is not None else default_sentiment_lexicon(),
            self.dictionary if self.dictionary is not None else default_dictionary(),
            self.stopwords if self.stopwords is not None else default_stopwords(),
        )

    def fit(self, X, y=None):
        self.lexicon_, self.sentiment_lexicon_, self.dictionary_, self.stopwords_ = self._resources()
        self.feature_names_out_ = feature_names(self.lexicon_)
        self.n_features_out_ = len(self.feature_names_out_)
        return self

    def transform(self, X):
        from sklearn.utils.validation import check_is_fitted

        check_is_fitted(self, "feature_names_out_")
        options = LinguisticOptions(self.per_tweet_mean, self.log_base)
        rows = []
        for i, tweets in enumerate(X):
            prof = profile_from_tweets(
                i, tweets, self.lexicon_, self.sentiment_lexicon_, self.dictionary_,
                self.tagger, self.stopwords_, options,
            )
            feats = prof.as_features()
            rows.append([feats[name] for name in self.feature_names_out_])
        return np.asarray(rows, dtype=float).reshape(len(rows), self.n_features_out_)

    def get_feature_names_out(self, input_features=None):
        return np.asarray(self.feature_names_out_, dtype=object)
