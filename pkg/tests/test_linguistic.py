import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.base import clone

from celebpop.corpus import Corpus, default_stopwords
from celebpop.exceptions import UndefinedProfileError, ValidationError
from celebpop.lexicon import (
    Lexicon,
    SentimentLexicon,
    default_dictionary,
    default_lexicon,
    default_sentiment_lexicon,
    load_lexicon,
    load_sentiment_lexicon,
)
from celebpop.linguistic import (
    LinguisticFeaturizer,
    LinguisticOptions,
    ari,
    ari_from_counts,
    category_density,
    compound,
    feature_names,
    in_vocab_proportion,
    linguistic_profile,
    pos_entropy,
    profile_from_tweets,
    sentiment,
    style_features,
)
from celebpop.tagger import UNIVERSAL_TAGS, RuleTagger

from conftest import TweetFactory, roster_of

LEX = Lexicon("t", {"posemo": ["good", "happi*"], "funct": ["the", "a", "it"], "all": ["*"]})


# -- lexicon -----------------------------------------------------------------

def test_lexicon_matching():
    assert LEX.match("happiness") == {"posemo", "all"}
    assert LEX.match("happ") == {"all"}
    assert LEX.match("the") == {"funct", "all"}


@pytest.mark.parametrize("cats", [{"x": []}, {"x": ["a*b"]}, {"x": ["**"]}, {"x": [""]}])
def test_lexicon_rejects_bad_patterns(cats):
    with pytest.raises(ValidationError):
        Lexicon("bad", cats)


def test_sentiment_lexicon_range():
    with pytest.raises(ValidationError):
        SentimentLexicon({"x": 4.5})


def test_lexicon_files(tmp_path):
    p = tmp_path / "lex.json"
    p.write_text('{"name": "n", "categories": {"c": ["ab*", "x"]}}')
    assert load_lexicon(p).match("abc") == {"c"}
    s = tmp_path / "s.tsv"
    s.write_text("# comment\nhappy\t2.5\nSad\t-1\n")
    assert load_sentiment_lexicon(s).valences == {"happy": 2.5, "sad": -1.0}
    s.write_text("broken line\n")
    with pytest.raises(ValidationError):
        load_sentiment_lexicon(s)


def test_bundled_resources():
    lex = default_lexicon()
    assert 15 <= len(lex.category_names) <= 25
    assert 400 <= sum(len(p) for p in lex.categories.values()) <= 700
    for cat in ("posemo", "affect", "funct", "cogmech", "social"):
        assert cat in lex.categories
    assert len(default_sentiment_lexicon().valences) > 100
    assert "the" in default_dictionary()


# -- category density ----------------------------------------------------------

def test_density_direct_fraction():
    text = "good good x x x x x x x x"
    assert category_density([text], LEX)["posemo"] == 0.2


def test_density_mean_of_tweet_fractions():
    tweets = ["good x x x x", "good good x x x"]
    assert category_density(tweets, LEX)["posemo"] == pytest.approx(0.3, abs=1e-15)


def test_density_prefix_and_multi_category():
    d = category_density(["happiness the"], LEX)
    assert d == {"posemo": 0.5, "funct": 0.5, "all": 1.0}


def test_density_ignores_empty_tweets_and_errors_when_all_empty():
    assert category_density(["good", "", "!!!"], LEX)["posemo"] == 1.0
    with pytest.raises(UndefinedProfileError):
        category_density(["", "#@"], LEX)


def test_density_before_stopwords_and_stemming():
    # "the" is a stopword and "happily" stems to "happili"; both still match
    d = category_density(["the happily"], LEX)
    assert d["funct"] == 0.5 and d["posemo"] == 0.5


# -- vocabulary ------------------------------------------------------------------

def test_in_vocab():
    words = "a b c d e f g h".split()
    assert in_vocab_proportion(["a b c d e f g h x y"], words) == 0.8
    assert in_vocab_proportion(["a b"], words) == 1.0
    # stopwords leave both numerator and denominator
    assert in_vocab_proportion(["a x the"], words, {"the"}) == 0.5
    with pytest.raises(UndefinedProfileError):
        in_vocab_proportion(["the"], words, {"the"})


# -- sentiment --------------------------------------------------------------------

SLEX = SentimentLexicon({"great": 3.0, "meh": -1.0, "zero": 0.0, "two": 2.0})


def test_sentiment_all_positive():
    k = 7
    s = sentiment([" ".join(["two"] * k)], SLEX)
    assert (s.pos, s.neg, s.neu) == (1.0, 0.0, 0.0)
    assert s.comp == pytest.approx(2 * k / math.sqrt(4 * k * k + 15), abs=1e-15)


def test_sentiment_no_hits():
    assert tuple(sentiment(["nothing here"], SLEX)) == (0.0, 0.0, 1.0, 0.0)


def test_sentiment_mixed():
    s = sentiment(["great meh zero other"], SLEX)
    assert (s.pos, s.neg, s.neu) == (0.25, 0.25, 0.5)
    assert s.comp == pytest.approx(2 / math.sqrt(19), abs=1e-15)
    assert round(s.comp, 4) == 0.4588


def test_sentiment_pooled_vs_per_tweet():
    tweets = ["great", "meh meh meh"]
    pooled = sentiment(tweets, SLEX)
    per = sentiment(tweets, SLEX, per_tweet_mean=True)
    assert pooled.pos == 0.25 and per.pos == 0.5
    assert per.comp == pytest.approx((compound(3) + compound(-3)) / 2)


def test_sentiment_channels_sum_to_one_on_random_streams():
    vocab = sorted(default_sentiment_lexicon().valences) + ["plain", "words", "here"]
    lex = default_sentiment_lexicon()
    for seed in range(100):
        rng = random.Random(seed)
        stream = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 60)))
        s = sentiment([stream], lex)
        assert abs(s.pos + s.neg + s.neu - 1) <= 1e-9
        assert -1 < s.comp < 1


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_compound_monotone_in_magnitude(a, b):
    if abs(a) < abs(b):
        assert abs(compound(a)) <= abs(compound(b))
    assert -1 <= compound(a) <= 1


def test_compound_strictly_increasing_moderate_range():
    values = [compound(s) for s in np.linspace(0, 50, 500)]
    assert all(x < y for x, y in zip(values, values[1:]))


# -- POS entropy -------------------------------------------------------------

def _fixed_tagger(mapping):
    return lambda tok: mapping[tok]


def test_entropy_examples():
    tagger = _fixed_tagger({"a": "NOUN", "b": "VERB", "c": "ADJ", "d": "ADV"})
    assert abs(pos_entropy(["a b c d"], tagger) - math.log(4)) <= 1e-12
    assert pos_entropy(["a a a a"], tagger) == 0
    assert pos_entropy(["a a b c"], tagger) == pytest.approx(1.5 * math.log(2), abs=1e-12)
    assert pos_entropy(["a b c d"], tagger, log_base=2) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(UndefinedProfileError):
        pos_entropy([""], tagger)


def test_rule_tagger_uses_universal_tags():
    tagger = RuleTagger()
    words = "i you the a and of quickly running happiness 2017 x' ok dogs".split()
    assert {tagger(w) for w in words} <= set(UNIVERSAL_TAGS)
    assert tagger("the") == "DET" and tagger("42") == "NUM"


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from("the cat runs quickly and i saw 42 happy dogs".split()), min_size=1, max_size=40))
def test_entropy_bounds(tokens):
    h = pos_entropy([" ".join(tokens)])
    tags = {RuleTagger()(t) for t in tokens}
    assert 0 <= h <= math.log(len(UNIVERSAL_TAGS)) + 1e-12
    assert (h == 0) == (len(tags) == 1)


# -- style --------------------------------------------------------------------

def test_style_ttr():
    assert style_features(["the cat the"]).ttr == pytest.approx(2 / 3)


def test_style_pronoun_example():
    # five tokens: i, saw, it, you, ran
    s = style_features(["I saw it. You ran!"])
    assert s.wps == 2.5
    assert s.p1 == s.p2 == s.it == pytest.approx(1 / 5)
    assert s.p3 == 0


def test_style_single_word():
    s = style_features(["go"])
    assert (s.ttr, s.cpw, s.wps) == (1.0, 2.0, 1.0)


def test_style_tweet_boundaries_end_sentences():
    assert style_features(["one two", "three"]).wps == 1.5


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from("i you he it we they cat dog runs".split()), min_size=1, max_size=30))
def test_style_invariants(tokens):
    s = style_features([" ".join(tokens)])
    assert 0 < s.ttr <= 1
    assert s.p1 + s.p2 + s.p3 <= 1 + 1e-12
    rev = style_features([" ".join(reversed(tokens))])
    assert rev.ttr == s.ttr


def test_ttr_identical_tokens():
    for k in range(1, 8):
        assert style_features([" ".join(["x"] * k)]).ttr == pytest.approx(1 / k)


# -- readability ---------------------------------------------------------------

def test_ari_constructed_text():
    sentence = " ".join(["abcde"] * 10) + "."
    text = f"{sentence} {sentence}"
    assert ari([text]) == 0.82
    assert ari_from_counts(100, 20, 2) == 0.82


def test_ari_one_letter():
    assert ari(["a"]) == pytest.approx(-17.21, abs=1e-12)
    with pytest.raises(UndefinedProfileError):
        ari(["..."])


def test_ari_linear_in_word_length():
    base = ari(["ab cd. ef gh ij."])
    doubled = ari(["abab cdcd. efef ghgh ijij."])
    assert doubled - base == pytest.approx(4.17 * 2, abs=1e-12)


def test_ari_counts_alphanumeric_characters_only():
    assert ari(["don't"]) == ari(["dont"])


# -- profiles -----------------------------------------------------------------

def _resources():
    return default_lexicon(), default_sentiment_lexicon(), default_dictionary(), RuleTagger(), default_stopwords()


def test_profile_empty_timeline():
    corpus = Corpus([], roster_of("a"))
    with pytest.raises(UndefinedProfileError):
        linguistic_profile(corpus, "a", *_resources())


def test_profile_single_tweet_composition():
    lex, slex, dic, tagger, stop = _resources()
    text = "So happy with the team tonight! We won... https://t.co/x #blessed"
    make = TweetFactory()
    corpus = Corpus([make("a", text)], roster_of("a"))
    prof = linguistic_profile(corpus, "a", lex, slex, dic, tagger, stop)
    assert prof.category_density == category_density([text], lex)
    assert prof.in_vocab_proportion == in_vocab_proportion([text], dic, stop)
    assert prof.sentiment == sentiment([text], slex)
    assert prof.pos_entropy == pos_entropy([text], tagger)
    assert prof.style == style_features([text])
    assert prof.ari == ari([text])
    feats = prof.as_features()
    assert list(feats) == feature_names(lex)


def test_profiles_independent_of_corpus_order():
    make = TweetFactory()
    tweets = [make(h, f"{w} words from {h}. more text!") for h in "abc" for w in ("love", "hate", "think")]
    res = _resources()
    corpus = Corpus(tweets, roster_of("a", "b", "c"))
    rev = Corpus(list(reversed(tweets)), roster_of("c", "b", "a"))
    for h in "abc":
        assert linguistic_profile(corpus, h, *res) == linguistic_profile(rev, h, *res)


def test_profile_options():
    lex, slex, dic, tagger, stop = _resources()
    tweets = ["great day", "bad bad bad"]
    a = profile_from_tweets("x", tweets, lex, slex, dic, tagger, stop)
    b = profile_from_tweets("x", tweets, lex, slex, dic, tagger, stop, LinguisticOptions(True, 2.0))
    assert a.sentiment != b.sentiment
    assert b.pos_entropy == pytest.approx(a.pos_entropy / math.log(2))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.text(alphabet="abcdefghij lovehappysad .!?", min_size=1, max_size=60), min_size=1, max_size=5))
def test_profile_ranges(tweets):
    lex, slex, dic, tagger, stop = _resources()
    try:
        prof = profile_from_tweets("x", tweets, lex, slex, dic, tagger, stop)
    except UndefinedProfileError:
        return
    assert all(0 <= v <= 1 for v in prof.category_density.values())
    assert 0 <= prof.in_vocab_proportion <= 1
    assert abs(sum(prof.sentiment[:3]) - 1) <= 1e-9


def test_featurizer_estimator_api():
    fz = LinguisticFeaturizer(log_base=2.0)
    assert fz.get_params()["log_base"] == 2.0
    assert clone(fz).get_params() == fz.get_params()
    X = [["I love this!"], ["Bad news today.", "so sad"]]
    out = fz.fit_transform(X)
    names = fz.get_feature_names_out()
    assert out.shape == (2, len(names))
    assert out[0, list(names).index("sent_pos")] > 0
