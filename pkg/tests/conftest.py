from datetime import datetime, timedelta, timezone

import pytest

from celebpop.corpus import CelebrityProfile, Corpus, TweetRecord

T0 = datetime(2017, 6, 1, tzinfo=timezone.utc)


class TweetFactory:
    """Builds TweetRecords with sequential ids and timestamps."""

    def __init__(self):
        self.n = 0

    def __call__(self, author, text="hello world", retweet_of=None, mentions=(), at=None):
        self.n += 1
        ts = T0 + timedelta(minutes=self.n if at is None else at)
        return TweetRecord(f"t{self.n:05d}", author, text, ts, retweet_of, tuple(mentions))


@pytest.fixture
def tw():
    return TweetFactory()


def roster_of(*handles, category="Music", followers=None):
    followers = followers or {}
    return [CelebrityProfile(h, category, followers.get(h, 100)) for h in handles]


def engagement_corpus(engagers, kind="retweet", roster=None):
    """Corpus where ``engagers[user]`` lists the celebrities the user engages with.

    Each celebrity also authors one tweet so it has a timeline.
    """
    make = TweetFactory()
    celebs = sorted({c for cs in engagers.values() for c in cs} | set(roster or ()))
    tweets = [make(c, f"post by {c}") for c in celebs]
    for user, targets in engagers.items():
        for c in targets:
            if kind == "retweet":
                tweets.append(make(user, f"RT @{c}: post", retweet_of=c))
            else:
                tweets.append(make(user, f"@{c} hi", mentions=(c,)))
    return Corpus(tweets, roster_of(*celebs))


@pytest.fixture(scope="session")
def planted():
    """Seed-42 planted-signal corpus, its analysis and the GNB accuracy grid."""
    from celebpop.pipeline import PipelineConfig, accuracy_grid, analyse
    from celebpop.synth import generate, planted_spec

    corpus, labels = generate(planted_spec(300, seed=42))
    cfg = PipelineConfig()
    analysis = analyse(corpus, cfg)
    grid = accuracy_grid(analysis, cfg, classifiers=["gnb"])
    return {"corpus": corpus, "labels": labels, "cfg": cfg, "analysis": analysis, "grid": grid}


# acceptance criteria report their verdicts here; printed once at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
