"""Seeded synthetic corpora with plantable bucket-dependent signal.

Celebrity follower counts are drawn first and bucketed with the standard
tercile rule. Each bucket then shifts two things:

* the lexicon boost is added to the probability that a celebrity's token is
  drawn from the "warm" vocabulary (positive-emotion, social and cognitive
  words from the demo lexicon);
* the engagement boost multiplies how attractive the celebrity is to the
  simulated users who retweet and mention celebrities.

With all boosts at zero, text and engagement are independent of followers.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .classify import BUCKETS, BucketLabel, assign_buckets
from .corpus import Category, CelebrityProfile, Corpus, TweetRecord, write_corpus
from .exceptions import ValidationError

# matched by posemo/affect/social/cogmech/funct in the demo lexicon
WARM_WORDS = """love loving happy thanks thank grateful blessed proud amazing wonderful
    beautiful great best joy fun celebrate congratulations support hope inspired
    together friends friend family mom dad brother sister team fans everyone people
    we our us you your share meet talk think know believe because understand learn
    idea why always sure""".split()

NEUTRAL_WORDS = """match movie film song album show stage series season news report
    channel interview article phone app software data launch product update video
    photo picture event award trophy concert tour crowd audience festival journey
    city town road street train flight ticket shoot scene role director actor singer
    writer artist today tomorrow tonight morning evening weekend week month year
    practice training record score goal ball field stadium league club final game
    play run watch start open read check release post coming going new big first
    last next little long early live morning coffee tea dinner lunch weather rain
    summer winter light star sky sun minute hour""".split()

# low-rate words spread over the other lexicon categories
BACKGROUND_WORDS = """the a an of in on at for with from to and but or is are was it this
    that i my me he she they them his her not no never sad sorry hate angry bad worst
    afraid worried upset cry lost fight damn hell yes yeah ok okay agree dead died rip
    death nervous stress miss missed tears""".split()

SLANG_WORDS = "lol omg haha gr8 thx pls tmrw bday congo luv ur gud plz".split()


@dataclass
class SynthSpec:
    n_celebrities: int = 300
    n_users: int = 3500
    seed: int = 42
    # bucket -> (lexicon boost, engagement boost)
    planted_effects: dict = field(
        default_factory=lambda: {b: (0.0, 0.0) for b in BUCKETS}
    )
    tweets_per_celebrity: int = 20
    engagements_per_user: int = 8

    def __post_init__(self):
        if self.n_celebrities < 9:
            raise ValidationError("n_celebrities must be >= 9 (three per bucket)")
        if self.n_users < 1:
            raise ValidationError("n_users must be >= 1")
        if self.tweets_per_celebrity < 1 or self.engagements_per_user < 1:
            raise ValidationError("tweets_per_celebrity and engagements_per_user must be >= 1")
        effects = {}
        for b in BUCKETS:
            lex, eng = self.planted_effects.get(b, (0.0, 0.0))
            if lex < 0 or eng < 0:
                raise ValidationError(f"{b}: boosts must be >= 0")
            effects[b] = (float(lex), float(eng))
        unknown = set(self.planted_effects) - set(BUCKETS)
        if unknown:
            raise ValidationError(f"unknown buckets in planted_effects: {sorted(unknown)}")
        self.planted_effects = effects

    @classmethod
    def from_json(cls, path) -> "SynthSpec":
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        if "planted_effects" in obj:
            obj["planted_effects"] = {k: tuple(v) for k, v in obj["planted_effects"].items()}
        try:
            return cls(**obj)
        except TypeError as exc:
            raise ValidationError(f"{path}: {exc}") from None

    def to_json(self) -> str:
        obj = asdict(self)
        obj["planted_effects"] = {k: list(v) for k, v in self.planted_effects.items()}
        return json.dumps(obj, indent=2, sort_keys=True)


def planted_spec(n_celebrities: int = 300, seed: int = 42) -> SynthSpec:
    """Spec with graded signal: HIGH > MID > LOW in both text and engagement."""
    return SynthSpec(
        n_celebrities=n_celebrities,
        seed=seed,
        planted_effects={"HIGH": (0.25, 1.2), "MID": (0.125, 0.5), "LOW": (0.0, 0.0)},
    )


_EPOCH = datetime(2017, 6, 1, tzinfo=timezone.utc)
_WINDOW = 61 * 24 * 3600
_BASE_WARM = 0.10
_BACKGROUND = 0.15
_SLANG = 0.04
_WARM_SD = 0.02
_APPEAL_SD = 0.1
_CHANNEL_SD = 0.1


class _Generator:
    def __init__(self, spec: SynthSpec):
        self.spec = spec
        self.rng = np.random.default_rng(spec.seed)
        self.tweets: list[TweetRecord] = []
        self.next_id = 0

    def _stamp(self):
        return _EPOCH + timedelta(seconds=int(self.rng.integers(0, _WINDOW)))

    def _emit(self, author, text, retweet_of=None, mentions=()):
        self.next_id += 1
        self.tweets.append(
            TweetRecord(f"t{self.next_id:07d}", author, text, self._stamp(), retweet_of, tuple(mentions))
        )
        return self.tweets[-1]

    def _words(self, n, warm_rate, vocab=NEUTRAL_WORDS):
        rng = self.rng
        u = rng.random(n)
        out = []
        for x in u:
            if x < warm_rate:
                out.append(WARM_WORDS[rng.integers(len(WARM_WORDS))])
            elif x < warm_rate + _BACKGROUND:
                out.append(BACKGROUND_WORDS[rng.integers(len(BACKGROUND_WORDS))])
            elif x < warm_rate + _BACKGROUND + _SLANG:
                out.append(SLANG_WORDS[rng.integers(len(SLANG_WORDS))])
            else:
                out.append(vocab[rng.integers(len(vocab))])
        return out

    def _tweet_text(self, warm_rate):
        rng = self.rng
        sentences = []
        for _ in range(int(rng.integers(1, 4))):
            words = self._words(int(rng.integers(4, 10)), warm_rate)
            words[0] = words[0].capitalize()
            sentences.append(" ".join(words) + str(rng.choice([".", "!", "?", "..."])))
        text = " ".join(sentences)
        if rng.random() < 0.2:
            text += f" #{NEUTRAL_WORDS[rng.integers(len(NEUTRAL_WORDS))]}"
        if rng.random() < 0.1:
            text += f" https://t.co/{int(rng.integers(10**6, 10**7))}"
        return text

    def run(self):
        spec, rng = self.spec, self.rng
        n = spec.n_celebrities
        handles = [f"celeb{i:03d}" for i in range(n)]
        categories = list(Category)
        cats = rng.integers(0, len(categories), size=n)
        followers = np.rint(np.exp(rng.normal(12.0, 1.2, size=n))).astype(int)
        roster = [
            CelebrityProfile(h, categories[c], int(f)) for h, c, f in zip(handles, cats, followers)
        ]
        labels = assign_buckets(roster, handles)
        bucket = {lab.handle: lab.bucket for lab in labels}

        warm = np.array([_BASE_WARM + spec.planted_effects[bucket[h]][0] for h in handles])
        warm = np.clip(warm + rng.normal(0.0, _WARM_SD, size=n), 0.0, 0.9)
        appeal = np.array([1.0 + spec.planted_effects[bucket[h]][1] for h in handles])
        appeal = appeal * np.exp(rng.normal(0.0, _APPEAL_SD, size=n))

        own = {h: [] for h in handles}
        for i, h in enumerate(handles):
            for _ in range(spec.tweets_per_celebrity):
                own[h].append(self._emit(h, self._tweet_text(warm[i])))

        # retweeters and mentioners are disjoint user pools
        for kind in ("rt", "men"):
            weights = appeal * np.exp(rng.normal(0.0, _CHANNEL_SD, size=n))
            p = weights / weights.sum()
            for u in range(spec.n_users):
                user = f"{kind}user{u:05d}"
                k = min(n, 1 + int(rng.poisson(spec.engagements_per_user - 1)))
                chosen = rng.choice(n, size=k, replace=False, p=p)
                for c in sorted(chosen.tolist()):
                    target = handles[c]
                    if kind == "rt":
                        src = own[target][int(rng.integers(len(own[target])))]
                        self._emit(user, f"RT @{target}: {src.text}", retweet_of=target)
                    else:
                        words = " ".join(self._words(int(rng.integers(3, 8)), _BASE_WARM))
                        self._emit(user, f"@{target} {words}", mentions=(target,))

        return Corpus(self.tweets, roster), labels


def generate(spec: SynthSpec) -> tuple[Corpus, list[BucketLabel]]:
    """Deterministic corpus plus ground-truth bucket labels for ``spec``."""
    return _Generator(spec).run()


def write_synthetic(spec: SynthSpec, out_dir) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus, _ = generate(spec)
    tweets, roster = out_dir / "tweets.jsonl", out_dir / "roster.csv"
    write_corpus(corpus, tweets, roster)
    return tweets, roster
