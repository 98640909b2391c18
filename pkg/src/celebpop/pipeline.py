"""End-to-end analysis: graphs, feature matrices, correlations, CV grid, report."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .centrality import CENTRALITY_MEASURES, centrality_report
from .classify import (
    BUCKETS,
    CLASSIFIER_LABELS,
    CLASSIFIERS,
    FeatureMatrix,
    assign_buckets,
    cross_validate,
    feature_subsets,
    make_classifier,
    select_subset,
)
from .corpus import Category, Corpus, default_stopwords, load_corpus, read_word_list, retweet_density_table
from .exceptions import UndefinedProfileError, ValidationError
from .graph import EngagementGraph, build_mention_graph, build_retweet_graph, common_nodes
from .lexicon import (
    default_dictionary,
    default_lexicon,
    default_sentiment_lexicon,
    load_lexicon,
    load_sentiment_lexicon,
)
from .linguistic import LinguisticOptions, liwc_feature, linguistic_profile
from .stats import (
    aggregate_by_bucket,
    buckets_markdown,
    correlation_report,
    correlations_markdown,
    markdown_table,
)
from .tagger import RuleTagger

logger = logging.getLogger(__name__)

NETWORK_PREFIX = {"retweet": "rt", "mention": "men"}


@dataclass
class PipelineConfig:
    tweets: str | None = None
    roster: str | None = None
    lexicon: str | None = None
    sentiment: str | None = None
    dictionary: str | None = None
    stopwords: str | None = None
    threshold: int = 5
    damping: float = 0.85
    seed: int = 42
    k_folds: int = 10
    weighted: bool = False
    distinct_tweets: bool = False
    include_roster_engagers: bool = False
    per_tweet_mean: bool = False
    log_base: float | None = None

    def __post_init__(self):
        if self.threshold < 1:
            raise ValidationError("threshold must be >= 1")
        if not 0 < self.damping < 1:
            raise ValidationError("damping must lie in (0, 1)")
        if self.k_folds < 2:
            raise ValidationError("k_folds must be >= 2")
        if self.log_base is not None and (self.log_base <= 0 or self.log_base == 1):
            raise ValidationError("log_base must be positive and not 1")


@dataclass
class Resources:
    lexicon: object
    sentiment: object
    dictionary: frozenset
    stopwords: frozenset
    tagger: object = field(default_factory=RuleTagger)

    @classmethod
    def from_config(cls, cfg: PipelineConfig) -> "Resources":
        return cls(
            lexicon=load_lexicon(cfg.lexicon) if cfg.lexicon else default_lexicon(),
            sentiment=load_sentiment_lexicon(cfg.sentiment) if cfg.sentiment else default_sentiment_lexicon(),
            dictionary=read_word_list(cfg.dictionary) if cfg.dictionary else default_dictionary(),
            stopwords=read_word_list(cfg.stopwords) if cfg.stopwords else default_stopwords(),
        )


def load_from_config(cfg: PipelineConfig) -> Corpus:
    if not cfg.tweets or not cfg.roster:
        raise ValidationError("both tweets and roster paths are required")
    return load_corpus(cfg.tweets, cfg.roster)


def build_graphs(corpus: Corpus, cfg: PipelineConfig) -> dict[str, EngagementGraph]:
    return {
        "retweet": build_retweet_graph(corpus, cfg.threshold),
        "mention": build_mention_graph(
            corpus, cfg.threshold, cfg.distinct_tweets, cfg.include_roster_engagers
        ),
    }


def network_features(graphs: dict[str, EngagementGraph], cfg: PipelineConfig) -> FeatureMatrix:
    """Five centralities per network for celebrities present in both networks."""
    shared = sorted(common_nodes(graphs["retweet"], graphs["mention"]))
    rows = {h: {} for h in shared}
    names = []
    for flavor, graph in graphs.items():
        prefix = NETWORK_PREFIX[flavor]
        names += [f"{prefix}_{m}" for m in CENTRALITY_MEASURES]
        for vec in centrality_report(graph, cfg.damping, cfg.weighted):
            if vec.handle in rows:
                for m in CENTRALITY_MEASURES:
                    rows[vec.handle][f"{prefix}_{m}"] = float(getattr(vec, m))
    return FeatureMatrix.from_rows(rows, names)


def linguistic_features(
    corpus: Corpus, handles, resources: Resources, cfg: PipelineConfig
) -> FeatureMatrix:
    """Linguistic profile per handle; celebrities without usable text are skipped."""
    options = LinguisticOptions(per_tweet_mean=cfg.per_tweet_mean, log_base=cfg.log_base)
    rows = {}
    for h in handles:
        try:
            prof = linguistic_profile(
                corpus, h, resources.lexicon, resources.sentiment, resources.dictionary,
                resources.tagger, resources.stopwords, options,
            )
        except UndefinedProfileError:
            logger.warning("%s: no usable text, excluded from linguistic features", h)
            continue
        rows[h] = prof.as_features()
    if not rows:
        raise ValidationError("no celebrity has a linguistic profile")
    return FeatureMatrix.from_rows(rows)


@dataclass
class Analysis:
    corpus: Corpus
    graphs: dict
    features: FeatureMatrix
    labels: list
    followers: dict


def analyse(corpus: Corpus, cfg: PipelineConfig, resources: Resources | None = None) -> Analysis:
    """Graphs, the joint feature matrix and bucket labels for classification.

    Eligible celebrities are those in both networks with a linguistic profile.
    """
    resources = resources or Resources.from_config(cfg)
    graphs = build_graphs(corpus, cfg)
    net = network_features(graphs, cfg)
    ling = linguistic_features(corpus, net.handles, resources, cfg)
    net = net.rows(ling.handles)
    features = net.hstack(ling)
    labels = assign_buckets(corpus.roster, features.handles)
    followers = {p.handle: p.followers_future for p in corpus.roster}
    return Analysis(corpus, graphs, features, labels, followers)


def labels_for(analysis: Analysis) -> list[str]:
    by_handle = {lab.handle: lab.bucket for lab in analysis.labels}
    return [by_handle[h] for h in analysis.features.handles]


def run_cv(analysis: Analysis, subset: str, classifier: str, cfg: PipelineConfig):
    X = select_subset(analysis.features, subset)
    return cross_validate(
        make_classifier(classifier, cfg.seed),
        X,
        labels_for(analysis),
        k=cfg.k_folds,
        seed=cfg.seed,
        classifier_name=classifier,
        feature_set=subset,
    )


def accuracy_grid(analysis: Analysis, cfg: PipelineConfig, classifiers=None) -> dict:
    """``{subset: {classifier: CvReport}}`` over every named subset."""
    classifiers = classifiers or list(CLASSIFIERS)
    return {
        subset: {clf: run_cv(analysis, subset, clf, cfg) for clf in classifiers}
        for subset in feature_subsets()
    }


# -- report ------------------------------------------------------------------

SUBSET_TITLES = {
    "all-network": "Accuracy of classifiers using all network features",
    "few-network": "Accuracy of classifiers using the highly correlating network features",
    "all-linguistic": "Accuracy using all linguistic features",
    "liwc-only": "Accuracy using only the lexicon category features",
    "linguistic-no-liwc": "Accuracy using linguistic features other than lexicon categories",
    "handpicked-linguistic": "Accuracy using the handpicked lexicon categories",
    "combined": "Accuracy using a mix of network and linguistic features",
}


def render_report(analysis: Analysis, cfg: PipelineConfig, grid: dict | None = None) -> str:
    corpus = analysis.corpus
    features = analysis.features
    target = analysis.followers
    grid = grid if grid is not None else accuracy_grid(analysis, cfg)
    parts = ["# Follower-bucket analysis report\n"]

    ard = retweet_density_table(corpus)
    n_celeb_tweets = sum(1 for t in corpus.tweets if t.author in corpus.handles)
    parts.append("## Corpus\n")
    parts.append(
        markdown_table(
            ["Statistic", "Value"],
            [
                ("tweets", str(len(corpus.tweets))),
                ("tweets by celebrities", str(n_celeb_tweets)),
                ("dropped records", str(corpus.dropped)),
                ("celebrities", str(len(corpus.roster))),
            ]
            + [
                (f"{g.flavor.value} network", f"{len(g.nodes)} nodes, {len(g.edges)} edges")
                for g in analysis.graphs.values()
            ]
            + [("celebrities classified", str(len(features.handles)))],
        )
    )
    parts.append("\n### Average retweet density by category\n")
    parts.append(markdown_table(["Category", "ARD"], [(c.value, v) for c, v in ard.items()]))

    counts = {b: sum(1 for lab in analysis.labels if lab.bucket == b) for b in BUCKETS}
    parts.append("\n### Bucket sizes\n")
    parts.append(markdown_table(["Bucket", "Celebrities"], [(b, str(n)) for b, n in counts.items()]))

    # network correlations, one column per network
    parts.append("\n## Spearman correlation of network features with follower count\n")
    rows = []
    for m in CENTRALITY_MEASURES:
        rhos = {e.feature: e.rho for e in correlation_report(features.select([f"rt_{m}", f"men_{m}"]), target)}
        rows.append((m, rhos.get(f"rt_{m}"), rhos.get(f"men_{m}")))
    parts.append(markdown_table(["Feature", "rho_rt", "rho_men"], rows))

    liwc = correlation_report(features.select(lambda f: f.startswith("liwc_")), target)
    parts.append("\n## Lexicon categories with the highest correlation\n")
    parts.append(correlations_markdown(liwc[:10], "Category"))
    parts.append("\n## Lexicon categories with the lowest correlation\n")
    parts.append(correlations_markdown(sorted(liwc, key=lambda e: (abs(e.rho), e.feature))[:10], "Category"))

    other = correlation_report(features.select(lambda f: not f.startswith(("rt_", "men_", "liwc_"))), target)
    parts.append("\n## Spearman correlation of other linguistic features with follower count\n")
    parts.append(correlations_markdown(other))

    parts.append("\n## Classification accuracy (stratified %d-fold CV, seed %d)\n" % (cfg.k_folds, cfg.seed))
    classifiers = list(next(iter(grid.values())))
    parts.append(
        markdown_table(
            ["Feature set", *(CLASSIFIER_LABELS.get(c, c) for c in classifiers)],
            [(s, *(grid[s][c].mean_accuracy for c in classifiers)) for s in grid],
            digits=3,
        )
    )
    for subset, reports in grid.items():
        parts.append(f"\n### {SUBSET_TITLES.get(subset, subset)}\n")
        parts.append(
            markdown_table(
                ["Classifier", "Accuracy"],
                [(CLASSIFIER_LABELS.get(c, c), r.mean_accuracy) for c, r in reports.items()],
                digits=3,
            )
        )

    agg = aggregate_by_bucket(features, analysis.labels)
    sections = [
        ("Bucket-wise average network centrality", [f for f in features.feature_names if f.startswith(("rt_", "men_"))], 3),
        ("Bucket-wise proportion of in-vocabulary words", ["in_vocab"], 3),
        ("Bucket-wise average sentiment", ["sent_pos", "sent_neg", "sent_neu", "sent_comp"], 3),
        ("Bucket-wise average POS tag entropy", ["pos_entropy"], 3),
        ("Bucket-wise average style features", ["ttr", "cpw", "wps", "p1", "p2", "p3", "it"], 3),
        ("Bucket-wise average readability", ["ari"], 2),
        ("Bucket-wise average lexicon category density", [f for f in features.feature_names if f.startswith("liwc_")], 4),
    ]
    parts.append("\n## Bucket-wise aggregates\n")
    for title, names, digits in sections:
        parts.append(f"\n### {title}\n")
        parts.append(buckets_markdown(agg, names, digits))
    return "".join(parts)
