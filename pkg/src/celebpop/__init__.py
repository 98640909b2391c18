"""Follower-bucket analysis of celebrities from co-engagement networks and tweet text."""

from .centrality import (
    CentralityVector,
    betweenness,
    centrality_report,
    closeness,
    clustering_coefficient,
    degree,
    pagerank,
)
from .classify import (
    BUCKETS,
    BucketLabel,
    CvReport,
    FeatureMatrix,
    GaussianNB,
    RandomForest,
    SGDLogistic,
    StratifiedKFold,
    assign_buckets,
    cross_validate,
    feature_subsets,
    make_classifier,
    select_subset,
)
from .corpus import (
    Category,
    CelebrityProfile,
    Corpus,
    TweetRecord,
    average_retweet_density,
    celebrity_tweets,
    load_corpus,
    preprocess_text,
    write_corpus,
)
from .exceptions import (
    ConvergenceWarning,
    NotFoundError,
    UndefinedCorrelationError,
    UndefinedDensityError,
    UndefinedProfileError,
    ValidationError,
)
from .graph import EngagementGraph, build_mention_graph, build_retweet_graph, common_nodes
from .lexicon import Lexicon, SentimentLexicon, load_lexicon, load_sentiment_lexicon
from .linguistic import (
    LinguisticFeaturizer,
    LinguisticProfile,
    ari,
    category_density,
    in_vocab_proportion,
    linguistic_profile,
    pos_entropy,
    sentiment,
    style_features,
)
from .pipeline import PipelineConfig, analyse, render_report
from .porter import porter_stem
from .stats import RankList, aggregate_by_bucket, correlation_report, rank, spearman
from .synth import SynthSpec, generate, planted_spec
from .tagger import RuleTagger

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
