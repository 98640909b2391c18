"""Command-line driver.

Subcommands::

    celebpop ingest       corpus summary and per-category average retweet density
    celebpop graph        export the retweet or mention network
    celebpop centrality   centrality CSV for both networks
    celebpop features     linguistic profile CSV
    celebpop correlate    per-feature Spearman rho and bucket-wise means
    celebpop classify     stratified k-fold CV of one classifier on one feature subset
    celebpop report       everything above as one markdown report
    celebpop synth        write a synthetic corpus

Exit status: 0 on success, 2 on invalid input, 1 on unexpected failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from .centrality import centrality_report, write_report_csv
from .classify import CLASSIFIERS, feature_subsets
from .corpus import retweet_density_table
from .exceptions import NotFoundError, ValidationError
from .graph import build_mention_graph, build_retweet_graph, graph_header, load_graph, save_graph, write_graph_csv
from .pipeline import (
    PipelineConfig,
    Resources,
    analyse,
    build_graphs,
    linguistic_features,
    load_from_config,
    render_report,
    run_cv,
)
from .stats import aggregate_by_bucket, buckets_markdown, correlation_report, write_correlations_csv
from .synth import SynthSpec, planted_spec, write_synthetic

logger = logging.getLogger("celebpop")

_CONFIG_FIELDS = {f.name for f in dataclasses.fields(PipelineConfig)}
_PATH_FIELDS = {"tweets", "roster", "lexicon", "sentiment", "dictionary", "stopwords"}


def _add_common(p: argparse.ArgumentParser) -> None:
    # defaults are SUPPRESS so a --config file can fill whatever is not given
    s = argparse.SUPPRESS
    g = p.add_argument_group("inputs")
    g.add_argument("--config", type=Path, help="JSON config; explicit flags override it")
    g.add_argument("--tweets", default=s, help="JSONL tweets file")
    g.add_argument("--roster", default=s, help="roster CSV (handle,category,followers_future)")
    g.add_argument("--lexicon", default=s, help="category lexicon JSON (default: bundled demo)")
    g.add_argument("--sentiment", default=s, help="valence lexicon TSV (default: bundled)")
    g.add_argument("--dictionary", default=s, help="in-vocabulary word list (default: bundled)")
    g.add_argument("--stopwords", default=s, help="stopword list (default: bundled)")
    o = p.add_argument_group("options")
    o.add_argument("--threshold", type=int, default=s, help="minimum common engagers per edge (5)")
    o.add_argument("--damping", type=float, default=s, help="PageRank damping (0.85)")
    o.add_argument("--seed", type=int, default=s, help="random seed (42)")
    o.add_argument("--k-folds", dest="k_folds", type=int, default=s, help="CV folds (10)")
    o.add_argument("--weighted", action="store_true", default=s, help="weighted PageRank")
    o.add_argument("--distinct-tweets", dest="distinct_tweets", action="store_true", default=s,
                   help="common mentioners must mention the pair in different tweets")
    o.add_argument("--include-roster-engagers", dest="include_roster_engagers", action="store_true",
                   default=s, help="count mentions written by roster celebrities")
    o.add_argument("--per-tweet-mean", dest="per_tweet_mean", action="store_true", default=s,
                   help="average sentiment per tweet instead of pooling tokens")
    o.add_argument("--log-base", dest="log_base", type=float, default=s,
                   help="log base for POS entropy (default: e)")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="celebpop", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate inputs and summarise the corpus")
    _add_common(p)

    p = sub.add_parser("graph", help="build and export one engagement network")
    _add_common(p)
    p.add_argument("--flavor", choices=["retweet", "mention"], required=True)
    p.add_argument("--out", type=Path, help="edge CSV path; header goes to the .json sibling")

    p = sub.add_parser("centrality", help="centrality measures for both networks")
    _add_common(p)
    p.add_argument("--retweet-graph", type=Path, help="previously exported retweet edge CSV")
    p.add_argument("--mention-graph", type=Path, help="previously exported mention edge CSV")
    p.add_argument("--out-dir", type=Path, help="write {retweet,mention}_centrality.csv here")

    p = sub.add_parser("features", help="linguistic profile per celebrity")
    _add_common(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("correlate", help="Spearman rho per feature and bucket-wise means")
    _add_common(p)
    p.add_argument("--out-dir", type=Path, help="write correlations.csv and buckets.md here")

    p = sub.add_parser("classify", help="cross-validated bucket classification")
    _add_common(p)
    p.add_argument("--features", dest="subset", required=True, help=f"one of {', '.join(feature_subsets())}")
    p.add_argument("--classifier", required=True, help=f"one of {', '.join(CLASSIFIERS)}")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("report", help="full markdown report")
    _add_common(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("synth", help="write a synthetic corpus (tweets.jsonl, roster.csv)")
    p.add_argument("--spec", type=Path, help="SynthSpec JSON (default: planted-signal preset)")
    p.add_argument("--seed", type=int, help="override the spec's seed")
    p.add_argument("--out-dir", type=Path, required=True)
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    values = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - _CONFIG_FIELDS
        if unknown:
            raise ValidationError(f"{args.config}: unknown config keys {sorted(unknown)}")
        base = args.config.parent
        for key in _PATH_FIELDS & loaded.keys():
            if loaded[key] is not None:
                loaded[key] = str(base / loaded[key])
        values.update(loaded)
    values.update({k: v for k, v in vars(args).items() if k in _CONFIG_FIELDS})
    return PipelineConfig(**values)


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def cmd_ingest(args, cfg):
    corpus = load_from_config(cfg)
    celeb_tweets = sum(1 for t in corpus.tweets if t.author in corpus.handles)
    out = sys.stdout
    out.write("statistic,value\n")
    out.write(f"tweets,{len(corpus.tweets)}\n")
    out.write(f"celebrity_tweets,{celeb_tweets}\n")
    out.write(f"dropped,{corpus.dropped}\n")
    out.write(f"celebrities,{len(corpus.roster)}\n\n")
    out.write("category,ard\n")
    for cat, ard in retweet_density_table(corpus).items():
        out.write(f"{cat.value},{(ard or 0.0):.6f}\n")


def cmd_graph(args, cfg):
    corpus = load_from_config(cfg)
    if args.flavor == "retweet":
        graph = build_retweet_graph(corpus, cfg.threshold)
    else:
        graph = build_mention_graph(corpus, cfg.threshold, cfg.distinct_tweets, cfg.include_roster_engagers)
    if args.out:
        save_graph(graph, args.out)
    else:
        sys.stdout.write(json.dumps(graph_header(graph), sort_keys=True) + "\n")
        write_graph_csv(graph, sys.stdout)


def cmd_centrality(args, cfg):
    if args.retweet_graph and args.mention_graph:
        graphs = {"retweet": load_graph(args.retweet_graph), "mention": load_graph(args.mention_graph)}
    else:
        graphs = build_graphs(load_from_config(cfg), cfg)
    for flavor, graph in graphs.items():
        report = centrality_report(graph, cfg.damping, cfg.weighted)
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            with _output(args.out_dir / f"{flavor}_centrality.csv") as fh:
                write_report_csv(report, fh)
        else:
            sys.stdout.write(f"# {flavor}\n")
            write_report_csv(report, sys.stdout)


def cmd_features(args, cfg):
    corpus = load_from_config(cfg)
    handles = sorted(corpus.handles)
    features = linguistic_features(corpus, handles, Resources.from_config(cfg), cfg)
    with _output(args.out) as fh:
        features.to_csv(fh, digits=6)


def cmd_correlate(args, cfg):
    analysis = analyse(load_from_config(cfg), cfg)
    entries = correlation_report(analysis.features, analysis.followers)
    tables = buckets_markdown(aggregate_by_bucket(analysis.features, analysis.labels), digits=4)
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        with _output(args.out_dir / "correlations.csv") as fh:
            write_correlations_csv(entries, fh)
        with _output(args.out_dir / "buckets.md") as fh:
            fh.write(tables)
    else:
        write_correlations_csv(entries, sys.stdout)
        sys.stdout.write("\n" + tables)


def cmd_classify(args, cfg):
    if args.subset not in feature_subsets():
        raise ValidationError(f"unknown feature subset {args.subset!r}; choose from {', '.join(feature_subsets())}")
    if args.classifier not in CLASSIFIERS:
        raise ValidationError(f"unknown classifier {args.classifier!r}; choose from {', '.join(CLASSIFIERS)}")
    analysis = analyse(load_from_config(cfg), cfg)
    report = run_cv(analysis, args.subset, args.classifier, cfg)
    with _output(args.out) as fh:
        fh.write(report.to_json() + "\n")
    if args.out:
        print(f"{args.classifier} on {args.subset}: mean accuracy {report.mean_accuracy:.4f}")
        print("folds: " + " ".join(f"{a:.3f}" for a in report.fold_accuracies))


def cmd_report(args, cfg):
    analysis = analyse(load_from_config(cfg), cfg)
    text = render_report(analysis, cfg)
    with _output(args.out) as fh:
        fh.write(text)


def cmd_synth(args):
    spec = SynthSpec.from_json(args.spec) if args.spec else planted_spec()
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    tweets, roster = write_synthetic(spec, args.out_dir)
    print(f"wrote {tweets} and {roster}")


COMMANDS = {
    "ingest": cmd_ingest,
    "graph": cmd_graph,
    "centrality": cmd_centrality,
    "features": cmd_features,
    "correlate": cmd_correlate,
    "classify": cmd_classify,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "synth":
            cmd_synth(args)
        else:
            COMMANDS[args.command](args, config_from_args(args))
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    except (ValidationError, NotFoundError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"celebpop: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        logger.exception("internal error")
        print(f"celebpop: internal error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
