"""Co-engagement networks over the celebrity roster.

Two celebrities are linked when at least ``threshold`` distinct users engaged
with both of them: retweeted each at least once (retweet network) or
mentioned each at least once (mention network). An edge's weight is its
common-engager count divided by the sum of counts over all edges kept.
"""

from __future__ import annotations

import csv
import enum
import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .corpus import Corpus
from .exceptions import ValidationError

EDGE_HEADER = ("source", "target", "raw_count", "weight")


class Flavor(str, enum.Enum):
    RETWEET = "retweet"
    MENTION = "mention"


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    raw_count: int
    weight: float


@dataclass(frozen=True)
class EngagementGraph:
    """Weighted undirected graph; edges stored once with ``source < target``."""

    flavor: Flavor
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    threshold: int

    def __post_init__(self):
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.threshold < 1:
            raise ValidationError("threshold must be >= 1")
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise ValidationError("duplicate node")
        seen = set()
        for e in self.edges:
            if e.source == e.target:
                raise ValidationError(f"self-loop on {e.source!r}")
            key = frozenset((e.source, e.target))
            if key in seen:
                raise ValidationError(f"parallel edge {e.source!r}-{e.target!r}")
            seen.add(key)
            if e.source not in node_set or e.target not in node_set:
                raise ValidationError(f"edge endpoint not in nodes: {e.source!r}-{e.target!r}")

    @classmethod
    def from_counts(cls, flavor, counts: dict, threshold: int, nodes: Iterable[str] | None = None):
        """Build from ``{(a, b): raw_count}``, keeping pairs at or above threshold.

        Extra ``nodes`` (e.g. isolated ones) may be supplied; otherwise only
        endpoints of kept edges become nodes.
        """
        kept = {}
        for (a, b), n in counts.items():
            if n >= threshold:
                a, b = (a, b) if a < b else (b, a)
                kept[(a, b)] = kept.get((a, b), 0) + n
        total = sum(kept.values())
        edges = tuple(
            Edge(a, b, n, n / total) for (a, b), n in sorted(kept.items())
        )
        node_set = {x for pair in kept for x in pair}
        if nodes is not None:
            node_set.update(nodes)
        return cls(flavor, tuple(sorted(node_set)), edges, threshold)

    def adjacency(self) -> dict[str, set[str]]:
        adj = {v: set() for v in self.nodes}
        for e in self.edges:
            adj[e.source].add(e.target)
            adj[e.target].add(e.source)
        return adj

    def raw_counts(self) -> dict[tuple[str, str], int]:
        return {(e.source, e.target): e.raw_count for e in self.edges}


def _pair_counts(engaged: dict[str, set[str]]) -> Counter:
    counts = Counter()
    for targets in engaged.values():
        if len(targets) > 1:
            counts.update(combinations(sorted(targets), 2))
    return counts


def retweet_pair_counts(corpus: Corpus) -> Counter:
    """``(a, b) -> number of users who retweeted both a and b`` (a < b)."""
    roster = corpus.handles
    engaged = defaultdict(set)
    for t in corpus.tweets:
        if t.retweet_of in roster and t.retweet_of != t.author:
            engaged[t.author].add(t.retweet_of)
    return _pair_counts(engaged)


def mention_pair_counts(
    corpus: Corpus, distinct_tweets: bool = False, include_roster_engagers: bool = False
) -> Counter:
    """``(a, b) -> number of users who mentioned both a and b`` (a < b).

    Tweets authored by roster celebrities are skipped unless
    ``include_roster_engagers``. With ``distinct_tweets`` a user mentioning a
    and b only together in one single tweet does not count for that pair.
    """
    roster = corpus.handles
    # user -> celebrity -> ids of the user's tweets mentioning that celebrity
    mentioned = defaultdict(lambda: defaultdict(set))
    for t in corpus.tweets:
        if not include_roster_engagers and t.author in roster:
            continue
        for h in t.mentions:
            if h in roster and h != t.author:
                mentioned[t.author][h].add(t.id)
    if not distinct_tweets:
        return _pair_counts({u: set(m) for u, m in mentioned.items()})
    counts = Counter()
    for per_celeb in mentioned.values():
        for a, b in combinations(sorted(per_celeb), 2):
            ta, tb = per_celeb[a], per_celeb[b]
            if not (len(ta) == 1 and ta == tb):
                counts[(a, b)] += 1
    return counts


def build_retweet_graph(corpus: Corpus, threshold: int = 5) -> EngagementGraph:
    if threshold < 1:
        raise ValidationError("threshold must be >= 1")
    return EngagementGraph.from_counts(Flavor.RETWEET, retweet_pair_counts(corpus), threshold)


def build_mention_graph(
    corpus: Corpus,
    threshold: int = 5,
    distinct_tweets: bool = False,
    include_roster_engagers: bool = False,
) -> EngagementGraph:
    if threshold < 1:
        raise ValidationError("threshold must be >= 1")
    counts = mention_pair_counts(corpus, distinct_tweets, include_roster_engagers)
    return EngagementGraph.from_counts(Flavor.MENTION, counts, threshold)


def common_nodes(g1: EngagementGraph, g2: EngagementGraph) -> set[str]:
    return set(g1.nodes) & set(g2.nodes)


# -- export ------------------------------------------------------------------


def graph_header(graph: EngagementGraph) -> dict:
    return {
        "flavor": graph.flavor.value,
        "threshold": graph.threshold,
        "node_count": len(graph.nodes),
        "edge_count": len(graph.edges),
    }


def write_graph_csv(graph: EngagementGraph, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(EDGE_HEADER)
    for e in graph.edges:
        writer.writerow([e.source, e.target, e.raw_count, repr(e.weight)])


def save_graph(graph: EngagementGraph, path) -> tuple[Path, Path]:
    """Write ``path`` (edge CSV) and ``path`` with a ``.json`` suffix (header)."""
    path = Path(path)
    header_path = path.with_suffix(".json")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_graph_csv(graph, fh)
    with open(header_path, "w", encoding="utf-8") as fh:
        json.dump(graph_header(graph), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path, header_path


def load_graph(path) -> EngagementGraph:
    path = Path(path)
    with open(path.with_suffix(".json"), encoding="utf-8") as fh:
        header = json.load(fh)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != EDGE_HEADER:
            raise ValidationError(f"{path}: edge header must be {','.join(EDGE_HEADER)}")
        counts = {(r["source"], r["target"]): int(r["raw_count"]) for r in reader}
    graph = EngagementGraph.from_counts(header["flavor"], counts, int(header["threshold"]))
    if len(graph.nodes) != header["node_count"] or len(graph.edges) != header["edge_count"]:
        raise ValidationError(f"{path}: header counts do not match edge list")
    return graph
