import io
import math
import random
import time
import warnings
from collections import deque
from itertools import combinations

import numpy as np
import pytest

from celebpop.centrality import (
    betweenness,
    centrality_report,
    closeness,
    clustering_coefficient,
    degree,
    pagerank,
    write_report_csv,
)
from celebpop.exceptions import ConvergenceWarning
from celebpop.graph import EngagementGraph


def graph_of(edges, nodes=()):
    return EngagementGraph.from_counts("retweet", {tuple(e): 1 for e in edges}, 1, nodes=nodes)


def random_graph(seed, n_max=40, p=0.2):
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    nodes = [f"n{i:02d}" for i in range(n)]
    edges = [(a, b) for a, b in combinations(nodes, 2) if rng.random() < p]
    return graph_of(edges, nodes)


RANDOM_GRAPHS = [random_graph(seed) for seed in range(30)]


# -- independent oracles -----------------------------------------------------

def bfs(adj, s):
    dist, sigma = {s: 0}, {s: 1}
    q = deque([s])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                sigma[w] = 0
                q.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
    return dist, sigma


def naive_betweenness(graph):
    """Sum over unordered pairs s,t of the fraction of shortest s-t paths through v."""
    adj = graph.adjacency()
    info = {s: bfs(adj, s) for s in graph.nodes}
    out = dict.fromkeys(graph.nodes, 0.0)
    for s, t in combinations(graph.nodes, 2):
        ds, ss = info[s]
        if t not in ds:
            continue
        dt, st = info[t]
        for v in graph.nodes:
            if v in (s, t) or v not in ds or v not in dt:
                continue
            if ds[v] + dt[v] == ds[t]:
                out[v] += ss[v] * st[v] / ss[t]
    return out


def naive_closeness(graph):
    adj = graph.adjacency()
    n = len(graph.nodes)
    out = {}
    for v in graph.nodes:
        dist, _ = bfs(adj, v)
        r, s = len(dist) - 1, sum(dist.values())
        out[v] = 0.0 if r == 0 else (r / (n - 1)) * (r / s)
    return out


def naive_clustering(graph):
    adj = graph.adjacency()
    out = {}
    for v in graph.nodes:
        nb = sorted(adj[v])
        k = len(nb)
        tri = sum(1 for a, b in combinations(nb, 2) if b in adj[a])
        out[v] = 0.0 if k < 2 else tri / (k * (k - 1) / 2)
    return out


def dense_pagerank(graph, d=0.85, iters=2000):
    nodes = list(graph.nodes)
    n = len(nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    A = np.zeros((n, n))
    for e in graph.edges:
        A[idx[e.source], idx[e.target]] = A[idx[e.target], idx[e.source]] = 1
    out = A.sum(axis=1)
    # column-stochastic transition, dangling columns uniform
    M = np.where(out[:, None] > 0, A / np.where(out > 0, out, 1)[:, None], 1.0 / n).T
    G = d * M + (1 - d) / n
    x = np.full(n, 1.0 / n)
    for _ in range(iters):
        x = G @ x
    return {v: x[idx[v]] for v in nodes}


# -- spec examples ----------------------------------------------------------

PATH = graph_of([("a", "b"), ("b", "c")])
STAR = graph_of([("x", l) for l in "pqrs"])
CYCLE5 = graph_of([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("a", "e")])
K3 = graph_of([("a", "b"), ("b", "c"), ("a", "c")])
K4 = graph_of(list(combinations("abcd", 2)))
K4_MINUS = graph_of([p for p in combinations("abcd", 2) if p != ("c", "d")])
TWO_EDGES = graph_of([("a", "b"), ("c", "d")])


def test_betweenness_examples():
    assert betweenness(PATH) == {"a": 0, "b": 1, "c": 0}
    assert betweenness(STAR) == {"x": 6, "p": 0, "q": 0, "r": 0, "s": 0}
    assert all(v == pytest.approx(1.0, abs=1e-12) for v in betweenness(CYCLE5).values())


def test_closeness_examples():
    c = closeness(PATH)
    assert c["b"] == 1.0 and c["a"] == pytest.approx(2 / 3, abs=1e-15)
    assert all(v == 1.0 for v in closeness(K4).values())
    assert all(v == pytest.approx(1 / 3, abs=1e-15) for v in closeness(TWO_EDGES).values())
    assert closeness(graph_of([], ["solo"])) == {"solo": 0.0}


def test_degree_examples():
    assert degree(STAR)["x"] == 4
    assert degree(graph_of([("a", "b")], ["z"]))["z"] == 0
    assert set(degree(CYCLE5).values()) == {2}


def test_clustering_examples():
    assert set(clustering_coefficient(K3).values()) == {1.0}
    assert clustering_coefficient(PATH)["b"] == 0
    cc = clustering_coefficient(K4_MINUS)
    assert cc["a"] == cc["b"] == pytest.approx(2 / 3, abs=1e-15)
    assert cc["c"] == cc["d"] == 1.0


def test_pagerank_examples():
    assert pagerank(graph_of([("a", "b")])) == {"a": 0.5, "b": 0.5}
    assert pagerank(graph_of([], ["x"])) == {"x": 1.0}
    pr = pagerank(STAR)
    # closed form: leaf = (1 - d)/n + d * center / 4, center = (1 - d)/n + d * 4 * leaf
    d, n = 0.85, 5
    a = (1 - d) / n
    leaf = a * (1 + d / 4) / (1 - d * d)
    center = a + d * 4 * leaf
    assert pr["x"] == pytest.approx(center, abs=1e-10) and abs(pr["x"] - 0.4756) < 1e-4
    assert pr["p"] == pytest.approx(leaf, abs=1e-10) and abs(pr["p"] - 0.1311) < 1e-4


def test_report_examples():
    rep = centrality_report(K3)
    assert [v.handle for v in rep] == ["a", "b", "c"]
    for v in rep:
        assert (v.c_bet, v.c_clo, v.c_deg, v.clust_coff) == (0, 1, 2, 1)
        assert v.c_pr == pytest.approx(1 / 3, abs=1e-12)
    assert centrality_report(graph_of([])) == []
    vecs = centrality_report(CYCLE5)
    first = vecs[0]
    for v in vecs[1:]:
        for m in ("c_bet", "c_clo", "c_deg", "clust_coff", "c_pr"):
            assert getattr(v, m) == pytest.approx(getattr(first, m), abs=1e-12)


# -- oracle suite over random graphs ------------------------------------------

@pytest.mark.parametrize("seed", range(30))
def test_random_graph_against_oracles(seed):
    g = RANDOM_GRAPHS[seed]
    bet, naive_bet = betweenness(g), naive_betweenness(g)
    assert all(abs(bet[v] - naive_bet[v]) <= 1e-9 for v in g.nodes)
    assert clustering_coefficient(g) == naive_clustering(g)
    clo, naive_clo = closeness(g), naive_closeness(g)
    assert all(abs(clo[v] - naive_clo[v]) <= 1e-12 for v in g.nodes)
    pr, naive_pr = pagerank(g), dense_pagerank(g)
    assert all(abs(pr[v] - naive_pr[v]) <= 1e-8 for v in g.nodes)
    assert abs(sum(pr.values()) - 1) <= 1e-9
    adj = g.adjacency()
    assert degree(g) == {v: len(adj[v]) for v in g.nodes}


def test_pagerank_permutation_equivariant():
    for g in RANDOM_GRAPHS[:10]:
        rng = random.Random(len(g.nodes))
        names = list(g.nodes)
        perm = dict(zip(names, rng.sample(names, len(names))))
        h = graph_of([(perm[e.source], perm[e.target]) for e in g.edges], perm.values())
        pr_g, pr_h = pagerank(g), pagerank(h)
        assert all(abs(pr_g[v] - pr_h[perm[v]]) <= 1e-12 for v in names)


def test_measures_ignore_weights():
    a = EngagementGraph.from_counts("retweet", {("a", "b"): 5, ("b", "c"): 50, ("c", "d"): 7}, 5)
    b = EngagementGraph.from_counts("retweet", {("a", "b"): 9, ("b", "c"): 9, ("c", "d"): 9}, 5)
    assert centrality_report(a) == centrality_report(b)
    assert pagerank(a, weighted=True) != pagerank(b, weighted=True)
    assert sum(pagerank(a, weighted=True).values()) == pytest.approx(1, abs=1e-12)


def test_pagerank_non_convergence_warns():
    with pytest.warns(ConvergenceWarning):
        pr = pagerank(STAR, max_iter=2)
    assert sum(pr.values()) == pytest.approx(1, abs=1e-12)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        pagerank(STAR)


nx = pytest.importorskip("networkx")


@pytest.mark.parametrize("seed", range(0, 30, 3))
def test_agrees_with_networkx(seed):
    g = RANDOM_GRAPHS[seed]
    G = nx.Graph()
    G.add_nodes_from(g.nodes)
    G.add_edges_from((e.source, e.target) for e in g.edges)
    nb = nx.betweenness_centrality(G, normalized=False)
    nc = nx.clustering(G)
    ncl = nx.closeness_centrality(G, wf_improved=True)
    bet, cc, clo = betweenness(g), clustering_coefficient(g), closeness(g)
    for v in g.nodes:
        assert bet[v] == pytest.approx(nb[v], abs=1e-9)
        assert cc[v] == pytest.approx(nc[v], abs=1e-12)
        assert clo[v] == pytest.approx(ncl[v], abs=1e-12)


def test_report_csv_format():
    buf = io.StringIO()
    write_report_csv(centrality_report(PATH), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "handle,c_bet,c_clo,c_deg,clust_coff,c_pr"
    assert lines[1].startswith("a,0,0.6666666667,1,0,")
    assert [l.split(",")[0] for l in lines[1:]] == ["a", "b", "c"]


def test_suite_runtime():
    start = time.perf_counter()
    for g in RANDOM_GRAPHS:
        centrality_report(g)
    assert time.perf_counter() - start < 10
