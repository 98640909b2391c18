"""Node centrality measures on an engagement graph.

All measures use the unweighted topology; only ``pagerank(weighted=True)``
looks at edge weights.
"""

from __future__ import annotations

import csv
import warnings
from collections import deque
from dataclasses import astuple, dataclass, fields

import numpy as np

from .exceptions import ConvergenceWarning
from .graph import EngagementGraph

REPORT_HEADER = ("handle", "c_bet", "c_clo", "c_deg", "clust_coff", "c_pr")


@dataclass(frozen=True)
class CentralityVector:
    handle: str
    c_bet: float
    c_clo: float
    c_deg: int
    clust_coff: float
    c_pr: float


def _bfs_distances(adj, source):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def betweenness(graph: EngagementGraph) -> dict[str, float]:
    """Brandes betweenness, unnormalised, each unordered pair counted once."""
    adj = graph.adjacency()
    bet = dict.fromkeys(graph.nodes, 0.0)
    for s in graph.nodes:
        stack = []
        preds = {v: [] for v in adj}
        sigma = dict.fromkeys(adj, 0)
        sigma[s] = 1
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            dv = dist[v] + 1
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(stack, 0.0)
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                bet[w] += delta[w]
    # every undirected pair was visited from both ends
    return {v: b / 2.0 for v, b in bet.items()}


def closeness(graph: EngagementGraph) -> dict[str, float]:
    """Closeness scaled by the reachable fraction (Wasserman-Faust).

    For ``r`` reachable nodes at total distance ``s`` in a graph of ``n``
    nodes: ``(r / (n - 1)) * (r / s)``; 0 when nothing is reachable.
    """
    adj = graph.adjacency()
    n = len(graph.nodes)
    out = {}
    for v in graph.nodes:
        dist = _bfs_distances(adj, v)
        r = len(dist) - 1
        s = sum(dist.values())
        out[v] = (r / (n - 1)) * (r / s) if r > 0 else 0.0
    return out


def degree(graph: EngagementGraph) -> dict[str, int]:
    return {v: len(nbrs) for v, nbrs in graph.adjacency().items()}


def clustering_coefficient(graph: EngagementGraph) -> dict[str, float]:
    """Local clustering: triangles through v over C(deg(v), 2); 0 below degree 2."""
    adj = graph.adjacency()
    out = {}
    for v, nbrs in adj.items():
        k = len(nbrs)
        if k < 2:
            out[v] = 0.0
            continue
        links = sum(len(adj[u] & nbrs) for u in nbrs) // 2
        out[v] = links / (k * (k - 1) / 2)
    return out


def pagerank(
    graph: EngagementGraph,
    damping: float = 0.85,
    tol: float = 1e-10,
    max_iter: int = 200,
    weighted: bool = False,
) -> dict[str, float]:
    """PageRank by power iteration; each undirected edge is a pair of arcs.

    Dangling (isolated) nodes spread their mass uniformly. Stops when the L1
    change drops below ``tol``; otherwise warns with ``ConvergenceWarning``
    and returns the last iterate.
    """
    nodes = graph.nodes
    n = len(nodes)
    if n == 0:
        return {}
    index = {v: i for i, v in enumerate(nodes)}
    src = np.array([index[e.source] for e in graph.edges] + [index[e.target] for e in graph.edges], dtype=int)
    dst = np.array([index[e.target] for e in graph.edges] + [index[e.source] for e in graph.edges], dtype=int)
    if weighted:
        w = np.array([e.weight for e in graph.edges] * 2, dtype=float)
    else:
        w = np.ones(len(src), dtype=float)
    out_strength = np.bincount(src, weights=w, minlength=n)
    dangling = out_strength == 0
    share = np.divide(w, out_strength[src], out=np.zeros_like(w), where=out_strength[src] > 0)

    x = np.full(n, 1.0 / n)
    converged = False
    for _ in range(max_iter):
        flow = np.bincount(dst, weights=x[src] * share, minlength=n)
        x_new = damping * (flow + x[dangling].sum() / n) + (1.0 - damping) / n
        x_new /= x_new.sum()
        change = np.abs(x_new - x).sum()
        x = x_new
        if change < tol:
            converged = True
            break
    if not converged:
        warnings.warn(
            f"pagerank did not converge in {max_iter} iterations", ConvergenceWarning, stacklevel=2
        )
    return {v: float(x[i]) for i, v in enumerate(nodes)}


def centrality_report(
    graph: EngagementGraph, damping: float = 0.85, weighted: bool = False
) -> list[CentralityVector]:
    """The five measures for every node, ordered by handle."""
    if not graph.nodes:
        return []
    bet = betweenness(graph)
    clo = closeness(graph)
    deg = degree(graph)
    clust = clustering_coefficient(graph)
    pr = pagerank(graph, damping=damping, weighted=weighted)
    return [
        CentralityVector(v, bet[v], clo[v], deg[v], clust[v], pr[v])
        for v in sorted(graph.nodes)
    ]


CENTRALITY_MEASURES = tuple(f.name for f in fields(CentralityVector))[1:]


def write_report_csv(report: list[CentralityVector], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    for vec in report:
        handle, *values = astuple(vec)
        writer.writerow([handle, *(f"{v:.10g}" for v in values)])
