"""Rank lists, Spearman correlation and bucket-wise aggregates."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exceptions import UndefinedCorrelationError, ValidationError


@dataclass(frozen=True)
class RankList:
    """Celebrities with a value each and their descending average ranks.

    Rank 1 is the largest value; tied values share the mean of the ranks
    they span.
    """

    entries: tuple[tuple[str, float], ...]
    ranks: tuple[float, ...]

    def as_dict(self) -> dict[str, float]:
        return {h: r for (h, _), r in zip(self.entries, self.ranks)}


@dataclass(frozen=True)
class CorrelationEntry:
    feature: str
    rho: float


def rank(values: Iterable[tuple[str, float]]) -> RankList:
    entries = tuple((str(h), float(v)) for h, v in values)
    if len({h for h, _ in entries}) != len(entries):
        raise ValidationError("duplicate handle in rank list")
    if any(math.isnan(v) for _, v in entries):
        raise ValidationError("cannot rank NaN values")
    order = sorted(range(len(entries)), key=lambda i: -entries[i][1])
    ranks = [0.0] * len(entries)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and entries[order[j + 1]][1] == entries[order[i]][1]:
            j += 1
        # positions i..j (0-based) hold ranks i+1..j+1
        shared = (i + j + 2) / 2
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return RankList(entries, tuple(ranks))


def spearman(x: RankList, y: RankList) -> float:
    """Pearson correlation of the two rank vectors, paired by handle."""
    rx, ry = x.as_dict(), y.as_dict()
    if rx.keys() != ry.keys():
        raise ValidationError("rank lists cover different handles")
    n = len(rx)
    if n < 2:
        raise ValidationError("spearman needs at least two items")
    handles = sorted(rx)
    # ranks are exact halves, so work in rationals and only round at the end
    a = [Fraction(rx[h]) for h in handles]
    b = [Fraction(ry[h]) for h in handles]
    ma, mb = sum(a) / n, sum(b) / n
    sab = sum((p - ma) * (q - mb) for p, q in zip(a, b))
    saa = sum((p - ma) ** 2 for p in a)
    sbb = sum((q - mb) ** 2 for q in b)
    if saa == 0 or sbb == 0:
        raise UndefinedCorrelationError("rank correlation undefined for a constant list")
    # squared correlation is an exact rational and symmetric in x and y
    rho = math.copysign(math.sqrt(float(sab * sab / (saa * sbb))), sab)
    return max(-1.0, min(1.0, rho))


def spearman_values(x: Sequence[float], y: Sequence[float]) -> float:
    """Convenience: Spearman rho of two aligned value sequences."""
    if len(x) != len(y):
        raise ValidationError("sequences differ in length")
    keys = [str(i) for i in range(len(x))]
    return spearman(rank(zip(keys, x)), rank(zip(keys, y)))


def correlation_report(features, target: Mapping[str, float]) -> list[CorrelationEntry]:
    """Spearman rho of every feature column against ``target[handle]``.

    Sorted by ``|rho|`` descending, then feature name. Constant columns have
    no defined correlation and are left out.
    """
    target_ranks = rank((h, target[h]) for h in features.handles)
    out = []
    for j, name in enumerate(features.feature_names):
        col = rank(zip(features.handles, features.values[:, j]))
        try:
            rho = spearman(col, target_ranks)
        except UndefinedCorrelationError:
            continue
        out.append(CorrelationEntry(name, rho))
    out.sort(key=lambda e: (-abs(e.rho), e.feature))
    return out


def aggregate_by_bucket(features, labels) -> dict[str, dict[str, float | None]]:
    """Mean of each feature within each bucket.

    ``labels`` is a sequence of ``BucketLabel`` or a ``{handle: bucket}``
    mapping. Buckets with no rows map every feature to ``None``.
    """
    from .classify import BUCKETS

    if not isinstance(labels, Mapping):
        labels = {lab.handle: lab.bucket for lab in labels}
    labels = {h: str(b) for h, b in labels.items()}
    missing = [h for h in features.handles if h not in labels]
    if missing:
        raise ValidationError(f"no bucket label for {missing[:5]}")
    row_bucket = np.array([labels[h] for h in features.handles])
    out = {}
    for bucket in BUCKETS:
        mask = row_bucket == bucket
        if not mask.any():
            out[bucket] = dict.fromkeys(features.feature_names)
            continue
        means = features.values[mask].mean(axis=0)
        out[bucket] = {name: float(m) for name, m in zip(features.feature_names, means)}
    return out


def write_correlations_csv(entries: Sequence[CorrelationEntry], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["feature", "rho"])
    for e in entries:
        writer.writerow([e.feature, f"{e.rho:.6f}"])


def _fmt(v, digits):
    if v is None:
        return "n/a"
    if isinstance(v, str):
        return v
    return f"{v:.{digits}f}"


def markdown_table(header: Sequence[str], rows: Iterable[Sequence], digits: int = 2) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(_fmt(v, digits) for v in row) + " |")
    return "\n".join(lines) + "\n"


def correlations_markdown(entries: Sequence[CorrelationEntry], label: str = "Feature") -> str:
    return markdown_table([label, "rho"], [(e.feature, e.rho) for e in entries])


def buckets_markdown(aggregates: Mapping[str, Mapping[str, float | None]], features=None, digits=2) -> str:
    buckets = list(aggregates)
    names = features or list(next(iter(aggregates.values())))
    rows = [(name, *(aggregates[b][name] for b in buckets)) for name in names]
    return markdown_table(["Feature", *buckets], rows, digits)
