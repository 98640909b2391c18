"""Follower-bucket labels, feature matrices and the bucket classifiers.

The estimators follow the scikit-learn protocol (``fit``/``predict``,
``get_params``/``set_params``, ``clone``-able) so they drop into pipelines
and model-selection utilities. Class order is HIGH, MID, LOW whenever the
labels are buckets; score ties go to the earlier class.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, clone
from sklearn.linear_model import SGDClassifier
from sklearn.tree import DecisionTreeClassifier
from sklearn.utils.multiclass import check_classification_targets
from sklearn.utils.validation import check_is_fitted, validate_data

from .exceptions import ValidationError

HIGH, MID, LOW = "HIGH", "MID", "LOW"
BUCKETS = (HIGH, MID, LOW)


@dataclass(frozen=True)
class BucketLabel:
    handle: str
    bucket: str

    def __post_init__(self):
        if self.bucket not in BUCKETS:
            raise ValidationError(f"unknown bucket {self.bucket!r}")


def assign_buckets(roster, eligible: Iterable[str]) -> list[BucketLabel]:
    """Split eligible celebrities into terciles by future follower count.

    Sorted by followers descending (ties: handle ascending), the first
    ``n // 3`` are HIGH, the next ``n // 3`` MID and the rest LOW. Returned
    in that sorted order.
    """
    followers = {p.handle: p.followers_future for p in roster}
    eligible = set(eligible)
    unknown = eligible - followers.keys()
    if unknown:
        raise ValidationError(f"eligible handles not in roster: {sorted(unknown)[:5]}")
    n = len(eligible)
    if n < 3:
        raise ValidationError(f"need at least 3 eligible celebrities, got {n}")
    ordered = sorted(eligible, key=lambda h: (-followers[h], h))
    third = n // 3
    return [
        BucketLabel(h, HIGH if i < third else MID if i < 2 * third else LOW)
        for i, h in enumerate(ordered)
    ]


# -- feature matrix ----------------------------------------------------------


@dataclass(frozen=True)
class FeatureMatrix:
    handles: tuple[str, ...]
    feature_names: tuple[str, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "handles", tuple(self.handles))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        values = np.asarray(self.values, dtype=float).reshape(len(self.handles), len(self.feature_names))
        if not np.isfinite(values).all():
            raise ValidationError("feature matrix has missing or non-finite entries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if len(set(self.handles)) != len(self.handles):
            raise ValidationError("duplicate handle rows")
        if len(set(self.feature_names)) != len(self.feature_names):
            raise ValidationError("duplicate feature columns")

    def __eq__(self, other):
        if not isinstance(other, FeatureMatrix):
            return NotImplemented
        return (
            self.handles == other.handles
            and self.feature_names == other.feature_names
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    @classmethod
    def from_rows(cls, rows: Mapping[str, Mapping[str, float]], feature_names=None):
        handles = sorted(rows)
        if feature_names is None:
            feature_names = list(next(iter(rows.values()))) if rows else []
        values = [[rows[h][f] for f in feature_names] for h in handles]
        return cls(handles, feature_names, np.asarray(values, dtype=float).reshape(len(handles), len(feature_names)))

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.feature_names.index(name)]

    def select(self, columns) -> "FeatureMatrix":
        """Keep columns by name list or by a ``name -> bool`` predicate."""
        if callable(columns):
            columns = [f for f in self.feature_names if columns(f)]
        idx = [self.feature_names.index(c) for c in columns]
        return FeatureMatrix(self.handles, [self.feature_names[i] for i in idx], self.values[:, idx])

    def rows(self, handles: Sequence[str]) -> "FeatureMatrix":
        pos = {h: i for i, h in enumerate(self.handles)}
        return FeatureMatrix(handles, self.feature_names, self.values[[pos[h] for h in handles]])

    def hstack(self, other: "FeatureMatrix") -> "FeatureMatrix":
        other = other.rows(self.handles)
        return FeatureMatrix(
            self.handles, self.feature_names + other.feature_names, np.hstack([self.values, other.values])
        )

    def to_csv(self, fh, digits: int = 6) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["handle", *self.feature_names])
        for h, row in zip(self.handles, self.values):
            writer.writerow([h, *(f"{v:.{digits}f}" for v in row)])

    @classmethod
    def read_csv(cls, fh) -> "FeatureMatrix":
        reader = csv.reader(fh)
        header = next(reader)
        if not header or header[0] != "handle":
            raise ValidationError("feature CSV must start with a 'handle' column")
        handles, values = [], []
        for row in reader:
            handles.append(row[0])
            values.append([float(v) for v in row[1:]])
        return cls(handles, header[1:], np.asarray(values, dtype=float).reshape(len(handles), len(header) - 1))


# -- named feature subsets ---------------------------------------------------

NETWORK_PREFIXES = ("rt_", "men_")
FEW_NETWORK_MEASURES = ("c_bet", "c_deg", "c_pr", "clust_coff")
HANDPICKED_LIWC = ("posemo", "affect", "funct", "cogmech", "social")
COMBINED_LIWC = ("affect", "funct", "cogmech", "social")


def _is_network(name):
    return name.startswith(NETWORK_PREFIXES)


def _is_few_network(name):
    return _is_network(name) and name.split("_", 1)[1] in FEW_NETWORK_MEASURES


def _is_liwc(name):
    return name.startswith("liwc_")


def feature_subsets() -> dict[str, Callable[[str], bool]]:
    """The seven column selections used in the classification experiments."""
    return {
        "all-network": _is_network,
        "few-network": _is_few_network,
        "all-linguistic": lambda f: not _is_network(f),
        "liwc-only": _is_liwc,
        "linguistic-no-liwc": lambda f: not _is_network(f) and not _is_liwc(f),
        "handpicked-linguistic": lambda f: f in {f"liwc_{c}" for c in HANDPICKED_LIWC},
        "combined": lambda f: (
            _is_few_network(f) or f in {f"liwc_{c}" for c in COMBINED_LIWC} or f == "sent_comp"
        ),
    }


def select_subset(features: FeatureMatrix, name: str) -> FeatureMatrix:
    subsets = feature_subsets()
    if name not in subsets:
        raise ValidationError(f"unknown feature subset {name!r}; choose from {sorted(subsets)}")
    selected = features.select(subsets[name])
    if not selected.feature_names:
        raise ValidationError(f"feature subset {name!r} selects no columns")
    return selected


# -- estimators --------------------------------------------------------------


def _ordered_classes(y) -> np.ndarray:
    present = set(np.unique(y).tolist())
    if present <= set(BUCKETS):
        return np.array([b for b in BUCKETS if b in present], dtype=object)
    return np.unique(y)


class _BucketClassifier(ClassifierMixin, BaseEstimator):
    def _validate_fit(self, X, y):
        X, y = validate_data(self, X, y, dtype=np.float64)
        check_classification_targets(y)
        self.classes_ = _ordered_classes(y)
        return X, y

    def _validate_predict(self, X):
        check_is_fitted(self, "classes_")
        return validate_data(self, X, dtype=np.float64, reset=False)

    def decision_scores(self, X):
        raise NotImplementedError

    def predict(self, X):
        # argmax returns the first maximum, i.e. HIGH before MID before LOW
        scores = self.decision_scores(X)
        return self.classes_[np.argmax(scores, axis=1)]


class GaussianNB(_BucketClassifier):
    """Gaussian naive Bayes.

    Per-class feature means and population variances, each variance padded by
    ``var_smoothing`` times the largest feature variance of the training set.
    """

    def __init__(self, var_smoothing=1e-9):
        self.var_smoothing = var_smoothing

    def fit(self, X, y):
        X, y = self._validate_fit(X, y)
        k, d = len(self.classes_), X.shape[1]
        self.theta_ = np.zeros((k, d))
        self.var_ = np.zeros((k, d))
        self.class_count_ = np.zeros(k)
        for i, c in enumerate(self.classes_):
            Xc = X[y == c]
            if len(Xc) < 2:
                raise ValueError(f"class {c!r} has {len(Xc)} sample(s); need at least 2 per class")
            self.theta_[i] = Xc.mean(axis=0)
            self.var_[i] = Xc.var(axis=0)
            self.class_count_[i] = len(Xc)
        floor = self.var_smoothing * X.var(axis=0).max() if d else 0.0
        if floor <= 0:
            # all-constant training data; any positive floor keeps densities finite
            floor = self.var_smoothing
        self.epsilon_ = floor
        self.var_ += floor
        self.class_prior_ = self.class_count_ / self.class_count_.sum()
        return self

    def joint_log_likelihood(self, X):
        """``ln prior_c + sum_j ln N(x_j; mu_cj, var_cj)`` for every row and class."""
        X = self._validate_predict(X)
        out = np.empty((X.shape[0], len(self.classes_)))
        for i in range(len(self.classes_)):
            norm = -0.5 * np.sum(np.log(2.0 * np.pi * self.var_[i]))
            quad = -0.5 * np.sum((X - self.theta_[i]) ** 2 / self.var_[i], axis=1)
            out[:, i] = np.log(self.class_prior_[i]) + norm + quad
        return out

    decision_scores = joint_log_likelihood


class SGDLogistic(_BucketClassifier):
    """One-vs-rest logistic regression trained by plain SGD on standardised features.

    Standardisation uses the training rows' mean and standard deviation
    (constant columns are left centred, unscaled). The per-sample updates are
    delegated to scikit-learn's ``SGDClassifier`` with a constant learning
    rate, no penalty and a fixed number of epochs.
    """

    def __init__(self, epochs=100, lr=0.01, random_state=42):
        self.epochs = epochs
        self.lr = lr
        self.random_state = random_state

    def fit(self, X, y):
        X, y = self._validate_fit(X, y)
        if len(self.classes_) < 2:
            raise ValueError("SGD logistic regression cannot fit one class; training data needs two or more")
        if len(X) < 3:
            raise ValueError("SGD logistic regression needs at least 3 training rows")
        self.mean_ = X.mean(axis=0)
        scale = X.std(axis=0)
        scale[scale == 0] = 1.0
        self.scale_ = scale
        self.sgd_ = SGDClassifier(
            loss="log_loss",
            penalty=None,
            learning_rate="constant",
            eta0=self.lr,
            max_iter=self.epochs,
            tol=None,
            shuffle=True,
            random_state=self.random_state,
        )
        self.sgd_.fit((X - self.mean_) / self.scale_, y)
        return self

    @property
    def coef_(self):
        return self.sgd_.coef_

    def decision_scores(self, X):
        X = self._validate_predict(X)
        raw = self.sgd_.decision_function((X - self.mean_) / self.scale_)
        if raw.ndim == 1:
            # binary: sklearn scores the second of its sorted classes
            raw = np.column_stack([-raw, raw])
        col = {c: i for i, c in enumerate(self.sgd_.classes_)}
        return raw[:, [col[c] for c in self.classes_]]


class RandomForest(_BucketClassifier):
    """Bagged CART trees (Gini, ``sqrt(d)`` candidate features per split), majority vote."""

    def __init__(self, n_trees=100, max_depth=8, random_state=42):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.random_state = random_state

    def fit(self, X, y):
        X, y = self._validate_fit(X, y)
        n = len(X)
        seeds = np.random.SeedSequence(self.random_state).spawn(self.n_trees)
        self.estimators_ = []
        for ss in seeds:
            rng = np.random.default_rng(ss)
            idx = rng.integers(0, n, size=n)
            tree = DecisionTreeClassifier(
                criterion="gini",
                max_depth=self.max_depth,
                max_features="sqrt",
                random_state=int(rng.integers(0, 2**31 - 1)),
            )
            tree.fit(X[idx], y[idx])
            self.estimators_.append(tree)
        return self

    def decision_scores(self, X):
        X = self._validate_predict(X)
        col = {c: i for i, c in enumerate(self.classes_)}
        votes = np.zeros((len(X), len(self.classes_)))
        rows = np.arange(len(X))
        for tree in self.estimators_:
            pred = tree.predict(X)
            votes[rows, [col[p] for p in pred]] += 1
        return votes


CLASSIFIERS = {
    "gnb": lambda seed: GaussianNB(),
    "sgd": lambda seed: SGDLogistic(random_state=seed),
    "forest": lambda seed: RandomForest(random_state=seed),
}

CLASSIFIER_LABELS = {"gnb": "Gaussian Naive Bayes", "sgd": "SGD Classifier", "forest": "Random forest"}


def make_classifier(name: str, seed: int = 42):
    try:
        return CLASSIFIERS[name](seed)
    except KeyError:
        raise ValidationError(f"unknown classifier {name!r}; choose from {sorted(CLASSIFIERS)}") from None


# -- cross-validation --------------------------------------------------------


class StratifiedKFold:
    """Stratified, shuffled k-fold splitter (scikit-learn splitter protocol).

    Each class is shuffled and dealt round-robin over the folds, continuing
    from the fold where the previous class stopped, so per-class counts and
    fold sizes each differ by at most one across folds.
    """

    def __init__(self, n_splits=10, random_state=42):
        if n_splits < 2:
            raise ValidationError("n_splits must be >= 2")
        self.n_splits = n_splits
        self.random_state = random_state

    def get_n_splits(self, X=None, y=None, groups=None):
        return self.n_splits

    def fold_assignment(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=object)
        classes = _ordered_classes(y)
        for c in classes:
            count = int((y == c).sum())
            if count < self.n_splits:
                raise ValidationError(
                    f"class {c!r} has {count} rows, fewer than {self.n_splits} folds"
                )
        rng = np.random.default_rng(self.random_state)
        fold = np.empty(len(y), dtype=int)
        offset = 0
        for c in classes:
            idx = rng.permutation(np.flatnonzero(y == c))
            fold[idx] = (offset + np.arange(len(idx))) % self.n_splits
            offset = (offset + len(idx)) % self.n_splits
        return fold

    def split(self, X, y, groups=None):
        fold = self.fold_assignment(y)
        for k in range(self.n_splits):
            yield np.flatnonzero(fold != k), np.flatnonzero(fold == k)


@dataclass(frozen=True)
class CvReport:
    classifier: str
    feature_set: str
    seed: int
    classes: tuple[str, ...]
    fold_accuracies: tuple[float, ...]
    mean_accuracy: float
    confusion: tuple[tuple[int, ...], ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "classifier": self.classifier,
                "feature_set": self.feature_set,
                "seed": self.seed,
                "classes": list(self.classes),
                "fold_accuracies": list(self.fold_accuracies),
                "mean_accuracy": self.mean_accuracy,
                "confusion": [list(r) for r in self.confusion],
            },
            indent=2,
        )


def cross_validate(
    estimator,
    X,
    y,
    k: int = 10,
    seed: int = 42,
    classifier_name: str | None = None,
    feature_set: str = "",
) -> CvReport:
    """Stratified k-fold accuracy of a fresh clone of ``estimator`` per fold.

    ``mean_accuracy`` pools all folds (correct predictions over all rows),
    so it always equals ``trace(confusion) / n``.
    """
    if isinstance(X, FeatureMatrix):
        X = X.values
    X = np.asarray(X, dtype=float)
    y = np.asarray([getattr(v, "bucket", v) for v in y], dtype=object)
    if len(X) != len(y):
        raise ValidationError("X and y differ in length")
    classes = _ordered_classes(y)
    pos = {c: i for i, c in enumerate(classes)}
    confusion = np.zeros((len(classes), len(classes)), dtype=int)
    fold_acc = []
    for train, test in StratifiedKFold(k, seed).split(X, y):
        model = clone(estimator).fit(X[train], y[train])
        pred = model.predict(X[test])
        for t, p in zip(y[test], pred):
            confusion[pos[t], pos[p]] += 1
        fold_acc.append(float(np.mean(pred == y[test])))
    return CvReport(
        classifier=classifier_name or type(estimator).__name__,
        feature_set=feature_set,
        seed=seed,
        classes=tuple(str(c) for c in classes),
        fold_accuracies=tuple(fold_acc),
        mean_accuracy=float(np.trace(confusion) / len(y)),
        confusion=tuple(tuple(int(v) for v in row) for row in confusion),
    )
