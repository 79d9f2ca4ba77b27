"""Classifier roster, stratified cross-validation folds and evaluation
metrics.

The five model kinds are standard algorithms backed by scikit-learn behind
this module's interface; folds, the hold-out split and all metrics are
computed here so their exact semantics (deterministic seeding, midrank-tie
ROC AUC, undefined-metric flagging) are pinned by this package's tests.
Positive class throughout: inside-STN (label 1).
"""

from __future__ import annotations

import enum
import pickle
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata
from sklearn.ensemble import ExtraTreesClassifier, RandomForestClassifier
from sklearn.naive_bayes import GaussianNB
from sklearn.neighbors import KNeighborsClassifier
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import StandardScaler
from sklearn.tree import DecisionTreeClassifier

from .errors import ConfigError, DataError

MODEL_FORMAT_VERSION = 1


@dataclass
class Dataset:
    """Feature matrix with labels, row identities and per-row group keys."""

    X: np.ndarray
    y: np.ndarray
    row_ids: tuple[str, ...]
    groups: tuple[str, ...]
    feature_names: tuple[str, ...]

    def __post_init__(self) -> None:
        self.X = np.asarray(self.X, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.int64)
        n = self.X.shape[0]
        if not (n == self.y.size == len(self.row_ids) == len(self.groups)):
            raise DataError("dataset rows, labels, ids and groups must align")
        if self.X.shape[1] != len(self.feature_names):
            raise DataError("feature_names must match the matrix width")
        if not np.all(np.isfinite(self.X)):
            raise DataError("feature matrix contains non-finite values")

    @property
    def n_rows(self) -> int:
        return self.X.shape[0]

    def select_columns(self, names) -> "Dataset":
        idx = [self.feature_names.index(n) for n in names]
        return Dataset(
            self.X[:, idx], self.y, self.row_ids, self.groups, tuple(names)
        )

    def take(self, rows: np.ndarray) -> "Dataset":
        rows = np.asarray(rows)
        return Dataset(
            self.X[rows],
            self.y[rows],
            tuple(self.row_ids[i] for i in rows),
            tuple(self.groups[i] for i in rows),
            self.feature_names,
        )


class ModelKind(enum.Enum):
    DECISION_TREE = "DecisionTree"
    RANDOM_FOREST = "RandomForest"
    EXTRA_TREES = "ExtraTrees"
    KNN = "KNN"
    GAUSSIAN_NB = "GaussianNB"


@dataclass(frozen=True)
class ModelSpec:
    kind: ModelKind
    seed: int = 0
    hyperparams: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        hp = self.hyperparams
        if "n_estimators" in hp and hp["n_estimators"] < 1:
            raise ConfigError("n_estimators must be >= 1")
        if "max_depth" in hp and hp["max_depth"] is not None and hp["max_depth"] < 1:
            raise ConfigError("max_depth must be None or >= 1")
        if "n_neighbors" in hp and hp["n_neighbors"] < 1:
            raise ConfigError("n_neighbors must be >= 1")

    @property
    def name(self) -> str:
        return self.kind.value


def default_roster(master_seed: int = 0) -> tuple[ModelSpec, ...]:
    """The five-model bench. Tree ensembles use 100 trees, unlimited depth,
    min-samples-split 2 and sqrt(d) candidate features; KNN uses k=5
    Euclidean; GaussianNB floors variances at 1e-9 of the largest feature
    variance."""
    return tuple(
        ModelSpec(kind, seed=master_seed) for kind in ModelKind
    )


@dataclass
class TrainedModel:
    spec: ModelSpec
    estimator: object
    n_features: int
    classes: np.ndarray


def _build_estimator(spec: ModelSpec):
    hp = spec.hyperparams
    if spec.kind is ModelKind.DECISION_TREE:
        return DecisionTreeClassifier(
            max_depth=hp.get("max_depth"),
            min_samples_split=hp.get("min_samples_split", 2),
            random_state=spec.seed,
        )
    if spec.kind is ModelKind.RANDOM_FOREST:
        return RandomForestClassifier(
            n_estimators=hp.get("n_estimators", 100),
            max_depth=hp.get("max_depth"),
            min_samples_split=hp.get("min_samples_split", 2),
            max_features="sqrt",
            bootstrap=True,
            random_state=spec.seed,
        )
    if spec.kind is ModelKind.EXTRA_TREES:
        # one random cut-point per candidate feature, no bootstrap
        return ExtraTreesClassifier(
            n_estimators=hp.get("n_estimators", 100),
            max_depth=hp.get("max_depth"),
            min_samples_split=hp.get("min_samples_split", 2),
            max_features="sqrt",
            bootstrap=False,
            random_state=spec.seed,
        )
    if spec.kind is ModelKind.KNN:
        # scale-sensitive: standardization is fitted on training rows only
        return Pipeline(
            [
                ("scale", StandardScaler()),
                ("knn", KNeighborsClassifier(n_neighbors=hp.get("n_neighbors", 5))),
            ]
        )
    if spec.kind is ModelKind.GAUSSIAN_NB:
        return GaussianNB(var_smoothing=hp.get("var_smoothing", 1e-9))
    raise ConfigError(f"unknown model kind {spec.kind}")


def train(spec: ModelSpec, X: np.ndarray, y: np.ndarray) -> TrainedModel:
    """Fit one model; deterministic for (spec, data)."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    classes, counts = np.unique(y, return_counts=True)
    if classes.size < 2:
        raise DataError("training data contains a single class")
    if counts.min() < 2:
        raise DataError("need at least 2 rows per class to train")
    est = _build_estimator(spec)
    est.fit(X, y)
    return TrainedModel(spec, est, X.shape[1], classes)


def predict_proba(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    """Positive-class probability per row (vote fractions for ensembles,
    neighbor fractions for KNN, normalized likelihoods for GaussianNB)."""
    X = np.asarray(X, dtype=np.float64)
    if X.shape[1] != model.n_features:
        raise DataError(
            f"model trained on {model.n_features} features, got {X.shape[1]}"
        )
    proba = model.estimator.predict_proba(X)
    pos_col = int(np.flatnonzero(model.classes == 1)[0])
    return proba[:, pos_col]


def predict(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    """Labels at the 0.5 probability threshold; exact ties go to the
    negative (majority-prior) class."""
    return (predict_proba(model, X) > 0.5).astype(np.int64)


def stratified_kfold(labels: np.ndarray, k: int, seed: int) -> list[np.ndarray]:
    """Deterministic stratified fold assignment.

    Shuffles each class with a Philox generator and deals rows round-robin,
    so per-fold class counts differ from the proportional share by at most
    one and fold sizes by at most one.
    """
    labels = np.asarray(labels)
    if k < 2:
        raise ConfigError(f"cannot cross-validate with k={k}")
    classes, counts = np.unique(labels, return_counts=True)
    if counts.min() < k:
        raise DataError(
            f"smallest class has {counts.min()} rows; needs at least k={k}"
        )
    rng = np.random.Generator(np.random.Philox(seed))
    order = []
    for cls in classes:
        idx = np.flatnonzero(labels == cls)
        rng.shuffle(idx)
        order.append(idx)
    order = np.concatenate(order)
    folds = [[] for _ in range(k)]
    for position, row in enumerate(order):
        folds[position % k].append(row)
    return [np.sort(np.array(f, dtype=np.int64)) for f in folds]


@dataclass(frozen=True)
class MetricSet:
    accuracy: float
    precision: float
    recall: float
    f1: float
    roc_auc: float
    undefined: tuple[str, ...] = ()

    NAMES = ("accuracy", "precision", "recall", "f1", "roc_auc")

    def get(self, name: str) -> float:
        return getattr(self, name)


def roc_auc(labels: np.ndarray, scores: np.ndarray) -> float:
    """ROC AUC as the rank statistic (Mann-Whitney U over n+ * n-),
    ties contributing one half."""
    labels = np.asarray(labels)
    n_pos = int((labels == 1).sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        return float("nan")
    ranks = rankdata(scores)
    u = ranks[labels == 1].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


def compute_metrics(labels, predictions, scores) -> MetricSet:
    """Confusion-matrix metrics plus rank-based ROC AUC.

    Zero true positives+false positives leaves precision undefined
    (flagged, F1 forced to 0); zero actual positives leaves recall and AUC
    undefined.
    """
    labels = np.asarray(labels)
    predictions = np.asarray(predictions)
    scores = np.asarray(scores, dtype=np.float64)
    if not (labels.size == predictions.size == scores.size):
        raise DataError("labels, predictions and scores must have equal length")

    tp = int(((labels == 1) & (predictions == 1)).sum())
    fp = int(((labels == 0) & (predictions == 1)).sum())
    fn = int(((labels == 1) & (predictions == 0)).sum())
    tn = int(((labels == 0) & (predictions == 0)).sum())
    undefined = []

    accuracy = (tp + tn) / labels.size
    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = float("nan")
        undefined.append("precision")
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = float("nan")
        undefined.append("recall")
    if np.isnan(precision) or np.isnan(recall) or precision + recall == 0:
        f1 = 0.0
    else:
        f1 = 2 * precision * recall / (precision + recall)
    auc = roc_auc(labels, scores)
    if np.isnan(auc):
        undefined.append("roc_auc")
    return MetricSet(accuracy, precision, recall, f1, auc, tuple(undefined))


def save_model(path, model: TrainedModel) -> None:
    """Versioned pickle container; load_model refuses other versions."""
    payload = {
        "format": "merstn-model",
        "version": MODEL_FORMAT_VERSION,
        "kind": model.spec.kind.value,
        "seed": model.spec.seed,
        "hyperparams": model.spec.hyperparams,
        "n_features": model.n_features,
        "classes": model.classes,
        "estimator": model.estimator,
    }
    with open(path, "wb") as fh:
        pickle.dump(payload, fh)


def load_model(path) -> TrainedModel:
    with open(path, "rb") as fh:
        payload = pickle.load(fh)
    if payload.get("format") != "merstn-model" or payload.get("version") != MODEL_FORMAT_VERSION:
        raise DataError(f"unsupported model file {path}")
    spec = ModelSpec(
        ModelKind(payload["kind"]), payload["seed"], payload["hyperparams"]
    )
    return TrainedModel(spec, payload["estimator"], payload["n_features"], payload["classes"])
