"""Random Forest classifier built from scratch.

CART-style binary trees on the k PCA features, Gini-impurity splits,
bagging, majority vote. Candidate thresholds are midpoints between
consecutive distinct sorted values of a feature. Split scores are
compared in exact integer arithmetic (a weighted Gini comparison reduces
to comparing integer fractions), so the documented tie rule (lowest
feature index, then lowest threshold) is applied exactly rather than at
the mercy of float rounding.

Everything is deterministic given (features, labels, config): each tree
draws its bootstrap sample and per-node feature subsets from a PCG64
stream seeded by SeedSequence([seed, tree_index]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionMismatch, EmptyTrainingSet
from .landmarks import CLASS_ORDER, SentenceClass

N_CLASSES = 2


@dataclass(frozen=True)
class TreeNode:
    """Internal node (feature_index/threshold/children set) or leaf (counts set)."""

    feature_index: Optional[int] = None
    threshold: Optional[float] = None
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None
    class_counts: Optional[Tuple[int, int]] = None

    @property
    def is_leaf(self) -> bool:
        return self.feature_index is None

    def leaf_vote(self) -> int:
        # argmax returns the first maximum, so exact ties go to AS (index 0)
        return int(np.argmax(self.class_counts))


@dataclass(frozen=True)
class ForestConfig:
    n_trees: int = 100
    max_depth: Optional[int] = None
    min_samples_split: int = 2
    max_features: Optional[int] = None  # default ceil(sqrt(k))
    seed: int = 0
    # bootstrap=False together with max_features=k is "test mode": it makes
    # a single tree reproducible against the exhaustive CART oracle. Not
    # part of the normal training procedure.
    bootstrap: bool = True

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1 when set")
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be >= 2")

    def resolved_max_features(self, k: int) -> int:
        mf = self.max_features if self.max_features is not None else math.ceil(math.sqrt(k))
        if not 1 <= mf <= k:
            raise ValueError(f"max_features={mf} outside 1..{k}")
        return mf


@dataclass(frozen=True)
class ForestModel:
    trees: Tuple[TreeNode, ...]
    config: ForestConfig
    n_features: int
    class_order: Tuple[SentenceClass, SentenceClass] = CLASS_ORDER


def gini(class_counts: Sequence[int]) -> float:
    """Gini impurity 1 - sum((c/total)^2); total must be >= 1."""
    total = sum(class_counts)
    if total < 1:
        raise ValueError("gini needs a total count >= 1")
    return 1.0 - sum((c / total) ** 2 for c in class_counts)


def _best_split(x: np.ndarray, y: np.ndarray, feature_indices: np.ndarray):
    """Exhaustive best (feature, threshold) under exact Gini comparison.

    Minimizing the weighted child Gini over a fixed node is equivalent to
    minimizing num/den with num = SL*nR + SR*nL and den = nL*nR, where
    SL/SR are sums of squared class counts. All quantities are integers,
    so candidates are compared by integer cross-multiplication. Returns
    (feature, threshold) or None when no feature has two distinct values.
    """
    n = x.shape[0]
    best = None  # (num, den, feature, threshold) with num/den Python ints
    for f in feature_indices:
        col = x[:, f]
        order = np.argsort(col, kind="stable")
        xs = col[order]
        ys = y[order]
        boundary = np.flatnonzero(xs[:-1] < xs[1:])
        if boundary.size == 0:
            continue
        pref1 = np.cumsum(ys, dtype=np.int64)
        tot1 = int(pref1[-1])

        n_left = boundary + 1
        c1_left = pref1[boundary]
        c0_left = n_left - c1_left
        n_right = n - n_left
        c1_right = tot1 - c1_left
        c0_right = n_right - c1_right
        s_left = c0_left**2 + c1_left**2
        s_right = c0_right**2 + c1_right**2
        num = s_left * n_right + s_right * n_left
        den = n_left * n_right
        thresholds = (xs[boundary] + xs[boundary + 1]) / 2.0

        # float pre-screen, then exact integer comparison on near-ties;
        # larger num/den means lower weighted child impurity
        score = num / den
        m = score.max()
        for i in np.flatnonzero(score >= m * (1.0 - 1e-9) - 1e-12):
            cand = (int(num[i]), int(den[i]), int(f), float(thresholds[i]))
            if best is None or cand[0] * best[1] > best[0] * cand[1]:
                # maximizing num/den minimizes weighted child impurity
                best = cand
    if best is None:
        return None
    return best[2], best[3]


def _grow_tree(
    x: np.ndarray,
    y: np.ndarray,
    depth: int,
    cfg: ForestConfig,
    mf: int,
    rng: np.random.Generator,
) -> TreeNode:
    counts = (int(np.count_nonzero(y == 0)), int(np.count_nonzero(y == 1)))
    n, k = x.shape
    if (
        counts[0] == 0
        or counts[1] == 0
        or n < cfg.min_samples_split
        or (cfg.max_depth is not None and depth >= cfg.max_depth)
    ):
        return TreeNode(class_counts=counts)

    if mf < k:
        feats = np.sort(rng.choice(k, size=mf, replace=False))
    else:
        feats = np.arange(k)
    split = _best_split(x, y, feats)
    if split is None:
        return TreeNode(class_counts=counts)

    f, thr = split
    mask = x[:, f] <= thr
    left = _grow_tree(x[mask], y[mask], depth + 1, cfg, mf, rng)
    right = _grow_tree(x[~mask], y[~mask], depth + 1, cfg, mf, rng)
    return TreeNode(feature_index=f, threshold=thr, left=left, right=right, class_counts=counts)


def _labels_to_ints(labels) -> np.ndarray:
    out = np.empty(len(labels), dtype=np.int64)
    for i, lab in enumerate(labels):
        out[i] = lab.value if isinstance(lab, SentenceClass) else int(lab)
    return out


def train_forest(features: np.ndarray, labels, config: ForestConfig) -> ForestModel:
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] == 0:
        raise EmptyTrainingSet("training features must be a non-empty 2-D matrix")
    if len(labels) != x.shape[0]:
        raise DimensionMismatch(f"{len(labels)} labels for {x.shape[0]} rows")
    y = _labels_to_ints(labels)
    n, k = x.shape
    mf = config.resolved_max_features(k)

    trees = []
    for t in range(config.n_trees):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([config.seed, t])))
        if config.bootstrap:
            idx = rng.integers(0, n, size=n)
            trees.append(_grow_tree(x[idx], y[idx], 0, config, mf, rng))
        else:
            trees.append(_grow_tree(x, y, 0, config, mf, rng))
    return ForestModel(tuple(trees), config, n_features=k)


def _route(node: TreeNode, v: np.ndarray) -> TreeNode:
    while not node.is_leaf:
        node = node.left if v[node.feature_index] <= node.threshold else node.right
    return node


def predict_proba(model: ForestModel, features: np.ndarray) -> Tuple[float, float]:
    """Per-class fractions of tree votes for one k-vector."""
    v = np.asarray(features, dtype=np.float64)
    if v.shape != (model.n_features,):
        raise DimensionMismatch(f"expected {model.n_features} features, got shape {v.shape}")
    votes = [0, 0]
    for tree in model.trees:
        votes[_route(tree, v).leaf_vote()] += 1
    total = len(model.trees)
    return votes[0] / total, votes[1] / total

def predict(model: ForestModel, features: np.ndarray) -> SentenceClass:
    """Majority vote across trees; exact ties resolve to AS."""
    p = predict_proba(model, features)
    return CLASS_ORDER[0] if p[0] >= p[1] else CLASS_ORDER[1]
