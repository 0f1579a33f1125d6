"""k-nearest-neighbor baseline on lattice coordinates.

Distances are Euclidean on integer grid coordinates, so squared distances
are exact integers and every tie is broken deterministically: candidate
neighbors sort by (squared distance, node index), and a plurality tie among
classes goes to the class whose nearest selected member is closest, then to
the lower class index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .discretize import ClassField, ThresholdSet, classify_values
from .grid import GridField

_FAR = np.int64(2**62)


@dataclass(frozen=True)
class KnnConfig:
    k_max: int = 25

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")


def _neighbor_table(train: GridField, thresholds: ThresholdSet, k: int):
    """Sorted candidate neighbors for every prediction node.

    Returns (sample classes field, prediction flat indices, classes table,
    squared-distance table); tables are sorted per row by (d^2, node index)
    and wide enough that any tie group crossing column k-1 is complete, so
    every prefix of width <= k is the exact deterministic neighbor set.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    sample_cf = classify_values(train, thresholds)
    lx = train.lx
    s_flat = np.flatnonzero(~train.missing.ravel())
    n_sample = s_flat.size
    if k > n_sample:
        raise ValueError(f"k={k} exceeds the {n_sample} available sample nodes")
    p_flat = np.flatnonzero(train.missing.ravel())
    if p_flat.size == 0:
        return sample_cf, p_flat, None, None
    sx, sy = s_flat % lx, s_flat // lx
    px, py = p_flat % lx, p_flat // lx
    tree = cKDTree(np.column_stack([sx, sy]))
    points = np.column_stack([px, py])
    sample_classes = sample_cf.values.ravel()[s_flat]
    width = min(k + 8, n_sample)
    while True:
        _, loc = tree.query(points, k=width)
        if width == 1:
            loc = loc[:, None]
        d2 = (sx[loc] - px[:, None]) ** 2 + (sy[loc] - py[:, None]) ** 2
        idx = s_flat[loc]
        order = np.lexsort((idx, d2))
        rows = np.arange(p_flat.size)[:, None]
        d2 = d2[rows, order]
        idx = idx[rows, order]
        if width >= n_sample or not np.any(d2[:, k - 1] == d2[:, width - 1]):
            break
        width = min(width * 2, n_sample)
    classes = sample_cf.values.ravel()[idx]
    return sample_cf, p_flat, classes, d2


def _plurality(classes: np.ndarray, d2: np.ndarray, n_classes: int) -> np.ndarray:
    """Row-wise winning class with the deterministic tie rules."""
    rows = np.arange(classes.shape[0])[:, None]
    counts = np.zeros((classes.shape[0], n_classes + 1), dtype=np.int64)
    np.add.at(counts, (np.broadcast_to(rows, classes.shape), classes), 1)
    nearest = np.full((classes.shape[0], n_classes + 1), _FAR, dtype=np.int64)
    np.minimum.at(nearest, (np.broadcast_to(rows, classes.shape), classes), d2)
    top = counts.max(axis=1, keepdims=True)
    key = np.where(counts == top, nearest, _FAR + 1)
    return key.argmin(axis=1)


def classify_knn(train: GridField, thresholds: ThresholdSet, k: int) -> ClassField:
    """Assign each prediction node the plurality class of its k nearest
    sample nodes; sample nodes keep their own class."""
    sample_cf, p_flat, classes, d2 = _neighbor_table(train, thresholds, k)
    out = sample_cf.copy()
    if p_flat.size:
        winners = _plurality(classes[:, :k], d2[:, :k], thresholds.n_classes)
        out.values.ravel()[p_flat] = winners
    return out


def knn_oracle_best(
    train: GridField,
    truth: ClassField,
    validation_mask: np.ndarray,
    cfg: KnnConfig,
    thresholds: ThresholdSet,
) -> tuple[int, float]:
    """Evaluate k = 1..k_max against the truth and return the best.

    This is an oracle baseline: it selects the k minimizing the validation
    misclassification rate (lowest k on ties) and returns (k_opt, F).
    """
    vm = np.asarray(validation_mask, dtype=bool).ravel()
    n_validation = int(vm.sum())
    if n_validation == 0:
        raise ValueError("validation mask is empty")
    k_max = min(cfg.k_max, train.n_sample)
    sample_cf, p_flat, classes, d2 = _neighbor_table(train, thresholds, k_max)
    truth_flat = truth.values.ravel()
    base = sample_cf.values.ravel()
    if p_flat.size == 0:
        return 1, float(np.mean(base[vm] != truth_flat[vm]))
    n_classes = thresholds.n_classes
    rows = np.arange(p_flat.size)
    counts = np.zeros((p_flat.size, n_classes + 1), dtype=np.int64)
    nearest = np.full((p_flat.size, n_classes + 1), _FAR, dtype=np.int64)
    f_by_k = np.empty(k_max)
    for k in range(1, k_max + 1):
        col = classes[:, k - 1]
        counts[rows, col] += 1
        nearest[rows, col] = np.minimum(nearest[rows, col], d2[:, k - 1])
        top = counts.max(axis=1, keepdims=True)
        key = np.where(counts == top, nearest, _FAR + 1)
        estimate = base.copy()
        estimate[p_flat] = key.argmin(axis=1)
        f_by_k[k - 1] = np.mean(estimate[vm] != truth_flat[vm])
    k_opt = int(np.argmin(f_by_k)) + 1
    return k_opt, float(f_by_k[k_opt - 1])
