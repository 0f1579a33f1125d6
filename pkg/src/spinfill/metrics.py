"""Evaluation statistics for reconstructed class fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discretize import ClassField


@dataclass
class RunReport:
    """One reconstruction run's record, aggregated by the harness."""

    realization: int
    model: str
    n_classes: int
    p: float
    f: float
    sweeps: int
    cost: float | None
    wall_seconds: float
    seed: int = 0
    converged: bool = True


@dataclass
class VariogramCurve:
    axis: str
    lags: np.ndarray
    gamma: np.ndarray
    n_pairs: np.ndarray


def misclassification_rate(truth: ClassField, estimate: ClassField, mask) -> float:
    """Fraction of masked nodes whose estimated class differs from the truth."""
    mask = np.asarray(mask, dtype=bool)
    if truth.values.shape != estimate.values.shape or mask.shape != truth.values.shape:
        raise ValueError("truth, estimate and mask shapes must match")
    if not truth.fully_assigned or not estimate.fully_assigned:
        raise ValueError("both fields must be fully assigned")
    n = int(mask.sum())
    if n == 0:
        raise ValueError("mask selects no nodes")
    return float((truth.values[mask] != estimate.values[mask]).sum()) / n


def f_spread(reports) -> tuple[float, float]:
    """Sample mean and standard deviation (divisor n-1) of the F values.

    Accepts RunReport objects or plain floats.
    """
    values = np.array([r.f if isinstance(r, RunReport) else float(r) for r in reports])
    if values.size < 2:
        raise ValueError("need at least two runs for a spread")
    return float(values.mean()), float(values.std(ddof=1))


def directional_variogram(
    classes: ClassField, axis: str, h_max: int | None = None
) -> VariogramCurve:
    """Half the mean squared class-index difference at exact lags along one axis.

    Lags run 1..h_max; h_max defaults to a quarter of the shorter grid side.
    Lags with no pairs are omitted.
    """
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    if not classes.fully_assigned:
        raise ValueError("field must be fully assigned")
    v = classes.values.astype(np.int64)
    extent = classes.lx if axis == "x" else classes.ly
    if h_max is None:
        h_max = max(1, min(classes.lx, classes.ly) // 4)
    if h_max >= extent:
        raise ValueError(f"h_max={h_max} must be below the {axis} extent {extent}")
    lags, gamma, counts = [], [], []
    for h in range(1, h_max + 1):
        if axis == "x":
            left, right = v[:, :-h], v[:, h:]
        else:
            left, right = v[:-h, :], v[h:, :]
        n = left.size
        if n == 0:
            continue
        sq = int(((left - right) ** 2).sum())
        lags.append(h)
        gamma.append(sq / (2 * n))
        counts.append(n)
    return VariogramCurve(
        axis, np.array(lags, dtype=np.int64), np.array(gamma), np.array(counts, dtype=np.int64)
    )


def class_histogram(classes: ClassField, n_classes: int) -> np.ndarray:
    """Exact node counts per class 1..n_classes; sums to the node count."""
    if not classes.fully_assigned:
        raise ValueError("field must be fully assigned")
    if int(classes.values.max()) > n_classes:
        raise ValueError("field holds labels above n_classes")
    return np.bincount(classes.values.ravel(), minlength=n_classes + 1)[1:]


def class_std_map(stack) -> np.ndarray:
    """Per-node sample standard deviation (divisor n-1) of the class index
    across realizations."""
    fields = list(stack)
    if len(fields) < 2:
        raise ValueError("need at least two realizations")
    shape = fields[0].values.shape
    for f in fields:
        if f.values.shape != shape:
            raise ValueError("all realizations must share the grid dimensions")
    data = np.stack([f.values.astype(float) for f in fields])
    return data.std(axis=0, ddof=1)
