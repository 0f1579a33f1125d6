"""Threshold construction and the integer class indicator field.

A value z belongs to class q when t_q < z <= t_{q+1}.  Interior thresholds
are uniformly spaced over the training sample's range; the first and last
classes are unbounded so out-of-sample values always classify.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridField


class DegenerateSampleError(ValueError):
    """Raised when the training sample cannot support a discretization."""


@dataclass(frozen=True)
class ThresholdSet:
    """Class boundaries: [-inf, t_2, ..., t_{n_classes}, +inf]."""

    n_classes: int
    thresholds: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.thresholds, dtype=float)
        if self.n_classes < 2:
            raise ValueError("need at least two classes")
        if t.shape != (self.n_classes + 1,):
            raise ValueError(f"expected {self.n_classes + 1} thresholds, got {t.shape}")
        if not (np.isneginf(t[0]) and np.isposinf(t[-1])):
            raise ValueError("first and last thresholds must be -inf and +inf")
        if t[1:-1].size > 1 and not np.all(np.diff(t[1:-1]) > 0):
            raise ValueError("interior thresholds must be strictly increasing")
        object.__setattr__(self, "thresholds", t)

    @property
    def interior(self) -> np.ndarray:
        return self.thresholds[1:-1]


@dataclass
class ClassField:
    """1-based class indices on a lattice; 0 marks an unassigned node.

    Frozen nodes are conditioning data: optimizers never modify them.
    """

    values: np.ndarray
    frozen: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.int32)
        f = np.array(self.frozen, dtype=bool)
        if v.ndim != 2 or min(v.shape) < 1:
            raise ValueError("values must be a 2-D array with at least one node")
        if f.shape != v.shape:
            raise ValueError("frozen mask shape does not match values")
        if (v < 0).any():
            raise ValueError("class indices must be >= 1 (0 = unassigned)")
        if (f & (v == 0)).any():
            raise ValueError("frozen nodes must be assigned")
        self.values = v
        self.frozen = f

    @property
    def lx(self) -> int:
        return self.values.shape[1]

    @property
    def ly(self) -> int:
        return self.values.shape[0]

    @property
    def n_nodes(self) -> int:
        return self.values.size

    @property
    def fully_assigned(self) -> bool:
        return bool((self.values > 0).all())

    def copy(self) -> "ClassField":
        return ClassField(self.values.copy(), self.frozen.copy())


@dataclass
class SpinField:
    """Binary spins (-1/+1) on a lattice; 0 marks an unassigned node."""

    values: np.ndarray
    frozen: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.int8)
        f = np.array(self.frozen, dtype=bool)
        if v.ndim != 2 or min(v.shape) < 1:
            raise ValueError("values must be a 2-D array with at least one node")
        if f.shape != v.shape:
            raise ValueError("frozen mask shape does not match values")
        if not np.isin(v, (-1, 0, 1)).all():
            raise ValueError("spins must be -1, +1, or 0 for unassigned")
        if (f & (v == 0)).any():
            raise ValueError("frozen nodes must be assigned")
        self.values = v
        self.frozen = f

    @property
    def lx(self) -> int:
        return self.values.shape[1]

    @property
    def ly(self) -> int:
        return self.values.shape[0]

    @property
    def n_nodes(self) -> int:
        return self.values.size

    @property
    def fully_assigned(self) -> bool:
        return bool((self.values != 0).all())

    def copy(self) -> "SpinField":
        return SpinField(self.values.copy(), self.frozen.copy())


def build_thresholds(train: GridField, n_classes: int) -> ThresholdSet:
    """Uniform-width thresholds over the training sample's value range.

    The class width is (z_max - z_min) / n_classes computed from the sample
    only; validation values play no part.
    """
    if n_classes < 2:
        raise ValueError("need at least two classes")
    sample = train.values[~train.missing]
    if sample.size == 0:
        raise DegenerateSampleError("training grid has no sample values")
    z_min, z_max = float(sample.min()), float(sample.max())
    if z_max == z_min:
        raise DegenerateSampleError("all sample values are equal; class width would be zero")
    dt = (z_max - z_min) / n_classes
    t = np.empty(n_classes + 1)
    t[0] = -np.inf
    t[-1] = np.inf
    t[1:-1] = z_min + dt * np.arange(1, n_classes)
    return ThresholdSet(n_classes, t)


def classify_values(grid: GridField, thresholds: ThresholdSet) -> ClassField:
    """Assign each known node the class of the interval holding its value.

    Intervals are left-open, right-closed: a value exactly on an interior
    threshold goes to the lower class.  Known nodes come out frozen; missing
    nodes stay unassigned and free.
    """
    v = np.zeros(grid.values.shape, dtype=np.int32)
    known = ~grid.missing
    v[known] = 1 + np.searchsorted(thresholds.interior, grid.values[known], side="left")
    return ClassField(v, known.copy())


def level_spins(classes: ClassField, q: int) -> SpinField:
    """Binary projection at level q: class <= q maps to -1, class > q to +1.

    A node is frozen at level q if it is conditioning data or it already
    carried -1 at a lower level (class <= q-1), so low classes, once fixed,
    stay fixed at all higher levels.
    """
    if q < 1:
        raise ValueError("level must be >= 1")
    v = classes.values
    assigned = v > 0
    spins = np.zeros(v.shape, dtype=np.int8)
    spins[assigned & (v <= q)] = -1
    spins[assigned & (v > q)] = 1
    frozen = classes.frozen | (assigned & (v <= q - 1))
    return SpinField(spins, frozen)


def binary_potts_of_ising(spins: SpinField) -> ClassField:
    """Relabel a fully assigned spin field: -1 -> class 1, +1 -> class 2."""
    if not spins.fully_assigned:
        raise ValueError("all nodes must be assigned")
    v = np.where(spins.values < 0, 1, 2).astype(np.int32)
    return ClassField(v, spins.frozen.copy())
