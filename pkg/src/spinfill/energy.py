"""Nearest-neighbor pair correlations and the normalized-energy cost.

Pair statistics are exact integers: spin products for binary fields, match
counts for class fields.  Sums are only divided by pair counts when a
correlation or cost is reported, so incrementally maintained sums and
from-scratch recomputation agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discretize import ClassField, SpinField
from .grid import neighbor_lists, pair_arrays

ISING = "ising"
POTTS = "potts"


def model_of(field) -> str:
    """The correlation model implied by the field type."""
    if isinstance(field, SpinField):
        return ISING
    if isinstance(field, ClassField):
        return POTTS
    raise TypeError(f"expected SpinField or ClassField, got {type(field).__name__}")


def _pair_stat(lab: np.ndarray, a: np.ndarray, b: np.ndarray, model: str) -> np.ndarray:
    if model == ISING:
        return lab[a] * lab[b]
    return (lab[a] == lab[b]).astype(np.int64)


def sample_pair_stats(field) -> tuple[int, int]:
    """Integer (sum, count) of the pair statistic over frozen-frozen pairs."""
    model = model_of(field)
    a, b, _ = pair_arrays(field.lx, field.ly)
    lab = field.values.ravel().astype(np.int64)
    fz = field.frozen.ravel()
    keep = fz[a] & fz[b]
    n = int(keep.sum())
    if n == 0:
        raise ValueError("no nearest-neighbor pair has both endpoints frozen")
    stat = _pair_stat(lab, a[keep], b[keep], model)
    return int(stat.sum()), n


def full_pair_stats(field) -> tuple[int, int]:
    """Integer (sum, count) of the pair statistic over every pair."""
    model = model_of(field)
    if not field.fully_assigned:
        raise ValueError("field has unassigned nodes")
    a, b, _ = pair_arrays(field.lx, field.ly)
    lab = field.values.ravel().astype(np.int64)
    return int(_pair_stat(lab, a, b, model).sum()), a.size


def sample_correlation_ising(spins: SpinField) -> float:
    """Mean spin product over pairs whose endpoints are both frozen."""
    s, n = sample_pair_stats(spins)
    return s / n


def sample_correlation_potts(classes: ClassField) -> float:
    """Mean same-class indicator over pairs whose endpoints are both frozen."""
    s, n = sample_pair_stats(classes)
    return s / n


def full_correlation(field) -> float:
    """The same statistic over all pairs of a fully assigned field."""
    s, n = full_pair_stats(field)
    return s / n


def cost(c_tilde: float, c_sample: float) -> float:
    """Squared relative deviation of a correlation from its sample target.

    Falls back to the plain square of the correlation when the target is
    exactly zero.
    """
    if c_sample != 0.0:
        return (1.0 - c_tilde / c_sample) ** 2
    return c_tilde**2


def delta_pair_sum(field, node: int, value: int) -> int:
    """Change of the full-grid pair sum if ``node`` took ``value``.

    Touches only the incident pairs; exact integer.  The node must be free
    and all its neighbors assigned.
    """
    model = model_of(field)
    lab = field.values.ravel()
    if field.frozen.ravel()[node]:
        raise ValueError(f"node {node} is frozen")
    cur = int(lab[node])
    if cur == 0:
        raise ValueError(f"node {node} is unassigned")
    if model == ISING and value not in (-1, 1):
        raise ValueError("spin value must be -1 or +1")
    if model == POTTS and value < 1:
        raise ValueError("class value must be >= 1")
    d = 0
    for j in neighbor_lists(field.lx, field.ly)[node]:
        nj = int(lab[j])
        if nj == 0:
            raise ValueError(f"neighbor {j} of node {node} is unassigned")
        if model == ISING:
            d += (value - cur) * nj
        else:
            d += (nj == value) - (nj == cur)
    return d


@dataclass
class EnergyState:
    """Pair-sum bookkeeping for one optimization run.

    ``pair_sum``/``n_pairs`` cover the whole grid; ``sample_sum``/
    ``sample_pairs`` cover the frozen-frozen pairs and fix the target
    correlation.  All four are exact integers.
    """

    model: str
    sample_sum: int
    sample_pairs: int
    pair_sum: int
    n_pairs: int

    @classmethod
    def from_field(cls, field) -> "EnergyState":
        model = model_of(field)
        ss, sp = sample_pair_stats(field)
        fs, fn = full_pair_stats(field)
        return cls(model, ss, sp, fs, fn)

    @property
    def c_sample(self) -> float:
        return self.sample_sum / self.sample_pairs

    @property
    def correlation(self) -> float:
        return self.pair_sum / self.n_pairs

    @property
    def cost(self) -> float:
        if self.sample_sum != 0:
            num = self.n_pairs * self.sample_sum - self.pair_sum * self.sample_pairs
            return (num / (self.n_pairs * self.sample_sum)) ** 2
        return (self.pair_sum / self.n_pairs) ** 2

    def descent_coeffs(self) -> tuple[int, int]:
        """Integers (A, B) such that |A - B * pair_sum| orders configurations
        by cost: the cost is that key squared over a fixed positive constant,
        so greedy comparisons stay in exact integer arithmetic."""
        if self.sample_sum != 0:
            return self.n_pairs * self.sample_sum, self.sample_pairs
        return 0, -1
