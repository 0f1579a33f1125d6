"""Rectangular lattice containers and nearest-neighbor topology.

Node indices are row-major: node ``i`` sits at column ``x = i % lx`` and row
``y = i // lx``.  Boundaries are open; only physically present neighbor pairs
are enumerated, never wrapped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np


class NeighborPair(NamedTuple):
    """Unordered nearest-neighbor pair of flat node indices along one axis."""

    index_a: int
    index_b: int
    axis: str  # "x" = same row, adjacent columns; "y" = same column, adjacent rows


class CheckerboardPartition(NamedTuple):
    """Flat node indices split by parity of (row + column)."""

    even: np.ndarray
    odd: np.ndarray


@dataclass
class GridField:
    """Continuous values on a rectangular lattice with a missing-data mask.

    ``missing`` is True at prediction sites; those entries of ``values`` hold
    NaN.  Every known node holds a finite value.
    """

    values: np.ndarray
    missing: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        missing = np.array(self.missing, dtype=bool)
        if values.ndim != 2 or min(values.shape) < 1:
            raise ValueError("values must be a 2-D array with at least one node")
        if missing.shape != values.shape:
            raise ValueError("missing mask shape does not match values")
        if not np.all(np.isfinite(values[~missing])):
            raise ValueError("non-missing nodes must hold finite values")
        values[missing] = np.nan
        self.values = values
        self.missing = missing

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
    def n_sample(self) -> int:
        return int((~self.missing).sum())

    @property
    def n_missing(self) -> int:
        return int(self.missing.sum())

    def copy(self) -> "GridField":
        return GridField(self.values.copy(), self.missing.copy())


@lru_cache(maxsize=64)
def pair_arrays(lx: int, ly: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Flat endpoint indices of every nearest-neighbor pair.

    Horizontal pairs come first, then vertical, each block in row-major
    order.  Returns ``(a, b, n_horizontal)``; the arrays are read-only and
    cached per grid shape.
    """
    idx = np.arange(lx * ly, dtype=np.int64).reshape(ly, lx)
    ah, bh = idx[:, :-1].ravel(), idx[:, 1:].ravel()
    av, bv = idx[:-1, :].ravel(), idx[1:, :].ravel()
    a = np.concatenate([ah, av])
    b = np.concatenate([bh, bv])
    a.flags.writeable = False
    b.flags.writeable = False
    return a, b, ah.size


@lru_cache(maxsize=64)
def neighbor_lists(lx: int, ly: int) -> tuple[tuple[int, ...], ...]:
    """Per-node tuples of flat neighbor indices (only in-grid neighbors)."""
    out = []
    for i in range(lx * ly):
        x, y = i % lx, i // lx
        cur = []
        if x > 0:
            cur.append(i - 1)
        if x < lx - 1:
            cur.append(i + 1)
        if y > 0:
            cur.append(i - lx)
        if y < ly - 1:
            cur.append(i + lx)
        out.append(tuple(cur))
    return tuple(out)


@lru_cache(maxsize=64)
def neighbor_matrix(lx: int, ly: int) -> np.ndarray:
    """(n, 4) neighbor index matrix; absent neighbors point at padding slot n.

    Gathering labels through this matrix from an array padded with a neutral
    label at index n makes open boundaries vanish from vectorized code.
    """
    n = lx * ly
    idx = np.arange(n, dtype=np.int64)
    x, y = idx % lx, idx // lx
    m = np.full((n, 4), n, dtype=np.int64)
    m[x > 0, 0] = idx[x > 0] - 1
    m[x < lx - 1, 1] = idx[x < lx - 1] + 1
    m[y > 0, 2] = idx[y > 0] - lx
    m[y < ly - 1, 3] = idx[y < ly - 1] + lx
    m.flags.writeable = False
    return m


def neighbor_pairs(field) -> list[NeighborPair]:
    """All nearest-neighbor pairs of the field's lattice, each exactly once.

    Order is deterministic: horizontal pairs row-major, then vertical pairs
    row-major.  A grid with open boundaries has (lx-1)*ly + lx*(ly-1) pairs.
    """
    a, b, nh = pair_arrays(field.lx, field.ly)
    pairs = [NeighborPair(int(p), int(q), "x") for p, q in zip(a[:nh], b[:nh])]
    pairs += [NeighborPair(int(p), int(q), "y") for p, q in zip(a[nh:], b[nh:])]
    return pairs


def checkerboard(field) -> CheckerboardPartition:
    """Parity partition of the lattice; no pair lies inside one part."""
    idx = np.arange(field.lx * field.ly, dtype=np.int64)
    parity = (idx % field.lx + idx // field.lx) % 2
    return CheckerboardPartition(even=idx[parity == 0], odd=idx[parity == 1])


def thin_sample(full: GridField, p: float, seed: int) -> tuple[GridField, np.ndarray]:
    """Randomly hide a fraction ``p`` of a complete grid.

    Exactly round(p * n_nodes) nodes (round half up) are marked missing,
    drawn uniformly without replacement by a generator seeded with ``seed``.
    Returns the thinned training grid and the boolean validation mask.
    """
    if full.n_missing:
        raise ValueError("input grid already has missing nodes")
    if not 0.0 < p < 1.0:
        raise ValueError("thinning fraction must lie strictly in (0, 1)")
    n = full.n_nodes
    n_out = int(np.floor(p * n + 0.5))
    if n_out == 0 or n_out == n:
        raise ValueError(f"p={p} leaves no training or no validation nodes")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(n, size=n_out, replace=False)
    vmask = np.zeros(n, dtype=bool)
    vmask[chosen] = True
    vmask = vmask.reshape(full.ly, full.lx)
    train = GridField(np.where(vmask, np.nan, full.values), vmask)
    return train, vmask
