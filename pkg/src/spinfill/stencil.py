"""Adaptive majority-vote initialization from growing square windows.

Each free node polls the frozen nodes inside odd-sized windows centered on
it, growing the window (3x3, 5x5, ...) until one label holds a strict
plurality.  Nodes still tied at the largest window draw uniformly among the
tied top labels; nodes whose largest window holds no frozen node at all draw
uniformly over the whole label domain.  Random draws use independent
per-node streams, so the outcome does not depend on visit order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import derive_seed


@dataclass(frozen=True)
class StencilConfig:
    m_max: int = 7
    labels: tuple[int, ...] = (-1, 1)
    seed: int = 0

    def __post_init__(self):
        if self.m_max < 3 or self.m_max % 2 == 0:
            raise ValueError("m_max must be an odd integer >= 3")
        if len(self.labels) < 2 or len(set(self.labels)) != len(self.labels):
            raise ValueError("label domain must hold at least two distinct labels")


def stencil_init(field, cfg: StencilConfig):
    """Assign every free node by adaptive windowed majority of frozen labels.

    Accepts a SpinField or ClassField; returns a fully assigned copy.  Only
    frozen nodes vote, so initializations of different nodes are independent.
    """
    out = field.copy()
    v = out.values
    frozen = out.frozen
    ly, lx = v.shape
    labels = np.asarray(cfg.labels)
    n_labels = labels.size

    # Windowed per-label counts of frozen voters come from integral images.
    ind = np.stack([(frozen & (v == lab)).astype(np.int64) for lab in cfg.labels])
    cum = np.zeros((n_labels, ly + 1, lx + 1), dtype=np.int64)
    cum[:, 1:, 1:] = ind.cumsum(axis=1).cumsum(axis=2)

    ys = np.arange(ly)[:, None]
    xs = np.arange(lx)[None, :]
    remaining = ~frozen
    counts = None
    for m in range(3, cfg.m_max + 1, 2):
        half = m // 2
        y1 = np.maximum(ys - half, 0)
        y2 = np.minimum(ys + half, ly - 1)
        x1 = np.maximum(xs - half, 0)
        x2 = np.minimum(xs + half, lx - 1)
        counts = (
            cum[:, y2 + 1, x2 + 1]
            - cum[:, y1, x2 + 1]
            - cum[:, y2 + 1, x1]
            + cum[:, y1, x1]
        )
        ranked = np.sort(counts, axis=0)
        decided = remaining & (ranked[-1] > ranked[-2])
        if decided.any():
            winner = counts.argmax(axis=0)
            v[decided] = labels[winner[decided]]
            remaining &= ~decided
        if not remaining.any():
            break

    if remaining.any():
        counts_flat = counts.reshape(n_labels, -1)
        v_flat = v.ravel()
        for node in np.flatnonzero(remaining.ravel()):
            c = counts_flat[:, node]
            top = int(c.max())
            rng = np.random.default_rng(derive_seed(cfg.seed, int(node)))
            if top > 0:
                tied = np.flatnonzero(c == top)
                pick = int(tied[rng.integers(tied.size)])
            else:
                pick = int(rng.integers(n_labels))
            v_flat[node] = cfg.labels[pick]
    return out
