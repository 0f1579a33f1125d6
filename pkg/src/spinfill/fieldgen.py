"""Gaussian random fields with Whittle-Matern covariance on small grids.

Generation is by dense Cholesky factorization of the full covariance matrix,
which is exact but quadratic in memory; grids are capped at 4096 nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as gamma_fn, kv

from .grid import GridField

_MAX_NODES = 4096
_JITTER_ATTEMPTS = 5


@dataclass(frozen=True)
class MaternSpec:
    mean: float
    sigma: float
    nu: float
    kappa: float
    lx: int
    ly: int
    seed: int = 0

    def __post_init__(self):
        if self.sigma <= 0 or self.nu <= 0 or self.kappa <= 0:
            raise ValueError("sigma, nu and kappa must be positive")
        if self.lx < 1 or self.ly < 1:
            raise ValueError("grid dimensions must be >= 1")


def matern_covariance(r, spec: MaternSpec):
    """Covariance sigma^2 * 2^(1-nu)/Gamma(nu) * (kappa r)^nu * K_nu(kappa r).

    Continuous at the origin: c(0) = sigma^2.  Accepts scalars or arrays.
    """
    r = np.asarray(r, dtype=float)
    if (r < 0).any():
        raise ValueError("distances must be non-negative")
    x = spec.kappa * r
    scale = spec.sigma**2 * 2.0 ** (1.0 - spec.nu) / gamma_fn(spec.nu)
    with np.errstate(invalid="ignore", over="ignore"):
        c = scale * x**spec.nu * kv(spec.nu, x)
    c = np.where(r == 0.0, spec.sigma**2, c)
    return float(c[()]) if c.ndim == 0 else c


def generate_field(spec: MaternSpec) -> GridField:
    """One seeded realization of the field on the spec's grid.

    The covariance matrix over all pairwise lattice distances is factorized
    with an escalating diagonal jitter (starting at 1e-10 * sigma^2, doubled
    on failure) before drawing.
    """
    n = spec.lx * spec.ly
    if n > _MAX_NODES:
        raise ValueError(
            f"grid of {n} nodes exceeds the dense-factorization cap of {_MAX_NODES}"
        )
    idx = np.arange(n)
    x, y = idx % spec.lx, idx // spec.lx
    dist = np.hypot(x[:, None] - x[None, :], y[:, None] - y[None, :])
    cov = matern_covariance(dist, spec)
    jitter = 1e-10 * spec.sigma**2
    chol = None
    for _ in range(_JITTER_ATTEMPTS):
        try:
            chol = np.linalg.cholesky(cov + jitter * np.eye(n))
            break
        except np.linalg.LinAlgError:
            jitter *= 2.0
    if chol is None:
        raise np.linalg.LinAlgError(
            "covariance matrix is not positive definite even after jitter"
        )
    rng = np.random.default_rng(spec.seed)
    z = spec.mean + chol @ rng.standard_normal(n)
    return GridField(z.reshape(spec.ly, spec.lx), np.zeros((spec.ly, spec.lx), dtype=bool))
