"""Simultaneous multiclass classification of missing grid values.

All classes are simulated at once: the thinned grid is discretized, free
nodes are initialized by windowed majority over the full label domain, and a
single greedy descent matches the same-class pair correlation of the whole
grid to that of the sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field, replace

from .discretize import ClassField, build_thresholds, classify_values
from .energy import EnergyState
from .grid import GridField
from .optimize import OptimizerConfig, greedy_optimize
from .rng import derive_seed
from .stencil import StencilConfig, stencil_init


@dataclass
class PottsRunConfig:
    n_classes: int
    m_max: int = 7
    optimizer: OptimizerConfig = dataclass_field(default_factory=OptimizerConfig)
    seed: int = 0

    def __post_init__(self):
        if self.n_classes < 2:
            raise ValueError("need at least two classes")


@dataclass
class PottsDiagnostics:
    n_free: int
    c_sample: float
    sweeps: int
    cost: float
    accepted: int
    converged: bool


def classify_potts(
    train: GridField, cfg: PottsRunConfig
) -> tuple[ClassField, PottsDiagnostics]:
    """Reconstruct the class field of a thinned grid in one simulation.

    Returns the fully assigned class field (frozen flags mark the original
    sample nodes) and run diagnostics.
    """
    thresholds = build_thresholds(train, cfg.n_classes)
    work = classify_values(train, thresholds)
    sample_mask = work.frozen.copy()
    n_free = int((work.values == 0).sum())
    init = stencil_init(
        work,
        StencilConfig(
            m_max=cfg.m_max,
            labels=tuple(range(1, cfg.n_classes + 1)),
            seed=derive_seed(cfg.seed, 0),
        ),
    )
    energy = EnergyState.from_field(init)
    result = greedy_optimize(
        init,
        energy,
        replace(cfg.optimizer, seed=derive_seed(cfg.seed, 1)),
        n_classes=cfg.n_classes,
    )
    diag = PottsDiagnostics(
        n_free, energy.c_sample, result.sweeps, result.cost, result.accepted, result.converged
    )
    return ClassField(result.field.values, sample_mask), diag
