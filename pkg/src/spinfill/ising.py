"""Sequential binary-level classification of missing grid values.

Levels run from the lowest class upward.  At level q the grid is projected
to spins (class <= q vs class > q), free spins are initialized by windowed
majority and relaxed by greedy descent toward the sample pair correlation,
and every free node ending at -1 is fixed to class q and joins the
conditioning set of all higher levels.  Whatever remains after the last
level becomes the top class.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field, replace

from .discretize import ClassField, build_thresholds, classify_values, level_spins
from .energy import EnergyState
from .grid import GridField
from .optimize import OptimizerConfig, greedy_optimize
from .rng import derive_seed
from .stencil import StencilConfig, stencil_init


@dataclass
class IsingRunConfig:
    n_classes: int
    m_max: int = 7
    optimizer: OptimizerConfig = dataclass_field(default_factory=OptimizerConfig)
    seed: int = 0

    def __post_init__(self):
        if self.n_classes < 2:
            raise ValueError("need at least two classes")


@dataclass
class LevelDiagnostics:
    level: int
    n_free: int
    c_sample: float
    sweeps: int
    cost: float
    accepted: int
    converged: bool
    skipped: bool = False


def classify_ising(
    train: GridField, cfg: IsingRunConfig
) -> tuple[ClassField, list[LevelDiagnostics]]:
    """Reconstruct the class field of a thinned grid, one level at a time.

    Returns the fully assigned class field (frozen flags mark the original
    sample nodes) and per-level diagnostics.
    """
    thresholds = build_thresholds(train, cfg.n_classes)
    work = classify_values(train, thresholds)
    sample_mask = work.frozen.copy()
    diags: list[LevelDiagnostics] = []
    for q in range(1, cfg.n_classes):
        unassigned = work.values == 0
        n_free = int(unassigned.sum())
        if n_free == 0:
            diags.append(
                LevelDiagnostics(q, 0, float("nan"), 0, float("nan"), 0, True, skipped=True)
            )
            continue
        spins = level_spins(work, q)
        if not (spins.values[spins.frozen] > 0).any():
            # Conditioning spins are uniformly -1: nothing to match, so the
            # whole free set is absorbed at this level.
            work.values[unassigned] = q
            work.frozen[unassigned] = True
            diags.append(LevelDiagnostics(q, n_free, 1.0, 0, 0.0, 0, True, skipped=True))
            continue
        level_seed = derive_seed(cfg.seed, q)
        init = stencil_init(
            spins,
            StencilConfig(m_max=cfg.m_max, labels=(-1, 1), seed=derive_seed(level_seed, 0)),
        )
        energy = EnergyState.from_field(init)
        result = greedy_optimize(
            init, energy, replace(cfg.optimizer, seed=derive_seed(level_seed, 1))
        )
        absorbed = unassigned & (result.field.values == -1)
        work.values[absorbed] = q
        work.frozen[absorbed] = True
        diags.append(
            LevelDiagnostics(
                q,
                n_free,
                energy.c_sample,
                result.sweeps,
                result.cost,
                result.accepted,
                result.converged,
            )
        )
    work.values[work.values == 0] = cfg.n_classes
    return ClassField(work.values, sample_mask), diags
