"""spinfill: conditional reconstruction of missing values on regular grids.

A thinned grid is discretized into classes and the missing nodes are
simulated by greedy zero-temperature Monte Carlo that matches the
nearest-neighbor pair correlation of the whole grid to that of the sample,
either sequentially over binary levels or simultaneously over all classes.
A deterministic k-NN baseline, evaluation metrics, a Whittle-Matern field
generator and a benchmark harness round out the toolkit.
"""

from .discretize import (
    ClassField,
    DegenerateSampleError,
    SpinField,
    ThresholdSet,
    binary_potts_of_ising,
    build_thresholds,
    classify_values,
    level_spins,
)
from .energy import (
    EnergyState,
    cost,
    delta_pair_sum,
    full_correlation,
    full_pair_stats,
    sample_correlation_ising,
    sample_correlation_potts,
    sample_pair_stats,
)
from .fieldgen import MaternSpec, generate_field, matern_covariance
from .grid import (
    CheckerboardPartition,
    GridField,
    NeighborPair,
    checkerboard,
    neighbor_pairs,
    thin_sample,
)
from .gridio import (
    GridFormatError,
    load_class_grid,
    load_grid,
    load_mask,
    save_class_grid,
    save_grid,
    save_mask,
)
from .harness import CellAggregate, ExperimentConfig, run_experiment, run_single
from .ising import IsingRunConfig, LevelDiagnostics, classify_ising
from .knn import KnnConfig, classify_knn, knn_oracle_best
from .metrics import (
    RunReport,
    VariogramCurve,
    class_histogram,
    class_std_map,
    directional_variogram,
    f_spread,
    misclassification_rate,
)
from .optimize import (
    OptimizerConfig,
    OptimizerResult,
    checkerboard_sweep,
    greedy_optimize,
    propose,
)
from .potts import PottsDiagnostics, PottsRunConfig, classify_potts
from .rng import derive_seed, splitmix64
from .stencil import StencilConfig, stencil_init

__version__ = "0.1.0"

__all__ = [
    "CellAggregate",
    "CheckerboardPartition",
    "ClassField",
    "DegenerateSampleError",
    "EnergyState",
    "ExperimentConfig",
    "GridField",
    "GridFormatError",
    "IsingRunConfig",
    "KnnConfig",
    "LevelDiagnostics",
    "MaternSpec",
    "NeighborPair",
    "OptimizerConfig",
    "OptimizerResult",
    "PottsDiagnostics",
    "PottsRunConfig",
    "RunReport",
    "SpinField",
    "StencilConfig",
    "ThresholdSet",
    "VariogramCurve",
    "binary_potts_of_ising",
    "build_thresholds",
    "checkerboard",
    "checkerboard_sweep",
    "class_histogram",
    "class_std_map",
    "classify_ising",
    "classify_knn",
    "classify_potts",
    "classify_values",
    "cost",
    "delta_pair_sum",
    "derive_seed",
    "directional_variogram",
    "f_spread",
    "full_correlation",
    "full_pair_stats",
    "generate_field",
    "greedy_optimize",
    "knn_oracle_best",
    "level_spins",
    "load_class_grid",
    "load_grid",
    "load_mask",
    "matern_covariance",
    "misclassification_rate",
    "neighbor_pairs",
    "propose",
    "run_experiment",
    "run_single",
    "sample_correlation_ising",
    "sample_correlation_potts",
    "sample_pair_stats",
    "save_class_grid",
    "save_grid",
    "save_mask",
    "splitmix64",
    "stencil_init",
    "thin_sample",
]
