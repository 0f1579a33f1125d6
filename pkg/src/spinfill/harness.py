"""Experiment orchestration: thin, reconstruct, score, aggregate, emit.

A benchmark runs over the cells of (model x n_classes x p).  Each cell runs
``realizations`` seeded reconstructions; per-run seeds derive from
``derive_seed(base_seed, cell_index, realization)`` where cells are numbered
with models outermost, then n_classes, then p.  That derivation is part of
the reproducibility contract (see README).
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from pathlib import Path

import numpy as np

from .discretize import ClassField, build_thresholds, classify_values
from .fieldgen import MaternSpec, generate_field
from .grid import GridField, thin_sample
from .gridio import load_grid, save_grid
from .ising import IsingRunConfig, classify_ising
from .knn import KnnConfig, classify_knn, knn_oracle_best
from .metrics import (
    RunReport,
    class_histogram,
    class_std_map,
    directional_variogram,
    misclassification_rate,
)
from .optimize import OptimizerConfig
from .potts import PottsRunConfig, classify_potts
from .rng import derive_seed

MODELS = ("ising", "potts", "knn")


@dataclass
class ExperimentConfig:
    models: list[str]
    nc_list: list[int]
    p_list: list[float]
    realizations: int
    base_seed: int
    output_dir: str | Path
    input_path: str | Path | None = None
    synth: MaternSpec | None = None
    m_max: int = 7
    k_max: int = 25
    mode: str = "sequential"
    max_sweeps: int = 1000
    variogram_h_max: int | None = None

    def __post_init__(self):
        if (self.input_path is None) == (self.synth is None):
            raise ValueError("exactly one of input_path or synth must be given")
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        for model in self.models:
            if model not in MODELS:
                raise ValueError(f"unknown model {model!r}")
        for nc in self.nc_list:
            if nc < 2:
                raise ValueError("every n_classes must be >= 2")
        for p in self.p_list:
            if not 0.0 < p < 1.0:
                raise ValueError("every p must lie in (0, 1)")


@dataclass
class CellAggregate:
    model: str
    n_classes: int
    p: float
    f_mean: float
    f_std: float
    sweeps_mean: float
    cost_mean: float
    time_mean: float
    reports: list[RunReport] = dataclass_field(default_factory=list)
    best_realization: int = -1
    worst_realization: int = -1
    n_failed: int = 0


def _load_truth(cfg: ExperimentConfig) -> GridField:
    if cfg.input_path is not None:
        full = load_grid(cfg.input_path)
        if full.n_missing:
            raise ValueError("benchmark input grid must be complete (no NA)")
        return full
    return generate_field(cfg.synth)


def run_single(
    full: GridField,
    model: str,
    n_classes: int,
    p: float,
    seed: int,
    m_max: int = 7,
    k_max: int = 25,
    mode: str = "sequential",
    max_sweeps: int = 1000,
) -> tuple[RunReport, ClassField, ClassField, np.ndarray]:
    """One thin-and-reconstruct run on a complete grid.

    Returns (report, truth classes, estimated classes, validation mask).
    Thresholds come from the training sample, and the truth discretization
    uses those same thresholds.
    """
    train, vmask = thin_sample(full, p, derive_seed(seed, 0))
    model_seed = derive_seed(seed, 1)
    thresholds = build_thresholds(train, n_classes)
    truth = classify_values(full, thresholds)
    opt = OptimizerConfig(mode=mode, max_sweeps=max_sweeps)
    start = time.perf_counter()
    if model == "ising":
        estimate, diags = classify_ising(
            train, IsingRunConfig(n_classes, m_max, opt, seed=model_seed)
        )
        run = [d for d in diags if not d.skipped]
        sweeps = sum(d.sweeps for d in diags)
        cost = float(np.mean([d.cost for d in run])) if run else 0.0
        converged = all(d.converged for d in diags)
    elif model == "potts":
        estimate, diag = classify_potts(
            train, PottsRunConfig(n_classes, m_max, opt, seed=model_seed)
        )
        sweeps, cost, converged = diag.sweeps, diag.cost, diag.converged
    elif model == "knn":
        k_opt, _ = knn_oracle_best(train, truth, vmask, KnnConfig(k_max), thresholds)
        estimate = classify_knn(train, thresholds, k_opt)
        sweeps, cost, converged = 0, None, True
    else:
        raise ValueError(f"unknown model {model!r}")
    wall = time.perf_counter() - start
    f = misclassification_rate(truth, estimate, vmask)
    report = RunReport(
        realization=-1,
        model=model,
        n_classes=n_classes,
        p=p,
        f=f,
        sweeps=sweeps,
        cost=cost,
        wall_seconds=wall,
        seed=seed,
        converged=converged,
    )
    return report, truth, estimate, vmask


def _report_json(report: RunReport) -> dict:
    return {
        "model": report.model,
        "nc": report.n_classes,
        "p": report.p,
        "realization": report.realization,
        "seed": report.seed,
        "f": report.f,
        "sweeps": report.sweeps,
        "terminal_cost": report.cost,
        "wall_seconds": report.wall_seconds,
        "converged": report.converged,
    }


def _write_variograms(path, classes: ClassField, h_max) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("axis,lag,gamma,npairs\n")
        for axis in ("x", "y"):
            curve = directional_variogram(classes, axis, h_max)
            for lag, gamma, n in zip(curve.lags, curve.gamma, curve.n_pairs):
                fh.write(f"{axis},{lag},{gamma:.10g},{n}\n")


def _write_histogram(path, classes: ClassField, n_classes: int) -> None:
    counts = class_histogram(classes, n_classes)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("class,count,log_count\n")
        for cls, count in enumerate(counts, start=1):
            log_count = math.log(count) if count > 0 else float("nan")
            fh.write(f"{cls},{count},{log_count:.10g}\n")


def _cell_tag(model: str, nc: int, p: float) -> str:
    return f"{model}_nc{nc}_p{p:g}"


def run_experiment(cfg: ExperimentConfig) -> list[CellAggregate]:
    """Run every cell, write per-run reports, aggregates and per-cell
    summaries under the output directory, and return the aggregates."""
    out_dir = Path(cfg.output_dir)
    runs_dir = out_dir / "runs"
    runs_dir.mkdir(parents=True, exist_ok=True)
    full = _load_truth(cfg)
    aggregates: list[CellAggregate] = []
    cells = list(product(cfg.models, cfg.nc_list, cfg.p_list))
    for cell_index, (model, nc, p) in enumerate(cells):
        tag = _cell_tag(model, nc, p)
        reports: list[RunReport] = []
        fields: list[ClassField] = []
        truths: list[ClassField] = []
        n_failed = 0
        for r in range(cfg.realizations):
            seed = derive_seed(cfg.base_seed, cell_index, r)
            run_path = runs_dir / f"{tag}_r{r:03d}.json"
            try:
                report, truth, estimate, _ = run_single(
                    full, model, nc, p, seed, cfg.m_max, cfg.k_max, cfg.mode, cfg.max_sweeps
                )
            except Exception as exc:  # noqa: BLE001 - a failed run must not kill the cell
                n_failed += 1
                run_path.write_text(
                    json.dumps(
                        {"model": model, "nc": nc, "p": p, "realization": r,
                         "seed": seed, "error": str(exc)},
                        indent=2,
                    )
                    + "\n"
                )
                continue
            report.realization = r
            reports.append(report)
            fields.append(estimate)
            truths.append(truth)
            run_path.write_text(json.dumps(_report_json(report), indent=2) + "\n")
        if not reports:
            aggregates.append(
                CellAggregate(model, nc, p, float("nan"), float("nan"), float("nan"),
                              float("nan"), float("nan"), [], -1, -1, n_failed)
            )
            continue
        f_values = np.array([r.f for r in reports])
        costs = [r.cost for r in reports if r.cost is not None]
        agg = CellAggregate(
            model=model,
            n_classes=nc,
            p=p,
            f_mean=float(f_values.mean()),
            f_std=float(f_values.std(ddof=1)) if f_values.size > 1 else float("nan"),
            sweeps_mean=float(np.mean([r.sweeps for r in reports])),
            cost_mean=float(np.mean(costs)) if costs else float("nan"),
            time_mean=float(np.mean([r.wall_seconds for r in reports])),
            reports=reports,
            best_realization=reports[int(np.argmin(f_values))].realization,
            worst_realization=reports[int(np.argmax(f_values))].realization,
            n_failed=n_failed,
        )
        aggregates.append(agg)
        best = int(np.argmin(f_values))
        worst = int(np.argmax(f_values))
        h_max = cfg.variogram_h_max
        _write_histogram(out_dir / f"{tag}_hist_original.csv", truths[best], nc)
        _write_histogram(out_dir / f"{tag}_hist_best.csv", fields[best], nc)
        _write_histogram(out_dir / f"{tag}_hist_worst.csv", fields[worst], nc)
        _write_variograms(out_dir / f"{tag}_vario_original.csv", truths[best], h_max)
        _write_variograms(out_dir / f"{tag}_vario_best.csv", fields[best], h_max)
        _write_variograms(out_dir / f"{tag}_vario_worst.csv", fields[worst], h_max)
        if len(fields) > 1:
            std_map = class_std_map(fields)
            save_grid(
                out_dir / f"{tag}_stdmap.asc",
                GridField(std_map, np.zeros(std_map.shape, dtype=bool)),
            )
    _write_aggregates(out_dir / "aggregates.csv", aggregates)
    return aggregates


def _write_aggregates(path, aggregates: list[CellAggregate]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("model,nc,p,f_mean,f_std,sweeps_mean,cost_mean,time_mean\n")
        for a in aggregates:
            fh.write(
                f"{a.model},{a.n_classes},{a.p:g},{a.f_mean:.6f},{a.f_std:.6f},"
                f"{a.sweeps_mean:.3f},{a.cost_mean:.6g},{a.time_mean:.3f}\n"
            )
