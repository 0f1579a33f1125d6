"""Command-line interface.

Subcommands: classify, thin, synth, metrics, bench.  Exit codes: 0 success,
1 usage error, 2 data error, 3 non-convergence under --strict.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .discretize import DegenerateSampleError, build_thresholds
from .fieldgen import MaternSpec, generate_field
from .grid import thin_sample
from .gridio import (
    GridFormatError,
    load_class_grid,
    load_grid,
    load_mask,
    save_class_grid,
    save_grid,
    save_mask,
)
from .harness import ExperimentConfig, run_experiment
from .ising import IsingRunConfig, classify_ising
from .knn import classify_knn
from .metrics import misclassification_rate
from .optimize import OptimizerConfig
from .potts import PottsRunConfig, classify_potts

USAGE_ERROR = 1
DATA_ERROR = 2
NOT_CONVERGED = 3


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="spinfill", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="reconstruct the missing nodes of a grid file")
    c.add_argument("--input", required=True, help="grid file with NA at missing nodes")
    c.add_argument("--model", required=True, choices=("ising", "potts", "knn"))
    c.add_argument("--nc", required=True, type=int, help="number of classes")
    c.add_argument("--mmax", type=int, default=7, help="largest stencil size (odd)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--output", required=True, help="class grid file to write")
    c.add_argument("--mode", choices=("sequential", "checkerboard"), default="sequential")
    c.add_argument("--max-sweeps", type=int, default=1000)
    c.add_argument("--k", type=int, default=5, help="neighbor count for --model knn")
    c.add_argument("--strict", action="store_true",
                   help="exit 3 if any optimization hits the sweep cap")

    t = sub.add_parser("thin", help="randomly hide a fraction of a complete grid")
    t.add_argument("--input", required=True)
    t.add_argument("--p", required=True, type=float)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--train-out", required=True)
    t.add_argument("--mask-out", required=True)

    s = sub.add_parser("synth", help="generate a Whittle-Matern Gaussian field")
    s.add_argument("--lx", required=True, type=int)
    s.add_argument("--ly", required=True, type=int)
    s.add_argument("--mean", required=True, type=float)
    s.add_argument("--sigma", required=True, type=float)
    s.add_argument("--nu", required=True, type=float)
    s.add_argument("--kappa", required=True, type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", required=True)

    m = sub.add_parser("metrics", help="score an estimate against the truth")
    m.add_argument("--truth", required=True, help="class grid file")
    m.add_argument("--estimate", required=True, help="class grid file")
    m.add_argument("--mask", required=True, help="0/1 grid of validation nodes")
    m.add_argument("--variograms", help="CSV path for the estimate's variograms")
    m.add_argument("--histogram", help="CSV path for the estimate's class histogram")

    b = sub.add_parser("bench", help="run a benchmark described by a config file")
    b.add_argument("--config", required=True, help="key=value lines; see README")
    b.add_argument("--output-dir", required=True)
    return parser


def _cmd_classify(args) -> int:
    train = load_grid(args.input)
    if train.n_missing == 0:
        sys.stderr.write("input grid has no missing nodes; nothing to classify\n")
        return DATA_ERROR
    opt = OptimizerConfig(mode=args.mode, max_sweeps=args.max_sweeps, seed=0)
    if args.model == "ising":
        estimate, diags = classify_ising(
            train, IsingRunConfig(args.nc, args.mmax, opt, seed=args.seed)
        )
        converged = all(d.converged for d in diags)
    elif args.model == "potts":
        estimate, diag = classify_potts(
            train, PottsRunConfig(args.nc, args.mmax, opt, seed=args.seed)
        )
        converged = diag.converged
    else:
        thresholds = build_thresholds(train, args.nc)
        estimate = classify_knn(train, thresholds, args.k)
        converged = True
    save_class_grid(args.output, estimate)
    if args.strict and not converged:
        sys.stderr.write("optimization hit the sweep cap before rejection ratio 1\n")
        return NOT_CONVERGED
    return 0


def _cmd_thin(args) -> int:
    full = load_grid(args.input)
    train, vmask = thin_sample(full, args.p, args.seed)
    save_grid(args.train_out, train)
    save_mask(args.mask_out, vmask)
    return 0


def _cmd_synth(args) -> int:
    spec = MaternSpec(args.mean, args.sigma, args.nu, args.kappa, args.lx, args.ly, args.seed)
    save_grid(args.output, generate_field(spec))
    return 0


def _cmd_metrics(args) -> int:
    truth = load_class_grid(args.truth)
    estimate = load_class_grid(args.estimate)
    mask = load_mask(args.mask)
    f = misclassification_rate(truth, estimate, mask)
    print(f"F = {f:.6f}")
    n_classes = int(max(truth.values.max(), estimate.values.max()))
    if args.variograms:
        from .harness import _write_variograms

        _write_variograms(args.variograms, estimate, None)
    if args.histogram:
        from .harness import _write_histogram

        _write_histogram(args.histogram, estimate, n_classes)
    return 0


def _parse_bench_config(path) -> dict:
    entries = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}: line {lineno}: expected key=value")
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def _cmd_bench(args) -> int:
    raw = _parse_bench_config(args.config)
    synth = None
    input_path = raw.get("input")
    if input_path is None:
        synth = MaternSpec(
            mean=float(raw.get("mean", 0.0)),
            sigma=float(raw.get("sigma", 1.0)),
            nu=float(raw.get("nu", 1.0)),
            kappa=float(raw.get("kappa", 0.5)),
            lx=int(raw["lx"]),
            ly=int(raw["ly"]),
            seed=int(raw.get("field_seed", 0)),
        )
    cfg = ExperimentConfig(
        models=[m.strip() for m in raw.get("models", "ising,potts").split(",")],
        nc_list=[int(x) for x in raw.get("nc", "8").split(",")],
        p_list=[float(x) for x in raw.get("p", "0.33").split(",")],
        realizations=int(raw.get("realizations", "1")),
        base_seed=int(raw.get("seed", "0")),
        output_dir=args.output_dir,
        input_path=input_path,
        synth=synth,
        m_max=int(raw.get("mmax", "7")),
        k_max=int(raw.get("kmax", "25")),
        mode=raw.get("mode", "sequential"),
        max_sweeps=int(raw.get("max_sweeps", "1000")),
    )
    aggregates = run_experiment(cfg)
    for a in aggregates:
        print(
            f"{a.model} nc={a.n_classes} p={a.p:g}: "
            f"F = {100 * a.f_mean:.2f}% (std {100 * a.f_std:.2f}), "
            f"sweeps {a.sweeps_mean:.1f}, cost {a.cost_mean:.3g}"
        )
    return 0


_COMMANDS = {
    "classify": _cmd_classify,
    "thin": _cmd_thin,
    "synth": _cmd_synth,
    "metrics": _cmd_metrics,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (GridFormatError, DegenerateSampleError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return DATA_ERROR
    except (FileNotFoundError, PermissionError, IsADirectoryError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return DATA_ERROR
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return DATA_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
