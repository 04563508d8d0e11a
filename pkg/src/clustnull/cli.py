"""Command-line interface.

Subcommands: generate, fit, sweep, stability, project, paperbench. Every
command prints the effective seed so any run can be replayed; output is
plain text (no ANSI color, so NO_COLOR needs no special handling). Exit
codes: 0 success, 2 invalid input or flags, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path

import numpy as np

from . import presets
from .bench import BenchConfig, _write_atomic, generate_scenario, paperbench
from .datagen import dataset_csv_bytes
from .errors import InvalidArgumentError, NumericFailureError
from .kmeans import Partition, kmeans_fit
from .metrics import SweepConfig, k_sweep, stability
from .pca import pca_fit, pca_project
from .preprocess import load_csv, standardize
from .report import emit_scatter, emit_stability, emit_sweep
from .rng import RngStream
from .skmeans import skmeans_fit


def _effective_seed(value: int | None) -> int:
    if value is None:
        return secrets.randbits(32)
    return value


def _features_arg(value: str | None) -> list[str] | None:
    if value is None:
        return None
    names = [part.strip() for part in value.split(",") if part.strip()]
    if not names:
        raise InvalidArgumentError("--features must name at least one column")
    return names


def _load_standardized(path: str, features: str | None):
    data = load_csv(path, _features_arg(features))
    z_data, _ = standardize(data)
    return data, z_data.values


def _add_io_flags(parser, with_features=True):
    parser.add_argument("--in", dest="infile", required=True, help="input CSV with header row")
    if with_features:
        parser.add_argument("--features", help="comma-separated feature columns (default: all but 'label')")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clustnull",
        description="Cluster-validity diagnostics against matched no-structure baselines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a synthetic dataset as CSV")
    p.add_argument("--dataset", required=True,
                   choices=["random", "gaussian", "correlated", "multimodal", "cytometer"])
    p.add_argument("--n", type=int, default=presets.DEFAULT_N)
    p.add_argument("--d", type=int, default=presets.DEFAULT_D)
    p.add_argument("--rho", type=float, default=presets.DEFAULT_RHO,
                   help="equicorrelation level for --dataset correlated")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("fit", help="fit one clustering solution")
    p.add_argument("--method", required=True, choices=["classical", "spherical"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-init", type=int, default=10)
    p.add_argument("--max-iter", type=int, default=300)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int)
    _add_io_flags(p)
    p.add_argument("--out", required=True, help="output JSON path")

    p = sub.add_parser("sweep", help="fit a range of k and report selection metrics")
    p.add_argument("--method", required=True, choices=["classical", "spherical"])
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--n-init", type=int, default=10)
    p.add_argument("--max-iter", type=int, default=300)
    p.add_argument("--tol", type=float)
    p.add_argument("--stability-runs", type=int, default=0,
                   help="per-k stability runs (0 disables)")
    p.add_argument("--seed", type=int)
    _add_io_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["json", "csv", "svg"], default="json")

    p = sub.add_parser("stability", help="initialization-stability protocol at fixed k")
    p.add_argument("--method", required=True, choices=["classical", "spherical"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--seed", type=int)
    _add_io_flags(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("project", help="PCA projection for plotting")
    p.add_argument("--dims", type=int, choices=[2, 3], default=2)
    p.add_argument("--labels", help="fit JSON whose labels color the points")
    _add_io_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "svg", "png"],
                   help="default: inferred from --out extension")

    p = sub.add_parser("paperbench", help="re-run all benchmark scenarios")
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--empirical", help="optional empirical CSV, analyzed as a sixth scenario")
    p.add_argument("--features", help="feature columns for --empirical")
    p.add_argument("--n", type=int, default=presets.DEFAULT_N)
    p.add_argument("--rho", type=float, default=presets.DEFAULT_RHO)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--n-init", type=int, default=10)
    p.add_argument("--stability-runs", type=int, default=20)
    p.add_argument("--no-figures", action="store_true", help="skip PNG figure rendering")
    return parser


def _cmd_generate(args, seed: int) -> int:
    config = BenchConfig(n=args.n, d=args.d, rho=args.rho)
    data = generate_scenario(args.dataset, RngStream(seed), config)
    _write_atomic(Path(args.out), dataset_csv_bytes(data))
    return 0


def _fit_result(args, z, seed: int):
    stream = RngStream(seed)
    if args.method == "classical":
        tol = 1e-4 if args.tol is None else args.tol
        return kmeans_fit(z, args.k, n_init=args.n_init, max_iter=args.max_iter,
                          tol=tol, stream=stream)
    tol = 1e-6 if args.tol is None else args.tol
    return skmeans_fit(z, args.k, n_init=args.n_init, max_iter=args.max_iter,
                       tol=tol, stream=stream)


def _cmd_fit(args, seed: int) -> int:
    data, z = _load_standardized(args.infile, args.features)
    result = _fit_result(args, z, seed)
    payload = {
        "method": args.method,
        "geometry": result.model.geometry,
        "k": args.k,
        "seed": seed,
        "objective": result.objective,
        "sse": result.sse,
        "iterations": result.iterations,
        "converged": result.converged,
        "feature_names": data.feature_names,
        "labels": [int(v) for v in result.partition.labels],
        "centroids": [[float(v) for v in row] for row in result.model.centroids],
    }
    _write_atomic(Path(args.out), (json.dumps(payload, indent=2) + "\n").encode("utf-8"))
    return 0


def _cmd_sweep(args, seed: int) -> int:
    _, z = _load_standardized(args.infile, args.features)
    config = SweepConfig(n_init=args.n_init, max_iter=args.max_iter, tol=args.tol,
                         stability_runs=args.stability_runs)
    sweep = k_sweep(z, args.k_min, args.k_max, args.method, config, RngStream(seed))
    _write_atomic(Path(args.out), emit_sweep(sweep, args.format))
    return 0


def _cmd_stability(args, seed: int) -> int:
    _, z = _load_standardized(args.infile, args.features)
    report = stability(z, args.k, args.method, args.runs, RngStream(seed))
    _write_atomic(Path(args.out), emit_stability(report, args.method))
    return 0


def _cmd_project(args) -> int:
    data, z = _load_standardized(args.infile, args.features)
    partition = None
    if args.labels:
        with open(args.labels, encoding="utf-8") as fh:
            fit_payload = json.load(fh)
        labels = np.asarray(fit_payload["labels"], dtype=np.int64)
        if labels.shape[0] != z.shape[0]:
            raise InvalidArgumentError(
                f"fit JSON has {labels.shape[0]} labels for {z.shape[0]} rows"
            )
        partition = Partition(labels, int(labels.max()) + 1)
    model = pca_fit(z, args.dims)
    projection = pca_project(model, z, partition)
    fmt = args.format or Path(args.out).suffix.lstrip(".").lower()
    if fmt == "png":
        from . import figures

        figures.save_scatter_figure(projection, args.out)
    elif fmt in ("csv", "svg"):
        _write_atomic(Path(args.out), emit_scatter(projection, fmt))
    else:
        raise InvalidArgumentError(f"cannot infer output format from '{args.out}'; use --format")
    return 0


def _cmd_paperbench(args, seed: int) -> int:
    config = BenchConfig(
        n=args.n,
        rho=args.rho,
        k_min=args.k_min,
        k_max=args.k_max,
        n_init=args.n_init,
        stability_runs=args.stability_runs,
        figures=not args.no_figures,
    )
    paperbench(seed, args.out_dir, config, empirical_csv=args.empirical,
               features=_features_arg(args.features))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "project":
            return _cmd_project(args)
        seed = _effective_seed(getattr(args, "seed", None))
        print(f"seed: {seed}")
        if args.command == "generate":
            return _cmd_generate(args, seed)
        if args.command == "fit":
            return _cmd_fit(args, seed)
        if args.command == "sweep":
            return _cmd_sweep(args, seed)
        if args.command == "stability":
            return _cmd_stability(args, seed)
        if args.command == "paperbench":
            return _cmd_paperbench(args, seed)
        raise InvalidArgumentError(f"unknown command '{args.command}'")
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericFailureError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
