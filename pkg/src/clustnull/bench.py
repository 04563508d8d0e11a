"""End-to-end benchmark: run every synthetic scenario through both methods.

For each scenario this generates the dataset, standardizes it, sweeps k
for classical and spherical K-means, measures initialization stability at
the selected k, projects onto two principal axes, and emits the full set
of artifacts (CSV/JSON/SVG plus PNG figures) into one directory per
scenario. Randomness derives from (seed, scenario index), so the whole
output tree is a pure function of the seed.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import presets
from .datagen import (
    DataMatrix,
    dataset_csv_bytes,
    gen_correlated_gaussian,
    gen_cytometer,
    gen_multimodal,
    gen_random,
    gen_unimodal_gaussian,
)
from .errors import InvalidArgumentError
from .kmeans import ClusteringResult
from .metrics import KSweepReport, StabilityReport, SweepConfig, _fit, ari, k_sweep, stability
from .pca import PcaModel, Projection, pca_fit, pca_project
from .preprocess import load_csv, standardize
from .report import (
    ProfileTable,
    emit_profile,
    emit_scatter,
    emit_stability,
    emit_sweep,
    profile_csv,
)
from .rng import RngStream

SCENARIO_NAMES = ("random", "gaussian", "correlated", "multimodal", "cytometer")

# Stream derivation within one scenario.
_STREAM_DATA = 0
_STREAM_SWEEP = {"classical": 1, "spherical": 2}
_STREAM_STABILITY = {"classical": 3, "spherical": 4}
_EMPIRICAL_INDEX = 5


@dataclass
class BenchConfig:
    n: int = presets.DEFAULT_N
    d: int = presets.DEFAULT_D
    rho: float = presets.DEFAULT_RHO
    k_min: int = 2
    k_max: int = 10
    n_init: int = 10
    max_iter: int = 300
    stability_runs: int = 20
    figures: bool = True


@dataclass
class MethodAnalysis:
    method: str
    sweep: KSweepReport
    best: ClusteringResult
    stability: StabilityReport
    profile: ProfileTable
    projection: Projection
    truth_ari: float | None = None


@dataclass
class ScenarioAnalysis:
    name: str
    data: DataMatrix
    pca_model: PcaModel
    classical: MethodAnalysis
    spherical: MethodAnalysis

    def summary_row(self) -> dict:
        out = {"scenario": self.name, "n": self.data.n, "d": self.data.d}
        for analysis in (self.classical, self.spherical):
            out[analysis.method] = {
                "best_k": analysis.sweep.best_k,
                "elbow_k": analysis.sweep.elbow_k,
                "silhouette": max(row.silhouette for row in analysis.sweep.rows),
                "stability_mean": analysis.stability.mean,
                "stability_sd": analysis.stability.sd,
                "truth_ari": analysis.truth_ari,
            }
        return out


def generate_scenario(name: str, stream: RngStream, config: BenchConfig) -> DataMatrix:
    """Build the named synthetic dataset with the pinned defaults."""
    if name == "random":
        return gen_random(config.n, config.d, stream)
    if name == "gaussian":
        return gen_unimodal_gaussian(config.n, config.d, stream)
    if name == "correlated":
        return gen_correlated_gaussian(config.n, config.d, config.rho, stream)
    if name == "multimodal":
        if config.d != presets.DEFAULT_D:
            raise InvalidArgumentError(
                f"the pinned multimodal layout is {presets.DEFAULT_D}-dimensional, got d={config.d}"
            )
        return gen_multimodal(config.n, config.d, None, stream)
    if name == "cytometer":
        if config.d != presets.DEFAULT_D:
            raise InvalidArgumentError(
                f"the pinned cytometer layout is {presets.DEFAULT_D}-dimensional, got d={config.d}"
            )
        return gen_cytometer(config.n, stream)
    raise InvalidArgumentError(f"unknown scenario '{name}'")


def _analyze_method(z, data: DataMatrix, pca_model: PcaModel, method: str,
                    scenario_stream: RngStream, config: BenchConfig) -> MethodAnalysis:
    sweep_stream = scenario_stream.child(_STREAM_SWEEP[method])
    sweep = k_sweep(
        z, config.k_min, config.k_max, method,
        SweepConfig(n_init=config.n_init, max_iter=config.max_iter),
        sweep_stream,
    )
    # Replay the winning fit: same derived stream as inside the sweep.
    best = _fit(z, sweep.best_k, method, config.n_init, config.max_iter, None,
                sweep_stream.child(sweep.best_k).child(0))
    stab = stability(z, sweep.best_k, method, config.stability_runs,
                     scenario_stream.child(_STREAM_STABILITY[method]),
                     max_iter=config.max_iter)
    profile = emit_profile(best, data.feature_names)
    projection = pca_project(pca_model, z, best.partition)
    truth_ari = None
    if data.truth_labels is not None:
        truth_ari = ari(best.partition.labels, data.truth_labels)
    return MethodAnalysis(
        method=method,
        sweep=sweep,
        best=best,
        stability=stab,
        profile=profile,
        projection=projection,
        truth_ari=truth_ari,
    )


def analyze_scenario(name: str, data: DataMatrix, scenario_stream: RngStream,
                     config: BenchConfig) -> ScenarioAnalysis:
    """Run both methods over one dataset (no file output)."""
    z_data, _ = standardize(data)
    z = z_data.values
    pca_model = pca_fit(z, 2)
    classical = _analyze_method(z, data, pca_model, "classical", scenario_stream, config)
    spherical = _analyze_method(z, data, pca_model, "spherical", scenario_stream, config)
    return ScenarioAnalysis(name=name, data=data, pca_model=pca_model,
                            classical=classical, spherical=spherical)


def _write_atomic(path: Path, payload: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_scenario(analysis: ScenarioAnalysis, out_dir: Path, figures: bool = True) -> None:
    """Emit every artifact for one analyzed scenario."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_atomic(out_dir / "dataset.csv", dataset_csv_bytes(analysis.data))
    for m in (analysis.classical, analysis.spherical):
        tag = m.method
        _write_atomic(out_dir / f"sweep_{tag}.json", emit_sweep(m.sweep, "json"))
        _write_atomic(out_dir / f"sweep_{tag}.svg", emit_sweep(m.sweep, "svg"))
        _write_atomic(out_dir / f"stability_{tag}.json", emit_stability(m.stability, tag))
        _write_atomic(out_dir / f"profile_{tag}.csv", profile_csv(m.profile))
        _write_atomic(out_dir / f"scatter_{tag}.csv", emit_scatter(m.projection, "csv"))
        _write_atomic(out_dir / f"scatter_{tag}.svg", emit_scatter(m.projection, "svg"))
        if figures:
            from . import figures as figs  # deferred: pulls in matplotlib

            title = f"{analysis.name}: {tag}"
            figs.save_sweep_figure(m.sweep, out_dir / f"sweep_{tag}.png", title)
            figs.save_profile_figure(m.profile, out_dir / f"profile_{tag}.png",
                                     f"{title} profiles (k={m.sweep.best_k})")
            figs.save_scatter_figure(m.projection, out_dir / f"scatter_{tag}.png",
                                     f"{title} PCA (k={m.sweep.best_k})")


def _format_summary_table(rows: list[dict]) -> str:
    header = (
        f"{'scenario':<12} {'method':<10} {'best_k':>6} {'silhouette':>11} "
        f"{'elbow_k':>8} {'stab_mean':>10} {'stab_sd':>8}"
    )
    lines = [header, "-" * len(header)]
    for row in rows:
        for method in ("classical", "spherical"):
            m = row[method]
            elbow = "-" if m["elbow_k"] is None else str(m["elbow_k"])
            lines.append(
                f"{row['scenario']:<12} {method:<10} {m['best_k']:>6} "
                f"{m['silhouette']:>11.4f} {elbow:>8} "
                f"{m['stability_mean']:>10.4f} {m['stability_sd']:>8.4f}"
            )
    return "\n".join(lines)


def paperbench(seed: int, out_dir: str | Path, config: BenchConfig | None = None,
               empirical_csv: str | Path | None = None,
               features: list[str] | None = None,
               echo=print) -> list[dict]:
    """Re-run every scenario end to end; returns the summary rows.

    Writes one directory per scenario under `out_dir` plus a top-level
    summary.json. An optional empirical CSV is appended as a sixth
    scenario and analyzed with the same pipeline.
    """
    import json

    if config is None:
        config = BenchConfig()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    root = RngStream(seed)
    summary: list[dict] = []
    for index, name in enumerate(SCENARIO_NAMES):
        scenario_stream = root.child(index)
        data = generate_scenario(name, scenario_stream.child(_STREAM_DATA), config)
        analysis = analyze_scenario(name, data, scenario_stream, config)
        write_scenario(analysis, out_dir / name, figures=config.figures)
        summary.append(analysis.summary_row())
    if empirical_csv is not None:
        data = load_csv(empirical_csv, features)
        scenario_stream = root.child(_EMPIRICAL_INDEX)
        analysis = analyze_scenario("empirical", data, scenario_stream, config)
        write_scenario(analysis, out_dir / "empirical", figures=config.figures)
        summary.append(analysis.summary_row())
    payload = {"seed": seed, "scenarios": summary}
    _write_atomic(out_dir / "summary.json",
                  (json.dumps(payload, indent=2) + "\n").encode("utf-8"))
    echo(_format_summary_table(summary))
    return summary
