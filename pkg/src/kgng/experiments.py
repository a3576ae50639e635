"""Multi-run experiments, gamma sweeps and the degree/clustering tables."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .datasets import Dataset, generate, load_csv, normalize
from .io import rows_to_csv
from .kernels import KernelKind, KernelSpec
from .metrics import MetricsReport, evaluate
from .network import GngNetwork
from .trainer import HyperParams, TrainingTrace, train

__all__ = [
    "DEFAULT_GAMMA",
    "TABLE_ITERATIONS",
    "ExperimentConfig",
    "ExperimentResult",
    "SweepResult",
    "RunError",
    "default_gamma_grid",
    "load_dataset",
    "run_experiment",
    "sweep_gamma",
    "table",
    "table_to_csv",
    "worker_count",
]

# Operating points used for the comparison tables.
DEFAULT_GAMMA = {
    KernelKind.PLAIN: 1.0,
    KernelKind.GAUSSIAN: 1.8,
    KernelKind.LAPLACIAN: 1.8,
    KernelKind.CAUCHY: 1.8,
    KernelKind.IMQ: 1.8,
    KernelKind.LOG: 3.0,
}
TABLE_ITERATIONS = 400_000
TABLE_HEADERS = {
    KernelKind.PLAIN: "GNG",
    KernelKind.GAUSSIAN: "Gaussian",
    KernelKind.LAPLACIAN: "Laplacian",
    KernelKind.CAUCHY: "Cauchy",
    KernelKind.IMQ: "IMQ",
    KernelKind.LOG: "Log",
}


class RunError(RuntimeError):
    def __init__(self, seed: int, cause: BaseException):
        super().__init__(f"run with seed {seed} failed: {cause}")
        self.seed = seed


def worker_count(requested: int | None = None) -> int:
    n = requested or os.cpu_count() or 1
    cap = os.environ.get("KGNG_THREADS")
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def default_gamma_grid(kind) -> list[float]:
    if KernelKind(kind) is KernelKind.LOG:
        return [float(g) for g in range(1, 11)]
    return [float(g) for g in np.round(np.arange(0.5, 5.0 + 1e-9, 0.25), 2)]


def load_dataset(source: str, n: int = 1000, seed: int = 1, do_normalize: bool = True,
                 has_header: bool = False, label_column=None) -> Dataset:
    """A generator name or a CSV path, z-scored unless ``do_normalize`` is false."""
    if os.path.exists(source) or source.endswith(".csv"):
        data = load_csv(source, has_header=has_header, label_column=label_column)
    else:
        data = generate(source, n=n, seed=seed)
    if do_normalize:
        data, _ = normalize(data)
    return data


@dataclass
class ExperimentConfig:
    data: Dataset
    spec: KernelSpec
    hp: HyperParams = HyperParams()
    runs: int = 10
    base_seed: int = 1
    trace_schedule: Sequence[int] | None = None
    workers: int | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")

    @property
    def seeds(self) -> list[int]:
        return list(range(self.base_seed, self.base_seed + self.runs))


@dataclass
class ExperimentResult:
    mean: MetricsReport
    reports: list[MetricsReport]
    networks: list[GngNetwork]
    traces: list[TrainingTrace]
    seeds: list[int]

    def std(self) -> MetricsReport:
        arr = np.array([[r.mse, r.kmse, r.avg_degree, r.avg_clustering] for r in self.reports])
        return MetricsReport(*map(float, arr.std(axis=0)))

    def mean_trace(self, column: str = "kmse") -> tuple[np.ndarray, np.ndarray]:
        """Iterations and the per-iteration mean of ``column`` across runs."""
        its = self.traces[0].column("iteration")
        vals = np.mean([t.column(column) for t in self.traces], axis=0)
        return its, vals


def _one_run(args):
    points, spec, hp, seed, schedule = args
    try:
        net, trace = train(points, spec, hp, seed=seed, trace_schedule=schedule)
        return net, trace, evaluate(net, points, spec)
    except Exception as exc:
        raise RunError(seed, exc) from exc


def _map(fn, jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(fn, jobs))


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Independent runs with seeds ``base_seed, base_seed + 1, ...``.

    Results are ordered by seed and do not depend on the worker count.
    """
    jobs = [(cfg.data.points, cfg.spec, cfg.hp, s, cfg.trace_schedule) for s in cfg.seeds]
    out = _map(_one_run, jobs, worker_count(cfg.workers))
    nets, traces, reports = (list(x) for x in zip(*out))
    return ExperimentResult(MetricsReport.mean(reports), reports, nets, traces, cfg.seeds)


@dataclass
class SweepResult:
    kind: KernelKind
    rows: list[dict] = field(default_factory=list)

    COLUMNS = ("gamma", "mse_mean", "mse_std", "deg_mean", "deg_std",
               "clust_mean", "clust_std", "runs")

    def column(self, name: str) -> np.ndarray:
        return np.array([r[name] for r in self.rows])

    def to_csv(self) -> str:
        return rows_to_csv(self.COLUMNS, ([r[c] for c in self.COLUMNS] for r in self.rows))


def sweep_gamma(cfg: ExperimentConfig, gammas: Sequence[float]) -> SweepResult:
    """Run the multi-run protocol once per gamma in a strictly increasing grid."""
    gammas = [float(g) for g in gammas]
    if not gammas:
        raise ValueError("gamma grid is empty")
    if any(b <= a for a, b in zip(gammas, gammas[1:])):
        raise ValueError("gamma grid must be strictly increasing")
    kind = cfg.spec.kind
    # flatten (gamma, seed) so every run can go to a separate worker
    jobs = [(cfg.data.points, KernelSpec(kind, g), cfg.hp, s, None)
            for g in gammas for s in cfg.seeds]
    out = _map(_one_run, jobs, worker_count(cfg.workers))
    result = SweepResult(kind)
    for i, g in enumerate(gammas):
        reps = [r for _, _, r in out[i * cfg.runs:(i + 1) * cfg.runs]]
        arr = np.array([[r.mse, r.avg_degree, r.avg_clustering] for r in reps])
        mean, std = arr.mean(axis=0), arr.std(axis=0)
        result.rows.append({
            "gamma": g,
            "mse_mean": float(mean[0]), "mse_std": float(std[0]),
            "deg_mean": float(mean[1]), "deg_std": float(std[1]),
            "clust_mean": float(mean[2]), "clust_std": float(std[2]),
            "runs": cfg.runs,
        })
    return result


def table(
    datasets: dict[str, Dataset],
    kinds: Sequence = tuple(KernelKind),
    hp: HyperParams | None = None,
    runs: int = 10,
    base_seed: int = 1,
    gammas: dict | None = None,
    workers: int | None = None,
) -> dict[str, dict[KernelKind, ExperimentResult]]:
    """Mean metrics per (dataset, kernel) at each kernel's operating gamma."""
    hp = hp or HyperParams(iterations=TABLE_ITERATIONS)
    gammas = {KernelKind(k): float(v) for k, v in (gammas or {}).items()}
    kinds = [KernelKind(k) for k in kinds]
    out: dict[str, dict[KernelKind, ExperimentResult]] = {}
    for name, data in datasets.items():
        out[name] = {}
        for kind in kinds:
            spec = KernelSpec(kind, gammas.get(kind, DEFAULT_GAMMA[kind]))
            cfg = ExperimentConfig(data, spec, hp, runs=runs, base_seed=base_seed, workers=workers)
            out[name][kind] = run_experiment(cfg)
    return out


def table_to_csv(results: dict[str, dict[KernelKind, ExperimentResult]], datasets: dict[str, Dataset],
                 metric: str = "avg_degree") -> str:
    """One row per dataset: ``dataset,D,<one column per kernel>``."""
    kinds = list(next(iter(results.values())).keys()) if results else []
    header = ["dataset", "D"] + [TABLE_HEADERS[k] for k in kinds]
    rows = []
    for name, per_kind in results.items():
        rows.append([name, datasets[name].dim]
                    + [getattr(per_kind[k].mean, metric) for k in kinds])
    return rows_to_csv(header, rows)
