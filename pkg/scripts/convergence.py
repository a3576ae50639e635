"""MSE and kMSE over iterations, averaged over runs, for every kernel.

Writes one CSV with columns kernel,iteration,mse,kmse.
"""

import argparse

import numpy as np

from kgng.experiments import DEFAULT_GAMMA, ExperimentConfig, load_dataset, run_experiment
from kgng.io import atomic_write_text, rows_to_csv
from kgng.kernels import KernelKind, KernelSpec
from kgng.trainer import HyperParams


def log_schedule(stop, per_decade=10):
    pts = np.unique(np.round(np.logspace(0, np.log10(stop), int(np.log10(stop) * per_decade) + 1)))
    return [int(p) for p in pts]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", default="blobs", help="generator name or CSV path")
    ap.add_argument("--iters", type=int, default=400_000)
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--out", default="convergence.csv")
    args = ap.parse_args()
    data = load_dataset(args.dataset)
    schedule = log_schedule(args.iters)
    rows = []
    for kind in KernelKind:
        cfg = ExperimentConfig(data, KernelSpec(kind, DEFAULT_GAMMA[kind]), HyperParams(iterations=args.iters),
                               runs=args.runs, trace_schedule=schedule)
        res = run_experiment(cfg)
        its, mse = res.mean_trace("mse")
        _, kmse = res.mean_trace("kmse")
        rows += [(kind.value, int(t), float(a), float(b)) for t, a, b in zip(its, mse, kmse)]
        print(f"{kind.value}: final mse {mse[-1]:.4g}, kmse {kmse[-1]:.4g}")
    atomic_write_text(args.out, rows_to_csv(("kernel", "iteration", "mse", "kmse"), rows))


if __name__ == "__main__":
    main()
