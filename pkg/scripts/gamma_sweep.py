"""MSE, average degree and clustering against gamma for each kernel (one CSV per kernel)."""

import argparse
from pathlib import Path

from kgng.experiments import ExperimentConfig, default_gamma_grid, load_dataset, sweep_gamma
from kgng.io import atomic_write_text
from kgng.kernels import KernelKind, KernelSpec
from kgng.trainer import HyperParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", default="blobs", help="generator name or CSV path")
    ap.add_argument("--kernels", default="gaussian,laplacian,cauchy,imq,log")
    ap.add_argument("--iters", type=int, default=400_000)
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--out", default="figures/sweeps")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    data = load_dataset(args.dataset)
    for name in args.kernels.split(","):
        kind = KernelKind(name)
        grid = default_gamma_grid(kind)
        cfg = ExperimentConfig(data, KernelSpec(kind, grid[0]), HyperParams(iterations=args.iters), runs=args.runs)
        res = sweep_gamma(cfg, grid)
        path = out / f"{Path(args.dataset).stem}_{kind.value}.csv"
        atomic_write_text(path, res.to_csv())
        print(path)


if __name__ == "__main__":
    main()
