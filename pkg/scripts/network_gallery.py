"""Render GNG and kernel GNG networks for every synthetic dataset (T = 2e4, seed 1)."""

import argparse
from pathlib import Path

from kgng.datasets import GENERATORS
from kgng.experiments import DEFAULT_GAMMA, load_dataset
from kgng.kernels import KernelKind, KernelSpec
from kgng.render import render_svg
from kgng.trainer import HyperParams, train


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures/networks")
    ap.add_argument("--iters", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    hp = HyperParams(iterations=args.iters)
    for name in GENERATORS:
        data = load_dataset(name, n=1000, seed=args.seed)
        for kind in KernelKind:
            spec = KernelSpec(kind, DEFAULT_GAMMA[kind])
            net, _ = train(data, spec, hp, seed=args.seed)
            path = out / f"{name}_{kind.value}.svg"
            render_svg(net, data, path)
            print(f"{path}: {net.n_units} units, {net.n_edges} edges")


if __name__ == "__main__":
    main()
