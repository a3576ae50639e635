"""Average degree and clustering tables over the synthetic datasets (and any CSVs given)."""

import argparse
from pathlib import Path

from kgng.datasets import GENERATORS
from kgng.experiments import TABLE_ITERATIONS, load_dataset, table, table_to_csv
from kgng.io import atomic_write_text
from kgng.trainer import HyperParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csvs", nargs="*", help="extra datasets as headerless numeric CSV files")
    ap.add_argument("--iters", type=int, default=TABLE_ITERATIONS)
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()
    datasets = {name: load_dataset(name) for name in GENERATORS}
    datasets.update({Path(p).stem: load_dataset(p) for p in args.csvs})
    res = table(datasets, hp=HyperParams(iterations=args.iters), runs=args.runs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for metric, fname in (("avg_degree", "table_degree.csv"), ("avg_clustering", "table_clustering.csv")):
        text = table_to_csv(res, datasets, metric)
        atomic_write_text(out / fname, text)
        print(text)


if __name__ == "__main__":
    main()
