"""Command-line entry point: ``kgng {gen,train,metrics,sweep,table,render}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .datasets import GENERATORS, generate, save_csv
from .experiments import (
    DEFAULT_GAMMA,
    TABLE_ITERATIONS,
    ExperimentConfig,
    default_gamma_grid,
    load_dataset,
    sweep_gamma,
    table,
    table_to_csv,
)
from .io import atomic_write_text, load_network, save_edge_list, save_network, save_trace
from .kernels import KernelKind, KernelSpec
from .metrics import evaluate
from .render import render_svg
from .trainer import HyperParams, default_schedule, train

KERNEL_NAMES = [k.value for k in KernelKind]
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class CliError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _add_data_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("data")
    src = g.add_mutually_exclusive_group(required=False)
    src.add_argument("--data", help="CSV file with one point per row")
    src.add_argument("--dataset", choices=sorted(GENERATORS), help="synthetic generator")
    g.add_argument("--n", type=int, default=1000, help="points for --dataset (default 1000)")
    g.add_argument("--data-seed", type=int, default=1, help="seed for --dataset (default 1)")
    g.add_argument("--has-header", action="store_true", help="CSV has a header row")
    g.add_argument("--label-column", default=None, help="CSV column (index or name) to drop")
    g.add_argument("--no-normalize", action="store_true", help="skip z-score normalisation")


def _add_hyper_options(p: argparse.ArgumentParser, iters: int) -> None:
    d = HyperParams()
    g = p.add_argument_group("hyperparameters")
    g.add_argument("--iters", type=int, default=iters, help=f"iterations T (default {iters})")
    g.add_argument("--n-max", type=int, default=d.n_max)
    g.add_argument("--a-max", type=int, default=d.a_max)
    g.add_argument("--lambda", dest="lam", type=int, default=d.lam)
    g.add_argument("--alpha", type=float, default=d.alpha)
    g.add_argument("--beta", type=float, default=d.beta)
    g.add_argument("--eps-winner", type=float, default=d.eps_winner)
    g.add_argument("--eps-neighbor", type=float, default=d.eps_neighbor)


def _hyper(args) -> HyperParams:
    return HyperParams(n_max=args.n_max, a_max=args.a_max, lam=args.lam, alpha=args.alpha,
                       beta=args.beta, eps_winner=args.eps_winner,
                       eps_neighbor=args.eps_neighbor, iterations=args.iters)


def _source(args) -> str:
    if args.data:
        return args.data
    if args.dataset:
        return args.dataset
    raise CliError("one of --data or --dataset is required")


def _load(args, normalize: bool | None = None):
    if normalize is None:
        normalize = not args.no_normalize
    return load_dataset(_source(args), n=args.n, seed=args.data_seed, do_normalize=normalize,
                        has_header=args.has_header, label_column=args.label_column)


def _spec(kernel: str, gamma: float | None) -> KernelSpec:
    kind = KernelKind(kernel)
    return KernelSpec(kind, DEFAULT_GAMMA[kind] if gamma is None else gamma)


def cmd_gen(args) -> None:
    data = generate(args.dataset, n=args.n, seed=args.seed, noise=args.noise)
    if args.out:
        save_csv(data, args.out)
    else:
        for row in data.points:
            print(",".join(f"{v:.17g}" for v in row))


def cmd_train(args) -> None:
    spec = _spec(args.kernel, args.gamma)
    hp = _hyper(args)
    data = _load(args)
    if args.trace_every:
        schedule = list(range(args.trace_every, hp.iterations + 1, args.trace_every))
    else:
        schedule = default_schedule(hp.iterations)
    net, trace = train(data, spec, hp, seed=args.seed, trace_schedule=schedule if args.trace else None)
    meta = {
        "kernel": spec.kind.value,
        "gamma": spec.gamma,
        "iterations": hp.iterations,
        "seed": args.seed,
        "dataset": _source(args),
        "normalized": data.normalized,
        "hyperparams": {k: getattr(hp, k) for k in HyperParams.__dataclass_fields__},
    }
    if args.net:
        save_network(net, args.net, meta)
    if args.trace:
        save_trace(trace, args.trace)
    if args.edges:
        save_edge_list(net, args.edges)
    if args.svg:
        render_svg(net, data, args.svg)
    if not (args.net or args.trace or args.edges or args.svg):
        print(json.dumps(evaluate(net, data, spec).to_dict()))


def _net_and_data(args):
    net, meta = load_network(args.net)
    normalize = meta.get("normalized", True) and not args.no_normalize
    data = _load(args, normalize=normalize)
    return net, meta, data


def cmd_metrics(args) -> None:
    net, meta, data = _net_and_data(args)
    kernel = args.kernel or meta.get("kernel")
    if kernel is None:
        raise CliError("--kernel is required when the network file has no kernel metadata")
    gamma = args.gamma if args.gamma is not None else (
        meta.get("gamma") if kernel == meta.get("kernel") else None)
    report = evaluate(net, data, _spec(kernel, gamma))
    print(json.dumps(report.to_dict()))


def cmd_render(args) -> None:
    net, _, data = _net_and_data(args)
    render_svg(net, data, args.out)


def cmd_sweep(args) -> None:
    kind = KernelKind(args.kernel)
    gammas = args.gammas or default_gamma_grid(kind)
    cfg = ExperimentConfig(_load(args), KernelSpec(kind, gammas[0]), _hyper(args),
                           runs=args.runs, base_seed=args.seed, workers=args.workers)
    text = sweep_gamma(cfg, gammas).to_csv()
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_table(args) -> None:
    if not (args.degree_out or args.clustering_out):
        raise CliError("give at least one of --degree-out or --clustering-out")
    datasets = {}
    for src in args.datasets.split(","):
        src = src.strip()
        data = load_dataset(src, n=args.n, seed=args.data_seed, do_normalize=not args.no_normalize,
                            has_header=args.has_header, label_column=args.label_column)
        datasets[Path(src).stem if src.endswith(".csv") else src] = data
    kinds = [KernelKind(k.strip()) for k in args.kernels.split(",")]
    results = table(datasets, kinds, hp=_hyper(args), runs=args.runs, base_seed=args.seed,
                    workers=args.workers)
    if args.degree_out:
        atomic_write_text(args.degree_out, table_to_csv(results, datasets, "avg_degree"))
    if args.clustering_out:
        atomic_write_text(args.clustering_out, table_to_csv(results, datasets, "avg_clustering"))


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="kgng", description="Kernel growing neural gas.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="flat key=value file supplying defaults for flags")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("gen", help="write a synthetic dataset as CSV")
    p.add_argument("--dataset", required=True, choices=sorted(GENERATORS))
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--noise", type=float, default=None, help="override circles/moons noise")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_gen)
    subs["gen"] = p

    p = sub.add_parser("train", help="train one network")
    _add_data_options(p)
    p.add_argument("--kernel", choices=KERNEL_NAMES, default="plain")
    p.add_argument("--gamma", type=float, default=None,
                   help="kernel parameter (default 1.8; 3 for log)")
    _add_hyper_options(p, 20_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--net", help="network JSON output")
    p.add_argument("--trace", help="trace CSV output")
    p.add_argument("--trace-every", type=int, default=None,
                   help="record every K iterations (default: 1-2-5 log schedule)")
    p.add_argument("--edges", help="edge list output ('u v age' per line)")
    p.add_argument("--svg", help="SVG rendering output")
    p.set_defaults(func=cmd_train)
    subs["train"] = p

    p = sub.add_parser("metrics", help="print MSE, kMSE, degree and clustering as JSON")
    p.add_argument("--net", required=True)
    _add_data_options(p)
    p.add_argument("--kernel", choices=KERNEL_NAMES, default=None,
                   help="default: the kernel recorded in the network file")
    p.add_argument("--gamma", type=float, default=None)
    p.set_defaults(func=cmd_metrics)
    subs["metrics"] = p

    p = sub.add_parser("sweep", help="average metrics over a gamma grid")
    _add_data_options(p)
    p.add_argument("--kernel", choices=KERNEL_NAMES, required=True)
    p.add_argument("--gammas", type=_float_list, default=None,
                   help="comma-separated grid (default depends on kernel)")
    _add_hyper_options(p, TABLE_ITERATIONS)
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=1, help="first run seed")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", help="CSV output (default: stdout)")
    p.set_defaults(func=cmd_sweep)
    subs["sweep"] = p

    p = sub.add_parser("table", help="average degree / clustering per dataset and kernel")
    p.add_argument("--datasets", required=True,
                   help="comma-separated generator names and/or CSV paths")
    p.add_argument("--kernels", default=",".join(KERNEL_NAMES))
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--data-seed", type=int, default=1)
    p.add_argument("--has-header", action="store_true")
    p.add_argument("--label-column", default=None)
    p.add_argument("--no-normalize", action="store_true")
    _add_hyper_options(p, TABLE_ITERATIONS)
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=1, help="first run seed")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--degree-out")
    p.add_argument("--clustering-out")
    p.set_defaults(func=cmd_table)
    subs["table"] = p

    p = sub.add_parser("render", help="draw a network over its data as SVG")
    p.add_argument("--net", required=True)
    _add_data_options(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)
    subs["render"] = p
    return parser, subs


def _read_config(path: str) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _apply_config(sub: argparse.ArgumentParser, cfg: dict[str, str]) -> None:
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in cfg.items():
        if key == "lambda":
            key = "lam"
        action = actions.get(key)
        if action is None:
            raise CliError(f"config key {key!r} is not a flag of this command")
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() not in _TRUE | _FALSE:
                raise CliError(f"config key {key!r} expects true/false, got {value!r}")
            defaults[key] = value.lower() in _TRUE
        else:
            defaults[key] = value
        action.required = False
    sub.set_defaults(**defaults)


def main(argv=None) -> int:
    parser, subs = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    command = next((a for a in rest if a in subs), None)
    try:
        if known.config and command:
            _apply_config(subs[command], _read_config(known.config))
        args = parser.parse_args(argv)
        args.func(args)
    except (CliError, ValueError, KeyError, TypeError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"kgng {command or ''}: error: {msg}".replace(" :", ":"), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
