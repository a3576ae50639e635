"""Kernel GNG training loop."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .kernels import KernelSpec
from .network import GngNetwork

__all__ = [
    "HyperParams",
    "WinnerPair",
    "TrainingTrace",
    "TraceRecord",
    "find_winners",
    "adapt",
    "accumulate_error",
    "train_step",
    "train",
    "default_schedule",
]


@dataclass(frozen=True)
class HyperParams:
    n_max: int = 100
    a_max: int = 50
    lam: int = 100
    alpha: float = 0.5
    beta: float = 0.995
    eps_winner: float = 0.2
    eps_neighbor: float = 0.006
    iterations: int = 20_000

    def __post_init__(self):
        checks = [
            (self.n_max >= 2, "n_max must be >= 2"),
            (self.a_max >= 0, "a_max must be >= 0"),
            (self.lam >= 1, "lambda must be >= 1"),
            (0 < self.alpha < 1, "alpha must lie in (0, 1)"),
            (0 < self.beta <= 1, "beta must lie in (0, 1]"),
            (0 < self.eps_neighbor <= self.eps_winner < 1,
             "need 0 < eps_neighbor <= eps_winner < 1"),
            (self.iterations >= 1, "iterations must be >= 1"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ValueError(msg)

    def replace(self, **changes) -> HyperParams:
        return HyperParams(**{**asdict(self), **changes})


class WinnerPair(NamedTuple):
    s1: int
    s2: int
    d2_s1: float


class TraceRecord(NamedTuple):
    iteration: int
    mse: float
    kmse: float
    units: int
    edges: int


@dataclass
class TrainingTrace:
    schedule: list[int] = field(default_factory=list)
    records: list[TraceRecord] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])

    def at(self, iteration: int) -> TraceRecord:
        for r in self.records:
            if r.iteration == iteration:
                return r
        raise KeyError(f"no trace record at iteration {iteration}")


def default_schedule(iterations: int) -> list[int]:
    """1, 2, 5, 10, 20, 50, ... up to ``iterations``, always ending on it."""
    out = []
    base = 1
    while base <= iterations:
        for m in (1, 2, 5):
            if m * base <= iterations:
                out.append(m * base)
        base *= 10
    if not out or out[-1] != iterations:
        out.append(iterations)
    return out


def _sqdist(net: GngNetwork, x: np.ndarray) -> np.ndarray:
    d = net.weights - x
    return np.einsum("ij,ij->i", d, d)


def find_winners(net: GngNetwork, x, spec: KernelSpec) -> WinnerPair:
    """Nearest and second-nearest unit to ``x`` under D^2; ties go to the smallest id."""
    if net.n_units < 2:
        raise ValueError("need at least 2 units to find winners")
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.dimension,):
        raise ValueError(f"input has shape {x.shape}, network dimension is {net.dimension}")
    sq = _sqdist(net, x)
    d2 = spec.distance_from_sqdist(sq)
    r1 = _argmin_tiebreak(d2, sq)
    best = d2[r1]
    d2[r1] = np.inf
    r2 = _argmin_tiebreak(d2, sq)
    ids = net._ids
    return WinnerPair(ids[r1], ids[r2], float(best))


def _argmin_tiebreak(d2: np.ndarray, sq: np.ndarray) -> int:
    # D^2 saturates in floating point far from x (e.g. Gaussian at small
    # gamma), so equal D^2 values fall back to Euclidean order, then row order
    r = int(d2.argmin())
    tied = d2 == d2[r]
    if tied.sum() > 1:
        cand = tied.nonzero()[0]
        r = int(cand[sq[cand].argmin()])
    return r


def adapt(net: GngNetwork, x, winners: WinnerPair, spec: KernelSpec, hp: HyperParams) -> None:
    """Move the winner and its direct neighbours down the gradient of D^2."""
    x = np.asarray(x, dtype=np.float64)
    row = net._row
    rows = np.array([net.row(winners.s1)] + [row[j] for j in net._nbrs[winners.s1]])
    W = net.weights[rows]
    diff = x - W
    coef = spec.gradient_coef_from_sqdist(np.einsum("ij,ij->i", diff, diff))
    # w - eps/2 * grad, with grad = -coef * (x - w)
    step = coef * (0.5 * hp.eps_neighbor)
    step[0] = coef[0] * (0.5 * hp.eps_winner)
    net.weights[rows] = W + step[:, None] * diff


def accumulate_error(net: GngNetwork, winners: WinnerPair) -> None:
    net.errors[net.row(winners.s1)] += winners.d2_s1


def train_step(net: GngNetwork, x, t: int, spec: KernelSpec, hp: HyperParams) -> WinnerPair:
    """One training iteration on an already drawn input ``x`` at iteration ``t``."""
    w = find_winners(net, x, spec)
    net.age_incident_edges(w.s1)
    accumulate_error(net, w)
    adapt(net, x, w, spec, hp)
    net.connect_or_refresh(w.s1, w.s2)
    # only the winner's edges were aged this step
    net.prune(hp.a_max, around=w.s1)
    if t % hp.lam == 0 and net.n_units < hp.n_max:
        net.insert_between_worst(hp.alpha)
    net.decay_errors(hp.beta)
    return w


def _as_points(data) -> np.ndarray:
    points = getattr(data, "points", data)
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"data must be a 2-D array, got shape {X.shape}")
    return X


def train(
    data,
    spec: KernelSpec,
    hp: HyperParams = HyperParams(),
    seed: int = 1,
    trace_schedule: Sequence[int] | None = None,
) -> tuple[GngNetwork, TrainingTrace]:
    """Train a network on ``data`` (a :class:`Dataset` or an N x D array).

    Random stream order: the two initial indices, then one index per
    iteration. ``trace_schedule`` lists iterations after which MSE/kMSE
    are recorded; ``None`` records nothing.
    """
    from .metrics import kmse, mse

    X = _as_points(data)
    n = X.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 data points, got {n}")
    if not np.all(np.isfinite(X)):
        raise ValueError("data contains NaN or Inf")

    schedule = sorted(set(int(t) for t in (trace_schedule or ())))
    if schedule and (schedule[0] < 1 or schedule[-1] > hp.iterations):
        raise ValueError(f"trace schedule must lie within 1..{hp.iterations}")
    trace = TrainingTrace(schedule=list(schedule))

    rng = np.random.default_rng(seed)
    i1 = int(rng.integers(n))
    i2 = i1
    while i2 == i1:
        i2 = int(rng.integers(n))
    net = GngNetwork.from_points(X[i1], X[i2])

    picks = rng.integers(n, size=hp.iterations)
    pending = iter(schedule)
    next_record = next(pending, None)
    for t in range(1, hp.iterations + 1):
        train_step(net, X[picks[t - 1]], t, spec, hp)
        if t == next_record:
            trace.records.append(
                TraceRecord(t, mse(net, X), kmse(net, X, spec), net.n_units, net.n_edges)
            )
            next_record = next(pending, None)
    return net, trace
