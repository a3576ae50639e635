"""Quantization error and graph-structure metrics for a trained network."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .kernels import KernelSpec
from .network import GngNetwork

__all__ = [
    "MetricsReport",
    "min_sqdist",
    "mse",
    "kmse",
    "average_degree",
    "average_clustering",
    "local_clustering",
    "evaluate",
]

# Upper bound on the number of float64 entries in one difference block.
_BLOCK = 1 << 21


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    kmse: float
    avg_degree: float
    avg_clustering: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def mean(reports) -> MetricsReport:
        reports = list(reports)
        if not reports:
            raise ValueError("no reports to average")
        arr = np.array([[r.mse, r.kmse, r.avg_degree, r.avg_clustering] for r in reports])
        return MetricsReport(*map(float, arr.mean(axis=0)))


def _check(net: GngNetwork, X) -> np.ndarray:
    X = np.asarray(getattr(X, "points", X), dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("dataset is empty")
    if net.n_units == 0:
        raise ValueError("network is empty")
    if X.shape[1] != net.dimension:
        raise ValueError(f"data dimension {X.shape[1]} != network dimension {net.dimension}")
    return X


def min_sqdist(net: GngNetwork, data) -> np.ndarray:
    """Per-point squared Euclidean distance to the nearest unit."""
    X = _check(net, data)
    W = net.weights
    step = max(1, _BLOCK // (W.shape[0] * W.shape[1]))
    out = np.empty(X.shape[0])
    for lo in range(0, X.shape[0], step):
        d = X[lo:lo + step, None, :] - W[None, :, :]
        out[lo:lo + step] = np.einsum("nkd,nkd->nk", d, d).min(axis=1)
    return out


def mse(net: GngNetwork, data) -> float:
    """Mean over points of the squared distance to the nearest unit."""
    return float(min_sqdist(net, data).mean())


def kmse(net: GngNetwork, data, spec: KernelSpec) -> float:
    """Mean over points of the minimal feature-space distance D^2."""
    X = _check(net, data)
    W = net.weights
    step = max(1, _BLOCK // (W.shape[0] * W.shape[1]))
    total = 0.0
    for lo in range(0, X.shape[0], step):
        d = X[lo:lo + step, None, :] - W[None, :, :]
        d2 = spec.distance_from_sqdist(np.einsum("nkd,nkd->nk", d, d))
        total += d2.min(axis=1).sum()
    return float(total / X.shape[0])


def average_degree(net: GngNetwork) -> float:
    if net.n_units == 0:
        raise ValueError("network is empty")
    return 2.0 * net.n_edges / net.n_units


def local_clustering(adj: dict[int, set[int]]) -> dict[int, float]:
    """Unweighted local clustering ``2 t_i / (k_i (k_i - 1))``, 0 when k_i < 2."""
    out = {}
    for i, nb in adj.items():
        k = len(nb)
        if k < 2:
            out[i] = 0.0
            continue
        links = sum(len(adj[j] & nb) for j in nb) // 2
        out[i] = 2.0 * links / (k * (k - 1))
    return out


def average_clustering(net: GngNetwork) -> float:
    if net.n_units == 0:
        raise ValueError("network is empty")
    c = local_clustering(net.adjacency())
    return float(sum(c[i] for i in sorted(c)) / len(c))


def evaluate(net: GngNetwork, data, spec: KernelSpec) -> MetricsReport:
    return MetricsReport(
        mse=mse(net, data),
        kmse=kmse(net, data, spec),
        avg_degree=average_degree(net),
        avg_clustering=average_clustering(net),
    )
