"""Synthetic generators, CSV ingestion and z-score normalisation."""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Dataset",
    "NormalizationStats",
    "GENERATORS",
    "generate",
    "load_csv",
    "normalize",
    "save_csv",
]


@dataclass(frozen=True)
class Dataset:
    points: np.ndarray
    name: str = ""
    normalized: bool = False

    def __post_init__(self):
        X = np.asarray(self.points, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError(f"points must be a non-empty N x D matrix, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise ValueError("points contain NaN or Inf")
        object.__setattr__(self, "points", X)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class NormalizationStats:
    means: np.ndarray
    stds: np.ndarray


def _square(n, rng, noise):
    return rng.random((n, 2))


def _blobs(n, rng, noise):
    centers = rng.uniform(-10.0, 10.0, size=(3, 2))
    sizes = [n // 3 + (1 if i < n % 3 else 0) for i in range(3)]
    parts = [c + rng.normal(0.0, 1.0, size=(m, 2)) for c, m in zip(centers, sizes)]
    return np.vstack(parts)


def _circles(n, rng, noise):
    n_out = n // 2
    n_in = n - n_out
    t_out = np.linspace(0.0, 2 * np.pi, n_out, endpoint=False)
    t_in = np.linspace(0.0, 2 * np.pi, n_in, endpoint=False)
    X = np.vstack([
        np.column_stack([np.cos(t_out), np.sin(t_out)]),
        0.5 * np.column_stack([np.cos(t_in), np.sin(t_in)]),
    ])
    if noise:
        X = X + rng.normal(0.0, noise, size=X.shape)
    return X


def _moons(n, rng, noise):
    n_up = n // 2
    n_low = n - n_up
    t_up = np.linspace(0.0, np.pi, n_up)
    t_low = np.linspace(0.0, np.pi, n_low)
    X = np.vstack([
        np.column_stack([np.cos(t_up), np.sin(t_up)]),
        np.column_stack([1.0 - np.cos(t_low), 0.5 - np.sin(t_low)]),
    ])
    if noise:
        X = X + rng.normal(0.0, noise, size=X.shape)
    return X


def _swiss_roll(n, rng, noise):
    t = 1.5 * np.pi * (1.0 + 2.0 * rng.random(n))
    h = 21.0 * rng.random(n)
    return np.column_stack([t * np.cos(t), h, t * np.sin(t)])


def _s_curve(n, rng, noise):
    t = 3.0 * np.pi * (rng.random(n) - 0.5)
    h = 2.0 * rng.random(n)
    return np.column_stack([np.sin(t), h, np.sign(t) * (np.cos(t) - 1.0)])


# name -> (generator, default noise)
GENERATORS = {
    "square": (_square, 0.0),
    "blobs": (_blobs, 0.0),
    "circles": (_circles, 0.05),
    "moons": (_moons, 0.05),
    "swiss_roll": (_swiss_roll, 0.0),
    "s_curve": (_s_curve, 0.0),
}


def generate(name: str, n: int = 1000, seed: int = 1, noise: float | None = None) -> Dataset:
    """Draw ``n`` points from a named synthetic distribution.

    ``noise`` overrides the Gaussian coordinate noise of ``circles`` and
    ``moons``; it has no effect on the other shapes.
    """
    try:
        fn, default_noise = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown dataset {name!r}; expected one of: {', '.join(GENERATORS)}") from None
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    X = fn(int(n), rng, default_noise if noise is None else float(noise))
    return Dataset(X, name=name)


def load_csv(
    path,
    has_header: bool = False,
    label_column: int | str | None = None,
) -> Dataset:
    """Read a comma-separated numeric matrix.

    ``label_column`` (index, or header name when ``has_header``) is dropped.
    Negative indices count from the end.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if has_header:
        if not rows:
            raise ValueError(f"{path}: missing header row")
        header, rows = [c.strip() for c in rows[0]], rows[1:]
    else:
        header = None
    if not rows:
        raise ValueError(f"{path}: no data rows")

    width = len(rows[0])
    drop = None
    if label_column is not None:
        if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
            if header is None or label_column not in header:
                raise ValueError(f"{path}: no column named {label_column!r}")
            drop = header.index(label_column)
        else:
            drop = int(label_column)
            if not -width <= drop < width:
                raise ValueError(f"{path}: label column {drop} out of range for {width} columns")
            drop %= width

    first_line = 2 if has_header else 1
    out = np.empty((len(rows), width - (drop is not None)))
    for i, row in enumerate(rows):
        line = first_line + i
        if len(row) != width:
            raise ValueError(f"{path}: row {line} has {len(row)} columns, expected {width}")
        j_out = 0
        for j, cell in enumerate(row):
            if j == drop:
                continue
            try:
                v = float(cell)
            except ValueError:
                raise ValueError(
                    f"{path}: cannot parse {cell.strip()!r} as a number at row {line}, column {j + 1}"
                ) from None
            if not np.isfinite(v):
                raise ValueError(f"{path}: non-finite value at row {line}, column {j + 1}")
            out[i, j_out] = v
            j_out += 1
    return Dataset(out, name=path.stem)


def save_csv(data: Dataset, path) -> None:
    """Headerless CSV, one point per row, 17 significant digits."""
    from .io import atomic_write_text

    lines = [",".join(f"{v:.17g}" for v in row) for row in data.points]
    atomic_write_text(path, "\n".join(lines) + "\n")


def normalize(data: Dataset) -> tuple[Dataset, NormalizationStats]:
    """Z-score each column with the population standard deviation.

    Columns with ``std < 1e-12`` are mapped to zeros and trigger a warning.
    """
    X = data.points
    means = X.mean(axis=0)
    stds = X.std(axis=0)
    centered = X - means
    degenerate = stds < 1e-12
    if degenerate.any():
        cols = ", ".join(str(j) for j in np.flatnonzero(degenerate))
        warnings.warn(f"constant column(s) {cols} set to zero during normalisation", RuntimeWarning,
                      stacklevel=2)
    Z = np.where(degenerate, 0.0, centered / np.where(degenerate, 1.0, stds))
    return Dataset(Z, name=data.name, normalized=True), NormalizationStats(means, stds)
