"""Radial kernels and the feature-space squared distance they induce.

Every kernel used here depends on its arguments only through r = ||x - w||,
so all arithmetic is expressed on the squared Euclidean distance ``r2``.
The gradient with respect to ``w`` always has the form ``-coef(r2) * (x - w)``
and ``gradient_coef_from_sqdist`` returns that scalar coefficient per row, which is
what the trainer uses for batched updates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "KernelKind",
    "KernelSpec",
    "kernel_value",
    "feature_distance_sq",
    "distance_gradient",
    "SINGULAR_RADIUS",
]

# Below this radius the gradient is taken to be zero.
SINGULAR_RADIUS = 1e-12


class KernelKind(str, enum.Enum):
    PLAIN = "plain"
    GAUSSIAN = "gaussian"
    LAPLACIAN = "laplacian"
    CAUCHY = "cauchy"
    IMQ = "imq"
    LOG = "log"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus its bandwidth ``gamma``.

    ``gamma`` is the exponent for the log kernel and is ignored for
    ``plain``, which is ordinary squared Euclidean distance.
    """

    kind: KernelKind
    gamma: float = 1.0

    def __post_init__(self):
        try:
            kind = KernelKind(self.kind)
        except ValueError:
            names = ", ".join(k.value for k in KernelKind)
            raise ValueError(f"unknown kernel {self.kind!r}; expected one of: {names}") from None
        object.__setattr__(self, "kind", kind)
        gamma = float(self.gamma)
        if kind is not KernelKind.PLAIN and not (gamma > 0 and np.isfinite(gamma)):
            raise ValueError(f"gamma must be > 0 for the {kind.value} kernel, got {self.gamma}")
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def plain(cls) -> KernelSpec:
        return cls(KernelKind.PLAIN)

    def __str__(self) -> str:
        if self.kind is KernelKind.PLAIN:
            return "plain"
        return f"{self.kind.value}(gamma={self.gamma:g})"

    # -- vectorised forms over squared distances -------------------------

    def kernel_from_sqdist(self, r2):
        """K(x, w) as a function of ``r2 = ||x - w||^2``."""
        r2 = np.asarray(r2, dtype=np.float64)
        g = self.gamma
        kind = self.kind
        if kind is KernelKind.GAUSSIAN:
            return np.exp(-r2 / (2.0 * g * g))
        if kind is KernelKind.LAPLACIAN:
            return np.exp(-np.sqrt(r2) / g)
        if kind is KernelKind.CAUCHY:
            return 1.0 / (1.0 + r2 / (g * g))
        if kind is KernelKind.IMQ:
            return 1.0 / np.sqrt(r2 + g * g)
        if kind is KernelKind.LOG:
            return -np.log1p(np.sqrt(r2) ** g)
        raise TypeError("the plain kind has no kernel form, only a distance")

    def distance_from_sqdist(self, r2):
        """D^2(x, w) as a function of ``r2``."""
        r2 = np.asarray(r2, dtype=np.float64)
        g = self.gamma
        kind = self.kind
        if kind is KernelKind.PLAIN:
            return r2 * 1.0
        if kind is KernelKind.GAUSSIAN:
            return -2.0 * np.expm1(-r2 / (2.0 * g * g))
        if kind is KernelKind.LAPLACIAN:
            return -2.0 * np.expm1(-np.sqrt(r2) / g)
        if kind is KernelKind.CAUCHY:
            u = r2 / (g * g)
            return 2.0 * u / (1.0 + u)
        if kind is KernelKind.IMQ:
            # 2 (1/g - 1/sqrt(r2 + g^2)), rearranged to avoid cancellation
            s = np.sqrt(r2 + g * g)
            return 2.0 * r2 / (g * s * (s + g))
        if kind is KernelKind.LOG:
            return 2.0 * np.log1p(np.sqrt(r2) ** g)
        raise AssertionError(kind)

    def gradient_coef_from_sqdist(self, r2):
        """``c`` such that the gradient of D^2 in ``w`` is ``-c * (x - w)``.

        Rows with ``sqrt(r2) < SINGULAR_RADIUS`` get ``c = 0``.
        """
        r2 = np.atleast_1d(np.asarray(r2, dtype=np.float64))
        g = self.gamma
        kind = self.kind
        if kind is KernelKind.PLAIN:
            c = np.full_like(r2, 2.0)
        elif kind is KernelKind.GAUSSIAN:
            c = (2.0 / (g * g)) * np.exp(-r2 / (2.0 * g * g))
        elif kind is KernelKind.CAUCHY:
            u = 1.0 + r2 / (g * g)
            c = 4.0 / (g * g * u * u)
        elif kind is KernelKind.IMQ:
            c = 2.0 / (r2 + g * g) ** 1.5
        else:
            r = np.sqrt(r2)
            with np.errstate(divide="ignore", invalid="ignore"):
                if kind is KernelKind.LAPLACIAN:
                    c = (2.0 / g) * np.exp(-r / g) / r
                else:
                    rg = r**g
                    c = 2.0 * g * rg / (r2 * (rg + 1.0))
        c[r2 < SINGULAR_RADIUS * SINGULAR_RADIUS] = 0.0
        return c


def _pair(x, w):
    x = np.asarray(x, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if x.ndim != 1 or w.ndim != 1 or x.shape != w.shape or x.size == 0:
        raise ValueError(f"dimension mismatch: x has shape {x.shape}, w has shape {w.shape}")
    return x, w


def kernel_value(spec: KernelSpec, x, w) -> float:
    """Closed-form K(x, w). Not defined for the plain kind."""
    x, w = _pair(x, w)
    if spec.kind is KernelKind.PLAIN:
        raise TypeError("the plain kind has no kernel form, only a distance")
    d = x - w
    return float(spec.kernel_from_sqdist(d @ d))


def feature_distance_sq(spec: KernelSpec, x, w) -> float:
    x, w = _pair(x, w)
    d = x - w
    return float(spec.distance_from_sqdist(d @ d))


def distance_gradient(spec: KernelSpec, x, w) -> np.ndarray:
    """Gradient of D^2(x, w) with respect to ``w``."""
    x, w = _pair(x, w)
    d = x - w
    return -spec.gradient_coef_from_sqdist(d @ d)[0] * d
