"""Kernel growing neural gas."""

from .datasets import Dataset, generate, load_csv, normalize
from .kernels import KernelKind, KernelSpec, distance_gradient, feature_distance_sq, kernel_value
from .metrics import MetricsReport, average_clustering, average_degree, evaluate, kmse, mse
from .network import GngNetwork
from .trainer import HyperParams, TrainingTrace, find_winners, train, train_step

__version__ = "0.1.0"
