"""Classic continuous test functions F1-F7 with their standard search ranges.

F1-F4 are unimodal (sphere, abs-sum+product, rotated hyper-ellipsoid, max
coordinate), F5-F7 multimodal (ackley and the two penalized sin landscapes).
All have optimum value 0; F1-F5 at the origin, F6 at -1*ones, F7 at +1*ones.
Evaluation dispatches to the active kernel backend so population-sized
batches stay cheap inside optimizer loops.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

__all__ = ["BenchmarkFunction", "FUNCTIONS", "get", "labels", "evaluate", "batch_evaluate"]


@dataclass(frozen=True)
class BenchmarkFunction:
    label: str
    name: str
    fid: int
    low: float
    high: float
    unimodal: bool
    optimum: float = 0.0

    def bounds(self, dim: int):
        """Per-dimension bound arrays (lb, ub)."""
        if dim < 1:
            raise ValueError(f"dim must be >= 1, got {dim}")
        return (np.full(dim, self.low), np.full(dim, self.high))


FUNCTIONS = {
    "F1": BenchmarkFunction("F1", "sphere", 1, -100.0, 100.0, True),
    "F2": BenchmarkFunction("F2", "abs_sum_product", 2, -10.0, 10.0, True),
    "F3": BenchmarkFunction("F3", "rotated_hyper_ellipsoid", 3, -100.0, 100.0, True),
    "F4": BenchmarkFunction("F4", "max_abs", 4, -100.0, 100.0, True),
    "F5": BenchmarkFunction("F5", "ackley", 5, -32.0, 32.0, False),
    "F6": BenchmarkFunction("F6", "penalized_shifted", 6, -50.0, 50.0, False),
    "F7": BenchmarkFunction("F7", "penalized_direct", 7, -50.0, 50.0, False),
}


def labels() -> list[str]:
    return list(FUNCTIONS)


def get(label: str) -> BenchmarkFunction:
    fn = FUNCTIONS.get(label.upper())
    if fn is None:
        raise KeyError(f"unknown benchmark {label!r}; expected one of {labels()}")
    return fn


def batch_evaluate(fn: BenchmarkFunction, X: np.ndarray) -> np.ndarray:
    """Evaluate fn on every row of X (n, dim)."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] < 1:
        raise ValueError(f"X must be 2-D with dim >= 1, got shape {X.shape}")
    return kernels.bench_batch(fn.fid, X)


def evaluate(fn: BenchmarkFunction, x: np.ndarray) -> float:
    """Evaluate fn at a single point x (dim,)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] < 1:
        raise ValueError(f"x must be 1-D with dim >= 1, got shape {x.shape}")
    return float(batch_evaluate(fn, x[None, :])[0])
