"""RBF-kernel ε-insensitive support vector regression with swarm-tuned hyperparameters.

The dual problem is solved by an in-house pairwise decomposition: each pass
picks the maximally KKT-violating pair of dual variables and optimizes them
analytically (see kernels.smo_solve).  Features and target are standardized
internally; models carry their scaler so prediction takes raw units in and
returns raw units out.

Hyperparameter tuning searches (log10 C, log10 gamma) with one of the swarm
optimizers, scoring candidates by k-fold cross-validated MSE in raw target
units.  Fold standardization uses fold-train statistics only; the per-fold
squared-distance matrices are precomputed once per tuning session, which is
what makes a ~2000-candidate search affordable.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .dataset import Dataset
from .optimizers import ALGORITHMS, OptimizerConfig, Problem
from .rng import RngStream

__all__ = [
    "SvrParams",
    "Scaler",
    "SvrModel",
    "SvrConvergenceError",
    "TuneResult",
    "LOG10C_RANGE",
    "LOG10GAMMA_RANGE",
    "rbf_kernel",
    "fit_scaler",
    "apply_scaler",
    "fit_svr",
    "predict",
    "predict_batch",
    "cv_fitness",
    "tune_svr",
    "save_model",
    "load_model",
]

MODEL_FORMAT = "pirtemp-svr/1"
PRUNE_THRESHOLD = 1e-8
LOG10C_RANGE = (-2.0, 3.0)
LOG10GAMMA_RANGE = (-4.0, 1.0)
CV_PENALTY = 1e12  # fitness charged to candidates whose fold fit hits the step cap


class SvrConvergenceError(RuntimeError):
    """Dual solver hit its pass cap before reaching the KKT tolerance."""

    def __init__(self, kkt_gap: float, steps: int):
        super().__init__(
            f"dual solver stopped after {steps} passes with KKT violation {kkt_gap:.3e}")
        self.kkt_gap = kkt_gap
        self.steps = steps


@dataclass(frozen=True)
class SvrParams:
    c: float
    epsilon: float = 0.1  # tube half-width in scaled-target units
    gamma: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be > 0, got {self.c}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")


@dataclass(frozen=True)
class Scaler:
    x_mean: np.ndarray
    x_std: np.ndarray
    y_mean: float
    y_std: float

    @classmethod
    def fit(cls, features: np.ndarray, targets: np.ndarray) -> "Scaler":
        if features.shape[0] < 1:
            raise ValueError("cannot fit scaler on empty data")
        x_std = features.std(axis=0)
        x_std = np.where(x_std > 1e-12, x_std, 1.0)
        y_std = float(targets.std())
        if y_std <= 1e-12:
            y_std = 1.0
        return cls(features.mean(axis=0), x_std, float(targets.mean()), y_std)

    def transform_x(self, X: np.ndarray) -> np.ndarray:
        return (X - self.x_mean) / self.x_std

    def transform_y(self, y):
        return (y - self.y_mean) / self.y_std

    def inverse_y(self, ys):
        return ys * self.y_std + self.y_mean


def fit_scaler(train: Dataset) -> Scaler:
    """Standardization statistics (features and target) from training data only."""
    return Scaler.fit(train.features, train.targets)


def apply_scaler(scaler: Scaler, ds: Dataset) -> Dataset:
    """Standardized copy of ds using the scaler's training statistics."""
    meta = dict(ds.metadata)
    meta["standardized"] = True
    return Dataset(scaler.transform_x(ds.features),
                   np.asarray(scaler.transform_y(ds.targets)), meta)


def rbf_kernel(x: np.ndarray, y: np.ndarray, gamma: float) -> float:
    """exp(-gamma * ||x - y||^2) for a single pair of points."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    d = x - y
    return float(np.exp(-gamma * np.dot(d, d)))


@dataclass
class SvrModel:
    support_vectors: np.ndarray  # (s, k) in scaled feature space
    dual_coefs: np.ndarray  # (s,) alpha_i - alpha_i^*
    bias: float  # in scaled target space
    params: SvrParams
    scaler: Scaler

    @property
    def n_support(self) -> int:
        return self.support_vectors.shape[0]

    @property
    def n_features(self) -> int:
        return self.support_vectors.shape[1] if self.n_support else len(self.scaler.x_mean)

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != len(self.scaler.x_mean):
            raise ValueError(
                f"expected (n, {len(self.scaler.x_mean)}) features, got shape {X.shape}")
        Xs = np.ascontiguousarray(self.scaler.transform_x(X))
        if self.n_support == 0:
            ys = np.full(X.shape[0], self.bias)
        else:
            K = kernels.rbf_from_sq(kernels.sq_dists(Xs, self.support_vectors),
                                    self.params.gamma)
            ys = K @ self.dual_coefs + self.bias
        return self.scaler.inverse_y(ys)

    def predict(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1:
            raise ValueError(f"expected a 1-D feature vector, got shape {x.shape}")
        return float(self.predict_batch(x[None, :])[0])


def predict(model: SvrModel, x: np.ndarray) -> float:
    return model.predict(x)


def predict_batch(model: SvrModel, X: np.ndarray) -> np.ndarray:
    return model.predict_batch(X)


def _solve_scaled(Xs: np.ndarray, ys: np.ndarray, params: SvrParams,
                  tol: float, max_steps: int):
    """Dual solve on standardized data; raises on hitting the pass cap."""
    K = kernels.rbf_from_sq(kernels.sq_dists(Xs, Xs), params.gamma)
    beta, bias, steps, gap, converged = kernels.smo_solve(
        K, ys, params.c, params.epsilon, tol, max_steps)
    if not converged:
        raise SvrConvergenceError(gap, steps)
    return beta, bias


def fit_svr(train: Dataset, params: SvrParams, tol: float = 1e-3,
            max_steps: int = 100_000) -> SvrModel:
    """Standardize, solve the dual to KKT tolerance, prune near-zero coefficients."""
    if not (np.isfinite(tol) and tol > 0):
        raise ValueError(f"tol must be positive and finite, got {tol}")
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    scaler = Scaler.fit(train.features, train.targets)
    Xs = np.ascontiguousarray(scaler.transform_x(train.features))
    ys = np.ascontiguousarray(scaler.transform_y(train.targets))
    beta, bias = _solve_scaled(Xs, ys, params, tol, max_steps)
    keep = np.abs(beta) > PRUNE_THRESHOLD
    return SvrModel(Xs[keep].copy(), beta[keep].copy(), float(bias), params, scaler)


# --------------------------------------------------------------------------
# cross-validation and tuning
# --------------------------------------------------------------------------


def _fold_indices(n: int, folds: int, rng: RngStream) -> list[tuple[np.ndarray, np.ndarray]]:
    perm = rng.shuffled_indices(n)
    chunks = np.array_split(perm, folds)
    out = []
    for k in range(folds):
        val = chunks[k]
        train = np.concatenate([chunks[j] for j in range(folds) if j != k])
        out.append((train, val))
    return out


def _check_folds(n: int, folds: int) -> None:
    if folds < 2:
        raise ValueError(f"folds must be >= 2, got {folds}")
    if folds > n:
        raise ValueError(f"folds ({folds}) exceeds sample count ({n})")


def cv_fitness(params: SvrParams, train: Dataset, folds: int = 5, seed: int = 0,
               tol: float = 1e-3, max_steps: int = 100_000) -> float:
    """Mean validation MSE (raw target units) over seed-shuffled deterministic folds."""
    _check_folds(train.n, folds)
    rng = RngStream(seed)
    total = 0.0
    for tr_idx, va_idx in _fold_indices(train.n, folds, rng):
        model = fit_svr(train.take(tr_idx), params, tol, max_steps)
        pred = model.predict_batch(train.features[va_idx])
        total += float(np.mean((pred - train.targets[va_idx]) ** 2))
    return total / folds


class _CvObjective:
    """Fast fold-exact CV fitness over (log10 C, log10 gamma).

    Per fold, the validation-vs-train squared distances in fold-scaled feature
    space are fixed across candidates, so they are built once; each candidate
    then only pays the kernel exponentials and the dual solve.  Candidates
    whose fold solve hits the pass cap receive a large penalty fitness instead
    of raising, so a tuning run survives pathological corners of the search box.
    """

    def __init__(self, train: Dataset, folds: int, fold_rng: RngStream,
                 epsilon: float, tol: float, max_steps: int):
        _check_folds(train.n, folds)
        self.epsilon = epsilon
        self.tol = tol
        self.max_steps = max_steps
        self.folds = []
        for tr_idx, va_idx in _fold_indices(train.n, folds, fold_rng):
            scaler = Scaler.fit(train.features[tr_idx], train.targets[tr_idx])
            Xs_tr = np.ascontiguousarray(scaler.transform_x(train.features[tr_idx]))
            Xs_va = np.ascontiguousarray(scaler.transform_x(train.features[va_idx]))
            self.folds.append({
                "d2_tr": kernels.sq_dists(Xs_tr, Xs_tr),
                "d2_va": kernels.sq_dists(Xs_va, Xs_tr),
                "ys_tr": np.ascontiguousarray(scaler.transform_y(train.targets[tr_idx])),
                "y_va": train.targets[va_idx].copy(),
                "scaler": scaler,
            })

    def __call__(self, z: np.ndarray) -> float:
        params = SvrParams(10.0 ** float(z[0]), self.epsilon, 10.0 ** float(z[1]))
        total = 0.0
        for fold in self.folds:
            K = np.exp(-params.gamma * fold["d2_tr"])
            beta, bias, _steps, _gap, converged = kernels.smo_solve(
                K, fold["ys_tr"], params.c, params.epsilon, self.tol, self.max_steps)
            if not converged:
                return CV_PENALTY
            pred_s = np.exp(-params.gamma * fold["d2_va"]) @ beta + bias
            pred = fold["scaler"].inverse_y(pred_s)
            total += float(np.mean((pred - fold["y_va"]) ** 2))
        return total / len(self.folds)


@dataclass
class TuneResult:
    params: SvrParams
    model: SvrModel
    algorithm: str
    seed: int
    cv_mse: float
    curve: np.ndarray  # best-so-far CV MSE per optimizer iteration
    wall_time: float


def tune_svr(train: Dataset, algorithm: str = "iwoa",
             budget: Optional[OptimizerConfig] = None, seed: int = 0,
             folds: int = 5, epsilon: float = 0.1,
             cv_subsample: Optional[int] = None,
             tol: float = 1e-3, max_steps: int = 100_000,
             cv_max_steps: int = 30_000) -> TuneResult:
    """Search (log10 C, log10 gamma) by swarm optimization of CV MSE, then refit.

    cv_subsample caps the number of training rows used inside the CV fitness
    (rows chosen once, seed-deterministically); the final refit always uses
    the full training set.  Because that set can be several times larger than
    a CV fold, the refit retries with a doubled pass cap (up to 4x) before a
    convergence failure propagates.
    """
    t_start = time.perf_counter()
    if algorithm not in ALGORITHMS:
        raise KeyError(f"unknown algorithm {algorithm!r}; expected one of {list(ALGORITHMS)}")
    if budget is None:
        budget = OptimizerConfig(population=20, max_iters=50)
    master = RngStream(seed)

    cv_train = train
    if cv_subsample is not None and cv_subsample < train.n:
        if cv_subsample < folds:
            raise ValueError(f"cv_subsample ({cv_subsample}) smaller than folds ({folds})")
        pick = master.split("subsample").shuffled_indices(train.n)[:cv_subsample]
        cv_train = train.take(pick)

    objective = _CvObjective(cv_train, folds, master.split("folds"),
                             epsilon, tol, cv_max_steps)
    problem = Problem(dim=2, low=np.array([LOG10C_RANGE[0], LOG10GAMMA_RANGE[0]]),
                      high=np.array([LOG10C_RANGE[1], LOG10GAMMA_RANGE[1]]),
                      objective=objective, name="svr-cv")
    run = ALGORITHMS[algorithm](problem, budget, master.child_seed("optimizer"))

    params = SvrParams(10.0 ** float(run.best_x[0]), epsilon, 10.0 ** float(run.best_x[1]))
    for attempt, cap in enumerate((max_steps, 2 * max_steps, 4 * max_steps)):
        try:
            model = fit_svr(train, params, tol, cap)
            break
        except SvrConvergenceError:
            if attempt == 2:
                raise
    return TuneResult(params, model, algorithm, seed, float(run.best_f),
                      run.curve, time.perf_counter() - t_start)


# --------------------------------------------------------------------------
# persistence
# --------------------------------------------------------------------------


def save_model(model: SvrModel, path) -> None:
    doc = {
        "format": MODEL_FORMAT,
        "params": {"c": model.params.c, "epsilon": model.params.epsilon,
                   "gamma": model.params.gamma},
        "scaler": {"x_mean": model.scaler.x_mean.tolist(),
                   "x_std": model.scaler.x_std.tolist(),
                   "y_mean": model.scaler.y_mean, "y_std": model.scaler.y_std},
        "bias": model.bias,
        "support_vectors": model.support_vectors.tolist(),
        "dual_coefs": model.dual_coefs.tolist(),
    }
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def load_model(path) -> SvrModel:
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    fmt = doc.get("format")
    if fmt != MODEL_FORMAT:
        raise ValueError(f"{path}: unsupported model format {fmt!r} (expected {MODEL_FORMAT})")
    params = SvrParams(**doc["params"])
    sc = doc["scaler"]
    scaler = Scaler(np.array(sc["x_mean"], dtype=np.float64),
                    np.array(sc["x_std"], dtype=np.float64),
                    float(sc["y_mean"]), float(sc["y_std"]))
    sv = np.array(doc["support_vectors"], dtype=np.float64)
    if sv.size == 0:
        sv = sv.reshape(0, len(sc["x_mean"]))
    return SvrModel(sv, np.array(doc["dual_coefs"], dtype=np.float64),
                    float(doc["bias"]), params, scaler)
