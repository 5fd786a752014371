"""Swarm optimizers: whale (plain and improved), grey wolf, and sparrow search.

All drivers minimize ``problem.objective`` over a box, run a fixed iteration
budget, and record the best-so-far value after every iteration, so curves are
monotone nonincreasing and have exactly ``max_iters`` entries.

The improved whale variant differs from the plain one in three ways:
chaotic tent-map initialization instead of uniform sampling, a sigmoid
convergence factor that holds the exploration coefficient high for the first
half of the run before collapsing it to zero, and a best-solution mutation
step driven by a pre-sampled Ornstein-Uhlenbeck path.  Each iteration the
mutation sweeps the whole population index range, perturbing the incumbent
best with the path value selected for (iteration, member) and keeping the
candidate only when it improves; accepted candidates compound within the
sweep.

Per-member random draws are scalars (one A and one C per whale per
iteration), and the same A both selects the exploration/exploitation branch
and scales the step.  Draw order per iteration is fixed: r1, r2, p, l, ridx
(plus algorithm-specific arrays), which makes runs reproducible per
(seed, config, backend).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .benchmarks import BenchmarkFunction, batch_evaluate
from .rng import OUParams, RngStream, ou_index, ou_path, tent_init

__all__ = [
    "Problem",
    "OptimizerConfig",
    "RunResult",
    "RunStats",
    "ALGORITHMS",
    "convergence_factor_linear",
    "convergence_factor_sigmoid",
    "encircle_update",
    "search_update",
    "spiral_update",
    "ou_perturb",
    "run_woa",
    "run_iwoa",
    "run_gwo",
    "run_ssa",
    "run_repeated",
    "summarize_runs",
    "save_curve_csv",
    "save_stats_csv",
]


# --------------------------------------------------------------------------
# problem / config / result types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Problem:
    """A box-constrained minimization problem.

    At least one of ``objective`` (single point -> float) and
    ``batch_objective`` (rows -> vector) must be given; the missing one is
    derived.  Bounds may be scalars or per-dimension arrays.
    """

    dim: int
    low: np.ndarray
    high: np.ndarray
    objective: Optional[Callable[[np.ndarray], float]] = None
    batch_objective: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.objective is None and self.batch_objective is None:
            raise ValueError("need objective or batch_objective")
        lo = np.broadcast_to(np.asarray(self.low, dtype=np.float64), (self.dim,)).copy()
        hi = np.broadcast_to(np.asarray(self.high, dtype=np.float64), (self.dim,)).copy()
        if np.any(lo > hi):
            raise ValueError("low must be <= high in every dimension")
        object.__setattr__(self, "low", lo)
        object.__setattr__(self, "high", hi)

    @classmethod
    def from_benchmark(cls, fn: BenchmarkFunction, dim: int) -> "Problem":
        lb, ub = fn.bounds(dim)
        return cls(
            dim=dim,
            low=lb,
            high=ub,
            batch_objective=lambda X, _fn=fn: batch_evaluate(_fn, X),
            name=fn.label,
        )

    def eval_batch(self, X: np.ndarray) -> np.ndarray:
        if self.batch_objective is not None:
            out = np.asarray(self.batch_objective(X), dtype=np.float64)
        else:
            out = np.array([self.objective(row) for row in X], dtype=np.float64)
        if out.shape != (X.shape[0],):
            raise ValueError(f"objective returned shape {out.shape}, expected ({X.shape[0]},)")
        return out

    def eval_one(self, x: np.ndarray) -> float:
        if self.objective is not None:
            return float(self.objective(x))
        return float(self.batch_objective(x[None, :])[0])


@dataclass(frozen=True)
class OptimizerConfig:
    population: int = 30
    max_iters: int = 1000
    spiral_b: float = 1.0
    ou: OUParams = field(default_factory=OUParams)
    ssa_producer_frac: float = 0.2
    ssa_scout_frac: float = 0.1
    ssa_safety: float = 0.8

    def __post_init__(self):
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        for nm in ("ssa_producer_frac", "ssa_scout_frac", "ssa_safety"):
            v = getattr(self, nm)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{nm} must be in [0, 1], got {v}")


@dataclass
class RunResult:
    algorithm: str
    best_x: np.ndarray
    best_f: float
    curve: np.ndarray  # best-so-far after each iteration, len == max_iters
    seed: int
    wall_time: float


@dataclass
class RunStats:
    algorithm: str
    n_runs: int
    mean: float
    std: float
    best: float


# --------------------------------------------------------------------------
# convergence factors and single-member position updates
# --------------------------------------------------------------------------


def _check_iter(lam: int, lam_max: int) -> None:
    if lam_max < 1:
        raise ValueError(f"lam_max must be >= 1, got {lam_max}")
    if not 0 <= lam <= lam_max:
        raise ValueError(f"lam must be in [0, {lam_max}], got {lam}")


def convergence_factor_linear(lam: int, lam_max: int) -> float:
    """Exploration coefficient decaying linearly from 2 to 0."""
    _check_iter(lam, lam_max)
    return 2.0 * (1.0 - lam / lam_max)


def convergence_factor_sigmoid(lam: int, lam_max: int) -> float:
    """Exploration coefficient following a falling sigmoid.

    Stays near 2 through the first half of the budget (slow early decay,
    preserving exploration), crosses the linear schedule's slope around 62%
    of the budget, then drops steeply and reaches exactly 0 at lam_max.
    """
    _check_iter(lam, lam_max)
    u = lam / lam_max
    return 4.0 * (1.0 / (1.0 + np.exp(6.0 * (u - 1.0))) - 0.5)


def _maybe_clip(x: np.ndarray, lb, ub) -> np.ndarray:
    if lb is None and ub is None:
        return x
    return np.clip(x, lb, ub)


def _coef(a: float, r1: float, r2: float) -> tuple[float, float]:
    return 2.0 * a * r1 - a, 2.0 * r2


def encircle_update(x, x_best, a, rng: Optional[RngStream] = None, *,
                    r1: Optional[float] = None, r2: Optional[float] = None,
                    lb=None, ub=None) -> np.ndarray:
    """Move x toward the best position (exploitation branch)."""
    if r1 is None:
        r1 = float(rng.random())
    if r2 is None:
        r2 = float(rng.random())
    A, C = _coef(a, r1, r2)
    new = np.asarray(x_best) - A * np.abs(C * np.asarray(x_best) - np.asarray(x))
    return _maybe_clip(new, lb, ub)


def search_update(x, x_rand, a, rng: Optional[RngStream] = None, *,
                  r1: Optional[float] = None, r2: Optional[float] = None,
                  lb=None, ub=None) -> np.ndarray:
    """Move x relative to a random member (exploration branch, |A| >= 1)."""
    if r1 is None:
        r1 = float(rng.random())
    if r2 is None:
        r2 = float(rng.random())
    A, C = _coef(a, r1, r2)
    new = np.asarray(x_rand) - A * np.abs(C * np.asarray(x_rand) - np.asarray(x))
    return _maybe_clip(new, lb, ub)


def spiral_update(x, x_best, b, rng: Optional[RngStream] = None, *,
                  l: Optional[float] = None, lb=None, ub=None) -> np.ndarray:
    """Log-spiral approach to the best position."""
    if l is None:
        l = float(rng.uniform(-1.0, 1.0))
    d = np.abs(np.asarray(x_best) - np.asarray(x))
    new = np.asarray(x_best) + d * np.exp(b * l) * np.cos(2.0 * np.pi * l)
    return _maybe_clip(new, lb, ub)


def ou_perturb(x_best, ou_value: float, lb=None, ub=None) -> np.ndarray:
    """Multiplicative perturbation of the incumbent best by one path value."""
    return _maybe_clip(np.asarray(x_best) * (1.0 + ou_value), lb, ub)


# --------------------------------------------------------------------------
# whale drivers
# --------------------------------------------------------------------------


def _whale_engine(problem: Problem, config: OptimizerConfig, seed: int,
                  improved: bool) -> RunResult:
    t_start = time.perf_counter()
    rng = RngStream(seed)
    n, dim, iters = config.population, problem.dim, config.max_iters
    lb, ub = problem.low, problem.high

    if improved:
        X = tent_init(n, dim, (lb, ub), rng.split("init"))
        path = ou_path(config.ou, rng.split("ou"))
        c1 = config.ou.length
    else:
        X = rng.split("init").uniform(lb, ub, (n, dim))
    X = np.ascontiguousarray(X, dtype=np.float64)
    draws = rng.split("iters")

    fit = problem.eval_batch(X)
    i = int(np.argmin(fit))
    best_x, best_f = X[i].copy(), float(fit[i])

    curve = np.empty(iters, dtype=np.float64)
    for lam in range(1, iters + 1):
        if improved:
            for m in range(1, n + 1):
                v = path[ou_index(lam, m, c1, iters, n)]
                cand = np.clip(best_x * (1.0 + v), lb, ub)
                cf = problem.eval_one(cand)
                if cf < best_f:
                    best_x, best_f = cand, cf
            a = convergence_factor_sigmoid(lam, iters)
        else:
            a = convergence_factor_linear(lam, iters)

        r1 = draws.random(n)
        r2 = draws.random(n)
        p = draws.random(n)
        l = draws.uniform(-1.0, 1.0, n)
        ridx = draws.integers(0, n, n)
        X = kernels.whale_step(X, best_x, a, config.spiral_b, r1, r2, p, l, ridx, lb, ub)

        fit = problem.eval_batch(X)
        i = int(np.argmin(fit))
        if fit[i] < best_f:
            best_x, best_f = X[i].copy(), float(fit[i])
        curve[lam - 1] = best_f

    return RunResult("iwoa" if improved else "woa", best_x, best_f, curve,
                     seed, time.perf_counter() - t_start)


def run_woa(problem: Problem, config: OptimizerConfig, seed: int) -> RunResult:
    """Plain whale optimizer: uniform init, linear factor, no mutation."""
    return _whale_engine(problem, config, seed, improved=False)


def run_iwoa(problem: Problem, config: OptimizerConfig, seed: int) -> RunResult:
    """Improved whale optimizer: tent init, sigmoid factor, OU mutation."""
    return _whale_engine(problem, config, seed, improved=True)


# --------------------------------------------------------------------------
# grey wolf driver
# --------------------------------------------------------------------------


def run_gwo(problem: Problem, config: OptimizerConfig, seed: int) -> RunResult:
    """Grey wolf optimizer with a best-so-far alpha/beta/delta hierarchy."""
    t_start = time.perf_counter()
    rng = RngStream(seed)
    n, dim, iters = config.population, problem.dim, config.max_iters
    lb, ub = problem.low, problem.high

    X = np.ascontiguousarray(rng.split("init").uniform(lb, ub, (n, dim)))
    draws = rng.split("iters")
    fit = problem.eval_batch(X)

    fa = fb = fd = np.inf
    xa = xb = xd = np.zeros(dim)

    def absorb(f: float, x: np.ndarray):
        nonlocal fa, fb, fd, xa, xb, xd
        if f < fa:
            fd, xd = fb, xb
            fb, xb = fa, xa
            fa, xa = f, x.copy()
        elif f < fb:
            fd, xd = fb, xb
            fb, xb = f, x.copy()
        elif f < fd:
            fd, xd = f, x.copy()

    for i in range(n):
        absorb(float(fit[i]), X[i])

    curve = np.empty(iters, dtype=np.float64)
    for lam in range(1, iters + 1):
        a = convergence_factor_linear(lam, iters)
        r1 = draws.random((3, n, dim))
        r2 = draws.random((3, n, dim))
        X = kernels.gwo_step(X, xa, xb, xd, a, r1, r2, lb, ub)
        fit = problem.eval_batch(X)
        for i in range(n):
            absorb(float(fit[i]), X[i])
        curve[lam - 1] = fa

    return RunResult("gwo", xa.copy(), float(fa), curve, seed,
                     time.perf_counter() - t_start)


# --------------------------------------------------------------------------
# sparrow search driver
# --------------------------------------------------------------------------


def run_ssa(problem: Problem, config: OptimizerConfig, seed: int) -> RunResult:
    """Sparrow search with producer/scrounger roles and anti-predator scouts."""
    t_start = time.perf_counter()
    rng = RngStream(seed)
    n, dim, iters = config.population, problem.dim, config.max_iters
    lb, ub = problem.low, problem.high
    n_prod = max(1, round(config.ssa_producer_frac * n))
    n_scout = max(1, round(config.ssa_scout_frac * n))

    X = np.ascontiguousarray(rng.split("init").uniform(lb, ub, (n, dim)))
    draws = rng.split("iters")
    fit = problem.eval_batch(X)
    i = int(np.argmin(fit))
    gbest_x, gbest_f = X[i].copy(), float(fit[i])

    curve = np.empty(iters, dtype=np.float64)
    for lam in range(1, iters + 1):
        order = np.argsort(fit)
        r2_alarm = float(draws.random())
        alpha = draws.random(n_prod)
        q_prod = draws.normal(size=n_prod)
        q_scr = draws.normal(size=n - n_prod)
        sgn_u = draws.random((n - n_prod, dim))
        scout_idx = draws.shuffled_indices(n)[:n_scout]
        k_gauss = draws.normal(size=n_scout)
        k_uni = draws.uniform(-1.0, 1.0, n_scout)
        X = kernels.ssa_step(X, fit, order, gbest_x, gbest_f, float(iters),
                             n_prod, n_scout, config.ssa_safety, r2_alarm,
                             alpha, q_prod, q_scr, sgn_u, scout_idx,
                             k_gauss, k_uni, lb, ub)
        fit = problem.eval_batch(X)
        i = int(np.argmin(fit))
        if fit[i] < gbest_f:
            gbest_x, gbest_f = X[i].copy(), float(fit[i])
        curve[lam - 1] = gbest_f

    return RunResult("ssa", gbest_x, gbest_f, curve, seed,
                     time.perf_counter() - t_start)


ALGORITHMS: dict[str, Callable[[Problem, OptimizerConfig, int], RunResult]] = {
    "woa": run_woa,
    "iwoa": run_iwoa,
    "gwo": run_gwo,
    "ssa": run_ssa,
}


# --------------------------------------------------------------------------
# repeated runs and exports
# --------------------------------------------------------------------------


def run_repeated(problem: Problem, config: OptimizerConfig, algorithm: str,
                 n_runs: int, master_seed: int) -> tuple[RunStats, list[RunResult]]:
    """Run an algorithm n_runs times with child seeds derived from master_seed."""
    if n_runs < 1:
        raise ValueError(f"n_runs must be >= 1, got {n_runs}")
    run_fn = ALGORITHMS.get(algorithm)
    if run_fn is None:
        raise KeyError(f"unknown algorithm {algorithm!r}; expected one of {list(ALGORITHMS)}")
    master = RngStream(master_seed)
    results = [run_fn(problem, config, master.child_seed(f"run{i:04d}"))
               for i in range(n_runs)]
    return summarize_runs(algorithm, results), results


def summarize_runs(algorithm: str, results: Sequence[RunResult]) -> RunStats:
    if not results:
        raise ValueError("cannot summarize zero runs")
    finals = np.array([r.best_f for r in results], dtype=np.float64)
    return RunStats(algorithm, len(results), float(finals.mean()),
                    float(finals.std()), float(finals.min()))


def save_curve_csv(path, curve: np.ndarray) -> None:
    """Write a convergence curve as CSV (iteration, best_fitness)."""
    with open(path, "w", encoding="utf-8") as f:
        f.write("iteration,best_fitness\n")
        for i, v in enumerate(curve, start=1):
            f.write(f"{i},{float(v)!r}\n")


def save_stats_csv(path, rows: Sequence[dict]) -> None:
    """Write per-(function, algorithm) summary rows as CSV."""
    cols = ["function", "algorithm", "dim", "mean", "std", "best"]
    with open(path, "w", encoding="utf-8") as f:
        f.write(",".join(cols) + "\n")
        for row in rows:
            vals = []
            for c in cols:
                v = row[c]
                vals.append(f"{float(v)!r}" if isinstance(v, (float, np.floating)) else str(v))
            f.write(",".join(vals) + "\n")
