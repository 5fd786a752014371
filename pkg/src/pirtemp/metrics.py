"""Regression quality metrics, hit-rate band analysis, and the split protocol.

Targets are Kelvin throughout; deviations are identical in K and °C, and the
"above 100 °C" restriction converts actuals with K − 273.15.  Hit rates use
closed intervals: a deviation exactly on the band edge counts as a hit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .rng import RngStream

__all__ = [
    "KELVIN_OFFSET",
    "DEFAULT_BANDS",
    "EvalReport",
    "split",
    "r_squared",
    "mse",
    "mae",
    "hit_rate",
    "hit_rate_above",
    "evaluate",
    "report_lines",
    "save_report",
    "comparison_csv",
]

KELVIN_OFFSET = 273.15
DEFAULT_BANDS = (1.0, 2.0, 3.0, 4.0)


def split(dataset: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seed-deterministic shuffled split; test gets round(n * fraction) rows."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    n = dataset.n
    n_test = round(n * test_fraction)
    if n_test < 1 or n_test >= n:
        raise ValueError(
            f"test_fraction {test_fraction} leaves an empty side for n={n}")
    perm = RngStream(seed).shuffled_indices(n)
    return dataset.take(perm[n_test:]), dataset.take(perm[:n_test])


def _pair(y, yhat) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y, dtype=np.float64)
    yhat = np.asarray(yhat, dtype=np.float64)
    if y.ndim != 1 or y.shape != yhat.shape:
        raise ValueError(f"need equal-length 1-D arrays, got {y.shape} and {yhat.shape}")
    if y.shape[0] < 1:
        raise ValueError("need at least one sample")
    return y, yhat


def r_squared(y, yhat) -> float:
    """1 - SS_res/SS_tot; undefined (error) when actuals have zero variance."""
    y, yhat = _pair(y, yhat)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot <= 0.0:
        raise ValueError("r_squared undefined: actuals have zero variance")
    return 1.0 - float(((y - yhat) ** 2).sum()) / ss_tot


def mse(y, yhat) -> float:
    y, yhat = _pair(y, yhat)
    return float(np.mean((y - yhat) ** 2))


def mae(y, yhat) -> float:
    y, yhat = _pair(y, yhat)
    return float(np.mean(np.abs(y - yhat)))


def hit_rate(y, yhat, band: float) -> float:
    """Fraction of samples with |deviation| <= band (closed interval)."""
    y, yhat = _pair(y, yhat)
    if not band > 0:
        raise ValueError(f"band must be > 0, got {band}")
    return float(np.mean(np.abs(y - yhat) <= band))


def hit_rate_above(y, yhat, band: float, threshold_c: float = 100.0) -> float:
    """hit_rate restricted to samples whose actual exceeds threshold_c (°C).

    Actuals are Kelvin; the threshold comparison uses y - 273.15.
    """
    y, yhat = _pair(y, yhat)
    mask = (y - KELVIN_OFFSET) > threshold_c
    if not mask.any():
        raise ValueError(f"no actuals above {threshold_c} °C")
    return hit_rate(y[mask], yhat[mask], band)


@dataclass
class EvalReport:
    r2: float
    mse: float
    mae: float
    hit_rates: dict  # band °C -> fraction, all samples
    hit_rates_above: dict  # band °C -> fraction, actuals > threshold only
    n_test: int
    n_above: int
    threshold_c: float = 100.0
    label: str = ""


def evaluate(model, test: Dataset, bands=DEFAULT_BANDS,
             threshold_c: float = 100.0, label: str = "") -> EvalReport:
    """Predict the test set and compute all metrics in °C-deviation space.

    The above-threshold map is empty when no actual exceeds the threshold.
    """
    bands = [float(b) for b in bands]
    if not bands or any(b <= 0 for b in bands):
        raise ValueError(f"bands must be positive, got {bands}")
    y = test.targets
    yhat = model.predict_batch(test.features)
    above = int(((y - KELVIN_OFFSET) > threshold_c).sum())
    rates = {b: hit_rate(y, yhat, b) for b in bands}
    rates_above = ({b: hit_rate_above(y, yhat, b, threshold_c) for b in bands}
                   if above else {})
    return EvalReport(r_squared(y, yhat), mse(y, yhat), mae(y, yhat),
                      rates, rates_above, test.n, above, threshold_c, label)


def report_lines(report: EvalReport) -> list[str]:
    """Flat key-value rendering, one `key = value` per line."""
    lines = []
    if report.label:
        lines.append(f"model = {report.label}")
    lines += [
        f"n_test = {report.n_test}",
        f"r2 = {report.r2!r}",
        f"mse = {report.mse!r}",
        f"mae = {report.mae!r}",
    ]
    for b in sorted(report.hit_rates):
        lines.append(f"hit_rate_{b:g}C = {report.hit_rates[b]!r}")
    lines.append(f"n_above_{report.threshold_c:g}C = {report.n_above}")
    for b in sorted(report.hit_rates_above):
        lines.append(
            f"hit_rate_above_{report.threshold_c:g}C_{b:g}C = {report.hit_rates_above[b]!r}")
    return lines


def save_report(report: EvalReport, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(report_lines(report)) + "\n")


def comparison_csv(path, reports: list[EvalReport]) -> None:
    """Cross-model comparison table: one row per report (model, R2, MSE, MAE)."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("model,r2,mse,mae\n")
        for r in reports:
            f.write(f"{r.label},{r.r2!r},{r.mse!r},{r.mae!r}\n")
