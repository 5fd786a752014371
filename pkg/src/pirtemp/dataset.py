"""Labeled regression datasets and their CSV on-disk form.

A dataset is an (n, k) feature matrix plus an n-vector of targets and a
free-form metadata dict (units, provenance, generator settings).  The PIR
task uses k = 5 features in a fixed column order, but nothing below assumes
a particular width.  CSV files round-trip floats exactly (shortest-repr
formatting), so regenerating with the same seed yields byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DataError",
    "Dataset",
    "PIR_FEATURE_NAMES",
    "PIR_TARGET_NAME",
    "save_csv",
    "load_csv",
]

PIR_FEATURE_NAMES = ("I_A", "t1_ms", "t2_s", "omega_rad", "T0_K")
PIR_TARGET_NAME = "temperature_K"


class DataError(ValueError):
    """Malformed or inconsistent on-disk data."""


@dataclass
class Dataset:
    features: np.ndarray  # (n, k)
    targets: np.ndarray  # (n,)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.features = np.ascontiguousarray(self.features, dtype=np.float64)
        self.targets = np.ascontiguousarray(self.targets, dtype=np.float64)
        if self.features.ndim != 2:
            raise DataError(f"features must be 2-D, got shape {self.features.shape}")
        n = self.features.shape[0]
        if n < 1:
            raise DataError("dataset must contain at least one sample")
        if self.targets.shape != (n,):
            raise DataError(
                f"targets shape {self.targets.shape} does not match {n} feature rows")
        if not (np.all(np.isfinite(self.features)) and np.all(np.isfinite(self.targets))):
            raise DataError("dataset contains non-finite values")

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def width(self) -> int:
        return self.features.shape[1]

    def take(self, idx) -> "Dataset":
        """Row subset (copy) sharing this dataset's metadata."""
        idx = np.asarray(idx)
        return Dataset(self.features[idx].copy(), self.targets[idx].copy(),
                       dict(self.metadata))

    def column_names(self) -> tuple[list[str], str]:
        names = self.metadata.get("feature_names")
        if names is None:
            names = (list(PIR_FEATURE_NAMES) if self.width == len(PIR_FEATURE_NAMES)
                     else [f"x{i}" for i in range(self.width)])
        target = self.metadata.get("target_name", PIR_TARGET_NAME)
        return list(names), target


def save_csv(ds: Dataset, path) -> None:
    """Write one header line plus one row per sample; floats keep full precision."""
    names, target = ds.column_names()
    if len(names) != ds.width:
        raise ValueError(f"{len(names)} column names for {ds.width} features")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(names + [target]) + "\n")
        for row, y in zip(ds.features, ds.targets):
            f.write(",".join(repr(float(v)) for v in row) + f",{float(y)!r}\n")


def load_csv(path) -> Dataset:
    """Read a dataset written by save_csv; malformed rows report line numbers."""
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip()
        if not header:
            raise DataError(f"{path}: empty file")
        cols = header.split(",")
        if len(cols) < 2:
            raise DataError(f"{path}: header needs >= 2 columns, got {header!r}")
        feats, targs = [], []
        for lineno, line in enumerate(f, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(cols):
                raise DataError(
                    f"{path}: line {lineno}: expected {len(cols)} fields, got {len(parts)}")
            try:
                vals = [float(p) for p in parts]
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from None
            feats.append(vals[:-1])
            targs.append(vals[-1])
    if not feats:
        raise DataError(f"{path}: no data rows")
    try:
        return Dataset(np.array(feats), np.array(targs),
                       {"feature_names": cols[:-1], "target_name": cols[-1]})
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None
