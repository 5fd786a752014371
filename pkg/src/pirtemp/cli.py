"""Command-line entry point: bench | gen-data | tune | eval | predict.

Every command reads an optional TOML config (section per command), applies a
preset, then command-line flags, in that precedence order (flags win).  Every
artifact gets a sidecar `<name>.meta.json` embedding the tool version, a hash
of the effective config, the master seed, and the active kernel backend;
re-running with the same triple reproduces artifacts byte for byte, so no
output ever contains wall-clock times or absolute paths.

Exit codes: 0 success, 2 usage/validation, 3 data error (missing, malformed,
or would-overwrite files), 4 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import __version__
from .benchmarks import get as get_benchmark
from .dataset import DataError, load_csv, save_csv
from .kernels import ACTIVE_BACKEND
from .metrics import comparison_csv, evaluate, report_lines, split
from .optimizers import (ALGORITHMS, OptimizerConfig, Problem, run_repeated,
                         save_curve_csv, save_stats_csv)
from .rng import RngStream
from .svr import SvrConvergenceError, load_model, save_model, tune_svr
from .thermal import (SCENARIO_RANGES, SurrogateConfig, generate_dataset,
                      in_scenario_ranges)

__all__ = ["main"]

RISE_LIMIT_C = 125.0  # allowed temperature rise above the scenario's T0

PRESETS = {
    "paper": {
        "bench": {"functions": "F1,F2,F3,F4,F5,F6,F7", "dims": "10,30,50",
                  "algorithms": "gwo,ssa,woa,iwoa", "runs": 30, "iters": 1000,
                  "population": 30},
        "gen-data": {"n": 4000},
        "tune": {"algo": "iwoa", "population": 20, "iters": 50, "folds": 5,
                 "subsample": 0, "test_fraction": 0.3, "split_seed": 101},
        "eval": {"test_fraction": 0.3, "split_seed": 101},
    },
    "desk": {
        "bench": {"functions": "F1,F2,F3,F4,F5,F6,F7", "dims": "30",
                  "algorithms": "gwo,ssa,woa,iwoa", "runs": 10, "iters": 300,
                  "population": 30},
        "gen-data": {"n": 4000},
        "tune": {"algo": "iwoa", "population": 20, "iters": 50, "folds": 5,
                 "subsample": 700, "test_fraction": 0.3, "split_seed": 101},
        "eval": {"test_fraction": 0.3, "split_seed": 101},
    },
}

DEFAULTS = PRESETS["desk"]


class UsageError(ValueError):
    """Bad flags/labels/values: exits with code 2."""


# --------------------------------------------------------------------------
# config plumbing and artifact writing
# --------------------------------------------------------------------------


def _load_config(path) -> dict:
    if path is None:
        return {}
    p = Path(path)
    if not p.is_file():
        raise DataError(f"config file not found: {p}")
    try:
        with open(p, "rb") as f:
            return tomllib.load(f)
    except tomllib.TOMLDecodeError as exc:
        raise DataError(f"{p}: invalid TOML: {exc}") from None


def _effective(command: str, args, config: dict, flag_names: list[str]) -> dict:
    """Merge defaults <- preset <- config section <- explicit CLI flags."""
    preset = args.preset or "desk"
    if preset not in PRESETS:
        raise UsageError(f"unknown preset {preset!r}; expected one of {list(PRESETS)}")
    eff = dict(DEFAULTS.get(command, {}))
    eff.update(PRESETS[preset].get(command, {}))
    section = config.get(command.replace("-", "_"), {})
    if not isinstance(section, dict):
        raise DataError(f"config section [{command.replace('-', '_')}] must be a table")
    eff.update(section)
    for nm in flag_names:
        v = getattr(args, nm, None)
        if v is not None:
            eff[nm] = v
    eff["seed"] = args.seed if args.seed is not None else int(eff.get("seed", 0))
    return eff


def _surrogate_config(config: dict) -> SurrogateConfig:
    section = config.get("surrogate", {})
    if not isinstance(section, dict):
        raise DataError("config section [surrogate] must be a table")
    known = {"resistance", "mass", "cp_pir", "k0", "t_amb", "f", "ode_dt"}
    unknown = set(section) - known
    if unknown:
        raise DataError(f"unknown [surrogate] keys: {sorted(unknown)}")
    return SurrogateConfig(**{k: float(v) for k, v in section.items()})


def _config_hash(eff: dict) -> str:
    blob = json.dumps(eff, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


class _Writer:
    """Write-once artifact writer that drops a metadata sidecar per file."""

    def __init__(self, command: str, eff: dict, overwrite: bool):
        self.meta = {
            "tool": "pirtemp",
            "version": __version__,
            "command": command,
            "config": eff,
            "config_hash": _config_hash(eff),
            "master_seed": eff.get("seed", 0),
            "backend": ACTIVE_BACKEND,
        }
        self.overwrite = overwrite
        self.written = []

    def _claim(self, path: Path) -> Path:
        if path.exists() and not self.overwrite:
            raise DataError(f"refusing to overwrite {path} (pass --overwrite)")
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def sidecar(self, path: Path) -> None:
        side = self._claim(Path(str(path) + ".meta.json"))
        with open(side, "w", encoding="utf-8", newline="\n") as f:
            json.dump(self.meta, f, indent=1, sort_keys=True, default=str)
            f.write("\n")
        self.written.append(side)

    def emit(self, path, write_fn) -> Path:
        """write_fn(path) produces the artifact; sidecar is added alongside."""
        path = self._claim(Path(path))
        write_fn(path)
        self.written.append(path)
        self.sidecar(path)
        return path


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _parse_list(text: str, what: str) -> list[str]:
    items = [s.strip() for s in str(text).split(",") if s.strip()]
    if not items:
        raise UsageError(f"empty {what} list")
    return items


def cmd_bench(args, config: dict) -> int:
    eff = _effective("bench", args, config,
                     ["functions", "dims", "algorithms", "runs", "iters", "population"])
    functions = [get_benchmark(lab) for lab in _parse_list(eff["functions"], "function")]
    algorithms = [a.lower() for a in _parse_list(eff["algorithms"], "algorithm")]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}; expected one of {list(ALGORITHMS)}")
    try:
        dims = [int(d) for d in _parse_list(str(eff["dims"]), "dim")]
    except ValueError as exc:
        raise UsageError(f"bad dims: {exc}") from None
    runs, iters, pop = int(eff["runs"]), int(eff["iters"]), int(eff["population"])
    seed = int(eff["seed"])

    writer = _Writer("bench", eff, args.overwrite)
    out_dir = Path(args.out_dir)
    master = RngStream(seed)
    cfg = OptimizerConfig(population=pop, max_iters=iters)

    rows = []
    curve_files = []
    for fn in functions:
        for dim in dims:
            problem = Problem.from_benchmark(fn, dim)
            for algo in algorithms:
                combo_seed = master.child_seed(f"{fn.label}/dim{dim}/{algo}")
                stats, results = run_repeated(problem, cfg, algo, runs, combo_seed)
                rows.append({"function": fn.label, "algorithm": algo, "dim": dim,
                             "mean": stats.mean, "std": stats.std, "best": stats.best})
                order = sorted(range(len(results)), key=lambda i: results[i].best_f)
                median = results[order[(len(results) - 1) // 2]]
                curve_files.append(
                    (out_dir / f"curve_{fn.label}_{algo}_dim{dim}.csv", median.curve))
                print(f"{fn.label} dim={dim} {algo}: mean={stats.mean:.3e} "
                      f"std={stats.std:.3e} best={stats.best:.3e}")

    writer.emit(out_dir / "bench_stats.csv", lambda p: save_stats_csv(p, rows))
    for path, curve in curve_files:
        writer.emit(path, lambda p, c=curve: save_curve_csv(p, c))
    print(f"wrote {len(writer.written)} files to {out_dir}")
    return 0


def cmd_gen_data(args, config: dict) -> int:
    eff = _effective("gen-data", args, config, ["n"])
    n = int(eff["n"])
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    scfg = _surrogate_config(config)
    eff["surrogate"] = {k: getattr(scfg, k) for k in
                       ("resistance", "mass", "cp_pir", "k0", "t_amb", "f", "ode_dt")}
    writer = _Writer("gen-data", eff, args.overwrite)
    ds = generate_dataset(n, scfg, int(eff["seed"]))
    out = Path(args.out) if args.out else Path(args.out_dir) / "dataset.csv"
    writer.emit(out, lambda p: save_csv(ds, p))
    print(f"wrote {ds.n} samples to {out}")
    return 0


def cmd_tune(args, config: dict) -> int:
    eff = _effective("tune", args, config,
                     ["algo", "population", "iters", "folds", "subsample",
                      "test_fraction", "split_seed"])
    algo = str(eff["algo"]).lower()
    if algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {algo!r}; expected one of {list(ALGORITHMS)}")
    if args.data is None:
        raise UsageError("tune requires --data pointing at a dataset CSV")
    ds = load_csv(args.data)
    train, _test = split(ds, float(eff["test_fraction"]), int(eff["split_seed"]))

    budget = OptimizerConfig(population=int(eff["population"]), max_iters=int(eff["iters"]))
    sub = int(eff["subsample"])
    result = tune_svr(train, algo, budget, seed=int(eff["seed"]),
                      folds=int(eff["folds"]), cv_subsample=sub if sub > 0 else None)

    writer = _Writer("tune", eff, args.overwrite)
    out_dir = Path(args.out_dir)
    writer.emit(out_dir / f"model_{algo}.json", lambda p: save_model(result.model, p))
    writer.emit(out_dir / f"tuning_log_{algo}.csv",
                lambda p: save_curve_csv(p, result.curve))
    print(f"{algo}: C={result.params.c:.6g} gamma={result.params.gamma:.6g} "
          f"cv_mse={result.cv_mse:.6g} n_sv={result.model.n_support}")
    print(f"wrote model and tuning log to {out_dir}")
    return 0


def cmd_eval(args, config: dict) -> int:
    eff = _effective("eval", args, config, ["test_fraction", "split_seed"])
    if not args.model:
        raise UsageError("eval requires at least one --model")
    if args.data is None:
        raise UsageError("eval requires --data pointing at a dataset CSV")
    ds = load_csv(args.data)
    _train, test = split(ds, float(eff["test_fraction"]), int(eff["split_seed"]))

    writer = _Writer("eval", eff, args.overwrite)
    out_dir = Path(args.out_dir)
    reports = []
    for model_path in args.model:
        p = Path(model_path)
        if not p.is_file():
            raise DataError(f"model file not found: {p}")
        try:
            model = load_model(p)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            raise DataError(f"{p}: {exc}") from None
        report = evaluate(model, test, label=p.stem)
        reports.append(report)
        writer.emit(out_dir / f"report_{p.stem}.txt",
                    lambda path, r=report: _write_report(r, path))
        for line in report_lines(report):
            print(f"[{p.stem}] {line}")
    writer.emit(out_dir / "comparison.csv", lambda p: comparison_csv(p, reports))
    print(f"wrote {len(reports)} report(s) and comparison.csv to {out_dir}")
    return 0


def _write_report(report, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(report_lines(report)) + "\n")


def cmd_predict(args, config: dict) -> int:
    if args.model is None or args.scenario is None:
        raise UsageError("predict requires --model and --scenario I,t1,t2,omega,T0")
    parts = str(args.scenario).split(",")
    if len(parts) != 5:
        raise UsageError(
            f"scenario needs 5 comma-separated values (I,t1,t2,omega,T0), got {len(parts)}")
    try:
        values = np.array([float(p) for p in parts])
    except ValueError as exc:
        raise UsageError(f"bad scenario value: {exc}") from None
    p = Path(args.model)
    if not p.is_file():
        raise DataError(f"model file not found: {p}")
    try:
        model = load_model(p)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise DataError(f"{p}: {exc}") from None

    extrapolating = not in_scenario_ranges(values)
    pred_k = model.predict(values)
    t0_k = values[4]
    rise = pred_k - t0_k
    margin = RISE_LIMIT_C - rise
    print(f"predicted_temperature_K = {pred_k:.3f}")
    print(f"predicted_temperature_C = {pred_k - 273.15:.3f}")
    print(f"rise_above_T0_K = {rise:.3f}")
    print(f"margin_to_{RISE_LIMIT_C:g}C_rise_limit_K = {margin:.3f}")
    print(f"extrapolation = {str(extrapolating).lower()}")
    if extrapolating:
        ranges = ", ".join(f"{nm} in [{lo:g}, {hi:g}]" for nm, (lo, hi) in
                           zip(("I_A", "t1_ms", "t2_s", "omega_rad", "T0_K"),
                               SCENARIO_RANGES))
        print(f"warning: scenario outside training ranges ({ranges}); "
              "prediction is an extrapolation", file=sys.stderr)
    return 0


# --------------------------------------------------------------------------
# parser / entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pirtemp",
        description="Swarm-tuned SVR temperature prediction on a lumped thermal model")
    parser.add_argument("--version", action="version", version=f"pirtemp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="TOML config file")
        p.add_argument("--seed", type=int, help="master seed (default 0)")
        p.add_argument("--out-dir", default=".", help="artifact directory")
        p.add_argument("--preset", choices=sorted(PRESETS), help="parameter preset")
        p.add_argument("--overwrite", action="store_true",
                       help="allow replacing existing artifact files")

    b = sub.add_parser("bench", help="run optimizer comparison on test functions")
    common(b)
    b.add_argument("--functions", help="comma list, e.g. F1,F5")
    b.add_argument("--dims", help="comma list of dimensions, e.g. 10,30")
    b.add_argument("--algorithms", help="comma list from gwo,ssa,woa,iwoa")
    b.add_argument("--runs", type=int, help="independent runs per combination")
    b.add_argument("--iters", type=int, help="iterations per run")
    b.add_argument("--population", type=int, help="population size")

    g = sub.add_parser("gen-data", help="generate the labeled surrogate dataset")
    common(g)
    g.add_argument("--n", type=int, help="number of samples")
    g.add_argument("--out", help="dataset CSV path (default <out-dir>/dataset.csv)")

    t = sub.add_parser("tune", help="tune SVR hyperparameters on the train split")
    common(t)
    t.add_argument("--data", help="dataset CSV from gen-data")
    t.add_argument("--algo", help="optimizer: iwoa,woa,gwo,ssa")
    t.add_argument("--population", type=int, help="optimizer population")
    t.add_argument("--iters", type=int, help="optimizer iterations")
    t.add_argument("--folds", type=int, help="CV folds")
    t.add_argument("--subsample", type=int,
                   help="rows used inside CV fitness (0 = all)")
    t.add_argument("--test-fraction", dest="test_fraction", type=float)
    t.add_argument("--split-seed", dest="split_seed", type=int)

    e = sub.add_parser("eval", help="evaluate model file(s) on the test split")
    common(e)
    e.add_argument("--data", help="dataset CSV from gen-data")
    e.add_argument("--model", action="append", help="model JSON (repeatable)")
    e.add_argument("--test-fraction", dest="test_fraction", type=float)
    e.add_argument("--split-seed", dest="split_seed", type=int)

    p = sub.add_parser("predict", help="predict one scenario with a saved model")
    common(p)
    p.add_argument("--model", help="model JSON from tune")
    p.add_argument("--scenario", help="I,t1,t2,omega,T0 (A, ms, s, rad, K)")
    return parser


COMMANDS = {
    "bench": cmd_bench,
    "gen-data": cmd_gen_data,
    "tune": cmd_tune,
    "eval": cmd_eval,
    "predict": cmd_predict,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return COMMANDS[args.command](args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except SvrConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    except (FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
