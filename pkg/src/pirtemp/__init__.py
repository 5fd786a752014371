"""pirtemp: pre-insertion-resistor temperature prediction.

Building blocks: chaotic/OU-augmented whale optimization (plus baseline
metaheuristics), an epsilon-SVR trained by sequential pair optimization, a
lumped-parameter thermal data generator for pre-insertion resistors, and the
evaluation/CLI glue tying them together.
"""

__version__ = "0.1.0"

from .rng import RngStream, OUParams, tent_init, tent_next, ou_path, ou_index
from .dataset import Dataset, DataError, load_csv, save_csv
from .benchmarks import BenchmarkFunction, get as get_benchmark
from .optimizers import (OptimizerConfig, Problem, RunResult, RunStats,
                         run_woa, run_iwoa, run_gwo, run_ssa, run_repeated)
from .svr import (SvrParams, SvrModel, Scaler, SvrConvergenceError, TuneResult,
                  fit_svr, predict, cv_fitness, tune_svr, save_model, load_model)
from .thermal import (ScenarioInput, SurrogateConfig, LabeledSample,
                      simulate, generate_dataset)
from .metrics import EvalReport, split, evaluate

__all__ = [
    "__version__",
    "RngStream", "OUParams", "tent_init", "tent_next", "ou_path", "ou_index",
    "Dataset", "DataError", "load_csv", "save_csv",
    "BenchmarkFunction", "get_benchmark",
    "OptimizerConfig", "Problem", "RunResult", "RunStats",
    "run_woa", "run_iwoa", "run_gwo", "run_ssa", "run_repeated",
    "SvrParams", "SvrModel", "Scaler", "SvrConvergenceError", "TuneResult",
    "fit_svr", "predict", "cv_fitness", "tune_svr", "save_model", "load_model",
    "ScenarioInput", "SurrogateConfig", "LabeledSample",
    "simulate", "generate_dataset",
    "EvalReport", "split", "evaluate",
]
