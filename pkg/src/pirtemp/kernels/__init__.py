"""Hot-kernel backend selection.

Two interchangeable implementations of the numeric kernels exist:

* ``numba_impl`` — ``@njit``-compiled loops (default when numba imports),
* ``numpy_impl`` — vectorized pure-numpy fallback.

The environment flag ``PIRTEMP_BACKEND`` forces one: set it to ``numpy`` or
``numba`` before importing the package.  Both backends consume identical
pre-drawn random arrays and agree per call to floating-point tolerance;
results are deterministic per (seed, config, backend).  ``ACTIVE_BACKEND``
names the selected path and is stamped into every artifact sidecar.
"""

import os

from . import numpy_impl

_ENV_FLAG = "PIRTEMP_BACKEND"
_requested = os.environ.get(_ENV_FLAG, "").strip().lower()

if _requested not in ("", "numba", "numpy"):
    raise ImportError(
        f"{_ENV_FLAG} must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    _impl = numpy_impl
    ACTIVE_BACKEND = "numpy"
elif _requested == "numba":
    from . import numba_impl as _impl   # ImportError here is intentional
    ACTIVE_BACKEND = "numba"
else:
    try:
        from . import numba_impl as _impl
        ACTIVE_BACKEND = "numba"
    except ImportError:
        _impl = numpy_impl
        ACTIVE_BACKEND = "numpy"

bench_batch = _impl.bench_batch
whale_step = _impl.whale_step
gwo_step = _impl.gwo_step
ssa_step = _impl.ssa_step
sq_dists = _impl.sq_dists
rbf_from_sq = _impl.rbf_from_sq
smo_solve = _impl.smo_solve
sf6_lambda_raw = _impl.sf6_lambda_raw
cool_batch = _impl.cool_batch

__all__ = [
    "ACTIVE_BACKEND",
    "bench_batch",
    "whale_step",
    "gwo_step",
    "ssa_step",
    "sq_dists",
    "rbf_from_sq",
    "smo_solve",
    "sf6_lambda_raw",
    "cool_batch",
]
