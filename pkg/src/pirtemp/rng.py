"""Deterministic random streams, tent-map sampling, and Ornstein-Uhlenbeck paths.

Everything stochastic in this package draws from an :class:`RngStream`, a thin
wrapper around numpy's counter-based Philox4x64 bit generator.  A stream is
fully determined by a 64-bit seed, and named child streams are derived by
hashing ``"<seed-hex>/<label>"`` with SHA-256, so independent components
(per-run streams, OU paths, fold shuffles) never share state and the whole
pipeline replays bit-identically from a single master seed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RngStream",
    "OUParams",
    "tent_next",
    "tent_init",
    "ou_path",
    "ou_index",
]

_MASK64 = (1 << 64) - 1

# Tent-map orbits degrade in binary floating point: every seed is a dyadic
# rational, each doubling consumes one mantissa bit, so after k steps an
# iterate has only ~53-k random bits — orbits coarsen onto dyadic grids
# (0.5, 0.25, ...) and finally collapse through 0.5 -> 1.0 -> 0.0.  Chains
# therefore reseed from the stream every _TENT_RESEED_PERIOD steps (while the
# iterate still has ~20 fresh bits) and immediately whenever an iterate
# enters the _TENT_EPS guard band around the absorbing points.
_TENT_EPS = 1e-12
_TENT_RESEED_PERIOD = 32


class RngStream:
    """Counter-based random stream with labeled, collision-free children.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit seed.  The same seed always reproduces the same
        sequence of draws, independent of platform or process.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.Philox(key=seed))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RngStream(seed={self.seed})"

    # -- draws ----------------------------------------------------------------

    def random(self, size=None):
        """Uniform draws in [0, 1)."""
        return self._gen.random(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._gen.uniform(low, high, size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self._gen.normal(loc, scale, size)

    def integers(self, low, high=None, size=None):
        """Integer draws in [low, high) (numpy half-open convention)."""
        return self._gen.integers(low, high, size)

    def shuffled_indices(self, n: int) -> np.ndarray:
        """Deterministic permutation of range(n)."""
        return self._gen.permutation(n)

    # -- derivation -----------------------------------------------------------

    def child_seed(self, label: str) -> int:
        """64-bit seed for the child stream named ``label``.

        Derived as the first 8 bytes (big-endian) of
        ``SHA-256("<seed as 16 hex digits>/<label>")``.
        """
        digest = hashlib.sha256(f"{self.seed:016x}/{label}".encode()).digest()
        return int.from_bytes(digest[:8], "big")

    def split(self, label: str) -> "RngStream":
        """Independent child stream; same (seed, label) -> same child."""
        return RngStream(self.child_seed(label))


# -- tent map -------------------------------------------------------------------


def tent_next(x: float) -> float:
    """One step of the unit tent map: 2x for x <= 0.5, else 2(1 - x)."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"tent map state must lie in [0, 1], got {x}")
    return 2.0 * x if x <= 0.5 else 2.0 * (1.0 - x)


def _tent_seed(rng: RngStream) -> float:
    """Fresh chain state: uniform in (0, 1) away from the degenerate points."""
    while True:
        u = float(rng.random())
        if u <= _TENT_EPS or u >= 1.0 - _TENT_EPS:
            continue
        if abs(u - 0.5) <= _TENT_EPS:
            continue
        return u


def tent_init(n: int, dim: int, bounds, rng: RngStream) -> np.ndarray:
    """Chaotic initial population on ``bounds`` via per-dimension tent chains.

    Each dimension runs its own tent orbit (seeded from ``rng``), and row i
    takes the i-th iterate of every chain, so coordinates are decorrelated
    across dimensions while successive rows sweep each chain.

    Parameters
    ----------
    n, dim : int
        Population size and dimensionality.
    bounds : tuple or array
        ``(low, high)`` scalars, or arrays of shape (dim,).  ``low == high``
        is allowed and collapses that coordinate.
    rng : RngStream

    Returns
    -------
    ndarray of shape (n, dim)
    """
    if n < 0 or dim <= 0:
        raise ValueError(f"need n >= 0 and dim >= 1, got n={n}, dim={dim}")
    low, high = bounds
    low = np.broadcast_to(np.asarray(low, dtype=np.float64), (dim,)).copy()
    high = np.broadcast_to(np.asarray(high, dtype=np.float64), (dim,)).copy()
    if np.any(low > high):
        raise ValueError("invalid bounds: low > high")

    unit = np.empty((n, dim), dtype=np.float64)
    for j in range(dim):
        x = _tent_seed(rng)
        age = 0
        for i in range(n):
            x = tent_next(x)
            age += 1
            if (age >= _TENT_RESEED_PERIOD
                    or x <= _TENT_EPS or x >= 1.0 - _TENT_EPS):
                x = _tent_seed(rng)
                age = 0
            unit[i, j] = x
    return low + unit * (high - low)


# -- Ornstein-Uhlenbeck -----------------------------------------------------------


@dataclass(frozen=True)
class OUParams:
    """Euler-Maruyama discretisation of dX = theta*(mu - X) dt + sigma dW.

    Defaults give a stationary standard deviation of ~0.08, i.e. mutation
    factors (1 + X) almost surely inside [0.76, 1.24].
    """

    theta: float = 0.5
    mu: float = 0.0
    sigma: float = 0.08
    dt: float = 0.1
    length: int = 1000

    def __post_init__(self):
        if self.theta < 0.0:
            raise ValueError(f"theta must be >= 0, got {self.theta}")
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if self.dt <= 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")

    def stationary_std(self) -> float:
        """Closed-form stationary std of the exact (continuous-time) process."""
        if self.theta == 0.0:
            raise ValueError("stationary distribution requires theta > 0")
        return self.sigma / np.sqrt(2.0 * self.theta)


def ou_path(params: OUParams, rng: RngStream, x0: float | None = None) -> np.ndarray:
    """Sample one OU path of ``params.length`` points.

    X_0 defaults to ``params.mu``; pass ``x0`` to start elsewhere.
    X_{k+1} = X_k + theta*(mu - X_k)*dt + sigma*sqrt(dt)*Z_k with Z_k ~ N(0,1).
    """
    theta, mu, sigma, dt = params.theta, params.mu, params.sigma, params.dt
    path = np.empty(params.length, dtype=np.float64)
    path[0] = mu if x0 is None else float(x0)
    if params.length == 1:
        return path
    z = rng.normal(size=params.length - 1)
    scale = sigma * np.sqrt(dt)
    x = path[0]
    for k in range(params.length - 1):
        x = x + theta * (mu - x) * dt + scale * z[k]
        path[k + 1] = x
    return path


def ou_index(t: int, m: int, c1: int, t_max: int, n: int) -> int:
    """Index into a length-``c1`` OU path for iteration ``t`` and whale ``m``.

    floor(t * m * c1 / (t_max * n)) clamped to [0, c1 - 1]; ``t`` runs
    1..t_max and ``m`` is the 1-based population index of the current best.
    """
    for name, val, lo in (("t", t, 1), ("m", m, 1), ("c1", c1, 1),
                          ("t_max", t_max, 1), ("n", n, 1)):
        if int(val) != val or val < lo:
            raise ValueError(f"{name} must be an integer >= {lo}, got {val}")
    b = (int(t) * int(m) * int(c1)) // (int(t_max) * int(n))
    return min(max(b, 0), int(c1) - 1)
