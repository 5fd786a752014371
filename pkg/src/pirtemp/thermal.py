"""Lumped-parameter thermal model of a pre-insertion resistor in SF6.

One closing event deposits Joule energy R·I²·∫sin²(2πf·t + ω)dt over the
insertion window (closed form), raising a single thermal mass adiabatically;
the stack then cools by Newtonian exchange with SF6 whose conductance scales
with the gas thermal-conductivity polynomial evaluated at film temperature.
Cooling integrates with classic fixed-step RK4.

The model labels scenario vectors (I, t1, t2, omega, T0) drawn tent-chaotically
from the operating ranges, producing the regression dataset.  Gas property
polynomials are valid on [200, 500] K only and rejected outside that window.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import kernels
from .dataset import Dataset, PIR_FEATURE_NAMES, PIR_TARGET_NAME
from .rng import RngStream, tent_init

__all__ = [
    "SCENARIO_RANGES",
    "PROPERTY_WINDOW",
    "SurrogateConfig",
    "ScenarioInput",
    "LabeledSample",
    "sf6_thermal_conductivity",
    "sf6_heat_capacity",
    "sf6_viscosity",
    "film_temperature",
    "joule_energy",
    "peak_temperature",
    "cool",
    "simulate",
    "generate_dataset",
    "in_scenario_ranges",
]

# operating ranges, in feature order: I [A], t1 [ms], t2 [s], omega [rad], T0 [K]
SCENARIO_RANGES = (
    (0.0, 1600.0),
    (7.0, 12.0),
    (0.0, 1800.0),
    (0.0, 6.28),
    (293.0, 393.0),
)

PROPERTY_WINDOW = (200.0, 500.0)  # K; the gas polynomials turn nonphysical outside


@dataclass(frozen=True)
class SurrogateConfig:
    resistance: float = 500.0  # total stack resistance, ohm
    mass: float = 120.0  # lumped stack mass, kg
    cp_pir: float = 890.0  # stack specific heat, J/(kg K)
    k0: float = 60.0  # cooling conductance at 300 K film temperature, W/K
    t_amb: float = 293.0  # ambient/gas bulk temperature, K
    f: float = 50.0  # grid frequency, Hz
    ode_dt: float = 1.0  # cooling integration step, s

    def __post_init__(self):
        for nm in ("resistance", "mass", "cp_pir", "k0", "t_amb", "f", "ode_dt"):
            if not getattr(self, nm) > 0:
                raise ValueError(f"{nm} must be > 0, got {getattr(self, nm)}")
        if self.ode_dt > 1.0:
            raise ValueError(f"ode_dt must be <= 1 s, got {self.ode_dt}")

    @property
    def heat_capacity(self) -> float:
        """Total lumped heat capacity m*cp, J/K."""
        return self.mass * self.cp_pir


@dataclass(frozen=True)
class ScenarioInput:
    current: float  # I, A
    t1_ms: float  # insertion time, ms
    t2_s: float  # cooling time, s
    omega_rad: float  # closing phase angle, rad
    t0_k: float  # initial temperature, K

    def __post_init__(self):
        vals = self.as_array()
        for v, (lo, hi), nm in zip(vals, SCENARIO_RANGES, PIR_FEATURE_NAMES):
            if not lo <= v <= hi:
                raise ValueError(f"{nm}={v} outside operating range [{lo}, {hi}]")

    def as_array(self) -> np.ndarray:
        return np.array([self.current, self.t1_ms, self.t2_s,
                         self.omega_rad, self.t0_k])


@dataclass(frozen=True)
class LabeledSample:
    scenario: ScenarioInput
    temperature: float  # final mean stack temperature, K


def in_scenario_ranges(values) -> bool:
    """True when all five scenario values sit inside the operating ranges."""
    vals = np.asarray(values, dtype=np.float64)
    if vals.shape != (5,):
        raise ValueError(f"expected 5 scenario values, got shape {vals.shape}")
    return all(lo <= v <= hi for v, (lo, hi) in zip(vals, SCENARIO_RANGES))


# --------------------------------------------------------------------------
# SF6 gas properties (polynomial fits, validity window 200-500 K)
# --------------------------------------------------------------------------


def _check_window(t_k: float) -> float:
    t_k = float(t_k)
    lo, hi = PROPERTY_WINDOW
    if not lo <= t_k <= hi:
        raise ValueError(f"temperature {t_k} K outside property window [{lo}, {hi}] K")
    return t_k


def _cp_raw(T):
    return -218.4 + T * (4.73 + T * (7.50e-3 + T * (5.67e-6 + T * -1.66e-9)))


def _mu_raw(T):
    return 2.88e-7 + T * (5.51e-8 + T * (-1.68e-11 + T * 1.39e-15))


def sf6_thermal_conductivity(t_k: float) -> float:
    """Gas thermal conductivity, W/(m K)."""
    return float(kernels.sf6_lambda_raw(_check_window(t_k)))


def sf6_heat_capacity(t_k: float) -> float:
    """Gas constant-pressure heat capacity, J/(kg K)."""
    return float(_cp_raw(_check_window(t_k)))


def sf6_viscosity(t_k: float) -> float:
    """Gas dynamic viscosity, Pa s."""
    return float(_mu_raw(_check_window(t_k)))


def film_temperature(t_k: float, t_amb: float) -> float:
    """Mean of surface and bulk temperature, where gas properties are evaluated."""
    return (float(t_k) + float(t_amb)) / 2.0


# --------------------------------------------------------------------------
# heating / cooling
# --------------------------------------------------------------------------


def _joule(current, t1_ms, omega_rad, resistance, f):
    """Closed-form R I^2 ∫_0^{t1} sin^2(2 pi f t + omega) dt; elementwise-safe."""
    t = t1_ms / 1000.0
    osc = (np.sin(4.0 * np.pi * f * t + 2.0 * omega_rad)
           - np.sin(2.0 * omega_rad)) / (8.0 * np.pi * f)
    return resistance * current ** 2 * (t / 2.0 - osc)


def joule_energy(current: float, t1_ms: float, omega_rad: float,
                 resistance: float = 500.0, f: float = 50.0) -> float:
    """Energy deposited in the stack during insertion, J."""
    if current < 0:
        raise ValueError(f"current must be >= 0, got {current}")
    if t1_ms < 0:
        raise ValueError(f"t1_ms must be >= 0, got {t1_ms}")
    if not resistance > 0 or not f > 0:
        raise ValueError("resistance and f must be > 0")
    return float(_joule(current, t1_ms, omega_rad, resistance, f))


def peak_temperature(t0_k: float, energy_j: float, cfg: SurrogateConfig) -> float:
    """Adiabatic post-insertion temperature: T0 + E/(m cp)."""
    if energy_j < 0:
        raise ValueError(f"energy must be >= 0, got {energy_j}")
    return float(t0_k) + float(energy_j) / cfg.heat_capacity


def _check_cooling_window(t_peak: float, cfg: SurrogateConfig) -> None:
    lo, hi = PROPERTY_WINDOW
    film_hi = film_temperature(t_peak, cfg.t_amb)
    if not (lo <= cfg.t_amb and film_hi <= hi):
        raise ValueError(
            f"cooling from {t_peak} K at ambient {cfg.t_amb} K needs film "
            f"temperatures in [{lo}, {hi}] K (peak film {film_hi} K)")


def cool(t_peak: float, t2_s: float, cfg: SurrogateConfig,
         constant_k: bool = False) -> float:
    """Temperature after t2 seconds of cooling from t_peak.

    constant_k pins the conductance at k0 (no gas-property scaling); that
    variant has the closed form T_amb + (T_peak - T_amb) e^{-k0 t2/(m cp)}
    and exists to validate the integrator against it.
    """
    if t_peak < cfg.t_amb:
        raise ValueError(f"t_peak {t_peak} K below ambient {cfg.t_amb} K")
    if t2_s < 0:
        raise ValueError(f"t2_s must be >= 0, got {t2_s}")
    if not constant_k:
        _check_cooling_window(t_peak, cfg)
    out = kernels.cool_batch(np.array([float(t_peak)]), np.array([float(t2_s)]),
                             cfg.k0, cfg.heat_capacity, cfg.t_amb, cfg.ode_dt,
                             not constant_k)
    return float(out[0])


def simulate(scenario: ScenarioInput, cfg: SurrogateConfig | None = None) -> LabeledSample:
    """Joule heating -> adiabatic peak -> RK4 cooling for one scenario."""
    if cfg is None:
        cfg = SurrogateConfig()
    e = joule_energy(scenario.current, scenario.t1_ms, scenario.omega_rad,
                     cfg.resistance, cfg.f)
    peak = peak_temperature(scenario.t0_k, e, cfg)
    return LabeledSample(scenario, cool(peak, scenario.t2_s, cfg))


def generate_dataset(n: int, cfg: SurrogateConfig | None = None,
                     seed: int = 0) -> Dataset:
    """n tent-sampled scenarios labeled by the surrogate, in fixed column order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if cfg is None:
        cfg = SurrogateConfig()
    rng = RngStream(seed)
    lows = np.array([r[0] for r in SCENARIO_RANGES])
    highs = np.array([r[1] for r in SCENARIO_RANGES])
    F = tent_init(n, 5, (lows, highs), rng.split("scenarios"))

    current, t1_ms, t2_s, omega, t0 = (F[:, j] for j in range(5))
    energy = _joule(current, t1_ms, omega, cfg.resistance, cfg.f)
    peaks = t0 + energy / cfg.heat_capacity
    _check_cooling_window(float(peaks.max()), cfg)
    temps = kernels.cool_batch(np.ascontiguousarray(peaks),
                               np.ascontiguousarray(t2_s),
                               cfg.k0, cfg.heat_capacity, cfg.t_amb,
                               cfg.ode_dt, True)

    meta = {
        "feature_names": list(PIR_FEATURE_NAMES),
        "target_name": PIR_TARGET_NAME,
        "units": "K",
        "surrogate_config": asdict(cfg),
        "seed": seed,
    }
    return Dataset(F, temps, meta)
