"""Lumped-parameter heating/cooling surrogate and gas property fits."""

import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.integrate import quad

from pirtemp.dataset import DataError
from pirtemp.thermal import (
    PROPERTY_WINDOW,
    SCENARIO_RANGES,
    ScenarioInput,
    SurrogateConfig,
    cool,
    film_temperature,
    generate_dataset,
    in_scenario_ranges,
    joule_energy,
    peak_temperature,
    sf6_heat_capacity,
    sf6_thermal_conductivity,
    sf6_viscosity,
    simulate,
)

CFG = SurrogateConfig()


def scenario(current=800.0, t1_ms=10.0, t2_s=600.0, omega_rad=0.0, t0_k=293.0):
    return ScenarioInput(current, t1_ms, t2_s, omega_rad, t0_k)


# ---------------------------------------------------------------------------
# configuration and scenario validation
# ---------------------------------------------------------------------------


class TestSurrogateConfig:
    def test_defaults(self):
        assert (CFG.resistance, CFG.mass, CFG.cp_pir) == (500.0, 120.0, 890.0)
        assert (CFG.k0, CFG.t_amb, CFG.f, CFG.ode_dt) == (60.0, 293.0, 50.0, 1.0)
        assert CFG.heat_capacity == 120.0 * 890.0

    @pytest.mark.parametrize("kwargs", [
        dict(resistance=0.0), dict(mass=-1.0), dict(cp_pir=0.0),
        dict(k0=0.0), dict(t_amb=-5.0), dict(f=0.0),
        dict(ode_dt=0.0), dict(ode_dt=2.0),
    ])
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            SurrogateConfig(**kwargs)


class TestScenarioInput:
    def test_acceptable_ranges(self):
        lows = [r[0] for r in SCENARIO_RANGES]
        highs = [r[1] for r in SCENARIO_RANGES]
        ScenarioInput(*lows)
        ScenarioInput(*highs)

    @pytest.mark.parametrize("field, value", [
        ("current", -1.0), ("current", 1601.0),
        ("t1_ms", 6.9), ("t1_ms", 12.1),
        ("t2_s", -0.1), ("t2_s", 1801.0),
        ("omega_rad", -0.01), ("omega_rad", 6.30),
        ("t0_k", 292.0), ("t0_k", 394.0),
    ])
    def test_out_of_range_rejected(self, field, value):
        with pytest.raises(ValueError):
            replace(scenario(), **{field: value})

    def test_as_array(self):
        s = scenario(1000.0, 8.0, 120.0, 1.5, 300.0)
        assert np.array_equal(s.as_array(), [1000.0, 8.0, 120.0, 1.5, 300.0])

    def test_in_scenario_ranges(self):
        assert in_scenario_ranges(scenario().as_array())
        assert not in_scenario_ranges(np.array([2000.0, 10.0, 0.0, 0.0, 293.0]))


# ---------------------------------------------------------------------------
# gas property fits
# ---------------------------------------------------------------------------


class TestGasProperties:
    def test_reference_values_at_300K(self):
        assert sf6_thermal_conductivity(300.0) == pytest.approx(0.0112675397, rel=1e-6)
        assert sf6_heat_capacity(300.0) == pytest.approx(2015.244, abs=0.5)
        assert sf6_viscosity(300.0) == pytest.approx(1.534353e-5, rel=1e-5)

    def test_heat_capacity_polynomial_coefficients(self):
        # Naive power-form evaluation pinned to the published fit.
        def naive(t):
            return (-218.4 + 4.73 * t + 7.50e-3 * t**2 + 5.67e-6 * t**3
                    - 1.66e-9 * t**4)

        for t in np.linspace(*PROPERTY_WINDOW, 40):
            assert sf6_heat_capacity(float(t)) == pytest.approx(naive(t), rel=1e-12)

    def test_viscosity_polynomial_coefficients(self):
        def naive(t):
            return 2.88e-7 + 5.51e-8 * t - 1.68e-11 * t**2 + 1.39e-15 * t**3

        for t in np.linspace(*PROPERTY_WINDOW, 40):
            assert sf6_viscosity(float(t)) == pytest.approx(naive(t), rel=1e-12)

    def test_positive_over_window(self):
        for t in np.linspace(*PROPERTY_WINDOW, 100):
            assert sf6_thermal_conductivity(float(t)) > 0.0
            assert sf6_heat_capacity(float(t)) > 0.0
            assert sf6_viscosity(float(t)) > 0.0

    def test_conductivity_increases_with_temperature(self):
        grid = [sf6_thermal_conductivity(float(t))
                for t in np.linspace(*PROPERTY_WINDOW, 50)]
        assert all(a < b for a, b in zip(grid, grid[1:]))

    @pytest.mark.parametrize("t", [199.9, 500.1, 0.0, -10.0])
    def test_window_enforced(self, t):
        for fn in (sf6_thermal_conductivity, sf6_heat_capacity, sf6_viscosity):
            with pytest.raises(ValueError):
                fn(t)

    def test_film_temperature(self):
        assert film_temperature(400.0, 293.0) == pytest.approx(346.5)
        assert film_temperature(293.0, 293.0) == 293.0


# ---------------------------------------------------------------------------
# heating phase
# ---------------------------------------------------------------------------


class TestJouleEnergy:
    def test_no_current_no_energy(self):
        assert joule_energy(0.0, 10.0, 1.0) == 0.0

    def test_full_period_closed_form(self):
        # Over exactly one mains period the sin^2 average is 1/2 for every
        # phase angle: E = R I^2 t / 2.
        for omega in (0.0, 0.7, 2.2, 6.28):
            got = joule_energy(1000.0, 20.0, omega)
            assert got == pytest.approx(500.0 * 1e6 * 0.020 / 2.0, rel=1e-12)

    def test_reference_value(self):
        # Half period at peak current and zero phase: 500 * 1600^2 * 0.005.
        assert joule_energy(1600.0, 10.0, 0.0) == pytest.approx(6.4e6, rel=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_quadrature(self, seed):
        rng = np.random.default_rng(seed)
        current = float(rng.uniform(100.0, 1600.0))
        t1_ms = float(rng.uniform(7.0, 12.0))
        omega = float(rng.uniform(0.0, 6.28))
        r, f = 500.0, 50.0
        t1 = t1_ms / 1000.0

        def integrand(t):
            return r * current**2 * math.sin(2.0 * math.pi * f * t + omega) ** 2

        want, _ = quad(integrand, 0.0, t1, limit=200)
        assert joule_energy(current, t1_ms, omega) == pytest.approx(want, rel=1e-9)

    def test_energy_grows_with_duration(self):
        e = [joule_energy(1000.0, t, 0.3) for t in (7.0, 9.0, 11.0, 12.0)]
        assert all(a < b for a, b in zip(e, e[1:]))

    def test_validation(self):
        with pytest.raises(ValueError):
            joule_energy(-5.0, 10.0, 0.0)
        with pytest.raises(ValueError):
            joule_energy(100.0, 10.0, 0.0, resistance=0.0)


class TestPeakTemperature:
    def test_no_energy_keeps_start(self):
        assert peak_temperature(300.0, 0.0, CFG) == 300.0

    def test_unit_rise(self):
        assert peak_temperature(300.0, CFG.heat_capacity, CFG) == pytest.approx(301.0)

    def test_reference_rise(self):
        got = peak_temperature(293.0, 6.4e6, CFG)
        assert got - 293.0 == pytest.approx(59.925093632958806, rel=1e-12)
        assert got - 293.0 == pytest.approx(59.93, abs=0.01)


# ---------------------------------------------------------------------------
# cooling phase
# ---------------------------------------------------------------------------


class TestCool:
    def test_zero_time_is_identity(self):
        assert cool(352.9, 0.0, CFG) == 352.9

    def test_constant_coefficient_matches_analytic(self):
        tau = CFG.heat_capacity / CFG.k0  # 1780 s
        for t2 in (37.5, 600.0, 1780.0):
            want = CFG.t_amb + (352.9 - CFG.t_amb) * math.exp(-t2 / tau)
            got = cool(352.9, t2, CFG, constant_k=True)
            assert got == pytest.approx(want, rel=1e-6)

    def test_long_horizon_reaches_ambient(self):
        tau = CFG.heat_capacity / CFG.k0
        # ten decay times: 400 K start is within 0.1 K of ambient either way
        long_cfg = replace(CFG, ode_dt=1.0)
        assert abs(cool(400.0, 10.0 * tau, long_cfg, constant_k=True)
                   - CFG.t_amb) < 0.1
        assert abs(cool(400.0, 10.0 * tau, long_cfg) - CFG.t_amb) < 0.1

    def test_gas_feedback_slows_cooling_below_reference(self):
        # Film temperatures under 300 K give a conductivity ratio < 1, so the
        # variable-property path cools slightly slower than the constant one.
        got_var = cool(310.0, 900.0, CFG)
        got_const = cool(310.0, 900.0, CFG, constant_k=True)
        assert got_var > got_const

    def test_never_undershoots_ambient(self):
        assert cool(293.5, 1800.0, CFG) >= CFG.t_amb - 1e-9

    def test_monotone_in_time(self):
        temps = [cool(400.0, t2, CFG) for t2 in (0.0, 60.0, 300.0, 900.0, 1800.0)]
        assert all(a > b for a, b in zip(temps, temps[1:]))

    def test_start_below_ambient_rejected(self):
        with pytest.raises(ValueError):
            cool(292.0, 10.0, CFG)

    def test_film_window_guard(self):
        # Peak high enough that the film temperature leaves the fitted
        # property window must be rejected, not extrapolated.
        with pytest.raises(ValueError):
            cool(710.0, 10.0, CFG)


# ---------------------------------------------------------------------------
# end-to-end scenario simulation
# ---------------------------------------------------------------------------


class TestSimulate:
    def test_idle_scenario_is_exact_equilibrium(self):
        out = simulate(scenario(current=0.0, t0_k=293.0, t2_s=1800.0))
        assert out.temperature == 293.0

    def test_pure_cooling_decreases_with_time(self):
        temps = [simulate(scenario(current=0.0, t0_k=393.0, t2_s=t2)).temperature
                 for t2 in (0.0, 120.0, 600.0, 1800.0)]
        assert all(a > b for a, b in zip(temps, temps[1:]))

    def test_bounded_by_ambient_and_adiabatic_peak(self):
        s = scenario(current=1200.0, t1_ms=11.0, t2_s=400.0, t0_k=320.0)
        peak = peak_temperature(s.t0_k, joule_energy(s.current, s.t1_ms,
                                                     s.omega_rad), CFG)
        out = simulate(s).temperature
        assert CFG.t_amb <= out <= peak

    def test_monotone_in_current(self):
        temps = [simulate(scenario(current=i)).temperature
                 for i in (0.0, 400.0, 800.0, 1200.0, 1600.0)]
        assert all(a <= b for a, b in zip(temps, temps[1:]))

    def test_monotone_in_start_temperature(self):
        temps = [simulate(scenario(t0_k=t0)).temperature
                 for t0 in (293.0, 320.0, 360.0, 393.0)]
        assert all(a < b for a, b in zip(temps, temps[1:]))

    def test_half_period_heati_is_phase_invariant(self):
        # 10 ms is half a 50 Hz period: the sin^2 integral over it does not
        # depend on the phase angle, so neither does the temperature.
        base = simulate(scenario(t1_ms=10.0, omega_rad=0.0)).temperature
        for omega in (0.5, 1.7, 3.1, 6.28):
            got = simulate(scenario(t1_ms=10.0, omega_rad=omega)).temperature
            assert got == pytest.approx(base, abs=1e-9)

    def test_partial_period_depends_on_phase(self):
        a = simulate(scenario(t1_ms=9.0, omega_rad=0.0)).temperature
        b = simulate(scenario(t1_ms=9.0, omega_rad=1.5)).temperature
        assert abs(a - b) > 1e-3

    def test_step_size_halving_changes_little(self):
        fine_cfg = replace(CFG, ode_dt=0.5)
        for s in (scenario(), scenario(current=1500.0, t2_s=1700.0, t0_k=390.0),
                  scenario(current=1200.0, t1_ms=12.0, t2_s=45.5)):
            coarse = simulate(s, CFG).temperature
            fine = simulate(s, fine_cfg).temperature
            assert abs(coarse - fine) < 1e-4


# ---------------------------------------------------------------------------
# dataset generation
# ---------------------------------------------------------------------------


class TestGenerateDataset:
    def test_shape_and_metadata(self):
        ds = generate_dataset(50, seed=11)
        assert ds.n == 50 and ds.width == 5
        assert ds.metadata["feature_names"] == [
            "I_A", "t1_ms", "t2_s", "omega_rad", "T0_K"]
        assert ds.metadata["target_name"] == "temperature_K"
        assert ds.metadata["units"] == "K"
        assert ds.metadata["seed"] == 11
        assert ds.metadata["surrogate_config"]["resistance"] == 500.0

    def test_samples_cover_scenario_ranges(self):
        ds = generate_dataset(400, seed=12)
        for j, (lo, hi) in enumerate(SCENARIO_RANGES):
            col = ds.features[:, j]
            assert col.min() >= lo and col.max() <= hi
            assert col.max() - col.min() > 0.5 * (hi - lo)

    def test_targets_physically_bounded(self):
        ds = generate_dataset(300, seed=13)
        assert ds.targets.min() >= CFG.t_amb - 1e-9
        max_possible = peak_temperature(
            393.0, joule_energy(1600.0, 12.0, 0.0), CFG)
        assert ds.targets.max() <= max_possible

    def test_deterministic(self):
        a = generate_dataset(40, seed=14)
        b = generate_dataset(40, seed=14)
        assert np.array_equal(a.features, b.features)
        assert np.array_equal(a.targets, b.targets)

    def test_rows_match_single_scenario_calls(self):
        ds = generate_dataset(8, seed=15)
        for row, target in zip(ds.features, ds.targets):
            s = ScenarioInput(*row.tolist())
            assert simulate(s).temperature == pytest.approx(target, rel=1e-12)

    def test_validation(self):
        with pytest.raises((ValueError, DataError)):
            generate_dataset(0, seed=0)
