import numpy as np
import pytest

from geoar.errors import InsufficientDataError
from geoar.model import GeometricARSpec, build_coefficients
from geoar.roots import CharPolynomial, is_stationary_by_roots
from geoar.simulate import SimulationConfig, TimeSeries, forecast, simulate
from geoar import bounds


def test_deterministic_given_seed():
    cfg = SimulationConfig(build_coefficients(GeometricARSpec(0.3, 0.5, 5)), n_steps=300, seed=42)
    a, b = simulate(cfg), simulate(cfg)
    np.testing.assert_array_equal(a.values, b.values)
    c = simulate(SimulationConfig(cfg.coefficients, n_steps=300, seed=43))
    assert not np.array_equal(a.values, c.values)
    assert a.meta["seed"] == 42 and a.meta["rng"]


def test_zero_forcing_limit():
    b = build_coefficients(GeometricARSpec(0.3, 0.5, 5))
    ts = simulate(SimulationConfig(b, n_steps=100, innovation_sd=1e-300, seed=1))
    assert np.max(np.abs(ts.values)) < 1e-290


def test_linearity_in_sigma():
    b = build_coefficients(GeometricARSpec(0.3, 0.5, 5))
    one = simulate(SimulationConfig(b, n_steps=200, innovation_sd=1.0, seed=9)).values
    three = simulate(SimulationConfig(b, n_steps=200, innovation_sd=3.0, seed=9)).values
    np.testing.assert_allclose(three, 3 * one, rtol=1e-12, atol=1e-12)


def test_near_white_noise_variance():
    b = build_coefficients(GeometricARSpec(0.0001, 0.5, 5))
    v = simulate(SimulationConfig(b, n_steps=500, seed=7)).values.var()
    assert 0.5 < v < 2.0


def test_uniform_innovations_have_unit_variance():
    ts = simulate(SimulationConfig([0.0], n_steps=20000, seed=3, innovation="uniform"))
    assert ts.values.var() == pytest.approx(1.0, rel=0.05)
    assert np.max(np.abs(ts.values)) <= np.sqrt(3)


def test_explosive_positive_feedback_table1_row():
    # Table 1 last row under positive feedback: root outside the unit circle
    w = GeometricARSpec(0.4, 0.7, 5).lag_weights()
    assert not is_stationary_by_roots(CharPolynomial.from_ar(w)).stationary
    ts = simulate(SimulationConfig(w, n_steps=500, seed=0))
    assert ts.meta["explosive"]
    assert len(ts) < 500


def test_initial_values_are_used():
    ts = simulate(SimulationConfig([0.5], n_steps=3, burn_in=0, innovation_sd=1e-300, seed=0,
                                   initial_values=[8.0]))
    np.testing.assert_allclose(ts.values, [4.0, 2.0, 1.0])


def test_config_validation():
    with pytest.raises(ValueError):
        SimulationConfig([0.1, 0.2], initial_values=[1.0])
    with pytest.raises(ValueError):
        SimulationConfig([0.1], innovation_sd=0.0)
    with pytest.raises(ValueError):
        SimulationConfig([0.1], n_steps=0)


def test_burn_in_default():
    cfg = SimulationConfig([0.1, 0.1, 0.1])
    assert cfg.effective_burn_in == 30


def test_stationary_sample_mean_envelope():
    spec = GeometricARSpec(0.02, 0.5, 5)
    assert bounds.theorem_bound(spec).contains(spec.beta)
    b = build_coefficients(spec)
    env = 4 / np.sqrt(2000) / (1 - abs(b.as_array().sum()))
    for r in range(10):
        ts = simulate(SimulationConfig(b, n_steps=2000, seed=100 + r))
        assert abs(ts.values.mean()) < env


def test_forecast_examples():
    np.testing.assert_array_equal(forecast([0.0, 0.0, 0.0], [0.2, 0.1], 4).values, np.zeros(4))
    np.testing.assert_allclose(forecast([5.0, 2.0], [0.5], 3).values, [1.0, 0.5, 0.25])


def test_forecast_decays_to_mean():
    b = build_coefficients(GeometricARSpec(0.3, 0.5, 5))
    ts = simulate(SimulationConfig(b, n_steps=200, seed=5))
    f = forecast(ts, b, 40).values
    assert abs(f[-1]) < 1e-3 * max(1.0, np.max(np.abs(ts.values[-5:])))


def test_forecast_insufficient_history():
    with pytest.raises(InsufficientDataError):
        forecast([1.0], [0.1, 0.2], 3)
    with pytest.raises(ValueError):
        forecast([1.0, 2.0], [0.1], 0)


def test_timeseries_validation():
    with pytest.raises(ValueError):
        TimeSeries([])
    with pytest.raises(ValueError):
        TimeSeries([1.0, np.nan])
