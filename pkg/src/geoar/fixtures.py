"""Seeded synthetic series used as stand-ins for market data."""
from __future__ import annotations

import numpy as np

from .model import GeometricARSpec, build_coefficients
from .simulate import SimulationConfig, TimeSeries, simulate


def business_days(start: str, n: int) -> list[str]:
    first = np.busday_offset(np.datetime64(start, "D"), 0, roll="forward")
    return [str(d) for d in np.busday_offset(first, np.arange(n))]


def sensex_like(seed: int = 2017, n: int = 1044, level: float = 26000.0,
                drift: float = 12.0, sd: float = 250.0) -> TimeSeries:
    """Business-day levels, Jan 2017 to Dec 2020: a random walk with drift.

    Its first differences are white noise around ``drift``.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    steps = drift + sd * rng.standard_normal(n - 1)
    values = level + np.concatenate(([0.0], np.cumsum(steps)))
    return TimeSeries(values, labels=business_days("2017-01-02", n), meta={"seed": seed, "kind": "sensex-like"})


def geometric_levels(spec: GeometricARSpec, n: int = 141, seed: int = 0, level: float = 0.0) -> TimeSeries:
    """Levels whose first differences follow the geometric AR(k) model."""
    d = simulate(SimulationConfig(build_coefficients(spec), n_steps=n - 1, seed=seed)).values
    values = level + np.concatenate(([0.0], np.cumsum(d)))
    return TimeSeries(values, meta={"seed": seed, "kind": "geometric"})


def white_noise(n: int = 500, seed: int = 0) -> TimeSeries:
    rng = np.random.Generator(np.random.PCG64(seed))
    return TimeSeries(rng.standard_normal(n), meta={"seed": seed, "kind": "white-noise"})


def random_walk(n: int = 500, seed: int = 0) -> TimeSeries:
    rng = np.random.Generator(np.random.PCG64(seed))
    return TimeSeries(np.cumsum(rng.standard_normal(n)), meta={"seed": seed, "kind": "random-walk"})
