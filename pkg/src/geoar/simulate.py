"""Sample paths and deterministic forecasts of AR(k) recursions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InsufficientDataError
from .model import CoefficientVector

EXPLOSION_THRESHOLD = 1e12
RNG_NAME = "numpy.PCG64"


@dataclass
class TimeSeries:
    """Ordered finite observations with optional opaque labels."""

    values: np.ndarray
    labels: list[str] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size < 1:
            raise ValueError("a time series needs at least one value")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("time series values must be finite")
        if self.labels is not None and len(self.labels) != self.values.size:
            raise ValueError("labels and values differ in length")

    def __len__(self) -> int:
        return self.values.size


@dataclass
class SimulationConfig:
    coefficients: CoefficientVector | Sequence[float]
    n_steps: int = 500
    burn_in: int | None = None  # default 10*k
    innovation_sd: float = 1.0
    seed: int = 0
    initial_values: Sequence[float] | None = None
    innovation: str = "gaussian"  # or "uniform" (same variance)

    def __post_init__(self) -> None:
        b = self.b
        if b.size < 1:
            raise ValueError("need at least one coefficient")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.burn_in is not None and self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if not self.innovation_sd > 0:
            raise ValueError("innovation_sd must be > 0")
        if self.initial_values is not None and len(self.initial_values) != b.size:
            raise ValueError(f"initial_values must have length k={b.size}")
        if self.innovation not in ("gaussian", "uniform"):
            raise ValueError(f"unknown innovation distribution {self.innovation!r}")

    @property
    def b(self) -> np.ndarray:
        c = self.coefficients
        return c.as_array() if isinstance(c, CoefficientVector) else np.asarray(c, dtype=float)

    @property
    def effective_burn_in(self) -> int:
        return 10 * self.b.size if self.burn_in is None else self.burn_in


def _innovations(rng: np.random.Generator, n: int, kind: str) -> np.ndarray:
    if kind == "gaussian":
        return rng.standard_normal(n)
    # uniform on [-sqrt 3, sqrt 3] has unit variance
    return rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), n)


def simulate(config: SimulationConfig) -> TimeSeries:
    """Run ``pi(t) = sum_i b_i pi(t-i) + u(t)`` and drop the burn-in.

    ``initial_values`` are given oldest first. When any value exceeds
    ``EXPLOSION_THRESHOLD`` the path is cut there and ``meta["explosive"]``
    is set.
    """
    b = config.b
    k = b.size
    burn = config.effective_burn_in
    total = burn + config.n_steps
    rng = np.random.Generator(np.random.PCG64(config.seed))
    u = config.innovation_sd * _innovations(rng, total, config.innovation)

    x = np.zeros(k + total)
    if config.initial_values is not None:
        x[:k] = np.asarray(config.initial_values, dtype=float)
    rev = b[::-1]
    explosive_at = None
    for t in range(k, k + total):
        x[t] = rev @ x[t - k : t] + u[t - k]
        if not abs(x[t]) <= EXPLOSION_THRESHOLD:
            explosive_at = t
            break

    out = x[k + burn :] if explosive_at is None else x[k + burn : explosive_at]
    meta = {
        "seed": config.seed,
        "rng": RNG_NAME,
        "innovation": config.innovation,
        "innovation_sd": config.innovation_sd,
        "burn_in": burn,
        "explosive": explosive_at is not None,
    }
    if out.size == 0:
        # exploded during burn-in; keep the last finite stretch for the caller
        out = x[k:explosive_at] if explosive_at is not None and explosive_at > k else np.zeros(1)
    return TimeSeries(out.copy(), meta=meta)


def forecast(history: TimeSeries | Sequence[float], coefficients, horizon: int) -> TimeSeries:
    """Multi-step recursion with innovations held at their mean of zero."""
    h = history.values if isinstance(history, TimeSeries) else np.asarray(history, dtype=float)
    b = coefficients.as_array() if isinstance(coefficients, CoefficientVector) else np.asarray(coefficients, dtype=float)
    k = b.size
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if h.size < k:
        raise InsufficientDataError(f"forecast needs at least {k} history values (got {h.size})")
    buf = np.concatenate([h[h.size - k :], np.zeros(horizon)]) if k else np.zeros(horizon)
    rev = b[::-1]
    for t in range(k, k + horizon):
        buf[t] = rev @ buf[t - k : t]
    return TimeSeries(buf[k:].copy())
