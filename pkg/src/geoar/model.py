"""Geometric-coefficient AR(k) model.

The process is

    pi(t) = b_1 pi(t-1) + ... + b_k pi(t-k) + u(t)

with b_1 = b_2 = -beta and b_i = -beta * delta**(i-2) for i > 2, so that the
equivalent homogeneous form reads

    pi(t) + beta pi(t-1) + beta pi(t-2) + beta delta pi(t-3) + ... = u(t).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError

DEFAULT_EPSILON2 = 1e-8


@dataclass(frozen=True)
class GeometricARSpec:
    """Parameters (beta, delta, k) of the geometric AR(k) model.

    ``epsilon2`` is the floor the smallest lag weight ``beta * delta**(k-2)``
    must reach for the lag count to be admissible.
    """

    beta: float
    delta: float
    k: int
    epsilon2: float = DEFAULT_EPSILON2

    def __post_init__(self) -> None:
        problems = self.violations()
        if problems:
            raise InvalidSpecError("invalid spec: " + "; ".join(problems))

    def violations(self) -> list[str]:
        out = []
        if not (isinstance(self.k, (int, np.integer)) and not isinstance(self.k, bool)):
            out.append(f"k must be an integer (got {self.k!r})")
            return out
        if not math.isfinite(self.beta) or self.beta <= 0:
            out.append(f"beta must be > 0 (got {self.beta})")
        if not (0.0 < self.delta < 1.0):
            out.append(f"delta must lie in (0, 1) (got {self.delta})")
        if self.k < 2:
            out.append(f"k must be >= 2 (got {self.k})")
        if not self.epsilon2 > 0:
            out.append(f"epsilon2 must be > 0 (got {self.epsilon2})")
        if not out and self.beta * self.delta ** (self.k - 2) < self.epsilon2:
            out.append(
                f"smallest lag weight beta*delta**(k-2) = "
                f"{self.beta * self.delta ** (self.k - 2):.3g} is below epsilon2 = {self.epsilon2:.3g}"
            )
        return out

    def lag_weights(self) -> np.ndarray:
        """Positive weights (beta, beta, beta*delta, ..., beta*delta**(k-2))."""
        powers = np.concatenate(([0.0], np.arange(self.k - 1, dtype=float)))
        return self.beta * self.delta**powers


@dataclass(frozen=True)
class CoefficientVector:
    """Signed AR coefficients b_1..b_k."""

    b: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.b)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.b, dtype=float)

    def __len__(self) -> int:
        return len(self.b)


def build_coefficients(spec: GeometricARSpec) -> CoefficientVector:
    """Return ``(-beta, -beta, -beta*delta, ..., -beta*delta**(k-2))``.

    Each entry from the third on is produced from its predecessor by the
    recurrence ``b_i = delta * b_(i-1)``.
    """
    b = [-spec.beta, -spec.beta]
    for _ in range(spec.k - 2):
        b.append(spec.delta * b[-1])
    return CoefficientVector(tuple(b))


def max_lags(beta: float, delta: float, epsilon2: float = DEFAULT_EPSILON2) -> int:
    """Largest k >= 2 with ``beta * delta**(k-2) >= epsilon2``.

    Returns 2 when even ``beta`` itself is below the floor.
    """
    if not (beta > 0 and epsilon2 > 0 and 0 < delta < 1):
        raise InvalidSpecError(
            f"max_lags needs beta > 0, epsilon2 > 0, 0 < delta < 1 "
            f"(got beta={beta}, delta={delta}, epsilon2={epsilon2})"
        )
    if beta < epsilon2:
        return 2
    n = math.floor(math.log(epsilon2 / beta) / math.log(delta))
    # floor() can land one off when the ratio is an exact power of delta
    while n > 0 and beta * delta**n < epsilon2:
        n -= 1
    while beta * delta ** (n + 1) >= epsilon2:
        n += 1
    return 2 + n
