"""Characteristic polynomial and the exact root-modulus stationarity oracle."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .model import GeometricARSpec

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class CharPolynomial:
    """Monic polynomial ``a^k + a_1 a^(k-1) + ... + a_k``.

    ``coeffs`` holds ``(1, a_1, ..., a_k)`` in descending powers.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if self.coeffs[0] != 1.0:
            raise ValueError(f"polynomial must be monic (leading coefficient {self.coeffs[0]})")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def __call__(self, x):
        return np.polyval(self.as_array(), x)

    @classmethod
    def from_ar(cls, b) -> "CharPolynomial":
        """Polynomial ``a^k - b_1 a^(k-1) - ... - b_k`` of AR coefficients ``b``."""
        return cls(tuple([1.0] + [-float(x) for x in b]))


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    max_modulus: float


@dataclass(frozen=True)
class RootVerdict:
    stationary: bool
    max_modulus: float
    margin: float
    borderline: bool


def char_polynomial(spec: GeometricARSpec) -> CharPolynomial:
    """Monic polynomial with coefficients ``(1, beta, beta, beta*delta, ...)``."""
    return CharPolynomial(tuple([1.0] + spec.lag_weights().tolist()))


def companion_matrix(p: CharPolynomial) -> np.ndarray:
    a = p.as_array()
    n = p.degree
    c = np.zeros((n, n))
    c[0, :] = -a[1:]
    c[1:, :-1] = np.eye(n - 1)
    return c


def compute_roots(p: CharPolynomial) -> RootSet:
    """All roots of ``p`` as eigenvalues of its companion matrix."""
    try:
        r = np.linalg.eigvals(companion_matrix(p))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration failed for polynomial {p.coeffs}") from exc
    if not np.all(np.isfinite(r)):
        raise NumericalError(f"non-finite roots for polynomial {p.coeffs}")
    return RootSet(roots=r, max_modulus=float(np.max(np.abs(r))) if r.size else 0.0)


def root_residuals(p: CharPolynomial, rs: RootSet) -> np.ndarray:
    """``|p(r)|`` scaled by ``sum|a_j| * max(1, |r|)**k`` for each root."""
    a = p.as_array()
    scale = np.abs(a).sum() * np.maximum(1.0, np.abs(rs.roots)) ** p.degree
    return np.abs(np.polyval(a, rs.roots)) / scale


def is_stationary_by_roots(p: CharPolynomial, tol: float = DEFAULT_TOL) -> RootVerdict:
    """Stationary iff every root lies strictly inside the unit circle.

    Roots within ``tol`` of the circle are flagged ``borderline`` and counted
    as not stationary.
    """
    m = compute_roots(p).max_modulus
    return RootVerdict(
        stationary=m < 1.0 - tol,
        max_modulus=m,
        margin=1.0 - m,
        borderline=abs(m - 1.0) <= tol,
    )
