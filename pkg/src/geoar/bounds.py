"""Perturbation bounds on the Schur matrices and the resulting limit on beta.

The m-th Schur matrix of the geometric polynomial splits as

    A_m = (v + R) * beta + J * (1 - beta)

where ``v = [[L, L^T], [L, L^T]]`` with ``L`` the m x m lower-triangular
all-ones matrix, ``J`` is the identity and ``R`` collects ``delta**p - 1``
corrections. Bauer-Fike then keeps every eigenvalue of ``v + R`` within
``kappa_m = ||R||_F * cond(X)`` of an eigenvalue of ``v``, ``X`` being the
eigenvector matrix of ``v``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import null_space

from .errors import InvalidSpecError
from .model import GeometricARSpec
from .roots import char_polynomial
from .schur import build_schur_matrix

EIGVEC_CONVENTION = (
    "unit-norm eigenvector columns of v; each eigenspace (m+1, 1, 0) gets an "
    "orthonormal basis; B is the spectral-norm condition number of X"
)


@dataclass(frozen=True)
class StructureMatrices:
    m: int
    v: np.ndarray
    R: np.ndarray
    J: np.ndarray

    def reconstruct(self, beta: float) -> np.ndarray:
        return (self.v + self.R) * beta + self.J * (1.0 - beta)


@dataclass(frozen=True)
class PerturbationBound:
    m: int
    K: float
    B: float
    kappa: float
    beta: float
    # (lo, hi) for eigenvalue groups i=1, i=2..m, i=m+1..2m
    brackets: tuple[tuple[float, float], tuple[float, float], tuple[float, float]]


@dataclass(frozen=True)
class StationarityBound:
    kappa_k: float
    beta_upper: float
    beta_lower: float
    delta_lower: float | None
    delta_lower_note: str

    def contains(self, beta: float) -> bool:
        return self.beta_lower < beta < self.beta_upper


@dataclass(frozen=True)
class CoefficientSumReport:
    coefficient_sum: float
    bound_rhs: float
    beta_upper: float
    in_bound: bool
    sum_below_one: bool


def _check_m(spec: GeometricARSpec, m: int) -> None:
    if not 1 <= m <= spec.k:
        raise ValueError(f"m must lie in 1..{spec.k} (got {m})")


def ones_lower(m: int) -> np.ndarray:
    return np.tril(np.ones((m, m)))


def base_matrix_v(m: int) -> np.ndarray:
    L = ones_lower(m)
    return np.block([[L, L.T], [L, L.T]])


def similarity_zeta(m: int) -> tuple[np.ndarray, np.ndarray]:
    """``zeta = [[I, 0], [I, I]]`` and its inverse."""
    eye, zero = np.eye(m), np.zeros((m, m))
    return np.block([[eye, zero], [eye, eye]]), np.block([[eye, zero], [-eye, eye]])


def _relative_lag_weights(spec: GeometricARSpec) -> np.ndarray:
    """``a_j / beta`` for j = 0..k, with ``a_0 / beta`` unused (diagonal)."""
    w = np.ones(spec.k + 1)
    w[3:] = spec.delta ** np.arange(1, spec.k - 1, dtype=float)
    return w


def perturbation_matrix(spec: GeometricARSpec, m: int) -> np.ndarray:
    """R built directly from ``delta`` powers, independent of beta.

    Off-diagonal entries carrying ``a_j`` in ``A_m`` become ``a_j/beta - 1``;
    positions where ``v`` and ``A_m`` are both zero, and the unit diagonal,
    give 0.
    """
    _check_m(spec, m)
    k = spec.k
    w = _relative_lag_weights(spec)
    R = np.zeros((2 * m, 2 * m))
    for i in range(m):
        for j in range(i):
            R[i, j] = R[m + j, m + i] = w[i - j] - 1.0
        for j in range(i + 1):
            R[m + i, j] = R[j, m + i] = w[k - (i - j)] - 1.0
    return R


def build_structure_matrices(spec: GeometricARSpec, m: int) -> StructureMatrices:
    R = perturbation_matrix(spec, m)
    return StructureMatrices(m=m, v=base_matrix_v(m), R=R, J=np.eye(2 * m))


def reconstruction_residual(spec: GeometricARSpec, m: int) -> np.ndarray:
    """``R`` solved from ``A_m`` itself: ``(A_m - J(1-beta))/beta - v``."""
    A = build_schur_matrix(char_polynomial(spec), m).entries
    return (A - np.eye(2 * m) * (1.0 - spec.beta)) / spec.beta - base_matrix_v(m)


def norm_K(spec: GeometricARSpec, m: int) -> float:
    """Frobenius norm of ``R`` for the m-th matrix."""
    return float(np.linalg.norm(perturbation_matrix(spec, m), "fro"))


def _power_sums(x: float, lo: int, hi: int) -> tuple[float, float, float]:
    """Closed forms of sum x**p, sum p*x**p and count over p = lo..hi."""
    if hi < lo:
        return 0.0, 0.0, 0.0
    n = hi - lo + 1

    def s0(t: int) -> float:  # sum_{p=0}^{t-1} x**p
        return (1.0 - x**t) / (1.0 - x)

    def s1(t: int) -> float:  # sum_{p=0}^{t-1} p x**p
        return x * (1.0 - t * x ** (t - 1) + (t - 1) * x**t) / (1.0 - x) ** 2

    g = s0(hi + 1) - s0(lo)
    h = s1(hi + 1) - s1(lo)
    return g, h, float(n)


def _weighted_square_sum(delta: float, c: int, s: int, lo: int, hi: int) -> float:
    """Closed form of sum_{p=lo}^{hi} (c + s*p) * (delta**p - 1)**2."""
    g2, h2, n = _power_sums(delta * delta, lo, hi)
    g1, h1, _ = _power_sums(delta, lo, hi)
    lin = c * n + s * (hi * (hi + 1) - (lo - 1) * lo) / 2.0 if n else 0.0
    return (c * g2 + s * h2) - 2.0 * (c * g1 + s * h1) + lin


def norm_K_closed_form(delta: float, m: int, k: int) -> float:
    """Geometric-series closed form of ``||R||_F`` without building R.

    The C blocks hold ``delta**p - 1`` for p = 1..m-3, each (m-2-p) times;
    the D blocks hold ``delta**q - 1`` for q = max(k-1-m, 0)..k-2, each
    (m-k+2+q) times. Both patterns appear twice.
    """
    if not 1 <= m <= k:
        raise ValueError(f"m must lie in 1..{k} (got {m})")
    inner = _weighted_square_sum(delta, m - 2, -1, 1, m - 3)
    inner += _weighted_square_sum(delta, m - k + 2, 1, max(k - 1 - m, 0), k - 2)
    return math.sqrt(max(2.0 * inner, 0.0))


def norm_K_as_printed(delta: float, m: int, k: int) -> float:
    """The unweighted sum ``2m[(delta^(k-2)-1)^2 + ... + (delta^2-1)^2 + 2(delta-1)^2]``.

    Kept for comparison only; it ignores how often each entry repeats in R
    and so does not equal the Frobenius norm except at m = 1.
    """
    if m == 1:
        return math.sqrt(2.0) * abs(delta ** (k - 2) - 1.0)
    terms = sum((delta**p - 1.0) ** 2 for p in range(2, k - 1)) + 2.0 * (delta - 1.0) ** 2
    return math.sqrt(2.0 * m * terms)


@lru_cache(maxsize=128)
def eigenvector_matrix(m: int) -> np.ndarray:
    """Eigenvectors of ``v`` ordered by eigenvalue m+1, 1 (m-1 times), 0 (m times).

    Non-zero eigenvalues of ``v = [I; I] [L, L^T]`` are those of
    ``L + L^T = I + 11^T``; an eigenvector y of the latter lifts to ``[y; y]``.
    """
    ones = np.ones((m, m))
    _, y = np.linalg.eigh(np.eye(m) + ones)
    y = y[:, ::-1]  # eigh sorts ascending; put m+1 first
    top = np.vstack([y, y]) / math.sqrt(2.0)
    L = ones_lower(m)
    kernel = null_space(np.hstack([L, L.T]))
    X = np.hstack([top, kernel])
    X.setflags(write=False)
    return X


@lru_cache(maxsize=128)
def conditioning_B(m: int) -> float:
    if m < 1:
        raise ValueError(f"m must be >= 1 (got {m})")
    if m == 1:
        return 1.0
    return float(np.linalg.cond(eigenvector_matrix(m), 2))


def kappa(spec: GeometricARSpec, m: int) -> float:
    return norm_K(spec, m) * conditioning_B(m)


def kappa_series(spec: GeometricARSpec) -> list[float]:
    return [kappa(spec, m) for m in range(1, spec.k + 1)]


def lemma_brackets(beta: float, m: int, kap: float):
    """Intervals for the eigenvalue groups i=1, i=2..m and i=m+1..2m of A_m."""
    return (
        ((m - kap) * beta + 1.0, (m + kap) * beta + 1.0),
        (1.0 - kap * beta, 1.0 + kap * beta),
        (1.0 - (kap + 1.0) * beta, 1.0 + (kap - 1.0) * beta),
    )


def eigenvalue_brackets(spec: GeometricARSpec, m: int) -> PerturbationBound:
    K = norm_K(spec, m)
    B = conditioning_B(m)
    kap = K * B
    return PerturbationBound(
        m=m, K=K, B=B, kappa=kap, beta=spec.beta, brackets=lemma_brackets(spec.beta, m, kap)
    )


def bracket_coverage(spec: GeometricARSpec, m: int) -> dict:
    """Diagnostic: how the actual eigenvalues of A_m sit against the brackets.

    A_m is not symmetric, so eigenvalues may be complex; real parts are
    compared against the union of the three intervals.
    """
    A = build_schur_matrix(char_polynomial(spec), m).entries
    ev = np.linalg.eigvals(A)
    br = eigenvalue_brackets(spec, m).brackets
    inside = [any(lo - 1e-12 <= z.real <= hi + 1e-12 for lo, hi in br) for z in ev]
    return {
        "eigenvalues": ev,
        "inside_union": int(sum(inside)),
        "total": len(ev),
        "max_imag": float(np.max(np.abs(ev.imag))),
    }


def delta_lower_bound(beta: float, k: int) -> tuple[float | None, str]:
    """Smallest admissible delta at fixed beta: ``(1 + (beta-1)/(beta*sqrt 2))**(1/(k-2))``.

    Returns ``(None, reason)`` when the bound is vacuous.
    """
    if not 0 < beta < 1:
        raise InvalidSpecError(f"delta lower bound needs 0 < beta < 1 (got {beta})")
    if k < 3:
        return None, "no constraint: k = 2 has no delta-scaled lag"
    inner = 1.0 + (beta - 1.0) / (beta * math.sqrt(2.0))
    if inner <= 0:
        return None, f"no constraint: inner term {inner:.6g} <= 0 (beta <= 1/(1+sqrt 2))"
    val = inner ** (1.0 / (k - 2))
    return val, "ok" if val < 1 else "inconsistent: bound >= 1"


def theorem_bound(spec: GeometricARSpec) -> StationarityBound:
    """``-1/(k + kappa_k) < beta < 1/(kappa_k + 1)``, with the delta lower bound."""
    kk = kappa(spec, spec.k)
    if spec.beta < 1:
        dl, note = delta_lower_bound(spec.beta, spec.k)
    else:
        dl, note = None, "no constraint: beta >= 1"
    return StationarityBound(
        kappa_k=kk,
        beta_upper=1.0 / (kk + 1.0),
        beta_lower=-1.0 / (spec.k + kk),
        delta_lower=dl,
        delta_lower_note=note,
    )


def coefficient_sum(spec: GeometricARSpec) -> float:
    """``beta * (2 - delta - delta**(k-1)) / (1 - delta)``, the total lag weight."""
    d = spec.delta
    return spec.beta * (2.0 - d - d ** (spec.k - 1)) / (1.0 - d)


def coefficient_sum_check(spec: GeometricARSpec) -> CoefficientSumReport:
    tb = theorem_bound(spec)
    d = spec.delta
    s = coefficient_sum(spec)
    rhs = tb.beta_upper * (2.0 - d - d ** (spec.k - 1)) / (1.0 - d)
    return CoefficientSumReport(
        coefficient_sum=s,
        bound_rhs=rhs,
        beta_upper=tb.beta_upper,
        in_bound=spec.beta < tb.beta_upper,
        sum_below_one=s < 1.0,
    )
