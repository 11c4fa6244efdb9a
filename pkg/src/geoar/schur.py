"""Nested 2m x 2m determinant test for roots inside the unit circle.

For a monic polynomial with coefficients ``a_0 = 1, a_1, ..., a_k`` the m-th
matrix is ``[[C, D^T], [D, C^T]]`` where ``C`` and ``D`` are lower-triangular
Toeplitz with first columns ``(a_0, ..., a_(m-1))`` and ``(a_k, ..., a_(k-m+1))``.
All roots lie inside the unit circle iff all k determinants are positive.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, toeplitz

from .roots import CharPolynomial

# relative size below which a determinant is treated as singular
SINGULAR_RTOL = 1e-12


@dataclass(frozen=True)
class SchurMatrix:
    m: int
    entries: np.ndarray


@dataclass
class SchurReport:
    determinants: list[float]
    all_positive: bool
    first_failure: int | None = None
    notes: list[str] = field(default_factory=list)


def _lower_toeplitz(first_col: np.ndarray) -> np.ndarray:
    return toeplitz(first_col, np.zeros(len(first_col)))


def build_schur_matrix(p: CharPolynomial, m: int) -> SchurMatrix:
    k = p.degree
    if not 1 <= m <= k:
        raise ValueError(f"m must lie in 1..{k} (got {m})")
    a = p.as_array()
    c = _lower_toeplitz(a[:m])
    d = _lower_toeplitz(a[k - m + 1 :][::-1])
    return SchurMatrix(m=m, entries=np.block([[c, d.T], [d, c.T]]))


def _det(a: np.ndarray) -> tuple[float, bool]:
    """Determinant by LU with partial pivoting; second value flags singularity."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)  # singularity is reported below
        lu, piv = lu_factor(a, check_finite=True)
    diag = np.diag(lu)
    sign = -1.0 if np.count_nonzero(piv != np.arange(len(piv))) % 2 else 1.0
    det = sign * float(np.prod(diag))
    singular = bool(np.min(np.abs(diag)) <= SINGULAR_RTOL * max(1.0, np.max(np.abs(a))))
    return det, singular


def schur_stationarity(p: CharPolynomial) -> SchurReport:
    dets: list[float] = []
    first = None
    notes = []
    for m in range(1, p.degree + 1):
        det, singular = _det(build_schur_matrix(p, m).entries)
        if singular:
            notes.append(f"|A_{m}| is singular to working precision; counted as nonpositive")
            det_ok = False
        else:
            det_ok = det > 0
        dets.append(det)
        if not det_ok and first is None:
            first = m
    return SchurReport(determinants=dets, all_positive=first is None, first_failure=first, notes=notes)
