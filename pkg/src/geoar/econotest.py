"""OLS autoregression, the augmented Dickey-Fuller test and forecast accuracy."""
from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InsufficientDataError
from .simulate import TimeSeries

# Constant-only Dickey-Fuller regression, asymptotic (large-n) values.
CRITICAL_VALUES = {"1%": -3.43, "5%": -2.86, "10%": -2.57}

HIGHLY_STRONG = "highly-strong"
MODERATE = "moderate"
WEAK = "weak"
NON_STATIONARY = "non-stationary"
CATEGORIES = (HIGHLY_STRONG, MODERATE, WEAK, NON_STATIONARY)
STRENGTH = {HIGHLY_STRONG: 3, MODERATE: 2, WEAK: 1, NON_STATIONARY: 0}
CATEGORY_RULE = (
    "stat <= cv(1%) -> highly-strong; <= cv(5%) -> moderate; "
    "<= cv(10%) -> weak; otherwise non-stationary"
)


class RankDeficiencyWarning(UserWarning):
    pass


def _values(series) -> np.ndarray:
    return series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)


@dataclass
class OLSFit:
    coefficients: np.ndarray  # b_1..b_k, then the intercept if fitted
    residual_variance: float
    standard_errors: np.ndarray
    n_used: int
    with_intercept: bool = False
    rank_deficient: bool = False

    @property
    def ar(self) -> np.ndarray:
        return self.coefficients[:-1] if self.with_intercept else self.coefficients

    @property
    def intercept(self) -> float:
        return float(self.coefficients[-1]) if self.with_intercept else 0.0


@dataclass
class ADFResult:
    statistic: float
    lags_used: int
    category: str
    critical_values: dict[str, float] = field(default_factory=lambda: dict(CRITICAL_VALUES))
    nobs: int = 0
    aic: float = float("nan")

    def rejects(self, level: str = "5%") -> bool:
        return self.statistic <= self.critical_values[level]


def lag_matrix(y: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Target ``y[k:]`` and regressors whose column i holds ``y[t-1-i]``."""
    n = y.size
    X = np.column_stack([y[k - 1 - i : n - 1 - i] for i in range(k)]) if k else np.empty((n, 0))
    return y[k:], X


def _ols(y: np.ndarray, X: np.ndarray):
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    dof = max(y.size - X.shape[1], 1)
    s2 = float(resid @ resid) / dof
    cov = s2 * np.linalg.pinv(X.T @ X)
    se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    return beta, resid, s2, se, rank < X.shape[1]


def fit_ar(series, k: int, with_intercept: bool = False) -> OLSFit:
    """Least-squares regression of pi(t) on pi(t-1)..pi(t-k).

    Solved by SVD-based least squares; a rank-deficient design (for example a
    constant series) yields the minimum-norm solution and a warning.
    """
    y = _values(series)
    if y.size <= k + 2:
        raise InsufficientDataError(f"fit_ar needs more than {k + 2} observations (got {y.size})")
    target, X = lag_matrix(y, k)
    if with_intercept:
        X = np.column_stack([X, np.ones(target.size)])
    beta, _, s2, se, deficient = _ols(target, X)
    if deficient:
        warnings.warn("design matrix is rank deficient; returning minimum-norm solution", RankDeficiencyWarning)
    return OLSFit(beta, s2, se, target.size, with_intercept, deficient)


def fit_geometric_scale(series, k: int, delta: float) -> float:
    """Scale s of the one-parameter model b = s * (1, 1, delta, ..., delta**(k-2))."""
    y = _values(series)
    if y.size <= k + 2:
        raise InsufficientDataError(f"need more than {k + 2} observations (got {y.size})")
    target, X = lag_matrix(y, k)
    w = np.concatenate(([1.0], delta ** np.arange(k - 1, dtype=float)))[:k]
    z = X @ w
    denom = float(z @ z)
    return float(z @ target) / denom if denom > 0 else 0.0


def classify(statistic: float, critical_values: dict[str, float] = CRITICAL_VALUES) -> str:
    if statistic <= critical_values["1%"]:
        return HIGHLY_STRONG
    if statistic <= critical_values["5%"]:
        return MODERATE
    if statistic <= critical_values["10%"]:
        return WEAK
    return NON_STATIONARY


def default_max_lags(n: int) -> int:
    """Schwert's rule ``12 * (n/100)**(1/4)``."""
    return int(math.ceil(12.0 * (n / 100.0) ** 0.25))


def _adf_design(y: np.ndarray, p: int, start: int):
    """Rows t = start..n-1 of the regression dy_t ~ 1, y_(t-1), dy_(t-1..t-p)."""
    dy = np.diff(y)
    # dy[t-1] = y[t] - y[t-1]
    rows = np.arange(start, y.size)
    cols = [np.ones(rows.size), y[rows - 1]]
    cols += [dy[rows - 1 - j] for j in range(1, p + 1)]
    return dy[rows - 1], np.column_stack(cols)


def _aic(resid: np.ndarray, nparams: int) -> float:
    n = resid.size
    ssr = float(resid @ resid)
    llf = -n / 2.0 * (math.log(2 * math.pi) + math.log(ssr / n) + 1.0)
    return -2.0 * llf + 2.0 * nparams


def adf_test(series, max_lags: int | None = None, autolag: bool = True) -> ADFResult:
    """Augmented Dickey-Fuller test with a constant and no trend.

    With ``autolag`` the number of lagged differences is picked by AIC over
    0..max_lags on a common sample, and the chosen regression is then refit
    on every usable observation. The statistic is the t-ratio of the
    coefficient on pi(t-1).
    """
    y = _values(series)
    if max_lags is None:
        max_lags = default_max_lags(y.size)
    if y.size < 25 + max_lags:
        raise InsufficientDataError(
            f"adf_test needs at least {25 + max_lags} observations (got {y.size})"
        )
    best_p, best_aic = max_lags, float("nan")
    if autolag:
        best_aic = float("inf")
        for p in range(max_lags + 1):
            target, X = _adf_design(y, p, max_lags + 1)
            _, resid, *_ = _ols(target, X)
            a = _aic(resid, X.shape[1])
            if a < best_aic:
                best_p, best_aic = p, a
    target, X = _adf_design(y, best_p, best_p + 1)
    beta, resid, s2, se, _ = _ols(target, X)
    stat = float(beta[1] / se[1]) if se[1] > 0 else float("-inf")
    return ADFResult(
        statistic=stat,
        lags_used=best_p,
        category=classify(stat),
        nobs=target.size,
        aic=best_aic,
    )


def rmse(actual, predicted) -> float:
    a, p = _values(actual), _values(predicted)
    if a.size != p.size:
        raise ValueError(f"length mismatch: {a.size} actual vs {p.size} predicted")
    if a.size < 1:
        raise ValueError("rmse needs at least one value")
    return float(np.sqrt(np.mean((a - p) ** 2)))


def majority_category(categories: Sequence[str]) -> str:
    """Most frequent category; ties go to the weaker one."""
    counts = Counter(categories)
    return max(counts, key=lambda c: (counts[c], -STRENGTH[c]))
