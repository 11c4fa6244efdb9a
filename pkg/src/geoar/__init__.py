"""Stationarity analysis and simulation of geometric-coefficient AR(k) models."""
from .model import CoefficientVector, GeometricARSpec, build_coefficients, max_lags
from .roots import CharPolynomial, char_polynomial, compute_roots, is_stationary_by_roots
from .schur import build_schur_matrix, schur_stationarity
from .bounds import (
    build_structure_matrices,
    coefficient_sum_check,
    conditioning_B,
    delta_lower_bound,
    eigenvalue_brackets,
    kappa,
    norm_K,
    theorem_bound,
)
from .simulate import SimulationConfig, TimeSeries, forecast, simulate
from .econotest import adf_test, fit_ar, rmse
from .ingest import first_difference, load_csv

__version__ = "0.1.0"
