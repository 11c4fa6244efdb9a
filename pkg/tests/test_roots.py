import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geoar.model import GeometricARSpec
from geoar.roots import (
    CharPolynomial,
    char_polynomial,
    compute_roots,
    is_stationary_by_roots,
    root_residuals,
)

from conftest import random_specs

# mpmath.polyroots at 40 digits on (1, 0.4, 0.4, 0.2, 0.1, 0.05)
GOLDEN_MAX_MODULUS_TABLE1 = 0.58408412382101378951


@pytest.mark.parametrize(
    "beta, delta, k, expected",
    [
        (0.5, 0.5, 2, (1, 0.5, 0.5)),
        (0.4, 0.5, 5, (1, 0.4, 0.4, 0.2, 0.1, 0.05)),
        (0.3, 0.7, 4, (1, 0.3, 0.3, 0.21, 0.147)),
    ],
)
def test_char_polynomial_examples(beta, delta, k, expected):
    p = char_polynomial(GeometricARSpec(beta, delta, k))
    assert p.degree == k
    np.testing.assert_allclose(p.coeffs, expected, rtol=1e-12)


def test_char_polynomial_matches_ar_form():
    spec = GeometricARSpec(0.3, 0.6, 6)
    from geoar.model import build_coefficients

    np.testing.assert_allclose(
        CharPolynomial.from_ar(build_coefficients(spec).b).coeffs, char_polynomial(spec).coeffs
    )


def test_quadratic_roots_against_formula():
    rs = compute_roots(CharPolynomial((1.0, 0.5, 0.5)))
    disc = cmath.sqrt(0.25 - 2.0)
    expected = sorted([(-0.5 + disc) / 2, (-0.5 - disc) / 2], key=lambda z: z.imag)
    got = sorted(rs.roots, key=lambda z: z.imag)
    np.testing.assert_allclose(got, expected, atol=1e-12)
    assert rs.max_modulus == pytest.approx(np.sqrt(0.5), abs=1e-12)


def test_zero_roots():
    rs = compute_roots(CharPolynomial((1.0, 0.0, 0.0, 0.0)))
    assert len(rs.roots) == 3
    assert rs.max_modulus == 0.0


def test_golden_max_modulus():
    rs = compute_roots(CharPolynomial((1, 0.4, 0.4, 0.2, 0.1, 0.05)))
    assert rs.max_modulus == pytest.approx(GOLDEN_MAX_MODULUS_TABLE1, rel=1e-12)
    assert np.all(root_residuals(CharPolynomial((1, 0.4, 0.4, 0.2, 0.1, 0.05)), rs) < 1e-8)


def test_stationary_verdicts():
    v = is_stationary_by_roots(char_polynomial(GeometricARSpec(0.0001, 0.5, 5)))
    assert v.stationary and not v.borderline
    v = is_stationary_by_roots(char_polynomial(GeometricARSpec(0.5, 0.5, 2)))
    assert v.stationary
    assert v.margin == pytest.approx(1 - np.sqrt(0.5), abs=1e-12)


def test_unit_root_is_borderline_not_stationary():
    v = is_stationary_by_roots(CharPolynomial((1.0, -1.0)))
    assert not v.stationary
    assert v.borderline
    assert v.max_modulus == pytest.approx(1.0)


def test_non_monic_rejected():
    with pytest.raises(ValueError):
        CharPolynomial((2.0, 1.0))


@pytest.mark.parametrize("spec", random_specs(60, seed=11), ids=lambda s: f"b{s.beta:.3f}-d{s.delta:.2f}-k{s.k}")
def test_root_properties(spec):
    p = char_polynomial(spec)
    rs = compute_roots(p)
    assert len(rs.roots) == spec.k
    assert np.all(root_residuals(p, rs) <= 1e-8)
    assert rs.max_modulus == pytest.approx(np.max(np.abs(rs.roots)))
    # conjugate closure: the multiset equals its conjugate
    a = np.sort_complex(np.round(rs.roots, 9))
    b = np.sort_complex(np.round(rs.roots.conj(), 9))
    np.testing.assert_allclose(a, b, atol=1e-8)
    # reconstructing the polynomial from its roots
    np.testing.assert_allclose(np.poly(rs.roots).real, p.coeffs, atol=1e-9)


@settings(max_examples=50)
@given(roots=st.lists(st.floats(-0.99, 0.99), min_size=1, max_size=8))
def test_real_roots_inside_circle_are_stationary(roots):
    p = CharPolynomial(tuple(np.poly(roots).tolist()))
    v = is_stationary_by_roots(p)
    # clustered roots lose accuracy like eps**(1/multiplicity)
    assert v.max_modulus == pytest.approx(max(abs(r) for r in roots), abs=0.05)
    if max(abs(r) for r in roots) < 0.9:
        assert v.stationary
