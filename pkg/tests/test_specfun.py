import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from outage_corr.specfun import (
    NumericalError,
    QuadratureError,
    QuadSpec,
    bessel_i0,
    bessel_i0e,
    gauss_2f1,
    integrate_1d,
    integrate_2d_polar,
)

from conftest import attenuation_np


def mp_2f1(a1, a2, b, z):
    with mpmath.workdps(30):
        return float(mpmath.hyp2f1(a1, a2, b, z))


# --- 2F1 ---------------------------------------------------------------------

def test_2f1_at_zero():
    assert gauss_2f1(1, 2, 3, 0.0) == 1.0


def test_2f1_log_identity():
    assert gauss_2f1(1, 1, 2, -1.0) == pytest.approx(math.log(2.0), abs=1e-14)


def test_2f1_matches_euler_integral():
    alpha, beta, x = 3.5, 1.0, 0.75
    k = 2.0 / alpha
    u = x**alpha / beta
    # 2F1(1, k+1; k+2; -u) = (k+1) int_0^1 v^k / (1 + u v) dv
    oracle = (k + 1) * integrate.quad(lambda v: v**k / (1 + u * v), 0, 1, epsabs=1e-14, epsrel=1e-14)[0]
    assert gauss_2f1(1, k + 1, k + 2, -u) == pytest.approx(oracle, abs=1e-10)


@pytest.mark.parametrize("z", [-0.3, -0.5, -0.9, -1.0, -1.7, -2.0, -5.0, -40.0, -1e4, -1e8])
@pytest.mark.parametrize(
    "a1,a2,b",
    [
        (1.0, 2 / 3.5 + 1, 2 / 3.5 + 2),
        (2.0, (2 + 7.0) / 3.5, (2 + 10.5) / 3.5),
        (1.0, 2 / 4 + 1, 2 / 4 + 2),
        (0.5, 1.3, 2.9),
    ],
)
def test_2f1_against_mpmath(a1, a2, b, z):
    assert gauss_2f1(a1, a2, b, z) == pytest.approx(mp_2f1(a1, a2, b, z), rel=1e-10, abs=1e-300)


def test_2f1_log_identity_far_left():
    # integer a2 - a1 takes the Pfaff route all the way
    z = -50.0
    assert gauss_2f1(1, 1, 2, z) == pytest.approx(math.log1p(-z) / -z, rel=1e-10)


@pytest.mark.parametrize("seam", [-0.5, -1.0, -2.0])
def test_2f1_continuous_across_seams(seam):
    a1, a2, b = 1.0, 2 / 3.5 + 1, 2 / 3.5 + 2
    lo = gauss_2f1(a1, a2, b, seam - 1e-9)
    hi = gauss_2f1(a1, a2, b, seam + 1e-9)
    assert abs(lo - hi) < 1e-8


@settings(max_examples=60, deadline=None)
@given(
    a2=st.floats(0.1, 3.0),
    db=st.floats(0.2, 3.0),
    z=st.floats(-200.0, 0.9),
)
def test_2f1_property_mpmath(a2, db, z):
    b = a2 + db
    assert gauss_2f1(1.0, a2, b, z) == pytest.approx(mp_2f1(1.0, a2, b, z), rel=1e-9)


def test_2f1_domain_errors():
    with pytest.raises(ValueError):
        gauss_2f1(1, 1, 0, -0.5)
    with pytest.raises(ValueError):
        gauss_2f1(1, 1, -2, -0.5)
    with pytest.raises(ValueError):
        gauss_2f1(1, 1, 2, 1.0)


def test_2f1_reports_non_convergence():
    # integer parameter gap with huge |z| has no fast route
    with pytest.raises(NumericalError, match="terms"):
        gauss_2f1(1, 1, 2, -1e9)


# --- Bessel I0 ---------------------------------------------------------------

def series_i0(x):
    total, term, k = 0.0, 1.0, 0
    while term > 1e-18 * total or k < 3:
        total += term
        k += 1
        term *= (x / 2) ** 2 / (k * k)
    return total


def test_i0_at_zero():
    assert bessel_i0(0.0) == 1.0


@pytest.mark.parametrize("x,expected", [(1.0, 1.2660658777520084), (10.0, 2815.716628466254)])
def test_i0_frozen_values(x, expected):
    assert bessel_i0(x) == pytest.approx(expected, rel=1e-12)
    assert bessel_i0(x) == pytest.approx(series_i0(x), rel=1e-13)


@pytest.mark.parametrize("x", [0.3, 5.0, 19.9, 20.1, 35.0, 80.0, 300.0, 699.0])
def test_i0_against_mpmath(x):
    with mpmath.workdps(30):
        ref = mpmath.besseli(0, x)
        ref_e = float(ref * mpmath.exp(-x))
    assert bessel_i0e(x) == pytest.approx(ref_e, rel=1e-11)
    assert bessel_i0(x) == pytest.approx(float(ref), rel=1e-10)


def test_i0_large_argument_finite():
    assert math.isfinite(bessel_i0(700.0))


def test_i0_domain():
    with pytest.raises(ValueError):
        bessel_i0(-1.0)
    with pytest.raises(ValueError):
        bessel_i0e(-1e-3)


# --- quadrature ---------------------------------------------------------------

def test_quadspec_validation():
    for kw in ({"abs_tol": 0}, {"rel_tol": -1}, {"max_subdivisions": 0}):
        with pytest.raises(ValueError):
            QuadSpec(**kw)


def test_integrate_constant():
    assert integrate_1d(lambda r: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)


def test_integrate_rayleigh_half_line():
    assert integrate_1d(lambda r: r * math.exp(-r * r / 2), 0.0, math.inf) == pytest.approx(1.0, abs=1e-10)


def test_integrate_matches_psi_closed_form():
    from outage_corr.geom_bpp import psi

    alpha, beta = 3.5, 1.0
    val = integrate_1d(lambda r: r ** (alpha + 1) / (1 + r**alpha / beta), 0.0, 0.75)
    assert val == pytest.approx(psi(0.75, alpha, beta), abs=1e-9)


@pytest.mark.parametrize("deg", range(0, 12))
def test_integrate_polynomials(deg):
    assert integrate_1d(lambda r: r**deg, -1.0, 2.0) == pytest.approx(
        (2.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1), rel=1e-12
    )


def test_integrate_budget_exhaustion_carries_estimate():
    spec = QuadSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=2)
    with pytest.raises(QuadratureError) as info:
        integrate_1d(lambda r: math.sin(1.0 / r) if r else 0.0, 0.0, 1.0, spec)
    assert math.isfinite(info.value.estimate)
    assert info.value.error > 0


def test_integrate_2d_normalization_and_harmonic():
    assert integrate_2d_polar(lambda rho, phi: 1.0) == pytest.approx(1.0, abs=1e-12)
    assert integrate_2d_polar(lambda rho, phi: math.cos(phi)) == pytest.approx(0.0, abs=1e-10)


def midpoint_x(theta, r_out=1.0, r0=0.25, n=2000):
    rho = (np.arange(n) + 0.5) / n
    phi = (np.arange(n) + 0.5) * 2 * np.pi / n
    R, P = np.meshgrid(rho, phi, indexing="ij")
    pts = r_out * np.sqrt(R) * np.exp(1j * P)
    d1 = np.abs(pts + r0) / r0
    d2 = np.abs(pts + r0 * np.exp(1j * theta)) / r0
    return float(np.mean(attenuation_np(d1) * attenuation_np(d2)))


def test_integrate_2d_bpp_product_against_midpoint_grid():
    from outage_corr import Geometry
    from outage_corr.geom_bpp import polar_distance

    geom = Geometry(1.0, 0.25)
    theta = math.pi / 2

    def att(r):
        return 0.0 if r == 0 else 1.0 / (1.0 + r**-3.5)

    val = integrate_2d_polar(
        lambda rho, phi: att(polar_distance(geom, rho, phi, 0.0)) * att(polar_distance(geom, rho, phi, theta)),
        rho_points=[0.0625],
        phi_points=[math.pi, math.pi + theta],
    )
    assert val == pytest.approx(midpoint_x(theta), abs=1e-5)
