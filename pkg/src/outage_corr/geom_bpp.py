"""Outage moments for a fixed number of interferers placed uniformly in the disk."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .correlation import MomentSet
from .model import Geometry, SystemParams, attenuation_scalar
from .specfun import DEFAULT_QUAD, QuadSpec, gauss_2f1, integrate_1d, integrate_2d_polar

__all__ = [
    "BppModel",
    "distance_pdf",
    "psi",
    "g_func",
    "z_i",
    "t_func",
    "s_func",
    "polar_distance",
    "x_func",
    "w_func",
    "bpp_moments",
]


@dataclass(frozen=True)
class BppModel:
    m: int

    def __post_init__(self):
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError(f"m must be a non-negative integer, got {self.m}")

    def intensity(self, geom: Geometry) -> float:
        return self.m / geom.area


def _arccos_clamped(x: float) -> float:
    return math.acos(min(1.0, max(-1.0, x)))


def _arc_argument(r: float, k: float) -> float:
    # (r0^2 r^2 + r0^2 - r_out^2) / (2 r0^2 r) with k = r_out / r0
    return (r * r + 1.0 - k * k) / (2.0 * r)


def distance_pdf(geom: Geometry, r: float) -> float:
    """Density of the normalized distance from a receiver to a uniform point in the disk."""
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r}")
    c = 2.0 * r * geom.r0**2 / geom.area
    if r <= geom.tau1:
        return math.pi * c
    if r <= geom.tau2:
        return c * _arccos_clamped(_arc_argument(r, geom.r_out / geom.r0))
    return 0.0


def psi(x: float, alpha: float, beta: float) -> float:
    """int_0^x r^(alpha+1) / (1 + r^alpha / beta) dr in closed form."""
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0:
        return 0.0
    two_a = 2.0 / alpha
    return x ** (alpha + 2) / (2.0 + alpha) * gauss_2f1(
        1.0, two_a + 1.0, two_a + 2.0, -(x**alpha) / beta
    )


def g_func(x: float, params: SystemParams) -> float:
    """int_0^x r^(2 alpha+1) / (beta + r^alpha)^2 dr in closed form."""
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0:
        return 0.0
    a, b = params.alpha, params.beta
    return x ** (2 * a + 2) / ((2 + 2 * a) * b * b) * gauss_2f1(
        2.0, (2 + 2 * a) / a, (2 + 3 * a) / a, -(x**a) / b
    )


@lru_cache(maxsize=256)
def _z_cached(i: int, r_out: float, r0: float, alpha: float, beta: float, spec: QuadSpec) -> float:
    k = r_out / r0
    lo, hi = (r_out - r0) / r0, (r_out + r0) / r0

    def integrand(r):
        ra = r**alpha
        return r ** (i * alpha + 1) / (beta + ra) ** i * _arccos_clamped(_arc_argument(r, k))

    return integrate_1d(integrand, lo, hi, spec)


def z_i(i: int, geom: Geometry, params: SystemParams, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """Arc-weighted annulus integral over [tau1, tau2] for power i in {1, 2}."""
    if i not in (1, 2):
        raise ValueError(f"i must be 1 or 2, got {i}")
    return _z_cached(i, geom.r_out, geom.r0, params.alpha, params.beta, spec)


def t_func(geom: Geometry, params: SystemParams, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """E[r^a / (beta + r^a)] for one uniformly placed interferer."""
    c = 2.0 * geom.r0**2 / geom.area
    return (
        c * math.pi / params.beta * psi(geom.tau1, params.alpha, params.beta)
        + c * z_i(1, geom, params, spec)
    )


def _square_term(geom: Geometry, params: SystemParams, spec: QuadSpec) -> float:
    """E[(r^a / (beta + r^a))^2] for one uniformly placed interferer."""
    c = 2.0 * geom.r0**2 / geom.area
    return c * (math.pi * g_func(geom.tau1, params) + z_i(2, geom, params, spec))


def s_func(geom: Geometry, params: SystemParams, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """E[(1 - p + p r^a / (beta + r^a))^2] for one uniformly placed interferer."""
    p = params.p
    return (
        (1 - p) ** 2
        + 2 * (1 - p) * p * t_func(geom, params, spec)
        + p * p * _square_term(geom, params, spec)
    )


def polar_distance(geom: Geometry, rho: float, phi: float, theta: float) -> float:
    """Normalized distance from the receiver at angle theta to the point (rho, phi).

    rho in [0, 1] is the squared radial fraction, so a uniform rho gives a
    uniform point in the disk.
    """
    r0, ro = geom.r0, geom.r_out
    s = ro * math.sqrt(rho)
    d2 = r0 * r0 + s * s + 2.0 * r0 * s * math.cos(phi - theta)
    return math.sqrt(max(d2, 0.0)) / r0


@lru_cache(maxsize=4096)
def _x_cached(r_out: float, r0: float, alpha: float, beta: float, theta: float, spec: QuadSpec) -> float:
    geom = Geometry(r_out, r0)

    def att(r):
        return attenuation_scalar(r, alpha, beta)

    def integrand(rho, phi):
        return att(polar_distance(geom, rho, phi, 0.0)) * att(polar_distance(geom, rho, phi, theta))

    # Each receiver coincides with a disk point at rho = (r0/r_out)^2, phi = theta + pi.
    return integrate_2d_polar(
        integrand,
        spec,
        rho_points=[(r0 / r_out) ** 2],
        phi_points=[math.pi, math.pi + theta],
    )


def x_func(geom: Geometry, params: SystemParams, theta: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """E[a(r1) a(r2)] for one uniform interferer, a(r) = r^alpha / (beta + r^alpha)."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    return _x_cached(geom.r_out, geom.r0, params.alpha, params.beta, float(theta), spec)


def w_func(geom: Geometry, params: SystemParams, theta: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """E[(1 - p + p a(r1)) (1 - p + p a(r2))] for one uniform interferer."""
    p = params.p
    return (
        (1 - p) ** 2
        + 2 * (1 - p) * p * t_func(geom, params, spec)
        + p * p * x_func(geom, params, theta, spec)
    )


def bpp_moments(
    model: BppModel,
    geom: Geometry,
    params: SystemParams,
    theta: float,
    spec: QuadSpec = DEFAULT_QUAD,
) -> MomentSet:
    m = model.m
    nf = params.noise_factor
    p = params.p
    if m == 0 or p == 0:
        first = 1.0 - nf
        return MomentSet(first, 2 * first - 1 + nf * nf, 2 * first - 1 + nf * nf)
    mean_factor = 1 - p + p * t_func(geom, params, spec)
    first = 1.0 - nf * mean_factor**m
    base = 2.0 * first - 1.0
    second = base + nf * nf * s_func(geom, params, spec) ** m
    joint = base + nf * nf * w_func(geom, params, theta, spec) ** m
    return MomentSet(first, second, joint)
