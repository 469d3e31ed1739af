"""Intra-cluster outage moments for a Thomas cluster of interferers.

Offspring are Poisson(lambda_prime) in number and scattered around the
cluster centre with an isotropic Gaussian of per-coordinate standard
deviation sigma. The moment formulas place the cluster centre on the
reference transmitter, so each receiver sits r0 away from it.

V and C are evaluated by direct quadrature against the Rician distance
density. :func:`v_series` keeps the term-by-term power-series route for
nu = 0 as a diagnostic only: summed over a finite upper limit it agrees
with the quadrature, but the alternating terms grow before they shrink
once the limit exceeds a few sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

from .correlation import MomentSet
from .geom_ppp import poisson_marginalize
from .model import Geometry, SystemParams, attenuation_scalar as _attenuation
from .specfun import (
    DEFAULT_QUAD,
    QuadSpec,
    bessel_i0e,
    gauss_2f1,
    integrate_1d,
    integrate_2d_polar,
)

__all__ = [
    "TcpModel",
    "tcp_distance_pdf",
    "v_func",
    "c_func",
    "v_series",
    "receiver_view",
    "tcp_polar_distance",
    "tcp_x_func",
    "q_func",
    "d_func",
    "tcp_moments",
]

# Gaussian tails beyond this many sigma carry < 1e-31 of the mass.
_BULK_SIGMAS = 12.0


@dataclass(frozen=True)
class TcpModel:
    """Thomas cluster parameters.

    sigma and nu are lengths in the same unit as the network geometry; nu
    is the distance from the receiver to the cluster centre.
    lambda_parent is carried along for bookkeeping only: the intra-cluster
    formulas never use it.
    """

    lambda_prime: float
    sigma: float
    nu: float = 0.0
    lambda_parent: float | None = None

    def __post_init__(self):
        if not self.lambda_prime >= 0:
            raise ValueError(f"lambda_prime must be non-negative, got {self.lambda_prime}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.nu >= 0:
            raise ValueError(f"nu must be non-negative, got {self.nu}")


def tcp_distance_pdf(model: TcpModel, r: float) -> float:
    """Rician density of the distance between the receiver and one offspring."""
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r}")
    s2 = model.sigma**2
    nu = model.nu
    # exp(-(r^2 + nu^2)/2s2) I0(r nu/s2) == exp(-(r - nu)^2/2s2) I0e(r nu/s2), without overflow
    return r / s2 * math.exp(-((r - nu) ** 2) / (2 * s2)) * bessel_i0e(r * nu / s2)


def _rician_expectation(g, model: TcpModel, r0: float, spec: QuadSpec) -> float:
    """E[g(d / r0)] with d drawn from the Rician density of ``model``."""

    def integrand(d):
        return g(d / r0) * tcp_distance_pdf(model, d)

    edge = model.nu + _BULK_SIGMAS * model.sigma
    points = [model.nu] if model.nu > 0 else []
    bulk = integrate_1d(integrand, 0.0, edge, spec, points=points)
    tail = integrate_1d(integrand, edge, math.inf, spec, scale=model.sigma)
    return bulk + tail


@lru_cache(maxsize=1024)
def _v_cached(model: TcpModel, alpha: float, beta: float, r0: float, power: int, spec: QuadSpec) -> float:
    return _rician_expectation(
        lambda r: _attenuation(r, alpha, beta) ** power, model, r0, spec
    )


def v_func(model: TcpModel, params: SystemParams, r0: float = 1.0, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """E[r^a / (beta + r^a)] over the cluster distance density.

    Distances are normalized by ``r0``; with the default r0 = 1 the model's
    sigma and nu are read directly in normalized units.
    """
    return _v_cached(model, params.alpha, params.beta, float(r0), 1, spec)


def c_func(model: TcpModel, params: SystemParams, r0: float = 1.0, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """E[(r^a / (beta + r^a))^2] over the cluster distance density."""
    return _v_cached(model, params.alpha, params.beta, float(r0), 2, spec)


def v_series(model: TcpModel, params: SystemParams, upper: float, terms: int = 60) -> float:
    """Truncated power-series value of int_0^upper a(r) f(r | nu=0) dr.

    Expands exp(-r^2/2 sigma^2) term by term and integrates each term with
    the 2F1 closed form. Only meaningful for nu = 0 and an ``upper`` of a
    few sigma; the full half line needs :func:`v_func`.
    """
    if model.nu != 0:
        raise ValueError("the series route only covers clusters centred on the receiver (nu=0)")
    a, b, s = params.alpha, params.beta, model.sigma
    total = 0.0
    for i in range(terms):
        k = (2.0 + 2.0 * i) / a
        coef = (-1.0) ** i / (math.factorial(i) * 2.0**i * s ** (2 + 2 * i) * b)
        total += coef * upper ** (a + 2 + 2 * i) / (2 + a + 2 * i) * gauss_2f1(
            1.0, k + 1.0, k + 2.0, -(upper**a) / b
        )
    return total


def receiver_view(model: TcpModel, geom: Geometry) -> TcpModel:
    """The model as seen from a receiver when the cluster sits on the reference transmitter.

    Both receivers are r0 from the cluster centre, so nu becomes r0. A
    model that already states nu = r0 is accepted; any other non-zero nu
    describes an off-centre cluster that the two-receiver formulas cannot
    represent symmetrically.
    """
    if model.nu not in (0.0, geom.r0):
        raise ValueError(
            "intra-cluster moments place the cluster centre on the reference "
            f"transmitter (nu=0 or nu=r0); got nu={model.nu}"
        )
    return replace(model, nu=geom.r0)


def tcp_polar_distance(model: TcpModel, geom: Geometry, rho: float, phi: float, theta: float) -> float:
    """Normalized distance from the receiver at angle theta to an offspring.

    The offspring radius is the inverse Rayleigh CDF sqrt(-2 sigma^2 ln rho),
    so a uniform rho in (0, 1] reproduces the Gaussian scatter.
    """
    if not 0.0 < rho <= 1.0:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    r0 = geom.r0
    s = math.sqrt(-2.0 * model.sigma**2 * math.log(rho))
    d2 = r0 * r0 + s * s + 2.0 * r0 * s * math.cos(phi - theta)
    return math.sqrt(max(d2, 0.0)) / r0


@lru_cache(maxsize=4096)
def _tcp_x_cached(sigma: float, r0: float, alpha: float, beta: float, theta: float, spec: QuadSpec) -> float:
    model = TcpModel(1.0, sigma)
    geom = Geometry(2.0 * r0, r0)  # r_out is irrelevant to the Gaussian map

    def integrand(rho, phi):
        if rho <= 0.0:
            return 1.0
        return _attenuation(tcp_polar_distance(model, geom, rho, phi, 0.0), alpha, beta) * _attenuation(
            tcp_polar_distance(model, geom, rho, phi, theta), alpha, beta
        )

    # Receivers coincide with an offspring at radius r0, i.e. rho = exp(-r0^2 / 2 sigma^2).
    return integrate_2d_polar(
        integrand,
        spec,
        rho_points=[math.exp(-(r0**2) / (2 * sigma**2))],
        phi_points=[math.pi, math.pi + theta],
    )


def tcp_x_func(
    model: TcpModel,
    geom: Geometry,
    params: SystemParams,
    theta: float,
    spec: QuadSpec = DEFAULT_QUAD,
) -> float:
    """E[a(r1) a(r2)] for one offspring of a cluster centred on the transmitter."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    receiver_view(model, geom)
    return _tcp_x_cached(model.sigma, geom.r0, params.alpha, params.beta, float(theta), spec)


def q_func(model: TcpModel, geom: Geometry, params: SystemParams, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """E[(1 - p + p a(r))^2] for one offspring."""
    view = receiver_view(model, geom)
    p = params.p
    return (
        (1 - p) ** 2
        + 2 * (1 - p) * p * v_func(view, params, geom.r0, spec)
        + p * p * c_func(view, params, geom.r0, spec)
    )


def d_func(
    model: TcpModel,
    geom: Geometry,
    params: SystemParams,
    theta: float,
    spec: QuadSpec = DEFAULT_QUAD,
) -> float:
    """E[(1 - p + p a(r1)) (1 - p + p a(r2))] for one offspring."""
    view = receiver_view(model, geom)
    p = params.p
    return (
        (1 - p) ** 2
        + 2 * (1 - p) * p * v_func(view, params, geom.r0, spec)
        + p * p * tcp_x_func(model, geom, params, theta, spec)
    )


def tcp_moments(
    model: TcpModel,
    geom: Geometry,
    params: SystemParams,
    theta: float,
    spec: QuadSpec = DEFAULT_QUAD,
) -> MomentSet:
    view = receiver_view(model, geom)
    nf = params.noise_factor
    lam, p = model.lambda_prime, params.p
    if lam == 0 or p == 0:
        first = 1.0 - nf
        return MomentSet(first, 2 * first - 1 + nf * nf, 2 * first - 1 + nf * nf)
    v = v_func(view, params, geom.r0, spec)
    first = 1.0 - nf * poisson_marginalize(1 - p + p * v, lam)
    base = 2.0 * first - 1.0
    second = base + nf * nf * poisson_marginalize(q_func(model, geom, params, spec), lam)
    joint = base + nf * nf * poisson_marginalize(d_func(model, geom, params, theta, spec), lam)
    return MomentSet(first, second, joint)
