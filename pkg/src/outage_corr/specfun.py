"""Special functions and quadrature primitives.

Everything here is a pure function of its arguments. The Gauss
hypergeometric function and the order-zero modified Bessel function are
implemented from their series; adaptive quadrature is delegated to
QUADPACK through :func:`scipy.integrate.quad`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from scipy import integrate

__all__ = [
    "QuadSpec",
    "NumericalError",
    "QuadratureError",
    "gauss_2f1",
    "bessel_i0",
    "bessel_i0e",
    "integrate_1d",
    "integrate_2d_polar",
]

_MAX_TERMS = 200_000
_EPS = 2.0**-53


class NumericalError(ArithmeticError):
    """A numerical routine failed to reach its target accuracy."""


class QuadratureError(NumericalError):
    """Quadrature ran out of subdivisions before meeting the tolerance.

    The best available estimate and its error bound are kept on the
    exception so that callers can decide whether to use them anyway.
    """

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class QuadSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 500

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be >= 1, got {self.max_subdivisions}")


DEFAULT_QUAD = QuadSpec()


# ---------------------------------------------------------------------------
# Gauss hypergeometric function
# ---------------------------------------------------------------------------

def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _series_2f1(a: float, b: float, c: float, z: float) -> float:
    """Sum the defining power series, valid for |z| < 1."""
    term = 1.0
    total = 1.0
    for n in range(_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0.0:
            return total
        # Two consecutive negligible terms guard against a lucky near-zero term.
        if abs(term) <= _EPS * abs(total) and abs(term * z) <= _EPS * abs(total):
            return total
    raise NumericalError(
        f"2F1({a}, {b}; {c}; {z}) series did not converge in {_MAX_TERMS} terms"
    )


def _inverse_argument_2f1(a: float, b: float, c: float, z: float) -> float:
    """Continuation to large negative z through the 1/z connection formula.

    Requires b - a to be non-integer, otherwise the two Gamma-weighted
    branches are individually singular.
    """
    w = 1.0 / z
    mz = -z
    g_c = math.gamma(c)
    first = (
        g_c * math.gamma(b - a) / (math.gamma(b) * math.gamma(c - a))
        * mz ** (-a) * _series_2f1(a, a - c + 1.0, a - b + 1.0, w)
    )
    second = (
        g_c * math.gamma(a - b) / (math.gamma(a) * math.gamma(c - b))
        * mz ** (-b) * _series_2f1(b, b - c + 1.0, b - a + 1.0, w)
    )
    return first + second


def gauss_2f1(a1: float, a2: float, b: float, z: float) -> float:
    """Gauss hypergeometric function 2F1([a1, a2]; b; z) for real z <= 0 or |z| < 1.

    The direct series is used for -0.5 <= z < 1. For -2 <= z < -0.5 the
    Pfaff transformation maps the argument to z/(z-1), which lies in
    (1/3, 2/3]. Beyond z < -2 the Pfaff argument creeps towards 1 and the
    series stalls, so the 1/z connection formula is used instead whenever
    a2 - a1 is not an integer.
    """
    if _is_nonpositive_integer(b):
        raise ValueError(f"2F1 undefined for non-positive integer b={b}")
    if not (z <= 0.0 or abs(z) < 1.0):
        raise ValueError(f"2F1 argument z={z} outside the supported range")
    if z == 0.0:
        return 1.0
    if z >= -0.5:
        return _series_2f1(a1, a2, b, z)
    if z < -2.0 and not _is_integer(a2 - a1) and not any(
        _is_nonpositive_integer(x) for x in (a1, a2, b - a1, b - a2)
    ):
        return _inverse_argument_2f1(a1, a2, b, z)
    # Pfaff: 2F1(a, b; c; z) = (1 - z)^-a 2F1(a, c - b; c; z / (z - 1))
    w = z / (z - 1.0)
    return (1.0 - z) ** (-a1) * _series_2f1(a1, b - a2, b, w)


def _is_integer(x: float) -> bool:
    return abs(x - round(x)) < 1e-12


# ---------------------------------------------------------------------------
# Modified Bessel function of order zero
# ---------------------------------------------------------------------------

_I0_SERIES_LIMIT = 20.0


def _i0_series(x: float) -> float:
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while term > _EPS * total:
        k += 1
        term *= q / (k * k)
        total += term
    return total


def bessel_i0e(x: float) -> float:
    """Exponentially scaled I0: exp(-x) * I0(x), finite for any x >= 0."""
    if x < 0:
        raise ValueError(f"bessel_i0 requires x >= 0, got {x}")
    if x <= _I0_SERIES_LIMIT:
        return math.exp(-x) * _i0_series(x)
    # Hankel asymptotic expansion; at x > 20 its smallest term is far below eps.
    t = 1.0 / (8.0 * x)
    term = 1.0
    total = 1.0
    for k in range(1, 60):
        nxt = term * (2 * k - 1) ** 2 * t / k
        if nxt > term:
            break
        term = nxt
        total += term
        if term <= _EPS * total:
            break
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order zero."""
    if x < 0:
        raise ValueError(f"bessel_i0 requires x >= 0, got {x}")
    if x <= _I0_SERIES_LIMIT:
        return _i0_series(x)
    # exp(x) alone overflows just past 709; split it so the product stays finite.
    half = math.exp(0.5 * x)
    return half * bessel_i0e(x) * half


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def _quad(f, lo, hi, spec: QuadSpec, points=None) -> float:
    kwargs = {}
    if points:
        inner = sorted(p for p in points if lo < p < hi)
        if inner:
            kwargs["points"] = inner
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            f,
            lo,
            hi,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=1,
            **kwargs,
        )
    value, error = out[0], out[1]
    if not math.isfinite(value):
        raise QuadratureError("quadrature produced a non-finite value", value, error)
    # A fourth element is only present when QUADPACK flags a problem.
    if len(out) > 3 and error > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise QuadratureError(
            f"quadrature on [{lo}, {hi}] did not converge: {out[3].splitlines()[0]}",
            value,
            error,
        )
    return value


def integrate_1d(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    spec: QuadSpec = DEFAULT_QUAD,
    *,
    points: Sequence[float] = (),
    scale: float = 1.0,
) -> float:
    """Adaptive integral of ``f`` over [lo, hi].

    ``hi`` may be ``math.inf``; the half line is then mapped onto [0, 1)
    with r = lo + scale * t / (1 - t). Pick ``scale`` near the width of
    the integrand's bulk so that the mapped mass does not pile up at t=1.
    ``points`` marks interior locations where ``f`` is not smooth.
    """
    if hi < lo:
        raise ValueError(f"integrate_1d requires lo <= hi, got [{lo}, {hi}]")
    if hi == lo:
        return 0.0
    if math.isinf(hi):
        if scale <= 0:
            raise ValueError(f"scale must be positive, got {scale}")

        def mapped(t):
            if t >= 1.0:
                return 0.0
            u = 1.0 - t
            return f(lo + scale * t / u) * scale / (u * u)

        t_points = [(p - lo) / (p - lo + scale) for p in points if p > lo]
        return _quad(mapped, 0.0, 1.0, spec, t_points)
    return _quad(f, lo, hi, spec, list(points))


def integrate_2d_polar(
    f: Callable[[float, float], float],
    spec: QuadSpec = DEFAULT_QUAD,
    *,
    rho_points: Sequence[float] = (),
    phi_points: Sequence[float] = (),
) -> float:
    """Normalized polar double integral (1/2pi) * int_0^1 int_0^2pi f(rho, phi) dphi drho.

    Nested adaptive quadrature, outer over rho and inner over phi. The
    inner tolerance is tightened relative to the outer one so that inner
    errors do not masquerade as non-smoothness to the outer integrator.
    """
    two_pi = 2.0 * math.pi
    inner_spec = QuadSpec(
        abs_tol=spec.abs_tol * 0.1,
        rel_tol=spec.rel_tol * 0.1,
        max_subdivisions=spec.max_subdivisions,
    )
    phis = sorted({p % two_pi for p in phi_points} - {0.0})

    def inner(rho):
        return _quad(lambda phi: f(rho, phi), 0.0, two_pi, inner_spec, phis)

    return _quad(inner, 0.0, 1.0, spec, list(rho_points)) / two_pi
