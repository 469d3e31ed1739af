"""Outage moments when the interferer count in the disk is Poisson."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .correlation import MomentSet
from .geom_bpp import s_func, t_func, w_func
from .model import Geometry, SystemParams
from .specfun import DEFAULT_QUAD, QuadSpec

__all__ = ["PppModel", "poisson_marginalize", "ppp_moments"]

# Quadrature-built factors can overshoot [0, 1] by roundoff.
_SLACK = 1e-12


@dataclass(frozen=True)
class PppModel:
    lam: float

    def __post_init__(self):
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise ValueError(f"lam must be finite and non-negative, got {self.lam}")

    def mean_count(self, geom: Geometry) -> float:
        return self.lam * geom.area


def poisson_marginalize(per_interferer_factor: float, mean_count: float) -> float:
    """E[G^M] for M ~ Poisson(mean_count): exp(-mean_count * (1 - G))."""
    if not -_SLACK <= per_interferer_factor <= 1.0 + _SLACK:
        raise ValueError(f"factor must lie in [0, 1], got {per_interferer_factor}")
    per_interferer_factor = min(max(per_interferer_factor, 0.0), 1.0)
    if mean_count < 0:
        raise ValueError(f"mean_count must be non-negative, got {mean_count}")
    return math.exp(-mean_count * (1.0 - per_interferer_factor))


def ppp_moments(
    model: PppModel,
    geom: Geometry,
    params: SystemParams,
    theta: float,
    spec: QuadSpec = DEFAULT_QUAD,
) -> MomentSet:
    nf = params.noise_factor
    mu = model.mean_count(geom)
    p = params.p
    if mu == 0 or p == 0:
        first = 1.0 - nf
        return MomentSet(first, 2 * first - 1 + nf * nf, 2 * first - 1 + nf * nf)
    first = 1.0 - nf * poisson_marginalize(1 - p + p * t_func(geom, params, spec), mu)
    base = 2.0 * first - 1.0
    second = base + nf * nf * poisson_marginalize(s_func(geom, params, spec), mu)
    joint = base + nf * nf * poisson_marginalize(w_func(geom, params, theta, spec), mu)
    return MomentSet(first, second, joint)
