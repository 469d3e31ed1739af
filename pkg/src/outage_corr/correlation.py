"""Correlation coefficient of the outage probability at two receivers."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "MomentSet",
    "CorrelationResult",
    "InconsistentMomentsError",
    "correlation_coefficient",
]

DEFAULT_EPSILON_FLOOR = 1e-12


class InconsistentMomentsError(ValueError):
    """Moments that no random variable on [0, 1] could produce."""


@dataclass(frozen=True)
class MomentSet:
    """Spatially averaged E[eps], E[eps^2] and E[eps_1 eps_2]."""

    first: float
    second: float
    joint: float

    @property
    def variance(self) -> float:
        return self.second - self.first**2

    @property
    def covariance(self) -> float:
        return self.joint - self.first**2

    def violations(self, tol: float = 1e-9) -> list[str]:
        """Names of the ordering constraints that fail by more than ``tol``."""
        f2 = self.first**2
        out = []
        if not -tol <= self.first <= 1 + tol:
            out.append("0 <= first <= 1")
        if self.second < f2 - tol:
            out.append("second >= first^2")
        if self.second > self.first + tol:
            out.append("second <= first")
        if self.joint < f2 - tol:
            out.append("joint >= first^2")
        if self.joint > self.second + tol:
            out.append("joint <= second")
        return out


@dataclass(frozen=True)
class CorrelationResult:
    zeta: float
    moments: MomentSet
    variance: float
    degenerate: bool = False


def correlation_coefficient(
    moments: MomentSet, epsilon_floor: float = DEFAULT_EPSILON_FLOOR
) -> CorrelationResult:
    """zeta = (E[eps1 eps2] - E[eps]^2) / (E[eps^2] - E[eps]^2).

    When the variance is below ``epsilon_floor`` the outage probability is
    deterministic (no interferers, or nobody transmits) and zeta is a 0/0
    expression; the result is flagged degenerate and zeta is NaN.
    """
    variance = moments.variance
    if variance < -epsilon_floor:
        raise InconsistentMomentsError(
            f"negative variance {variance!r} from moments {moments}"
        )
    if not -epsilon_floor <= moments.first <= 1 + epsilon_floor:
        raise InconsistentMomentsError(f"first moment {moments.first!r} outside [0, 1]")
    if variance < epsilon_floor:
        return CorrelationResult(math.nan, moments, max(variance, 0.0), degenerate=True)
    return CorrelationResult(moments.covariance / variance, moments, variance)
