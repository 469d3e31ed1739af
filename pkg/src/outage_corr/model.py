"""Network model: radio parameters, circular geometry and conditional outage.

All quantities are linear. Decibel inputs are converted once, at the
sweep/CLI boundary, with :func:`db_to_linear`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "SystemParams",
    "Geometry",
    "Topology",
    "attenuation",
    "attenuation_scalar",
    "conditional_outage",
    "db_to_linear",
    "linear_to_db",
]


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SystemParams:
    """Radio-level constants.

    alpha is the path-loss exponent, snr the receiver SNR of the reference
    link, beta the SINR threshold and p the access probability of every
    potential interferer.
    """

    alpha: float = 3.5
    snr: float = 10.0
    beta: float = 1.0
    p: float = 1.0

    def __post_init__(self):
        if not self.alpha > 2:
            raise ValueError(f"alpha must exceed 2, got {self.alpha}")
        if not self.snr > 0:
            raise ValueError(f"snr must be positive, got {self.snr}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @property
    def noise_factor(self) -> float:
        """exp(-beta/SNR): the success probability with no interference."""
        return math.exp(-self.beta / self.snr)


@dataclass(frozen=True)
class Geometry:
    """Circular network of radius r_out with both receivers r0 from the centre."""

    r_out: float = 1.0
    r0: float = 0.25

    def __post_init__(self):
        if not 0.0 < self.r0 < self.r_out:
            raise ValueError(f"need 0 < r0 < r_out, got r0={self.r0}, r_out={self.r_out}")

    @property
    def area(self) -> float:
        return math.pi * self.r_out**2

    @property
    def tau1(self) -> float:
        return (self.r_out - self.r0) / self.r0

    @property
    def tau2(self) -> float:
        return (self.r_out + self.r0) / self.r0

    def receivers(self, theta: float) -> np.ndarray:
        """Complex positions of the two receivers for angular separation theta."""
        return np.array([self.r0, self.r0 * complex(math.cos(theta), math.sin(theta))])


@dataclass
class Topology:
    """One interferer configuration.

    ``distances`` has shape (n, 2): normalized distances from each
    interferer to receivers 1 and 2. ``active`` holds the access
    indicators, one per interferer.
    """

    distances: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    active: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))

    def __post_init__(self):
        self.distances = np.asarray(self.distances, dtype=float).reshape(-1, 2)
        self.active = np.asarray(self.active, dtype=bool).reshape(-1)
        if len(self.distances) != len(self.active):
            raise ValueError("distances and active must have the same length")
        if np.any(self.distances < 0):
            raise ValueError("normalized distances must be non-negative")

    def __len__(self) -> int:
        return len(self.active)


def attenuation(r, alpha: float, beta: float):
    """r^alpha / (beta + r^alpha), the per-interferer survival factor under full access.

    Written as 1 / (1 + beta * r^-alpha) for r > 0 so that huge distances
    do not overflow; r = 0 maps to 0.
    """
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        out = 1.0 / (1.0 + beta * r ** (-alpha))
    return out if out.ndim else float(out)


def attenuation_scalar(r: float, alpha: float, beta: float) -> float:
    """Float version of :func:`attenuation`, safe at both tiny and huge r."""
    if r < 1.0:
        ra = r**alpha
        return ra / (beta + ra)
    return 1.0 / (1.0 + beta * r ** (-alpha))


def conditional_outage(
    params: SystemParams,
    distances: Sequence[float],
    active: Sequence[bool] | None = None,
) -> float:
    """Outage probability at one receiver for a fixed topology.

    With ``active=None`` the random access is averaged out (marginal
    mode), each interferer contributing 1 - p + p*r^a/(beta + r^a). When
    ``active`` is given, only the listed transmitters interfere and each
    contributes r^a/(beta + r^a).
    """
    r = np.asarray(distances, dtype=float).reshape(-1)
    if np.any(r < 0):
        raise ValueError("distances must be non-negative")
    a = np.atleast_1d(attenuation(r, params.alpha, params.beta))
    if active is None:
        factors = 1.0 - params.p + params.p * a
    else:
        mask = np.asarray(active, dtype=bool).reshape(-1)
        if mask.shape != r.shape:
            raise ValueError("active must match distances in length")
        factors = a[mask]
    return float(1.0 - params.noise_factor * np.prod(factors))
