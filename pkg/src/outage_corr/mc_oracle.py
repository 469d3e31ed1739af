"""Monte Carlo oracle for the outage moments and their correlation.

Topologies are generated in fixed-size chunks; chunk ``c`` draws from its
own stream ``SeedSequence(seed, spawn_key=(c,))``. The assignment of
topologies to streams is therefore fixed by the seed alone, and results
are bit-identical whatever the number of workers. Positions and fading
are drawn once per chunk and reused for every receiver angle, so a sweep
over theta sees common random numbers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .correlation import DEFAULT_EPSILON_FLOOR, MomentSet
from .geom_bpp import BppModel
from .geom_ppp import PppModel
from .geom_tcp import TcpModel, receiver_view
from .model import Geometry, SystemParams, Topology

__all__ = [
    "ProcessModel",
    "McConfig",
    "McEstimate",
    "CHUNK_SIZE",
    "sample_points",
    "sample_topology",
    "estimate",
    "estimate_many",
]

ProcessModel = Union[BppModel, PppModel, TcpModel]

CHUNK_SIZE = 1000
ESTIMATORS = ("conditional-analytic", "fading-realized")


@dataclass(frozen=True)
class McConfig:
    n_topologies: int = 100_000
    seed: int = 0
    estimator: str = "conditional-analytic"
    n_batches: int = 100
    workers: int = 1

    def __post_init__(self):
        if self.n_topologies < 1:
            raise ValueError(f"n_topologies must be >= 1, got {self.n_topologies}")
        if self.estimator not in ESTIMATORS:
            raise ValueError(f"estimator must be one of {ESTIMATORS}, got {self.estimator!r}")
        if self.n_batches < 1:
            raise ValueError(f"n_batches must be >= 1, got {self.n_batches}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass
class McEstimate:
    zeta_hat: float
    moments_hat: MomentSet
    std_errors: dict[str, float]
    n: int
    seed: int
    theta: float
    degenerate: bool = False
    samples: np.ndarray | None = field(default=None, repr=False)


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))


def _draw_positions(process: ProcessModel, geom: Geometry, k: int, rng: np.random.Generator):
    """Interferer counts and complex positions for ``k`` topologies."""
    if isinstance(process, BppModel):
        counts = np.full(k, process.m, dtype=np.int64)
    elif isinstance(process, PppModel):
        counts = rng.poisson(process.mean_count(geom), size=k)
    elif isinstance(process, TcpModel):
        receiver_view(process, geom)
        counts = rng.poisson(process.lambda_prime, size=k)
    else:
        raise TypeError(f"unsupported process model {process!r}")
    total = int(counts.sum())
    if isinstance(process, TcpModel):
        xy = rng.normal(0.0, process.sigma, size=(total, 2))
        pos = xy[:, 0] + 1j * xy[:, 1]
    else:
        radius = geom.r_out * np.sqrt(rng.random(total))
        angle = 2.0 * np.pi * rng.random(total)
        pos = radius * np.exp(1j * angle)
    return counts, pos


def sample_points(process: ProcessModel, geom: Geometry, rng: np.random.Generator) -> np.ndarray:
    """Complex interferer positions of one topology, transmitter at the origin."""
    return _draw_positions(process, geom, 1, rng)[1]


def sample_topology(
    process: ProcessModel,
    geom: Geometry,
    theta: float,
    rng: np.random.Generator,
    p: float = 1.0,
) -> Topology:
    """One topology: normalized distances to both receivers plus access indicators."""
    pos = sample_points(process, geom, rng)
    y = geom.receivers(theta)
    distances = np.abs(pos[:, None] - y[None, :]) / geom.r0
    return Topology(distances, rng.random(len(pos)) < p)


def _log_attenuation(d: np.ndarray, params: SystemParams) -> np.ndarray:
    # log(r^a / (beta + r^a)) = -log1p(beta r^-a); r = 0 gives -inf
    with np.errstate(divide="ignore", over="ignore"):
        return -np.log1p(params.beta * d ** (-params.alpha))


class _Chunk:
    """Draws for one chunk, shared by every theta evaluated on it."""

    def __init__(self, process, geom, params, cfg, index, k):
        rng = _chunk_rng(cfg.seed, index)
        self.k = k
        self.counts, self.pos = _draw_positions(process, geom, k, rng)
        self.owner = np.repeat(np.arange(k), self.counts)
        if cfg.estimator == "fading-realized":
            n = len(self.pos)
            self.active = rng.random(n) < params.p
            self.g_signal = rng.standard_exponential(size=(k, 2))
            self.g_interf = rng.standard_exponential(size=(n, 2))

    def outage(self, geom, params, cfg, theta) -> np.ndarray:
        y = geom.receivers(theta)
        out = np.empty((self.k, 2))
        for j in range(2):
            d = np.abs(self.pos - y[j]) / geom.r0
            if cfg.estimator == "conditional-analytic":
                with np.errstate(divide="ignore", over="ignore"):
                    logf = np.log(1.0 - params.p + params.p * np.exp(_log_attenuation(d, params)))
                s = np.bincount(self.owner, weights=logf, minlength=self.k)
                out[:, j] = 1.0 - params.noise_factor * np.exp(s)
            else:
                with np.errstate(divide="ignore", over="ignore"):
                    power = self.active * self.g_interf[:, j] * d ** (-params.alpha)
                interference = np.bincount(self.owner, weights=power, minlength=self.k)
                sinr = self.g_signal[:, j] / (1.0 / params.snr + interference)
                out[:, j] = (sinr <= params.beta).astype(float)
        return out


def _pearson(e1: np.ndarray, e2: np.ndarray, floor: float) -> tuple[float, bool]:
    c1 = e1 - e1.mean()
    c2 = e2 - e2.mean()
    v1 = float(np.mean(c1 * c1))
    v2 = float(np.mean(c2 * c2))
    if v1 < floor or v2 < floor:
        return math.nan, True
    if np.array_equal(e1, e2):
        return 1.0, False
    return float(np.mean(c1 * c2)) / math.sqrt(v1 * v2), False


def _summarize(samples: np.ndarray, cfg: McConfig, theta: float, floor: float) -> McEstimate:
    e1, e2 = samples[:, 0], samples[:, 1]
    moments = MomentSet(
        first=float(np.mean(0.5 * (e1 + e2))),
        second=float(np.mean(0.5 * (e1 * e1 + e2 * e2))),
        joint=float(np.mean(e1 * e2)),
    )
    zeta, degenerate = _pearson(e1, e2, floor)

    n_batches = min(cfg.n_batches, len(samples))
    per_batch = {"first": [], "second": [], "joint": [], "zeta": []}
    for block in np.array_split(samples, n_batches):
        b1, b2 = block[:, 0], block[:, 1]
        per_batch["first"].append(np.mean(0.5 * (b1 + b2)))
        per_batch["second"].append(np.mean(0.5 * (b1 * b1 + b2 * b2)))
        per_batch["joint"].append(np.mean(b1 * b2))
        per_batch["zeta"].append(_pearson(b1, b2, floor)[0])
    std_errors = {}
    for name, values in per_batch.items():
        values = np.asarray(values, dtype=float)
        values = values[np.isfinite(values)]
        if len(values) < 2:
            std_errors[name] = math.nan
        else:
            std_errors[name] = float(np.std(values, ddof=1) / math.sqrt(len(values)))
    if degenerate:
        std_errors["zeta"] = math.nan
    return McEstimate(zeta, moments, std_errors, len(samples), cfg.seed, theta, degenerate, samples)


def estimate_many(
    process: ProcessModel,
    geom: Geometry,
    params: SystemParams,
    thetas: Sequence[float],
    cfg: McConfig = McConfig(),
    epsilon_floor: float = DEFAULT_EPSILON_FLOOR,
) -> list[McEstimate]:
    """Monte Carlo estimates for several receiver angles on one set of topologies."""
    thetas = [float(t) for t in thetas]
    n = cfg.n_topologies
    bounds = [(c, min(CHUNK_SIZE, n - c * CHUNK_SIZE)) for c in range(math.ceil(n / CHUNK_SIZE))]

    def run(bound):
        chunk = _Chunk(process, geom, params, cfg, *bound)
        return [chunk.outage(geom, params, cfg, t) for t in thetas]

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(run, bounds))
    else:
        results = [run(b) for b in bounds]
    return [
        _summarize(np.concatenate([r[i] for r in results]), cfg, t, epsilon_floor)
        for i, t in enumerate(thetas)
    ]


def estimate(
    process: ProcessModel,
    geom: Geometry,
    params: SystemParams,
    theta: float,
    cfg: McConfig = McConfig(),
    epsilon_floor: float = DEFAULT_EPSILON_FLOOR,
) -> McEstimate:
    """Monte Carlo estimate of the moments and of zeta at a single angle.

    With the conditional-analytic estimator each topology contributes its
    fading-averaged outage probability. The fading-realized estimator
    draws the fading gains and access indicators explicitly and records
    0/1 outage events instead; its first moment estimates the same E[eps],
    while its "second" and "joint" moments are those of the indicators.
    """
    return estimate_many(process, geom, params, [theta], cfg, epsilon_floor)[0]
