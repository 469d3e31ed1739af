"""Sweeps over the receiver angle: config parsing, presets, CSV and manifest output."""

from __future__ import annotations

import csv
import io
import json
import math
import platform
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy

from . import __version__
from .correlation import correlation_coefficient
from .geom_bpp import BppModel, bpp_moments
from .geom_ppp import PppModel, ppp_moments
from .geom_tcp import TcpModel, tcp_moments
from .mc_oracle import McConfig, ProcessModel, estimate_many
from .model import Geometry, SystemParams, db_to_linear, linear_to_db

__all__ = [
    "ConfigError",
    "SweepConfig",
    "CSV_COLUMNS",
    "parse_config",
    "load_config",
    "parse_theta_grid",
    "analytic_moments",
    "run_sweep",
    "preset",
    "PRESETS",
    "rows_to_csv",
    "write_outputs",
]

CSV_COLUMNS = (
    "theta_deg",
    "process",
    "density_param",
    "zeta",
    "first_moment",
    "second_moment",
    "joint_moment",
    "std_err_zeta",
    "seed",
    "runtime_ms",
    "degenerate",
)

IMPLEMENTER_GRID_NOTE = (
    "fig3 parameters (lambda_prime=20, p in {0.05, 0.25, 1}, sigma in {0.25, 0.5}, nu=0) "
    "are implementer-chosen"
)


class ConfigError(ValueError):
    """Invalid sweep configuration; the message names the offending field."""

    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}")
        self.field_path = field_path


@dataclass(frozen=True)
class SweepConfig:
    process: ProcessModel
    geometry: Geometry = Geometry()
    radio: SystemParams = SystemParams()
    theta_grid: tuple[float, ...] = tuple(float(t) for t in range(0, 181, 5))
    engines: tuple[str, ...] = ("analytic",)
    mc: McConfig = McConfig()
    output_path: str = "sweep.csv"
    record_runtime: bool = True
    workers: int = 1
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.theta_grid:
            raise ConfigError("theta_grid", "must not be empty")
        for t in self.theta_grid:
            if not 0.0 <= t <= 180.0:
                raise ConfigError("theta_grid", f"{t} outside [0, 180] degrees")
        if not self.engines:
            raise ConfigError("engines", "at least one engine is required")
        for e in self.engines:
            if e not in ("analytic", "mc"):
                raise ConfigError("engines", f"unknown engine {e!r}")


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def parse_theta_grid(text: str) -> tuple[float, ...]:
    """Degrees as ``0,30,60`` or ``start:stop:step`` (stop inclusive).

    Angles in (180, 360] are folded to 360 - theta, since zeta only depends
    on the unsigned separation.
    """
    text = text.strip()
    if not text:
        raise ConfigError("theta_grid", "must not be empty")
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0:
                raise ConfigError("theta_grid", "step must be positive")
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            values = [start + i * step for i in range(n)]
        else:
            values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("theta_grid", f"cannot parse {text!r}") from None
    out = []
    for t in values:
        if not 0.0 <= t <= 360.0:
            raise ConfigError("theta_grid", f"{t} outside [0, 360] degrees")
        out.append(360.0 - t if t > 180.0 else t)
    return tuple(out)


_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def _get(raw: Mapping[str, str], key: str, kind, default=None):
    if key not in raw:
        if default is None:
            raise ConfigError(key, "required")
        return default
    text = raw[key]
    try:
        if kind is bool:
            return _BOOL[text.strip().lower()]
        return kind(text)
    except (ValueError, KeyError):
        raise ConfigError(key, f"expected {kind.__name__}, got {text!r}") from None


def _build_process(raw: Mapping[str, str]) -> ProcessModel:
    kind = raw.get("process", "").strip().lower()
    try:
        if kind == "bpp":
            return BppModel(_get(raw, "m", int))
        if kind == "ppp":
            return PppModel(_get(raw, "lambda", float))
        if kind == "tcp":
            parent = raw.get("lambda_parent")
            return TcpModel(
                _get(raw, "lambda_prime", float),
                _get(raw, "sigma", float),
                _get(raw, "nu", float, 0.0),
                float(parent) if parent is not None else None,
            )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"process.{kind}", str(exc)) from None
    raise ConfigError("process", f"expected one of bpp, ppp, tcp; got {kind!r}")


def _section(name: str, build):
    try:
        return build()
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(name, str(exc)) from None


def parse_config(raw: Mapping[str, str]) -> SweepConfig:
    """Build a SweepConfig from flat string key/value pairs.

    SNR and the threshold are given in dB (``snr_db``, ``beta_db``) and
    converted to linear units here; nothing downstream sees decibels.
    """
    known = {
        "process", "m", "lambda", "lambda_prime", "sigma", "nu", "lambda_parent",
        "p", "alpha", "snr_db", "beta_db", "r_out", "r0", "theta_grid", "engines",
        "n_topologies", "seed", "estimator", "n_batches", "out", "record_runtime",
        "workers", "mc_workers",
    }
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown key")
    process = _build_process(raw)
    geometry = _section(
        "geometry",
        lambda: Geometry(_get(raw, "r_out", float, 1.0), _get(raw, "r0", float, 0.25)),
    )
    radio = _section(
        "radio",
        lambda: SystemParams(
            alpha=_get(raw, "alpha", float, 3.5),
            snr=db_to_linear(_get(raw, "snr_db", float, 10.0)),
            beta=db_to_linear(_get(raw, "beta_db", float, 0.0)),
            p=_get(raw, "p", float, 1.0),
        ),
    )
    mc = _section(
        "mc",
        lambda: McConfig(
            n_topologies=_get(raw, "n_topologies", int, 100_000),
            seed=_get(raw, "seed", int, 0),
            estimator=raw.get("estimator", "conditional-analytic").strip(),
            n_batches=_get(raw, "n_batches", int, 100),
            workers=_get(raw, "mc_workers", int, 1),
        ),
    )
    theta = parse_theta_grid(raw.get("theta_grid", "0:180:5"))
    engines = tuple(e.strip() for e in raw.get("engines", "analytic").split(",") if e.strip())
    workers = _get(raw, "workers", int, 1)
    if workers < 1:
        raise ConfigError("workers", "must be >= 1")
    return SweepConfig(
        process=process,
        geometry=geometry,
        radio=radio,
        theta_grid=theta,
        engines=engines,
        mc=mc,
        output_path=raw.get("out", "sweep.csv"),
        record_runtime=_get(raw, "record_runtime", bool, True),
        workers=workers,
    )


def read_key_values(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}", f"expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}", "empty key")
        out[key.lower()] = value
    return out


def load_config(path: str | Path, overrides: Mapping[str, str] = {}) -> SweepConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    raw = read_key_values(text, str(path))
    raw.update({k: v for k, v in overrides.items() if v is not None})
    return parse_config(raw)


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def analytic_moments(process: ProcessModel, geom: Geometry, radio: SystemParams, theta: float):
    if isinstance(process, BppModel):
        return bpp_moments(process, geom, radio, theta)
    if isinstance(process, PppModel):
        return ppp_moments(process, geom, radio, theta)
    if isinstance(process, TcpModel):
        return tcp_moments(process, geom, radio, theta)
    raise TypeError(f"unsupported process model {process!r}")


def density_param(process: ProcessModel, geom: Geometry, radio: SystemParams) -> float:
    """lambda*p for the disk processes, lambda_prime*p for the cluster."""
    if isinstance(process, BppModel):
        return process.intensity(geom) * radio.p
    if isinstance(process, PppModel):
        return process.lam * radio.p
    return process.lambda_prime * radio.p


def process_label(process: ProcessModel, radio: SystemParams) -> str:
    if isinstance(process, BppModel):
        return f"bpp:M={process.m};p={radio.p:g}"
    if isinstance(process, PppModel):
        return f"ppp:lambda={process.lam:.9g};p={radio.p:g}"
    return (
        f"tcp:lambda_prime={process.lambda_prime:g};p={radio.p:g};"
        f"sigma={process.sigma:g};nu={process.nu:g}"
    )


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "NA"
    return f"{x:.9g}"


def _analytic_point(args):
    process, geom, radio, theta_deg = args
    t0 = time.perf_counter()
    result = correlation_coefficient(analytic_moments(process, geom, radio, math.radians(theta_deg)))
    return result, (time.perf_counter() - t0) * 1e3


def run_sweep(cfg: SweepConfig) -> list[dict[str, str]]:
    """One row per (theta, engine), sorted by theta then engine."""
    label = process_label(cfg.process, cfg.radio)
    density = density_param(cfg.process, cfg.geometry, cfg.radio)
    rows = []

    def row(theta, result_zeta, moments, degenerate, se, seed, ms):
        return {
            "theta_deg": _fmt(theta),
            "process": label,
            "density_param": _fmt(density),
            "zeta": "NA" if degenerate else _fmt(result_zeta),
            "first_moment": _fmt(moments.first),
            "second_moment": _fmt(moments.second),
            "joint_moment": _fmt(moments.joint),
            "std_err_zeta": "" if se is None else _fmt(se),
            "seed": "" if seed is None else str(seed),
            "runtime_ms": _fmt(ms) if cfg.record_runtime else "",
            "degenerate": "1" if degenerate else "0",
        }

    if "analytic" in cfg.engines:
        jobs = [(cfg.process, cfg.geometry, cfg.radio, t) for t in cfg.theta_grid]
        if cfg.workers > 1:
            with ProcessPoolExecutor(cfg.workers) as pool:
                results = list(pool.map(_analytic_point, jobs))
        else:
            results = [_analytic_point(j) for j in jobs]
        for t, (res, ms) in zip(cfg.theta_grid, results):
            rows.append((t, 0, row(t, res.zeta, res.moments, res.degenerate, None, None, ms)))

    if "mc" in cfg.engines:
        t0 = time.perf_counter()
        estimates = estimate_many(
            cfg.process, cfg.geometry, cfg.radio, [math.radians(t) for t in cfg.theta_grid], cfg.mc
        )
        ms = (time.perf_counter() - t0) * 1e3 / len(cfg.theta_grid)
        for t, est in zip(cfg.theta_grid, estimates):
            rows.append((t, 1, row(t, est.zeta_hat, est.moments_hat, est.degenerate,
                                   est.std_errors["zeta"], cfg.mc.seed, ms)))

    rows.sort(key=lambda item: item[:2])
    return [r for _, _, r in rows]


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

FIG_THETA = tuple(float(t) for t in range(5, 181, 5))


def _fig2(**kw) -> list[SweepConfig]:
    geom = Geometry(1.0, 0.25)
    m = 50
    configs = []
    for p in (0.1, 0.5, 1.0):
        radio = SystemParams(alpha=3.5, snr=db_to_linear(10.0), beta=db_to_linear(0.0), p=p)
        for process in (BppModel(m), PppModel(m / geom.area)):
            configs.append(SweepConfig(process, geom, radio, FIG_THETA, **kw))
    return configs


def _fig3(**kw) -> list[SweepConfig]:
    geom = Geometry(1.0, 0.25)
    configs = []
    for sigma in (0.25, 0.5):
        for p in (0.05, 0.25, 1.0):
            radio = SystemParams(alpha=3.5, snr=db_to_linear(10.0), beta=db_to_linear(0.0), p=p)
            configs.append(
                SweepConfig(TcpModel(20.0, sigma), geom, radio, FIG_THETA,
                            notes=(IMPLEMENTER_GRID_NOTE,), **kw)
            )
    return configs


PRESETS = {"fig2": _fig2, "fig3": _fig3}


def preset(name: str, **overrides) -> list[SweepConfig]:
    """The sweep configurations behind a named figure preset."""
    try:
        build = PRESETS[name]
    except KeyError:
        raise ConfigError("preset", f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return build(**overrides)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def rows_to_csv(rows: Iterable[Mapping[str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r)
    return buf.getvalue()


def _describe(cfg: SweepConfig) -> dict:
    proc = asdict(cfg.process)
    proc["kind"] = type(cfg.process).__name__.replace("Model", "").lower()
    radio = asdict(cfg.radio)
    radio["snr_db"] = round(linear_to_db(cfg.radio.snr), 12)
    radio["beta_db"] = round(linear_to_db(cfg.radio.beta), 12)
    return {
        "process": proc,
        "geometry": asdict(cfg.geometry),
        "radio": radio,
        "theta_grid_deg": list(cfg.theta_grid),
        "engines": list(cfg.engines),
        "mc": asdict(cfg.mc),
        "notes": list(cfg.notes),
    }


def manifest(configs: Sequence[SweepConfig], preset_name: str | None = None) -> dict:
    return {
        "preset": preset_name,
        "curves": [_describe(c) for c in configs],
        "seed": configs[0].mc.seed if configs else None,
        "csv_columns": list(CSV_COLUMNS),
        "versions": {
            "outage_corr": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
    }


def manifest_path(csv_path: str | Path) -> Path:
    csv_path = Path(csv_path)
    return csv_path.with_name(csv_path.stem + ".manifest.json")


def write_outputs(
    configs: Sequence[SweepConfig], out: str | Path, preset_name: str | None = None
) -> list[dict[str, str]]:
    """Run every config, write the concatenated CSV and its manifest, return the rows."""
    rows = []
    for cfg in configs:
        rows.extend(run_sweep(cfg))
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(rows_to_csv(rows))
    manifest_path(out).write_text(json.dumps(manifest(configs, preset_name), indent=2) + "\n")
    return rows
