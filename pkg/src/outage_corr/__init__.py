"""Spatial correlation of outage probability in finite and clustered wireless networks."""

__version__ = "0.1.0"

from .correlation import CorrelationResult, MomentSet, correlation_coefficient
from .geom_bpp import BppModel, bpp_moments
from .geom_ppp import PppModel, ppp_moments
from .geom_tcp import TcpModel, tcp_moments
from .mc_oracle import McConfig, McEstimate, estimate, estimate_many
from .model import Geometry, SystemParams, conditional_outage

__all__ = [
    "BppModel",
    "CorrelationResult",
    "Geometry",
    "McConfig",
    "McEstimate",
    "MomentSet",
    "PppModel",
    "SystemParams",
    "TcpModel",
    "bpp_moments",
    "conditional_outage",
    "correlation_coefficient",
    "estimate",
    "estimate_many",
    "ppp_moments",
    "tcp_moments",
]
