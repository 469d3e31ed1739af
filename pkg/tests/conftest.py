import numpy as np
import pytest

from outage_corr import Geometry, SystemParams

ALPHA = 3.5
SNR = 10.0
BETA = 1.0


@pytest.fixture
def geom():
    return Geometry(1.0, 0.25)


def radio(p=1.0, alpha=ALPHA, snr=SNR, beta=BETA):
    return SystemParams(alpha=alpha, snr=snr, beta=beta, p=p)


def attenuation_np(r, alpha=ALPHA, beta=BETA):
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(r > 0, 1.0 / (1.0 + beta * r ** (-alpha)), 0.0)
