"""Random versus fixed interferer counts.

A Poisson count adds another source of topology randomness that both
receivers see in common, so at matched density the Poisson network is
more correlated than the fixed-count one. The Poisson moments are the
fixed-count moments mixed over the count; here that mixture is checked
by summing the series directly.
"""

import math

import numpy as np
from scipy import stats

from outage_corr import BppModel, Geometry, PppModel, SystemParams, bpp_moments, ppp_moments
from outage_corr import correlation_coefficient as corr

geom = Geometry(1.0, 0.25)
lam = 50 / math.pi

print("theta   " + "   ".join(f"BPP p={p:<4} PPP p={p:<4}" for p in (0.1, 0.5, 1.0)))
for deg in (10, 30, 60, 90, 180):
    t = math.radians(deg)
    cells = []
    for p in (0.1, 0.5, 1.0):
        params = SystemParams(p=p)
        zb = corr(bpp_moments(BppModel(50), geom, params, t)).zeta
        zp = corr(ppp_moments(PppModel(lam), geom, params, t)).zeta
        cells.append(f"{zb:10.4f} {zp:10.4f}")
    print(f"{deg:5d}   " + "   ".join(cells))

params, t = SystemParams(p=0.5), math.radians(45)
mu = lam * geom.area
m = np.arange(int(mu + 10 * math.sqrt(mu) + 50) + 1)
pmf = stats.poisson.pmf(m, mu)
mixed = np.dot(pmf, [bpp_moments(BppModel(int(k)), geom, params, t).joint for k in m])
print(f"\njoint moment at 45 deg: mixture {mixed:.12f}, closed form {ppp_moments(PppModel(lam), geom, params, t).joint:.12f}")
