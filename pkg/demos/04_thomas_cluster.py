"""Interferers clustered around the transmitter.

Offspring are scattered with a Gaussian of spread sigma about the
reference transmitter, so each receiver sits r0 from the cluster centre
and sees a Rician distance distribution.

Because the count is Poisson, the correlation depends on lambda' and p
only through lambda' * p^2. A compact cluster is more correlated when
that product is small. When it is large, the compact cluster packs so
many interferers near both receivers that each receiver's outage
saturates on its own neighbours, and the ordering flips.
"""

import math

from outage_corr import Geometry, SystemParams, TcpModel, correlation_coefficient, tcp_moments
from outage_corr.geom_tcp import c_func, receiver_view, v_func

geom = Geometry(1.0, 0.25)

for sigma in (0.25, 0.5):
    view = receiver_view(TcpModel(1.0, sigma), geom)
    v = v_func(view, SystemParams(), geom.r0)
    c = c_func(view, SystemParams(), geom.r0)
    print(f"sigma={sigma}: V={v:.6f}  C={c:.6f}")


def zeta(lam_prime, p, sigma, deg):
    m = tcp_moments(TcpModel(lam_prime, sigma), geom, SystemParams(p=p), math.radians(deg))
    return correlation_coefficient(m).zeta


print("\nsame lambda'*p^2, different (lambda', p): identical zeta")
for lam_prime, p in ((20.0, 0.25), (5.0, 0.5), (1.25, 1.0)):
    print(f"  lambda'={lam_prime:5}, p={p:4}:  zeta(60deg)={zeta(lam_prime, p, 0.25, 60):.10f}")

print("\nzeta(60deg) for sigma = 0.25 and 0.5 as lambda'*p^2 grows")
for up in (0.25, 1.0, 2.5, 5.0, 20.0):
    z1, z2 = zeta(up, 1.0, 0.25, 60), zeta(up, 1.0, 0.5, 60)
    print(f"  lambda'p^2={up:5}:  {z1:.4f}  {z2:.4f}  {'compact higher' if z1 >= z2 else 'spread higher'}")
