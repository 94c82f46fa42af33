"""How tight are the closed-form bounds on discrete-input mutual information?

We compare the lower and upper bounds of ``mi_bounds`` with the numerical
value from ``mi_exact`` for uniform PAM, then for a constellation with
skewed masses.  Run with ``python notebooks/01_bounds_vs_oracle.py``.
"""

import numpy as np

from oblivious_ic import Constellation, id_lower, mi_bounds, mi_exact, pam

print("PAM(8), unit energy")
print(f"{'snr_db':>7} {'lower':>8} {'exact':>8} {'upper':>8}")
for db in range(-10, 61, 10):
    snr = 10 ** (db / 10)
    b = mi_bounds(pam(8), snr)
    print(f"{db:7d} {b.lower:8.4f} {mi_exact(pam(8), snr):8.4f} {b.upper:8.4f}")

# The lower bound saturates 0.5*log2(e/2) ~ 0.22 bits below log2 N: it is
# derived from a Gaussian-shaping argument and never reaches the entropy.

# With skewed masses the input entropy H(X) drops below log2 N.  The
# mass-agnostic form id(N, snr d^2/4) ignores this and can exceed H(X),
# which is why mi_bounds switches to a bound built on sum(p_i^2).
c = Constellation.from_points([-1.0, 0.0, 1.0], [0.7, 0.2, 0.1], unit_energy=True)
hx = -float(np.sum(c.masses * np.log2(c.masses)))
print(f"\nskewed 3-point constellation, H(X) = {hx:.4f} bits")
print(f"{'snr_db':>7} {'agnostic':>9} {'lower':>8} {'exact':>8} {'upper':>8}")
for db in range(0, 41, 5):
    snr = 10 ** (db / 10)
    b = mi_bounds(c, snr)
    print(f"{db:7d} {id_lower(c, snr):9.4f} {b.lower:8.4f} {mi_exact(c, snr):8.4f} "
          f"{b.upper:8.4f}")
