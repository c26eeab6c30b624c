"""
Band structure of a periodic Jacobi matrix
==========================================

Draw a random period-6 potential, find its band edges and gaps, and compare
the discriminant against the +-1 levels on a grid.
"""

import numpy as np

from periodic_jacobi import discriminant_values, random_potential, spectral_data

p = random_potential(6, 0.8, seed=7)
print("x =", np.round(p.x, 4))
print("b =", np.round(p.b, 4))

sd = spectral_data(p)
print("\nband edges:", np.round(sd.edges, 6))

# Bands are where |Delta| <= 1; the gaps sit between consecutive bands.
for n, (lo, hi) in enumerate(zip(sd.edges[1:-1:2], sd.edges[2::2]), start=1):
    print(f"gap {n}: [{lo:+.6f}, {hi:+.6f}]  width {hi - lo:.3e}  Dirichlet nu = {sd.nu[n - 1]:+.6f}")

# A crude text plot of Delta over the spectral hull.
lam = np.linspace(sd.edges[0] - 0.2, sd.edges[-1] + 0.2, 61)
delta = discriminant_values(p, lam, 0)[0]
for l, d in zip(lam[::4], delta[::4]):
    clipped = np.clip(d, -3, 3)
    bar = " " * int(round(10 * (clipped + 3)))
    print(f"{l:+7.3f} |{bar}*   Delta = {d:+.3f}")
