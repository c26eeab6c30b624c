"""
Quasimomentum and slit heights
==============================

The quasimomentum maps bands onto the real axis and each open gap onto a
vertical slit at a multiple of pi. The slit height comes from the critical
value of the discriminant, and at the Dirichlet point |Im kappa| equals |psi1|.
"""

import numpy as np

from periodic_jacobi import kappa_on_real_axis, random_potential, slit_data, verify_estimates

p = random_potential(4, 0.6, seed=3)

for k in kappa_on_real_axis(p, points_per_band=5):
    if k.im_kappa >= 0:
        print(f"{k.region:4s} {k.index}  lambda = {k.lam:+.5f}  kappa = {k.re_kappa:.5f} + {k.im_kappa:.5f}i")

print()
for s in slit_data(p):
    print(f"slit {s.index} at {s.center / np.pi:.0f} pi: height {s.height:.6f}, "
          f"|Im kappa(nu)| {s.nu_height:.6f}, |psi1| {abs(s.psi1):.6f}")

r = verify_estimates(p)
print("\nestimate chain:", np.round(r.chain, 4))
print("margins:", np.round(r.margins, 4), "holds" if r.holds else "violated")
