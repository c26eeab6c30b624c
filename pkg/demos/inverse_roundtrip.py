"""
Recovering a potential from its MO vector
=========================================

Map a potential to psi = (psi1, psi2), then solve the inverse problem by
homotopy plus Newton and check that the original potential comes back.
"""

import numpy as np

from periodic_jacobi import mo_map, random_potential, solve_inverse

p = random_potential(5, 0.7, seed=12)
psi = mo_map(p)
print("psi =", np.round(psi, 6))

result = solve_inverse(psi, p.N)
print("\nhomotopy path (s, residual):")
for s, res in result.homotopy_path:
    print(f"  s = {s:.3f}   residual = {res:.2e}")

print("\nrecovered x:", np.round(result.q.x, 10))
print("original  x:", np.round(p.x, 10))
print("max |dx|, |db|:", np.max(np.abs(result.q.x - p.x)), np.max(np.abs(result.q.b - p.b)))

# Any psi in R^(2N-2) is reachable: try an arbitrary target.
target = np.array([1.5, -0.5, 0.2, 0.0, -1.0, 0.8, 0.3, -0.2])
q = solve_inverse(target, 5).q
print("\narbitrary target residual:", np.max(np.abs(mo_map(q) - target)))
