"""
Complex balance, Birch points and the flux parametrization
==========================================================

A reversible pair X1 <-> X2 with rates (2, 3) is complex-balanced; its
balanced states form the ray (3t, 2t).  Each conservation class meets the
ray once, at the Birch point.
"""

import numpy as np

from toricpath.networks import random_balanced_flux, random_state, three_cycle, two_cycle
from toricpath.toric import (
    birch_point,
    compatibility_class,
    fiber_rate_vector,
    is_complex_balanced_state,
    phi,
    phi_inverse,
    toric_membership,
)

G = two_cycle()
k = np.array([2.0, 3.0])
cert = toric_membership(G, k)
print("member:", cert.member, "witness:", cert.witness_state, "residual:", cert.residual)

for anchor in ([1.0, 1.0], [2.0, 2.0]):
    cls = compatibility_class(G, anchor)
    print("Birch point in class of", anchor, "->", birch_point(G, k, cert.witness_state, cls))

# moving along the fiber keeps the system complex-balanced, at a new state
x_star, x = np.array([1.2, 0.8]), np.array([0.6, 1.4])
k_new = fiber_rate_vector(G, k, x, x_star)
print("fiber rates:", k_new, "balanced at x:", is_complex_balanced_state(G, k_new, x))

# phi: (balanced flux, state) -> rates, and back again
T = three_cycle()
rng = np.random.default_rng(1)
J, x = random_balanced_flux(T, rng), random_state(2, rng)
k_T = phi(T, J, x)
J_back, x_back = phi_inverse(T, k_T, compatibility_class(T, x))
print("round trip error:", np.max(np.abs(J_back - J)), np.max(np.abs(x_back - x)))

# generic rates on this three-cycle are not complex-balanced (deficiency one)
print("generic rates:", toric_membership(T, [1.0, 2.0, 3.0]).reason)
