"""
Flux systems
============

Fluxes J = k x^y turn the nonlinear balance condition into a linear one.
Which balanced fluxes on the complete graph can be pushed onto the chain
with positive values?
"""

import numpy as np

from toricpath.flux import flux_membership, is_complex_balanced_flux, realize_flux_on
from toricpath.networks import collinear_pair, random_balanced_flux, simple_cycles

G_tilde, G = collinear_pair()
rng = np.random.default_rng(2)

# a balanced flux is a positive mix of cycles; spread the weights over
# several orders of magnitude so both answers show up
cycles = simple_cycles(G_tilde)
hits = 0
for trial in range(200):
    J = np.zeros(G_tilde.n_edges)
    for cyc in cycles:
        J[cyc] += 10.0 ** rng.uniform(-2, 2)
    assert is_complex_balanced_flux(G_tilde, J)
    if flux_membership(G_tilde, J, G, require_positive=True) is not None:
        hits += 1
print(f"{hits}/200 balanced fluxes have a positive flux realization on the chain")

# signed realizations always exist here
J = random_balanced_flux(G_tilde, rng)
print("signed flux on chain:", realize_flux_on(G_tilde, J, G, require_positive=False).round(4))
