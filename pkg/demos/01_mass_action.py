"""
Mass-action systems and dynamical equivalence
=============================================

Four complexes on the line x1 + x2 = 3, once wired as a complete graph and
once as a short chain.  Different graphs, same vector field.
"""

import numpy as np

from toricpath.dynamics import dynamically_equivalent, massaction_rhs, realize_on
from toricpath.networks import collinear_pair, collinear_realization

G_tilde, G = collinear_pair()
print("complete graph:", G_tilde)
print("chain:         ", G)

# all twelve rates of the complete graph set to one
k_tilde = np.ones(G_tilde.n_edges)

# the chain can carry the same dynamics, but only with a negative rate
k = realize_on(G_tilde, k_tilde, G, require_positive=False)
print("signed rates on the chain:", k)
print("closed-form formulas:      ", collinear_realization(k_tilde))
print("positive realization:      ", realize_on(G_tilde, k_tilde, G, require_positive=True))

# same field everywhere, not just at one point
rng = np.random.default_rng(0)
for x in np.exp(rng.uniform(-1, 1, (3, 2))):
    print(x.round(3), massaction_rhs(G_tilde, k_tilde, x).round(6), massaction_rhs(G, k, x).round(6))

print("equivalent:", dynamically_equivalent(G, k, G_tilde, k_tilde))
