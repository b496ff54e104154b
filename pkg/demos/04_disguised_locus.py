"""
The disguised toric locus
=========================

The chain is not weakly reversible, so it is never complex-balanced on its
own.  Every positive rate vector on it is nevertheless complex-balanced in
disguise: the same dynamics runs on the complete graph with balanced rates.
With signed rates the picture changes and a curve cuts the plane.
"""

import numpy as np

from toricpath.disguised import disguised_locus_membership, disguised_membership
from toricpath.networks import collinear_pair

G_tilde, G = collinear_pair()

k = np.array([1.0, 4.0, 0.5, 2.0])
cert = disguised_membership(G, k, G_tilde)
print("member:", cert.member)
print("realized rates on complete graph:", cert.realized_rates.round(4))
print("shared steady state:", cert.steady_state)
print("residuals:", cert.residuals)

# signed rates: membership iff k12 k43 + k34 k23 >= 0 when k34 > 0 > k23
print("\n k23   k34  member")
for k23, k34 in [(-0.5, 1.0), (-2.0, 1.0), (-1.0, 0.9), (-1.0, 1.1)]:
    c = disguised_membership(G, [1.0, k23, k34, 1.0], G_tilde, signed=True)
    print(f"{k23:5.1f} {k34:5.1f}  {c.member}")

# without naming a target, search all weakly reversible subgraphs
found = disguised_locus_membership(G, k)
print("\nfirst target found has", found.target_graph.n_edges, "edges")
