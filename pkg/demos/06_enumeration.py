"""
Weakly reversible subgraphs
===========================

Candidate targets for the locus search are the weakly reversible subgraphs
of the complete graph, produced in lexicographic order of edge sets.
"""

from toricpath.egraph import complete_graph, new_egraph, weakly_reversible_subgraphs
from toricpath.errors import BudgetExceeded
from toricpath.networks import collinear_pair

for m in (2, 3):
    K = complete_graph(new_egraph([(i,) for i in range(m)], [(i, (i + 1) % m) for i in range(m)]))
    print(f"complete graph on {m} vertices: {sum(1 for _ in weakly_reversible_subgraphs(K))} subgraphs")

K4, _ = collinear_pair()
for sub in weakly_reversible_subgraphs(K4, max_count=4):
    print([tuple(K4.vertex_index[v] for v in e) for e in sub.edge_keys])

try:
    list(weakly_reversible_subgraphs(K4, cap=50))
except BudgetExceeded as exc:
    print("budget:", exc)
