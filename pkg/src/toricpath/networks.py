"""Example networks and random generators for members of the toric locus."""

from __future__ import annotations

import itertools

import numpy as np

from .egraph import EGraph, is_weakly_reversible, new_egraph

COLLINEAR_COMPLEXES = [(0, 3), (1, 2), (2, 1), (3, 0)]


def collinear_pair() -> tuple[EGraph, EGraph]:
    """(G~, G) on the complexes (0,3), (1,2), (2,1), (3,0) of x1 + x2 = 3.

    G~ is the complete graph (12 edges, ordered 1->2, 1->3, 1->4, 2->1, ...);
    G has edges 1->2, 2->3, 3->4, 4->3.  With this vertex order the
    realization of G~ on G is k12 = k~12 + 2k~13 + 3k~14,
    k23 = k~23 - k~21 + 2k~24, k34 = k~34 - k~32 - 2k~31,
    k43 = k~43 + 2k~42 + 3k~41.
    """
    G_tilde = new_egraph(COLLINEAR_COMPLEXES, [(i, j) for i in range(4) for j in range(4) if i != j])
    G = new_egraph(COLLINEAR_COMPLEXES, [(0, 1), (1, 2), (2, 3), (3, 2)])
    return G_tilde, G


def collinear_realization(k_tilde) -> np.ndarray:
    """The closed-form rates on G of the collinear pair (edge order of G)."""
    kt = {(i + 1, j + 1): v for (i, j), v in zip(
        [(i, j) for i in range(4) for j in range(4) if i != j], np.asarray(k_tilde, dtype=float))}
    return np.array([
        kt[1, 2] + 2 * kt[1, 3] + 3 * kt[1, 4],
        kt[2, 3] - kt[2, 1] + 2 * kt[2, 4],
        kt[3, 4] - kt[3, 2] - 2 * kt[3, 1],
        kt[4, 3] + 2 * kt[4, 2] + 3 * kt[4, 1],
    ])


def two_cycle() -> EGraph:
    return new_egraph([(1, 0), (0, 1)], [(0, 1), (1, 0)])


def three_cycle() -> EGraph:
    return new_egraph([(2, 0), (0, 2), (1, 1)], [(0, 1), (1, 2), (2, 0)])


def simple_cycles(G: EGraph) -> list[list[int]]:
    """Directed simple cycles as lists of edge indices (small graphs only)."""
    cycles = []
    m = G.n_vertices
    lookup = {e: i for i, e in enumerate(G.edges)}
    for size in range(2, m + 1):
        for combo in itertools.combinations(range(m), size):
            first = combo[0]
            for perm in itertools.permutations(combo[1:]):
                order = (first,) + perm
                pairs = [(order[i], order[(i + 1) % size]) for i in range(size)]
                if all(p in lookup for p in pairs):
                    cycles.append([lookup[p] for p in pairs])
    return cycles


def random_balanced_flux(G: EGraph, rng: np.random.Generator, low=0.2, high=2.0) -> np.ndarray:
    """Positive complex-balanced flux: a random positive mix of cycles
    covering every edge.  G must be weakly reversible."""
    cycles = simple_cycles(G)
    J = np.zeros(G.n_edges)
    covered = np.zeros(G.n_edges, dtype=bool)
    for cyc in cycles:
        w = rng.uniform(low, high)
        J[cyc] += w
        covered[cyc] = True
    if not covered.all():
        raise ValueError("graph is not weakly reversible")
    return J


def random_state(n: int, rng: np.random.Generator, log_box: float = 1.0) -> np.ndarray:
    return np.exp(rng.uniform(-log_box, log_box, n))


def random_wr_graph(
    rng: np.random.Generator, n_vertices: int = 4, dimension: int = 2, max_coord: int = 3
) -> EGraph:
    """Random weakly reversible graph: a Hamiltonian cycle plus random chords
    closed into cycles, on distinct lattice points."""
    points = set()
    while len(points) < n_vertices:
        points.add(tuple(int(c) for c in rng.integers(0, max_coord + 1, dimension)))
    verts = sorted(points)
    order = rng.permutation(n_vertices)
    edges = {(int(order[i]), int(order[(i + 1) % n_vertices])) for i in range(n_vertices)}
    for _ in range(rng.integers(0, n_vertices)):
        a, b = (int(v) for v in rng.choice(n_vertices, 2, replace=False))
        edges.add((a, b))
        edges.add((b, a))
    G = new_egraph(verts, sorted(edges))
    assert is_weakly_reversible(G)
    return G
