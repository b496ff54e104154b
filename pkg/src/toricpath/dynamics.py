"""Mass-action vector fields, dynamical equivalence and realizability."""

from __future__ import annotations

import numpy as np

from . import _lp
from .config import DEFAULT_TOL
from .egraph import Coords, EGraph
from .errors import DimensionMismatch


def as_rates(G: EGraph, k) -> np.ndarray:
    k = np.asarray(k, dtype=float).ravel()
    if k.shape != (G.n_edges,):
        raise DimensionMismatch(f"rate vector has length {k.size}, graph has {G.n_edges} edges")
    return k


def as_state(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.shape != (n,):
        raise DimensionMismatch(f"state has length {x.size}, expected {n}")
    if not np.all(x > 0):
        raise ValueError("states must be strictly positive")
    return x


def is_strictly_positive(v) -> bool:
    return bool(np.all(np.asarray(v) > 0))


def monomials(G: EGraph, x) -> np.ndarray:
    """x^y for every vertex y of G."""
    x = as_state(x, G.dimension)
    return np.exp(G.Y @ np.log(x))


def source_monomials(G: EGraph, x) -> np.ndarray:
    """x^y for the source y of every edge of G."""
    return monomials(G, x)[G.source]


def massaction_rhs(G: EGraph, k, x) -> np.ndarray:
    """sum over edges y->y' of k * x^y * (y' - y)."""
    k = as_rates(G, k)
    return (k * source_monomials(G, x)) @ G.reaction_vectors


def net_vectors(G: EGraph, k) -> dict[Coords, np.ndarray]:
    """Per source vertex, sum of k_e (y' - y0) over edges leaving it."""
    k = as_rates(G, k)
    acc = np.zeros((G.n_vertices, G.dimension))
    np.add.at(acc, G.source, k[:, None] * G.reaction_vectors)
    return {v.coords: acc[v.index] for v in G.vertices}


def equivalence_residual(G: EGraph, k, H: EGraph, h) -> float:
    """Largest per-vertex infinity-norm gap between the two net-vector maps.

    Vertices missing from one graph contribute the zero vector on that side.
    """
    if G.dimension != H.dimension:
        raise DimensionMismatch("graphs live in different dimensions")
    a, b = net_vectors(G, k), net_vectors(H, h)
    zero = np.zeros(G.dimension)
    worst = 0.0
    for y0 in a.keys() | b.keys():
        gap = np.max(np.abs(a.get(y0, zero) - b.get(y0, zero)), initial=0.0)
        worst = max(worst, float(gap))
    return worst


def dynamically_equivalent(G: EGraph, k, H: EGraph, h, tol: float = DEFAULT_TOL.tol) -> bool:
    return equivalence_residual(G, k, H, h) <= tol


def _realize_vertex(H, h, G, y0, b, require_positive, tol, pos_eps):
    """Rates on G's out-edges at y0 reproducing net vector b, or None."""
    out = G.out_edges[G.vertex_index[y0]] if y0 in G.vertex_index else ()
    if not out:
        return np.zeros(0) if np.max(np.abs(b), initial=0.0) <= tol else None

    # zero-extension of h, when every edge of H at y0 is also in G
    h_out = H.out_edges[H.vertex_index[y0]] if y0 in H.vertex_index else ()
    if all(G.has_edge(H.edge_keys[e]) for e in h_out):
        cand = np.zeros(len(out))
        pos = {e: i for i, e in enumerate(out)}
        for e in h_out:
            cand[pos[G.edge_index[H.edge_keys[e]]]] = h[e]
        if not require_positive or np.all(cand >= pos_eps):
            return cand

    A = G.reaction_vectors[list(out)].T
    if require_positive:
        res = _lp.max_margin(A, b, cap=max(1.0, float(np.max(np.abs(b), initial=0.0))))
        if not res.feasible(pos_eps):
            return None
        sol = _lp.polish_equalities(A, b, res.x)
        if np.min(sol) < pos_eps:
            sol = res.x
    else:
        sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.max(np.abs(A @ sol - b), initial=0.0) > tol:
        return None
    return sol


def realize_on(
    H: EGraph,
    h,
    G: EGraph,
    require_positive: bool = True,
    tol: float = DEFAULT_TOL.tol,
    pos_eps: float = DEFAULT_TOL.pos_eps,
) -> np.ndarray | None:
    """Rates k on G with (G, k) dynamically equivalent to (H, h), or None.

    The equivalence equations split by source vertex, so each vertex is an
    independent linear system (an LP when ``require_positive``; entries are
    then at least ``pos_eps``).  ``None`` means proven infeasible.
    """
    if G.dimension != H.dimension:
        raise DimensionMismatch("graphs live in different dimensions")
    h = as_rates(H, h)
    target = net_vectors(H, h)
    zero = np.zeros(G.dimension)
    k = np.zeros(G.n_edges)
    for y0 in set(target) | set(G.vertex_index):
        sol = _realize_vertex(H, h, G, y0, target.get(y0, zero), require_positive, tol, pos_eps)
        if sol is None:
            return None
        if y0 in G.vertex_index:
            k[list(G.out_edges[G.vertex_index[y0]])] = sol
    return k
