"""Flux systems: complex-balanced fluxes, flux equivalence, flux realizability."""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOL
from .dynamics import (
    as_rates,
    dynamically_equivalent,
    equivalence_residual,
    realize_on,
    source_monomials,
)
from .egraph import EGraph


def flux_from_rates(G: EGraph, k, x) -> np.ndarray:
    """J_e = k_e * x^{source(e)}."""
    return as_rates(G, k) * source_monomials(G, x)


def rates_from_flux(G: EGraph, J, x) -> np.ndarray:
    """k_e = J_e / x^{source(e)}."""
    return as_rates(G, J) / source_monomials(G, x)


def vertex_imbalance(G: EGraph, J) -> np.ndarray:
    """Inflow minus outflow at every vertex."""
    J = as_rates(G, J)
    return np.bincount(G.target, J, G.n_vertices) - np.bincount(G.source, J, G.n_vertices)


def balance_residual(G: EGraph, J) -> float:
    """max |inflow - outflow| relative to max(1, max |J|)."""
    J = as_rates(G, J)
    scale = max(1.0, float(np.max(np.abs(J), initial=0.0)))
    return float(np.max(np.abs(vertex_imbalance(G, J)), initial=0.0)) / scale


def is_complex_balanced_flux(G: EGraph, J, tol: float = DEFAULT_TOL.tol) -> bool:
    J = as_rates(G, J)
    return bool(np.all(J > 0)) and balance_residual(G, J) <= tol


def flux_equivalent(G: EGraph, J, H: EGraph, J2, tol: float = DEFAULT_TOL.tol) -> bool:
    # same per-vertex net-vector identity as for rates
    return dynamically_equivalent(G, J, H, J2, tol)


flux_equivalence_residual = equivalence_residual


def realize_flux_on(
    H: EGraph,
    J2,
    G: EGraph,
    require_positive: bool = True,
    tol: float = DEFAULT_TOL.tol,
    pos_eps: float = DEFAULT_TOL.pos_eps,
) -> np.ndarray | None:
    return realize_on(H, J2, G, require_positive, tol, pos_eps)


def flux_membership(
    H: EGraph,
    J2,
    G: EGraph,
    require_positive: bool = True,
    tol: float = DEFAULT_TOL.tol,
    pos_eps: float = DEFAULT_TOL.pos_eps,
) -> np.ndarray | None:
    """Witness flux on G when J2 lies in J(H, G) (or J_R(H, G) if not
    ``require_positive``); None otherwise."""
    if not is_complex_balanced_flux(H, J2, tol):
        return None
    return realize_flux_on(H, J2, G, require_positive, tol, pos_eps)
