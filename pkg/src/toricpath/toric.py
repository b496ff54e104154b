"""Toric locus membership and the maps that move around inside it.

Convention for the weighted Laplacian: ``A[j, i] = k_{i->j}`` off the
diagonal and ``A[i, i] = -sum_j k_{i->j}``, so a positive state x is
complex-balanced exactly when ``A @ x^Y = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from .config import DEFAULT_TOL, Tolerances
from .dynamics import as_rates, as_state, realize_on
from .egraph import (
    EGraph,
    StoichiometricSubspace,
    is_weakly_reversible,
    linkage_classes,
    stoichiometric_subspace,
)
from .errors import (
    ClassMismatch,
    ConvergenceFailure,
    NotMember,
    NotSubgraph,
    NotWeaklyReversible,
    SolverFailure,
)
from .flux import balance_residual, flux_from_rates, rates_from_flux


@dataclass
class ToricCertificate:
    member: bool
    witness_state: np.ndarray | None = None
    witness_rates: np.ndarray | None = None
    residual: float = float("inf")
    balance_residual: float = float("inf")
    proven_infeasible: bool = False
    reason: str = ""

    def __post_init__(self):
        if self.member and self.proven_infeasible:
            raise ValueError("a certificate cannot be both member and proven infeasible")
        if self.member and self.witness_state is None:
            raise ValueError("member certificates need a witness state")

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "witness_state": _list(self.witness_state),
            "witness_rates": _list(self.witness_rates),
            "loglinear_residual": _num(self.residual),
            "balance_residual": _num(self.balance_residual),
            "proven_infeasible": self.proven_infeasible,
            "reason": self.reason,
        }


def _list(v):
    return None if v is None else [float(a) for a in v]


def _num(v: float):
    return None if not np.isfinite(v) else float(v)


@dataclass(frozen=True, eq=False)
class CompatibilityClass:
    """The slice (anchor + S) intersected with the positive orthant."""

    anchor: np.ndarray
    subspace: StoichiometricSubspace = field(repr=False)

    def contains(self, x, tol: float = DEFAULT_TOL.tol_lin) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x > 0)) and self.subspace.contains(x - self.anchor, tol)


def compatibility_class(G: EGraph, x0) -> CompatibilityClass:
    return CompatibilityClass(as_state(x0, G.dimension), stoichiometric_subspace(G))


# ---------------------------------------------------------------------------


def laplacian(G: EGraph, k) -> np.ndarray:
    k = as_rates(G, k)
    m = G.n_vertices
    A = np.zeros((m, m))
    np.add.at(A, (G.target, G.source), k)
    np.add.at(A, (G.source, G.source), -k)
    return A


def tree_constants(G: EGraph, k) -> np.ndarray:
    """Positive kernel vector of the Laplacian, one block per linkage class,
    each block scaled to max entry 1.  Requires a weakly reversible G."""
    A = laplacian(G, k)
    rho = np.zeros(G.n_vertices)
    for cls in linkage_classes(G):
        block = A[np.ix_(cls, cls)]
        ker = null_space(block, rcond=1e-12)
        if ker.shape[1] != 1:
            raise SolverFailure(
                f"Laplacian kernel of linkage class {cls} has dimension {ker.shape[1]}, expected 1"
            )
        v = ker[:, 0]
        v = v / v[np.argmax(np.abs(v))]
        if np.any(v <= 0):
            raise SolverFailure("Laplacian kernel vector is not positive")
        rho[cls] = v
    return rho


def is_complex_balanced_state(G: EGraph, k, x, tol: float = DEFAULT_TOL.tol) -> bool:
    return complex_balance_residual(G, k, x) <= tol


def complex_balance_residual(G: EGraph, k, x) -> float:
    return balance_residual(G, flux_from_rates(G, k, x))


def toric_membership(G: EGraph, k, tols: Tolerances = DEFAULT_TOL) -> ToricCertificate:
    """Decide whether (G, k) is complex-balanced.

    Solves ``<y, z> + c_L(y) = ln rho_y`` in least squares, where rho is
    the tree-constant vector and ``c_L`` is one free offset per linkage
    class; a witness steady state is ``exp(z)``.
    """
    k = as_rates(G, k)
    if np.min(k) < tols.pos_eps:
        return ToricCertificate(False, proven_infeasible=True, reason="rates below positivity floor")
    if not is_weakly_reversible(G):
        return ToricCertificate(False, proven_infeasible=True, reason="not weakly reversible")

    rho = tree_constants(G, k)
    classes = linkage_classes(G)
    onehot = np.zeros((G.n_vertices, len(classes)))
    for c, cls in enumerate(classes):
        onehot[cls, c] = 1.0
    M = np.hstack([G.Y, onehot])
    rhs = np.log(rho)
    sol, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    residual = float(np.max(np.abs(M @ sol - rhs)))
    x = np.exp(sol[: G.dimension])
    bal = complex_balance_residual(G, k, x)
    if residual <= tols.tol_loglin:
        return ToricCertificate(True, witness_state=x, residual=residual, balance_residual=bal)
    return ToricCertificate(
        False, residual=residual, balance_residual=bal, proven_infeasible=True,
        reason="log tree constants are not affine in the vertices",
    )


def toric_membership_on(
    H: EGraph, h, G: EGraph, require_positive: bool = True, tols: Tolerances = DEFAULT_TOL
) -> ToricCertificate:
    """Decide h in K(H, G) (``require_positive``) or h in K_R(H, G)."""
    cert = toric_membership(H, h, tols)
    if not cert.member:
        return cert
    k = realize_on(H, h, G, require_positive, tols.tol, tols.pos_eps)
    if k is None:
        return ToricCertificate(
            False, residual=cert.residual, balance_residual=cert.balance_residual,
            proven_infeasible=True, reason=f"not {'' if require_positive else 'R-'}realizable on target",
        )
    cert.witness_rates = k
    return cert


def birch_point(
    G: EGraph,
    k_member,
    x_star,
    cls: CompatibilityClass,
    start=None,
    max_iter: int = 200,
    gtol: float = 1e-10,
) -> np.ndarray:
    """The complex-balanced steady state of (G, k_member) inside ``cls``.

    Minimizes sum_i x_i (ln x_i - ln x*_i - 1) over the class by damped
    Newton in coordinates of the orthonormal basis.  ``k_member`` is only
    used through ``x_star``; it is kept in the signature for symmetry with
    the other maps.
    """
    log_star = np.log(as_state(x_star, G.dimension))
    B = cls.subspace.basis
    x0 = cls.anchor if start is None else as_state(start, G.dimension)
    if start is not None and not cls.contains(x0):
        raise ClassMismatch("starting iterate is outside the compatibility class")
    if B.shape[0] == 0:
        return x0.copy()

    def objective(x):
        return float(np.sum(x * (np.log(x) - log_star - 1.0)))

    x = x0.copy()
    for _ in range(max_iter):
        grad = B @ (np.log(x) - log_star)
        if np.max(np.abs(grad)) <= gtol:
            return x
        hess = (B / x) @ B.T
        step = -np.linalg.solve(hess, grad)
        dx = B.T @ step
        f0, slope = objective(x), float(grad @ step)
        # inside the quadratic region the predicted decrease drowns in the
        # round-off of the objective, so Armijo would only see noise there
        local = -slope <= 1e-10 * max(1.0, abs(f0))
        alpha = 1.0
        while True:
            trial = x + alpha * dx
            if np.all(trial > 0) and (local or objective(trial) <= f0 + 1e-4 * alpha * slope):
                break
            alpha *= 0.5
            if alpha < 1e-14:
                # converged to round-off when no descent is representable
                if np.max(np.abs(grad)) <= 1e3 * gtol:
                    return x
                raise ConvergenceFailure("line search stalled in birch_point")
        x = trial
    grad = B @ (np.log(x) - log_star)
    if np.max(np.abs(grad)) <= gtol:
        return x
    raise ConvergenceFailure(f"birch_point did not converge in {max_iter} iterations")


def fiber_rate_vector(G: EGraph, k_star, x, x_star) -> np.ndarray:
    """k*_e (x*)^y / x^y, y the source of edge e."""
    k_star = as_rates(G, k_star)
    shift = np.log(as_state(x_star, G.dimension)) - np.log(as_state(x, G.dimension))
    return k_star * np.exp(G.source_coords @ shift)


def phi(G: EGraph, J, x) -> np.ndarray:
    return rates_from_flux(G, J, x)


def phi_inverse(
    G: EGraph, k_member, cls: CompatibilityClass, tols: Tolerances = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """(J, x) with x the Birch point of k_member in ``cls`` and J its flux."""
    cert = toric_membership(G, k_member, tols)
    if not cert.member:
        raise NotMember(f"rate vector is not in the toric locus: {cert.reason}")
    x = birch_point(G, k_member, cert.witness_state, cls)
    return flux_from_rates(G, k_member, x), x


def zero_extend(G: EGraph, sub: EGraph, k_sub) -> np.ndarray:
    """Extend rates on a subgraph to G by zeros on the missing edges."""
    k_sub = as_rates(sub, k_sub)
    out = np.zeros(G.n_edges)
    for e, key in enumerate(sub.edge_keys):
        if key not in G.edge_index:
            raise NotSubgraph(f"edge {key} is not an edge of the ambient graph")
        out[G.edge_index[key]] = k_sub[e]
    return out


def closure_approx(
    G: EGraph,
    G_i: EGraph,
    k_i,
    k_star,
    x_star,
    eps: float,
    tols: Tolerances = DEFAULT_TOL,
) -> np.ndarray:
    """eps * k*_G(x1, x*) + zero-extension of k_i, which is in K(G) with
    complex-balanced steady state x1 (recomputed from k_i)."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not G_i.is_subgraph_of(G):
        raise NotSubgraph("G_i is not a subgraph of G")
    if not is_weakly_reversible(G):
        raise NotWeaklyReversible("G is not weakly reversible")
    if not is_weakly_reversible(G_i):
        raise NotWeaklyReversible("G_i is not weakly reversible")
    cert = toric_membership(G_i, k_i, tols)
    if not cert.member:
        raise NotMember(f"k_i is not in K(G_i): {cert.reason}")
    if not is_complex_balanced_state(G, k_star, x_star, tols.tol):
        raise NotMember("x_star is not a complex-balanced steady state of (G, k_star)")
    x1 = cert.witness_state
    return eps * fiber_rate_vector(G, k_star, x1, x_star) + zero_extend(G, G_i, k_i)
