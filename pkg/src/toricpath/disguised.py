"""Disguised toric locus membership and path construction between members.

A rate vector k on G is in the disguised toric locus with target graph
G~ when (G, k) is dynamically equivalent to some complex-balanced
(G~, k~).  Every positive steady state of a complex-balanced system is
complex-balanced, and dynamically equivalent systems share their steady
states.  So once a positive steady state x* of (G, k) is in hand, the
question "is there such a k~" becomes one linear program in k~ (balance
at x* plus the equivalence equations), and an infeasible LP there rules
the target out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _lp
from .config import DEFAULT_BUDGET, DEFAULT_TOL, SearchBudget, Tolerances
from .dynamics import as_rates, as_state, equivalence_residual, net_vectors, realize_on
from .egraph import (
    EGraph,
    complete_graph,
    is_weakly_reversible,
    stoichiometric_subspace,
    union_graph,
    weakly_reversible_subgraphs,
)
from .errors import (
    CertificationFailure,
    ClassMismatch,
    MembershipFailure,
    NotWeaklyReversible,
)
from .toric import (
    CompatibilityClass,
    birch_point,
    complex_balance_residual,
    fiber_rate_vector,
    toric_membership,
    zero_extend,
)

STEADY_STATE_RTOL = 1e-12
LOG_BOUND = 60.0


@dataclass
class DisguisedCertificate:
    member: bool
    target_graph: EGraph | None = None
    realized_rates: np.ndarray | None = None
    steady_state: np.ndarray | None = None
    search_exhausted: bool = False
    residuals: dict = field(default_factory=dict)
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "target_graph": None if self.target_graph is None else self.target_graph.to_dict(),
            "realized_rates": _list(self.realized_rates),
            "steady_state": _list(self.steady_state),
            "search_exhausted": self.search_exhausted,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "reason": self.reason,
        }


def _list(v):
    return None if v is None else [float(a) for a in v]


def verify_realization(
    G: EGraph, k, target: EGraph, k_tilde, x, tols: Tolerances = DEFAULT_TOL
) -> tuple[bool, dict]:
    """Independently re-check a claimed realization.

    Returns (ok, residuals): equivalence residual, log-linear residual of
    the toric test on (target, k_tilde), and balance residual at x.
    """
    eq = equivalence_residual(G, k, target, k_tilde)
    cert = toric_membership(target, k_tilde, tols)
    bal = complex_balance_residual(target, k_tilde, x)
    residuals = {"equivalence": eq, "loglinear": cert.residual, "balance": bal}
    ok = eq <= tols.tol and cert.member and bal <= tols.tol
    return ok, residuals


def certify(G, k, target, k_tilde, x, tols: Tolerances = DEFAULT_TOL) -> DisguisedCertificate:
    ok, residuals = verify_realization(G, k, target, k_tilde, x, tols)
    if not ok:
        return DisguisedCertificate(False, residuals=residuals, reason="re-verification failed")
    return DisguisedCertificate(
        True, target, np.asarray(k_tilde, dtype=float), np.asarray(x, dtype=float),
        residuals=residuals,
    )


# ---------------------------------------------------------------------------
# steady states of (G, k)


def _steady_state_from(G: EGraph, k: np.ndarray, z0: np.ndarray, iters: int) -> np.ndarray | None:
    """Gauss-Newton on the mass-action field in log coordinates."""
    R, Ys = G.reaction_vectors, G.source_coords
    weight = np.abs(R).sum(axis=1)

    def merit(z):
        w = k * np.exp(Ys @ z)
        return float(np.max(np.abs(w @ R))) / float(np.abs(w) @ weight), w

    z = np.array(z0, dtype=float)
    m, w = merit(z)
    for _ in range(iters):
        if m <= STEADY_STATE_RTOL:
            return z
        f = w @ R
        jac = R.T @ (w[:, None] * Ys)
        dz, *_ = np.linalg.lstsq(jac, -f, rcond=None)
        alpha = 1.0
        while True:
            trial = z + alpha * dz
            m_trial, w_trial = merit(trial)
            if np.isfinite(m_trial) and m_trial < (1 - 1e-4 * alpha) * m:
                break
            alpha *= 0.5
            if alpha < 1e-10:
                return None
        z, m, w = trial, m_trial, w_trial
        if np.max(np.abs(z)) > LOG_BOUND:
            return None
    return z if m <= STEADY_STATE_RTOL else None


def positive_steady_state(
    G: EGraph, k, budget: SearchBudget = DEFAULT_BUDGET
) -> np.ndarray | None:
    """Multistart search for one positive steady state of (G, k).

    Starts are the all-ones state followed by ``budget.starts`` points drawn
    log-uniformly from the box [-log_box, log_box]^n with ``budget.seed``.
    """
    k = as_rates(G, k)
    rng = np.random.default_rng(budget.seed)
    starts = np.vstack(
        [np.zeros(G.dimension), rng.uniform(-budget.log_box, budget.log_box, (budget.starts, G.dimension))]
    )
    for z0 in starts:
        z = _steady_state_from(G, k, z0, budget.iters)
        if z is not None:
            return np.exp(z)
    return None


# ---------------------------------------------------------------------------
# membership


def _balance_lp(G: EGraph, k: np.ndarray, target: EGraph, x: np.ndarray, tols: Tolerances):
    """Rates on ``target`` reproducing (G, k) and balanced at x, or None.

    The LP is posed in the fluxes J = k~ x^y (monomials scaled to max 1) and
    maximizes the smallest flux.  Fluxes are what the fiber transport keeps
    nearly fixed, so a healthy flux margin keeps transported rates clear of
    the positivity floor; and k~ = J / x^y >= J, so the rate floor holds too.
    """
    nets = net_vectors(G, k)
    keys = list(dict.fromkeys(list(nets) + list(target.vertex_index)))
    n, m_e = G.dimension, target.n_edges
    mono = np.exp(target.Y @ np.log(x))
    mono = mono / mono.max()
    scale = mono[target.source]
    rows, rhs = [], []
    for y0 in keys:
        block = np.zeros((n, m_e))
        if y0 in target.vertex_index:
            out = list(target.out_edges[target.vertex_index[y0]])
            block[:, out] = target.reaction_vectors[out].T / scale[out]
        rows.append(block)
        rhs.append(nets.get(y0, np.zeros(n)))
    bal = np.zeros((target.n_vertices, m_e))
    np.add.at(bal, (target.target, np.arange(m_e)), 1.0)
    np.add.at(bal, (target.source, np.arange(m_e)), -1.0)
    A = np.vstack(rows + [bal])
    b = np.concatenate(rhs + [np.zeros(target.n_vertices)])
    res = _lp.max_margin(A, b, cap=max(1.0, float(np.max(np.abs(k), initial=0.0))))
    if not res.feasible(tols.pos_eps):
        return None, res.margin
    flux = _lp.polish_equalities(A, b, res.x)
    if np.min(flux) < tols.pos_eps:
        flux = res.x
    return flux / scale, res.margin


def disguised_membership(
    G: EGraph,
    k,
    target: EGraph,
    signed: bool = False,
    budget: SearchBudget = DEFAULT_BUDGET,
    tols: Tolerances = DEFAULT_TOL,
    steady_state=None,
) -> DisguisedCertificate:
    """Decide k in K_disg(G, target) (or K_R-disg(G, target) when ``signed``).

    ``steady_state`` lets callers reuse a positive steady state of (G, k)
    across several targets.  ``search_exhausted`` is True when the verdict
    is a proof (no positive equivalent rates on target at all, or an
    infeasible LP at a positive steady state); a False verdict with
    ``search_exhausted=False`` only means no steady state was found.
    """
    k = as_rates(G, k)
    if not is_weakly_reversible(target):
        raise NotWeaklyReversible("target graph must be weakly reversible")
    if not signed and np.any(k <= 0):
        raise ValueError("unsigned membership needs strictly positive rates")

    if G.is_subgraph_of(target):
        direct = zero_extend(target, G, k)
        cert = toric_membership(target, direct, tols)
        if cert.member:
            c = certify(G, k, target, direct, cert.witness_state, tols)
            if c.member:
                return c

    if realize_on(G, k, target, True, tols.tol, tols.pos_eps) is None:
        return DisguisedCertificate(
            False, search_exhausted=True, reason="no positive rates on target reproduce the dynamics"
        )

    x = steady_state if steady_state is not None else positive_steady_state(G, k, budget)
    if x is None:
        return DisguisedCertificate(False, search_exhausted=False, reason="no positive steady state found")
    x = as_state(x, G.dimension)
    k_tilde, margin = _balance_lp(G, k, target, x, tols)
    if k_tilde is None:
        return DisguisedCertificate(
            False, steady_state=x, search_exhausted=True, residuals={"lp_margin": margin},
            reason="no balanced realization at a positive steady state",
        )
    cert = certify(G, k, target, k_tilde, x, tols)
    cert.residuals["lp_margin"] = margin
    return cert


def disguised_locus_membership(
    G: EGraph,
    k,
    signed: bool = False,
    budget: SearchBudget = DEFAULT_BUDGET,
    tols: Tolerances = DEFAULT_TOL,
) -> DisguisedCertificate:
    """Search every weakly reversible subgraph of the complete graph on V(G)
    in lexicographic order; the first success names the target."""
    k = as_rates(G, k)
    x = None
    searched = False
    exhausted = True
    for target in weakly_reversible_subgraphs(complete_graph(G), cap=budget.subset_cap):
        if x is None and not searched and realize_on(G, k, target, True, tols.tol, tols.pos_eps) is not None:
            x = positive_steady_state(G, k, budget)
            searched = True
        cert = disguised_membership(G, k, target, signed, budget, tols, steady_state=x)
        if cert.member:
            return cert
        exhausted = exhausted and cert.search_exhausted
    return DisguisedCertificate(
        False, search_exhausted=exhausted, reason="no weakly reversible target realizes the dynamics"
    )


# ---------------------------------------------------------------------------
# paths


@dataclass
class PathSegment:
    kind: str  # "fiber" or "line"
    t: np.ndarray
    rates: list[np.ndarray]
    certificates: list[DisguisedCertificate]

    def length(self) -> float:
        return float(sum(np.linalg.norm(b - a) for a, b in zip(self.rates, self.rates[1:])))

    def max_step(self) -> float:
        return float(max((np.max(np.abs(b - a)) for a, b in zip(self.rates, self.rates[1:])), default=0.0))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "samples": [
                {"t": float(t), "k": _list(r), "certificate": c.to_dict()}
                for t, r, c in zip(self.t, self.rates, self.certificates)
            ],
        }


@dataclass
class PathResult:
    segments: list[PathSegment]
    endpoint_a: np.ndarray
    endpoint_b: np.ndarray
    merged_graph: EGraph | None

    @property
    def certificates(self) -> list[DisguisedCertificate]:
        return [c for s in self.segments for c in s.certificates]

    def summary(self) -> list[dict]:
        rows = []
        for s in self.segments:
            worst = max(
                (max(c.residuals.get("equivalence", 0.0), c.residuals.get("balance", 0.0)) for c in s.certificates),
                default=0.0,
            )
            rows.append({"kind": s.kind, "length": s.length(), "max_residual": worst})
        return rows

    def to_dict(self) -> dict:
        return {
            "endpoint_a": _list(self.endpoint_a),
            "endpoint_b": _list(self.endpoint_b),
            "merged_graph": None if self.merged_graph is None else self.merged_graph.to_dict(),
            "segments": [s.to_dict() for s in self.segments],
            "summary": self.summary(),
        }


def _check(cert: DisguisedCertificate, k, signed: bool, where: str):
    if not cert.member:
        raise CertificationFailure(f"sample {where} failed re-verification", cert.residuals)
    if not signed and np.any(np.asarray(k) <= 0):
        raise CertificationFailure(f"sample {where} left the positive orthant")


def _check_segment(seg: PathSegment, signed: bool, name: str):
    for j, (kt, c) in enumerate(zip(seg.rates, seg.certificates)):
        _check(c, kt, signed, f"{j} of the {name} segment")


def fiber_path(
    G: EGraph,
    k,
    certificate: DisguisedCertificate,
    x_target,
    samples: int = 32,
    tols: Tolerances = DEFAULT_TOL,
) -> PathSegment:
    """Rates k_G(x(t), x1) for x(t) = (1-t) x1 + t x_target, t in [0, 1].

    x1 is the certificate's steady state; each sample carries the
    transported realization on the certificate's target graph.
    """
    if not certificate.member:
        raise MembershipFailure("fiber_path needs a member certificate")
    k = as_rates(G, k)
    target, k1, x1 = certificate.target_graph, certificate.realized_rates, certificate.steady_state
    x_target = as_state(x_target, G.dimension)
    S = stoichiometric_subspace(target)
    if not S.contains(x_target - x1, tols.tol_lin):
        raise ClassMismatch("x_target is not in the compatibility class of the certificate's steady state")
    ts = np.linspace(0.0, 1.0, samples)
    rates, certs = [], []
    for t in ts:
        x = (1.0 - t) * x1 + t * x_target
        kt = fiber_rate_vector(G, k, x, x1)
        rates.append(kt)
        certs.append(certify(G, kt, target, fiber_rate_vector(target, k1, x, x1), x, tols))
    return PathSegment("fiber", ts, rates, certs)


def _transport_to_class(cert: DisguisedCertificate, x0: np.ndarray) -> DisguisedCertificate:
    """Same realization, steady state moved to the Birch point in the class of x0."""
    target = cert.target_graph
    cls = CompatibilityClass(x0, stoichiometric_subspace(target))
    x1 = birch_point(target, cert.realized_rates, cert.steady_state, cls)
    return DisguisedCertificate(
        True, target, cert.realized_rates, x1, residuals=dict(cert.residuals), reason=cert.reason
    )


def connect_members(
    G: EGraph,
    k_a,
    k_b,
    signed: bool = False,
    x0=None,
    budget: SearchBudget = DEFAULT_BUDGET,
    samples: int = 32,
    tols: Tolerances = DEFAULT_TOL,
    target: EGraph | None = None,
) -> PathResult:
    """Three-segment path k_a -> k_a' -> k_b' -> k_b inside the locus.

    k_a' and k_b' are the fiber images at the shared state x0 (default
    all-ones); the middle segment is the straight line between them,
    realized on the union of the two target graphs.  With ``target`` the
    search is restricted to that graph instead of the whole locus.
    """
    k_a, k_b = as_rates(G, k_a), as_rates(G, k_b)
    x0 = np.ones(G.dimension) if x0 is None else as_state(x0, G.dimension)

    def member_cert(k, label):
        if target is None:
            cert = disguised_locus_membership(G, k, signed, budget, tols)
        else:
            cert = disguised_membership(G, k, target, signed, budget, tols)
        if not cert.member:
            raise MembershipFailure(f"endpoint {label} is not a certified member: {cert.reason}")
        return _transport_to_class(cert, x0)

    cert_a, cert_b = member_cert(k_a, "a"), member_cert(k_b, "b")
    seg_a = fiber_path(G, k_a, cert_a, x0, samples, tols)
    seg_b = fiber_path(G, k_b, cert_b, x0, samples, tols)
    _check_segment(seg_a, signed, "fiber a")
    _check_segment(seg_b, signed, "fiber b")
    ka0, kb0 = seg_a.rates[-1], seg_b.rates[-1]

    G1, G2 = cert_a.target_graph, cert_b.target_graph
    merged = union_graph(G1, G2)
    k1 = zero_extend(merged, G1, seg_a.certificates[-1].realized_rates)
    k2 = zero_extend(merged, G2, seg_b.certificates[-1].realized_rates)
    ts = np.linspace(0.0, 1.0, samples)
    rates, certs = [], []
    for t in ts:
        kt = (1.0 - t) * ka0 + t * kb0
        blend = (1.0 - t) * k1 + t * k2
        keep = np.flatnonzero(blend > 0)
        sub = merged.subgraph(keep)
        rates.append(kt)
        certs.append(certify(G, kt, sub, blend[keep], x0, tols))
    line = PathSegment("line", ts, rates, certs)
    _check_segment(line, signed, "line")

    # traversed from the junction k_b' back to k_b; t is the reversed fiber parameter
    back = PathSegment("fiber", seg_b.t.copy(), seg_b.rates[::-1], seg_b.certificates[::-1])
    return PathResult([seg_a, line, back], k_a, k_b, merged)


def iter_samples(path: PathResult) -> Iterator[tuple[int, float, np.ndarray, DisguisedCertificate]]:
    for i, seg in enumerate(path.segments):
        for t, k, c in zip(seg.t, seg.rates, seg.certificates):
            yield i, float(t), k, c
