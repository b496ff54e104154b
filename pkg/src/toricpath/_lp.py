"""Max-margin feasibility LPs on top of scipy's HiGHS interface."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import SolverFailure


@dataclass
class MarginResult:
    """Outcome of ``max t  s.t.  A x = b,  x >= t,  t <= cap``.

    ``margin`` is the optimal t (``-inf`` when the equalities alone are
    infeasible); ``x`` is None in that case.
    """

    x: np.ndarray | None
    margin: float
    status: str

    def feasible(self, pos_eps: float) -> bool:
        return self.x is not None and self.margin >= pos_eps


def max_margin(A: np.ndarray, b: np.ndarray, cap: float) -> MarginResult:
    """Find x with A x = b maximizing its smallest entry (capped at ``cap``).

    The cap keeps the LP bounded when A has a positive kernel vector.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    n_var = A.shape[1]
    if n_var == 0:
        ok = np.all(np.abs(b) == 0)
        return MarginResult(np.zeros(0) if ok else None, np.inf if ok else -np.inf, "empty")
    # variables (x, t); x - t >= 0  ->  -x + t <= 0
    c = np.zeros(n_var + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-np.eye(n_var), np.ones((n_var, 1))])
    b_ub = np.zeros(n_var)
    A_eq = np.hstack([A, np.zeros((A.shape[0], 1))])
    bounds = [(None, None)] * n_var + [(None, cap)]
    res = linprog(
        c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq if A.shape[0] else None,
        b_eq=b if A.shape[0] else None,
        bounds=bounds,
        method="highs",
    )
    if res.status == 0:
        return MarginResult(res.x[:-1], float(res.x[-1]), "optimal")
    if res.status == 2:
        return MarginResult(None, -np.inf, "infeasible")
    raise SolverFailure(f"HiGHS returned status {res.status}: {res.message}")


def polish_equalities(A: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Minimum-norm correction of x onto {A x = b}."""
    if A.size == 0:
        return x
    r = A @ x - b
    dx, *_ = np.linalg.lstsq(A, r, rcond=None)
    return x - dx
