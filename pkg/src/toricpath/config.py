"""Numerical tolerances and search budgets shared across modules."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances; all must be positive.

    tol        per-vertex residual for equivalence and balance checks
    tol_lin    residual for span/affine-class membership
    tol_loglin least-squares residual of the log-linear toric system
    pos_eps    floor used in place of strict positivity in LPs
    """

    tol: float = 1e-8
    tol_lin: float = 1e-9
    tol_loglin: float = 1e-7
    pos_eps: float = 1e-9

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise ValueError(f"tolerance {f.name} must be positive")


@dataclass(frozen=True)
class SearchBudget:
    starts: int = 64
    iters: int = 200
    log_box: float = 3.0
    subset_cap: int = 2**24
    seed: int = 0


DEFAULT_TOL = Tolerances()
DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class RunConfig:
    tolerances: Tolerances = DEFAULT_TOL
    budget: SearchBudget = DEFAULT_BUDGET
    samples: int = 32
    output: str = "json"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        tol = Tolerances(**data.pop("tolerances", {}))
        budget = SearchBudget(**data.pop("budget", {}))
        cfg = cls(tolerances=tol, budget=budget, **data)
        if cfg.output not in ("json", "table"):
            raise ValueError(f"unknown output format {cfg.output!r}")
        if cfg.samples < 2:
            raise ValueError("samples must be at least 2")
        return cfg

    def updated(self, **changes) -> "RunConfig":
        return replace(self, **changes)
