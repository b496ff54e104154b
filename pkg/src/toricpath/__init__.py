"""Toric and disguised toric loci of mass-action systems on E-graphs.

Membership tests with certificates, realizability by linear programming,
and explicit certified paths between members of the disguised toric locus.
"""

from .config import RunConfig, SearchBudget, Tolerances
from .disguised import (
    DisguisedCertificate,
    PathResult,
    PathSegment,
    connect_members,
    disguised_locus_membership,
    disguised_membership,
    fiber_path,
    positive_steady_state,
    verify_realization,
)
from .dynamics import dynamically_equivalent, equivalence_residual, massaction_rhs, realize_on
from .egraph import (
    EGraph,
    StoichiometricSubspace,
    Vertex,
    complete_graph,
    is_weakly_reversible,
    linkage_classes,
    new_egraph,
    stoichiometric_subspace,
    union_graph,
    weakly_reversible_subgraphs,
)
from .flux import (
    flux_equivalent,
    flux_from_rates,
    flux_membership,
    is_complex_balanced_flux,
    rates_from_flux,
    realize_flux_on,
)
from .toric import (
    CompatibilityClass,
    ToricCertificate,
    birch_point,
    closure_approx,
    compatibility_class,
    fiber_rate_vector,
    is_complex_balanced_state,
    phi,
    phi_inverse,
    toric_membership,
    toric_membership_on,
)

__version__ = "0.1.0"

__all__ = [
    "CompatibilityClass",
    "DisguisedCertificate",
    "EGraph",
    "PathResult",
    "PathSegment",
    "RunConfig",
    "SearchBudget",
    "StoichiometricSubspace",
    "Tolerances",
    "ToricCertificate",
    "Vertex",
    "birch_point",
    "closure_approx",
    "compatibility_class",
    "complete_graph",
    "connect_members",
    "disguised_locus_membership",
    "disguised_membership",
    "dynamically_equivalent",
    "equivalence_residual",
    "fiber_path",
    "fiber_rate_vector",
    "flux_equivalent",
    "flux_from_rates",
    "flux_membership",
    "is_complex_balanced_flux",
    "is_complex_balanced_state",
    "is_weakly_reversible",
    "linkage_classes",
    "massaction_rhs",
    "new_egraph",
    "phi",
    "phi_inverse",
    "positive_steady_state",
    "rates_from_flux",
    "realize_flux_on",
    "realize_on",
    "stoichiometric_subspace",
    "toric_membership",
    "toric_membership_on",
    "union_graph",
    "verify_realization",
    "weakly_reversible_subgraphs",
]
