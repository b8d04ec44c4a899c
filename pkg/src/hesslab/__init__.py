"""Exact combinatorics of regular Hessenberg spaces in type A.

Graded symmetric-group characters from chromatic quasisymmetric functions,
Betti numbers of all regular Hessenberg spaces through invariant subrings, a
support criterion for which irreducibles can appear, and a moment-graph model
with certified Poincare duality, hard Lefschetz, and signed primitive forms.
All arithmetic is exact (integers and fractions); nothing is floating point.
"""

from .dotchar import (
    GradedMultiplicity,
    betti_rs,
    chromatic_qsym,
    dot_action_multiplicities,
    multiplicities_json,
    regular_betti,
)
from .errors import (
    ConsistencyError,
    CostGuardError,
    HesslabError,
    TheoremViolation,
    UnstableSamplingError,
)
from .gkm import (
    EquivClass,
    GKMGraph,
    build_gkm,
    dot_action,
    equivariant_piece,
    flow_up_class,
    hard_lefschetz_check,
    hodge_riemann_check,
    integrate,
    invariant_subring,
    kahler_class,
    kahler_report,
    morse_betti,
    ordinary_basis,
    poincare_pairing,
)
from .hessenberg import (
    annihilator_pattern,
    dimension,
    enumerate_hessenberg,
    hessenberg_str,
    incomparability_graph,
    is_indecomposable,
    parse_hessenberg,
)
from .partitions import (
    character_value,
    conjugate,
    dim_irrep,
    dominance_leq,
    invariant_dim,
    partitions_of,
)
from .springer import (
    allowed_irreps,
    generic_jordan_type,
    jordan_type,
    orbit_meets_annihilator,
    support_violations,
)
from .symfunc import QPoly, QSymPoly, h_dual_coefficient, schur_inner_product

__version__ = "0.1.0"

__all__ = [
    "GradedMultiplicity",
    "betti_rs",
    "chromatic_qsym",
    "dot_action_multiplicities",
    "multiplicities_json",
    "regular_betti",
    "ConsistencyError",
    "CostGuardError",
    "HesslabError",
    "TheoremViolation",
    "UnstableSamplingError",
    "EquivClass",
    "GKMGraph",
    "build_gkm",
    "dot_action",
    "equivariant_piece",
    "flow_up_class",
    "hard_lefschetz_check",
    "hodge_riemann_check",
    "integrate",
    "invariant_subring",
    "kahler_class",
    "kahler_report",
    "morse_betti",
    "ordinary_basis",
    "poincare_pairing",
    "annihilator_pattern",
    "dimension",
    "enumerate_hessenberg",
    "hessenberg_str",
    "incomparability_graph",
    "is_indecomposable",
    "parse_hessenberg",
    "character_value",
    "conjugate",
    "dim_irrep",
    "dominance_leq",
    "invariant_dim",
    "partitions_of",
    "allowed_irreps",
    "generic_jordan_type",
    "jordan_type",
    "orbit_meets_annihilator",
    "support_violations",
    "QPoly",
    "QSymPoly",
    "h_dual_coefficient",
    "schur_inner_product",
    "__version__",
]
