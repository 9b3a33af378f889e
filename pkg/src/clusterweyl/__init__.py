"""clusterweyl: mutation of skew-symmetrizable matrices, quasi-Cartan
companions, companion bases of real roots, and machine-verified
reflection-group relations.

Vertices are 1-based in every public argument and JSON document;
internal arrays are 0-based.  All core values are immutable and the
operations are pure functions.
"""

from .companion import (
    AdmissibilityReport,
    Companion,
    NoSolution,
    equal_up_to_sign_changes,
    find_admissible,
    generalized_cartan,
    is_admissible,
    mutate_companion,
    reachability_check,
    sign_change,
)
from .diagram import (
    Cycle,
    Diagram,
    Edge,
    acyclic_ancestor,
    diagram_of,
    directed_cycle_order,
    enumerate_cycles,
    is_acyclic,
    mutate_diagram,
)
from .errors import ClusterWeylError
from .matrix import SkewMatrix, apply_sequence, compute_symmetrizer, mutate_matrix
from .relations import (
    INFINITY,
    PathSystem,
    RelationReport,
    WalkReport,
    affine_dn_check,
    check_weight_ge4_walk,
    cycle_relation,
    dn_pattern_edges,
    edge_order_table,
    enumerate_increasing_paths,
    group_order,
    normalize_signs,
    order_from_x,
    pair_order,
    path_system_relation,
    relation_reports,
    two_infinity_order,
    verify_relation,
)
from .roots import (
    CompanionBasis,
    RootLattice,
    bilinear,
    companion_basis_for,
    coordinates_in_basis,
    gram_pairing,
    is_sign_coherent,
    mutate_basis,
    reflect,
    reflection_matrix,
    simple_basis,
)
from .sqrtring import SqrtNum

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "Companion",
    "CompanionBasis",
    "ClusterWeylError",
    "Cycle",
    "Diagram",
    "Edge",
    "INFINITY",
    "NoSolution",
    "PathSystem",
    "RelationReport",
    "RootLattice",
    "SkewMatrix",
    "SqrtNum",
    "WalkReport",
    "acyclic_ancestor",
    "affine_dn_check",
    "apply_sequence",
    "bilinear",
    "check_weight_ge4_walk",
    "companion_basis_for",
    "compute_symmetrizer",
    "coordinates_in_basis",
    "cycle_relation",
    "diagram_of",
    "directed_cycle_order",
    "dn_pattern_edges",
    "edge_order_table",
    "enumerate_cycles",
    "enumerate_increasing_paths",
    "equal_up_to_sign_changes",
    "find_admissible",
    "generalized_cartan",
    "gram_pairing",
    "group_order",
    "is_acyclic",
    "is_admissible",
    "is_sign_coherent",
    "mutate_basis",
    "mutate_companion",
    "mutate_diagram",
    "mutate_matrix",
    "normalize_signs",
    "order_from_x",
    "pair_order",
    "path_system_relation",
    "reachability_check",
    "reflect",
    "reflection_matrix",
    "relation_reports",
    "sign_change",
    "simple_basis",
    "two_infinity_order",
    "verify_relation",
]
