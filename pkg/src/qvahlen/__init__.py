"""Exact arithmetic for quaternion algebras with orthogonal involutions,
their orders, and the 2x2 matrix groups those orders cut out."""

from .hilbert import Place, hilbert_symbol
from .lattices import IntegerLattice, lattice_canonicalize, lattice_index
from .orders import (
    OrderError,
    OrderLattice,
    check_order,
    conjugate_order,
    invariant_report,
    is_maximal_sharp_order,
    is_sharp_stable,
    maximality_certificate,
    sharp_superorder_scan,
    trace_ideal_plus_part,
    unit_group,
)
from .quat import (
    Involution,
    Quaternion,
    QuaternionAlgebra,
    algebra_discriminant,
    algebras_isomorphic,
    eigenspaces,
    involution_with_minus_line,
    q_h_signature,
    ramified_places,
)
from .scalars import QuadExt, squarefree_kernel
from .groups import (
    ConjugacyCertificate,
    MatrixRingLattice,
    fixes_base_group,
    generate_matrix_ring,
    is_integral_member,
    local_invariant_report,
    plus_part_conjugation_constraint,
    verify_conjugacy_certificate,
)
from .vahlen import (
    HermitianPoint,
    MembershipError,
    VahlenMatrix,
    build_diag_conjugator,
    decompose,
    gen_lower,
    gen_upper,
    spinor_matrix,
    word_product,
    write_unit_as_one_plus_xy,
)

__version__ = "0.1.0"

__all__ = [
    "ConjugacyCertificate",
    "HermitianPoint",
    "IntegerLattice",
    "Involution",
    "MatrixRingLattice",
    "MembershipError",
    "OrderError",
    "OrderLattice",
    "Place",
    "QuadExt",
    "Quaternion",
    "QuaternionAlgebra",
    "VahlenMatrix",
    "algebra_discriminant",
    "algebras_isomorphic",
    "build_diag_conjugator",
    "check_order",
    "conjugate_order",
    "decompose",
    "eigenspaces",
    "fixes_base_group",
    "gen_lower",
    "gen_upper",
    "generate_matrix_ring",
    "hilbert_symbol",
    "invariant_report",
    "involution_with_minus_line",
    "is_integral_member",
    "is_maximal_sharp_order",
    "is_sharp_stable",
    "lattice_canonicalize",
    "lattice_index",
    "local_invariant_report",
    "maximality_certificate",
    "plus_part_conjugation_constraint",
    "q_h_signature",
    "ramified_places",
    "sharp_superorder_scan",
    "spinor_matrix",
    "squarefree_kernel",
    "trace_ideal_plus_part",
    "unit_group",
    "verify_conjugacy_certificate",
    "word_product",
    "write_unit_as_one_plus_xy",
]
