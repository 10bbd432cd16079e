"""Exact construction and certification of horizontal subspaces of H-type algebras."""

__version__ = "0.1.0"

from .clifford import HTypeSpec, assemble, base_generators, expected_dim, periodic_generators, verify_clifford
from .htype import HTypeAlgebra, bracket, build, j_action, verify_htype
from .horizontal import allowed_dims, centralizer, extend_horizontal, is_horizontal, is_maximal_horizontal
from .lagrangian import certify_lagrangian, construct_lagrangian, lag_exists, orbit_type, trace_obstruction

__all__ = [
    "HTypeSpec", "assemble", "base_generators", "expected_dim", "periodic_generators", "verify_clifford",
    "HTypeAlgebra", "bracket", "build", "j_action", "verify_htype",
    "allowed_dims", "centralizer", "extend_horizontal", "is_horizontal", "is_maximal_horizontal",
    "certify_lagrangian", "construct_lagrangian", "lag_exists", "orbit_type", "trace_obstruction",
]
