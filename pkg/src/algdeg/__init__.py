"""algdeg: exact GL(n,q)-module computations on spaces of algebra structure vectors."""

__version__ = "0.1.0"

from .gfield import FieldCtx, FieldElement, make_field, primitive_element, frobenius
from .exactla import Matrix, Subspace, GroupElement
from .structvec import StructureVector, Vector, DualVector

__all__ = [
    "FieldCtx",
    "FieldElement",
    "make_field",
    "primitive_element",
    "frobenius",
    "Matrix",
    "Subspace",
    "GroupElement",
    "StructureVector",
    "Vector",
    "DualVector",
]
