"""Kronecker structure of matrix pencils ``sF - G``."""

from .canonical import (
    assemble_canonical,
    companion_matrix,
    finite_block,
    jordan_block,
    nilpotent_block,
    verify_equivalence,
)
from .reduction import classify_pencil, finite_part, kronecker_structure, normal_rank
from .structure import (
    BlockKind,
    CanonicalBlock,
    CanonicalPencil,
    ElementaryDivisor,
    FiniteRegularPart,
    KroneckerStructure,
    MatrixPencil,
    PencilClass,
)

__all__ = [
    "MatrixPencil",
    "PencilClass",
    "ElementaryDivisor",
    "BlockKind",
    "CanonicalBlock",
    "CanonicalPencil",
    "KroneckerStructure",
    "FiniteRegularPart",
    "classify_pencil",
    "normal_rank",
    "kronecker_structure",
    "finite_part",
    "assemble_canonical",
    "verify_equivalence",
    "jordan_block",
    "nilpotent_block",
    "companion_matrix",
    "finite_block",
]
