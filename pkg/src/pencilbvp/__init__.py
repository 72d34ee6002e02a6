"""Exact boundary value problems for singular linear discrete-time systems.

``F Y(k+1) = G Y(k)`` with ``A Y(k0) + B Y(kN) = D`` is analysed through the
Kronecker structure of the pencil ``sF - G``, entirely in exact
(Gaussian-)rational arithmetic.
"""

from .bvp import (
    BvpProblem,
    BvpResolution,
    Classification,
    Trajectory,
    analyze,
    boundary_operator,
    classify_bvp,
    decompose,
    sample_family,
    solve_unique,
    verify_trajectory,
)
from .errors import (
    ConsistencyError,
    DimensionError,
    HorizonError,
    ParseError,
    PencilBvpError,
    PreconditionError,
    UsageError,
)
from .matrix import Matrix
from .pencil import (
    MatrixPencil,
    assemble_canonical,
    classify_pencil,
    finite_part,
    kronecker_structure,
    normal_rank,
    verify_equivalence,
)
from .scalar import GaussianRational, format_scalar, parse_scalar

__all__ = [
    "Matrix",
    "GaussianRational",
    "parse_scalar",
    "format_scalar",
    "MatrixPencil",
    "classify_pencil",
    "normal_rank",
    "kronecker_structure",
    "finite_part",
    "assemble_canonical",
    "verify_equivalence",
    "BvpProblem",
    "BvpResolution",
    "Classification",
    "Trajectory",
    "analyze",
    "decompose",
    "boundary_operator",
    "classify_bvp",
    "solve_unique",
    "sample_family",
    "verify_trajectory",
    "PencilBvpError",
    "DimensionError",
    "PreconditionError",
    "UsageError",
    "ConsistencyError",
    "HorizonError",
    "ParseError",
]
