"""Boundary value problems ``F Y(k+1) = G Y(k)``, ``A Y(k0) + B Y(kN) = D``.

With ``Y = Q Z`` the system splits along the canonical blocks of the
pencil.  Only the finite block carries dynamics (``Z^p_k = W^(k-k0) Z^p_k0``);
nilpotent and zeta coordinates vanish; eps and zero-block coordinates are
free.  When the pencil has no column minimal indices the whole problem
reduces to the exact linear system ``K Z = D`` with
``K = A Qp + B Qp W^(kN-k0)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import DimensionError, UsageError
from .linalg import SolutionSet, column_space_contains, matrix_power, rank, solve_general
from .matrix import Matrix, Vector, as_vector, vector_add, vector_sub
from .pencil import FiniteRegularPart, KroneckerStructure, MatrixPencil, finite_part, kronecker_structure

__all__ = [
    "BvpProblem",
    "SubsystemKind",
    "Subsystem",
    "SubsystemDecomposition",
    "BoundaryOperator",
    "Classification",
    "Diagnostics",
    "FreeComponents",
    "BvpResolution",
    "Trajectory",
    "BvpAnalysis",
    "decompose",
    "boundary_operator",
    "classify_bvp",
    "solve_unique",
    "sample_family",
    "iter_states",
    "verify_trajectory",
    "analyze",
]


@dataclass(frozen=True)
class BvpProblem:
    pencil: MatrixPencil
    A: Matrix
    B: Matrix
    D: Vector
    k0: int
    kN: int

    def __post_init__(self):
        object.__setattr__(self, "D", as_vector(self.D))
        m = self.pencil.m
        if self.A.shape != self.B.shape:
            raise DimensionError(f"A is {self.A.shape} but B is {self.B.shape}")
        if self.A.cols != m:
            raise DimensionError(f"A and B need {m} columns, got {self.A.cols}")
        if len(self.D) != self.A.rows:
            raise DimensionError(f"D has length {len(self.D)}, expected {self.A.rows}")
        if self.kN <= self.k0:
            raise DimensionError(f"kN ({self.kN}) must exceed k0 ({self.k0})")

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.pencil.m


# ---------------------------------------------------------------------------
# decomposition


class SubsystemKind(enum.Enum):
    REGULAR_FINITE = "RegularFinite"
    NILPOTENT = "Nilpotent"
    COLUMN_MINIMAL = "ColumnMinimal"
    ROW_MINIMAL = "RowMinimal"
    ZERO_BLOCK = "ZeroBlock"


_RULES = {
    SubsystemKind.REGULAR_FINITE: "Z_k = W^(k-k0) Z_k0",
    SubsystemKind.NILPOTENT: "Z_k = 0",
    SubsystemKind.COLUMN_MINIMAL: "arbitrary",
    SubsystemKind.ROW_MINIMAL: "Z_k = 0",
    SubsystemKind.ZERO_BLOCK: "arbitrary",
}


@dataclass(frozen=True)
class Subsystem:
    kind: SubsystemKind
    state_range: range
    rule: str


@dataclass(frozen=True)
class SubsystemDecomposition:
    """Blocks of ``Z`` (with ``Y = Q Z``) and the rule each one obeys."""

    blocks: tuple

    def of_kind(self, kind: SubsystemKind) -> Optional[Subsystem]:
        for b in self.blocks:
            if b.kind is kind:
                return b
        return None


def decompose(pencil: MatrixPencil, structure: KroneckerStructure) -> SubsystemDecomposition:
    if structure.cols != pencil.m or structure.rows != pencil.r:
        raise DimensionError("structure does not describe this pencil")
    part = structure.partition
    kinds = (
        ("p", SubsystemKind.REGULAR_FINITE),
        ("q", SubsystemKind.NILPOTENT),
        ("epsilon", SubsystemKind.COLUMN_MINIMAL),
        ("zeta", SubsystemKind.ROW_MINIMAL),
        ("g", SubsystemKind.ZERO_BLOCK),
    )
    blocks = []
    for key, kind in kinds:
        rng = part[key]
        present = len(rng) > 0
        if kind is SubsystemKind.ROW_MINIMAL:
            present = any(structure.rmi)
        if kind is SubsystemKind.ZERO_BLOCK:
            present = structure.g > 0 or structure.h > 0
        if present:
            blocks.append(Subsystem(kind, rng, _RULES[kind]))
    return SubsystemDecomposition(tuple(blocks))


# ---------------------------------------------------------------------------
# boundary operator and classification


@dataclass(frozen=True)
class BoundaryOperator:
    """``K = A Qp + B Qp W^exponent`` with ``exponent = kN - k0``."""

    K: Matrix
    exponent: int


def boundary_operator(problem: BvpProblem, finite: FiniteRegularPart) -> BoundaryOperator:
    if finite.Qp.rows != problem.m:
        raise DimensionError(f"Qp has {finite.Qp.rows} rows, expected {problem.m}")
    e = problem.kN - problem.k0
    K = problem.A @ finite.Qp + problem.B @ finite.Qp @ matrix_power(finite.W, e)
    return BoundaryOperator(K, e)


class Classification(enum.Enum):
    NO_SOLUTION_SINGULAR_STRUCTURE = "NoSolutionSingularStructure"
    NO_SOLUTION_BOUNDARY = "NoSolutionBoundary"
    UNIQUE = "Unique"
    INFINITE = "Infinite"

    @property
    def has_solutions(self) -> bool:
        return self in (Classification.UNIQUE, Classification.INFINITE)


@dataclass(frozen=True)
class Diagnostics:
    """Which existence/uniqueness test decided the classification.

    ``fired`` is one of ``column-minimal-indices``, ``colspan``,
    ``full-rank`` or ``rank-deficient``.  ``square_full_rank`` marks the
    case ``n = p = rank K``, in which ``D`` always lies in the column space.
    """

    fired: str
    detail: str
    rank_K: int
    p: int
    n: int
    square_full_rank: bool = False


@dataclass(frozen=True)
class FreeComponents:
    """Coordinates of ``Z`` left arbitrary by the eps-blocks and the zero block."""

    epsilon_columns: range
    zero_columns: range
    column_minimal_indices: tuple

    @property
    def count(self) -> int:
        return len(self.epsilon_columns) + len(self.zero_columns)


@dataclass(frozen=True)
class BvpResolution:
    classification: Classification
    boundary: BoundaryOperator
    diagnostics: Diagnostics
    unique_state: Optional[Vector] = None
    family: Optional[SolutionSet] = None
    free_components: Optional[FreeComponents] = None


def classify_bvp(problem: BvpProblem, structure: KroneckerStructure,
                 boundary: BoundaryOperator) -> BvpResolution:
    K, D = boundary.K, problem.D
    p, n = structure.p, problem.n
    if K.shape != (n, p):
        raise DimensionError(f"K is {K.shape}, expected {(n, p)}")
    rk = rank(K)
    if structure.cmi:
        part = structure.partition
        free = FreeComponents(part["epsilon"], part["g"], structure.cmi)
        diag = Diagnostics("column-minimal-indices",
                           f"pencil has {len(structure.cmi)} column minimal indices", rk, p, n)
        return BvpResolution(Classification.NO_SOLUTION_SINGULAR_STRUCTURE, boundary, diag,
                             free_components=free)
    square = n == p and rk == p
    if not column_space_contains(K, D):
        diag = Diagnostics("colspan", "D is not in the column space of K", rk, p, n, square)
        return BvpResolution(Classification.NO_SOLUTION_BOUNDARY, boundary, diag)
    sol = solve_general(K, D)
    if rk == p:
        diag = Diagnostics("full-rank", f"rank K = p = {p}", rk, p, n, square)
        return BvpResolution(Classification.UNIQUE, boundary, diag, unique_state=sol.particular,
                             family=sol)
    diag = Diagnostics("rank-deficient", f"rank K = {rk} < p = {p}", rk, p, n, square)
    return BvpResolution(Classification.INFINITE, boundary, diag, family=sol)


# ---------------------------------------------------------------------------
# trajectories


@dataclass(frozen=True)
class Trajectory:
    """States ``Y_k0, ..., Y_kEnd``."""

    k0: int
    values: tuple = field(default_factory=tuple)

    @property
    def k_end(self) -> int:
        return self.k0 + len(self.values) - 1

    def at(self, k: int) -> Vector:
        if not self.k0 <= k <= self.k_end:
            raise IndexError(f"k = {k} outside {self.k0}..{self.k_end}")
        return self.values[k - self.k0]

    def __len__(self):
        return len(self.values)


def iter_states(finite: FiniteRegularPart, z0: Sequence, k0: int, k_end: int) -> Iterator[Vector]:
    """Yield ``Qp W^(k-k0) z0`` for ``k = k0..k_end`` without forming powers."""
    z = as_vector(z0)
    if len(z) != finite.p:
        raise DimensionError(f"state has length {len(z)}, expected {finite.p}")
    for k in range(k0, k_end + 1):
        yield finite.Qp @ z
        if k < k_end:
            z = finite.W @ z


def _trajectory(finite, z0, k0, k_end):
    if k_end < k0:
        raise DimensionError(f"kEnd ({k_end}) precedes k0 ({k0})")
    return Trajectory(k0, tuple(iter_states(finite, z0, k0, k_end)))


def solve_unique(problem: BvpProblem, finite: FiniteRegularPart, resolution: BvpResolution,
                 k_end: int) -> Trajectory:
    if resolution.classification is not Classification.UNIQUE:
        raise UsageError(f"solve_unique needs a Unique problem, got {resolution.classification.value}")
    return _trajectory(finite, resolution.unique_state, problem.k0, k_end)


def sample_family(problem: BvpProblem, finite: FiniteRegularPart, resolution: BvpResolution,
                  parameter_values: Sequence[Sequence], k_end: int) -> list:
    """One trajectory per coefficient vector, from ``particular + sum c_i kernel_i``."""
    if resolution.classification is not Classification.INFINITE:
        raise UsageError(f"sample_family needs an Infinite problem, got {resolution.classification.value}")
    return [_trajectory(finite, resolution.family.member(c), problem.k0, k_end)
            for c in parameter_values]


def verify_trajectory(problem: BvpProblem, trajectory: Trajectory) -> bool:
    """Exact substitution into the recurrence and the boundary condition."""
    if trajectory.k0 > problem.k0 or trajectory.k_end < problem.kN:
        raise DimensionError(
            f"trajectory covers {trajectory.k0}..{trajectory.k_end}, need {problem.k0}..{problem.kN}"
        )
    F, G = problem.pencil.F, problem.pencil.G
    vals = trajectory.values
    for i in range(len(vals) - 1):
        if len(vals[i]) != problem.m:
            raise DimensionError(f"state at index {i} has length {len(vals[i])}")
        if vector_sub(F @ vals[i + 1], G @ vals[i]) != (0,) * problem.pencil.r:
            return False
    lhs = vector_add(problem.A @ trajectory.at(problem.k0), problem.B @ trajectory.at(problem.kN))
    return lhs == problem.D


# ---------------------------------------------------------------------------
# one-call pipeline


@dataclass(frozen=True)
class BvpAnalysis:
    problem: BvpProblem
    structure: KroneckerStructure
    finite: FiniteRegularPart
    decomposition: SubsystemDecomposition
    resolution: BvpResolution


def analyze(problem: BvpProblem, structure: KroneckerStructure = None) -> BvpAnalysis:
    """Structure, finite part, decomposition and classification of a problem."""
    if structure is None:
        structure = kronecker_structure(problem.pencil)
    finite = finite_part(structure, problem.pencil)
    boundary = boundary_operator(problem, finite)
    resolution = classify_bvp(problem, structure, boundary)
    return BvpAnalysis(problem, structure, finite, decompose(problem.pencil, structure), resolution)
