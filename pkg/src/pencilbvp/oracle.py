"""Brute-force check of the structured solver.

The recurrence over ``k0..k0+H`` and the boundary condition are stacked
into one exact linear system in all trajectory unknowns.  Its solution set,
projected onto the window ``k0..kN``, is compared with the structured
classification.  The horizon runs past ``kN`` by the structural index
bound so that nilpotent and zeta coordinates are forced to zero inside
the window, as they are on an unbounded horizon.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .bvp import BvpAnalysis, BvpProblem, Classification, Trajectory, iter_states, solve_unique
from .errors import HorizonError
from .linalg import SolutionKind, SolutionSet, column_space_contains, extend_basis, rank, solve_general
from .matrix import Matrix, Vector, as_vector, vector_add
from .pencil import KroneckerStructure

__all__ = [
    "StackedSystem",
    "OracleClass",
    "Agreement",
    "OracleReport",
    "structural_bound",
    "unroll",
    "oracle_solve",
    "compare",
]


@dataclass(frozen=True)
class StackedSystem:
    """``M y = rhs`` with ``y[(k - k0) m + i] = Y_k[i]`` for ``k = k0..k0+H``."""

    M: Matrix
    rhs: Vector
    horizon: int
    k0: int
    m: int

    def column(self, k: int, i: int) -> int:
        if not (self.k0 <= k <= self.k0 + self.horizon and 0 <= i < self.m):
            raise IndexError(f"(k={k}, i={i}) outside the unrolled window")
        return (k - self.k0) * self.m + i

    def window(self, y: Vector, k_end: int) -> Trajectory:
        m = self.m
        return Trajectory(self.k0, tuple(tuple(y[j * m:(j + 1) * m])
                                         for j in range(k_end - self.k0 + 1)))


def structural_bound(structure: KroneckerStructure) -> int:
    return max(structure.nilpotency_index, max(structure.cmi, default=0),
               max(structure.rmi, default=0), 1)


def unroll(problem: BvpProblem, horizon: int) -> StackedSystem:
    """Stack ``F Y_(k+1) - G Y_k = 0`` for ``k = k0..k0+H-1`` and ``A Y_k0 + B Y_kN = D``."""
    span = problem.kN - problem.k0
    if horizon < span:
        raise HorizonError(f"horizon {horizon} is shorter than kN - k0 = {span}", span)
    F, G = problem.pencil.F, problem.pencil.G
    r, m, n = F.rows, F.cols, problem.n
    ncols = m * (horizon + 1)
    rows = []
    Fl, Gl = F.row_lists(), G.row_lists()
    for j in range(horizon):
        for a in range(r):
            row = [0] * ncols
            for i in range(m):
                row[j * m + i] = -Gl[a][i]
                row[(j + 1) * m + i] = Fl[a][i]
            rows.append(row)
    Al, Bl = problem.A.row_lists(), problem.B.row_lists()
    for a in range(n):
        row = [0] * ncols
        for i in range(m):
            row[i] = Al[a][i]
            row[span * m + i] = row[span * m + i] + Bl[a][i]
        rows.append(row)
    M = Matrix.from_rows(rows, ncols)
    rhs = (0,) * (r * horizon) + tuple(problem.D)
    return StackedSystem(M, as_vector(rhs), horizon, problem.k0, m)


def oracle_solve(stacked: StackedSystem) -> SolutionSet:
    return solve_general(stacked.M, stacked.rhs)


class OracleClass(enum.Enum):
    EMPTY = "Empty"
    UNIQUE = "Unique"
    INFINITE = "Infinite"


class Agreement(enum.Enum):
    MATCH = "Match"
    PAPER_DIVERGENCE = "PaperDivergence"
    MISMATCH = "Mismatch"


@dataclass(frozen=True)
class OracleReport:
    oracle_classification: OracleClass
    structured_classification: Classification
    agreement: Agreement
    horizon: int
    structural_bound: int
    witness: Optional[Trajectory] = None
    reason: str = ""


def _flat(traj: Trajectory) -> tuple:
    return tuple(x for y in traj.values for x in y)


def _structured_class(c: Classification) -> OracleClass:
    if c is Classification.UNIQUE:
        return OracleClass.UNIQUE
    if c is Classification.INFINITE:
        return OracleClass.INFINITE
    return OracleClass.EMPTY


def compare(analysis: BvpAnalysis, horizon: Optional[int] = None) -> OracleReport:
    """Oracle versus structured classification on the window ``k0..kN``."""
    problem = analysis.problem
    resolution = analysis.resolution
    span = problem.kN - problem.k0
    bound = structural_bound(analysis.structure)
    required = span + bound
    if horizon is None:
        horizon = required
    if horizon < required:
        raise HorizonError(f"horizon {horizon} is below the structural minimum {required}", required)

    stacked = unroll(problem, horizon)
    sol = oracle_solve(stacked)
    width = (span + 1) * problem.m
    structured = resolution.classification

    if sol.kind is SolutionKind.EMPTY:
        oracle_class = OracleClass.EMPTY
        o_part, o_dirs = None, Matrix.zeros(width, 0)
    else:
        o_part = sol.particular[:width]
        o_dirs = Matrix.from_columns([v[:width] for v in sol.kernel_basis], width)
        oracle_class = OracleClass.INFINITE if rank(o_dirs) else OracleClass.UNIQUE

    def report(agreement, witness=None, reason=""):
        return OracleReport(oracle_class, structured, agreement, horizon, bound, witness, reason)

    def as_traj(flat):
        return stacked.window(flat, problem.kN)

    if structured is Classification.NO_SOLUTION_SINGULAR_STRUCTURE:
        if oracle_class is OracleClass.EMPTY:
            return report(Agreement.MATCH)
        return report(Agreement.PAPER_DIVERGENCE, as_traj(o_part),
                      "column minimal indices present but the unrolled system is solvable")

    if not structured.has_solutions:
        if oracle_class is OracleClass.EMPTY:
            return report(Agreement.MATCH)
        return report(Agreement.MISMATCH, as_traj(o_part), "oracle trajectory solves the problem")

    finite = analysis.finite
    s_traj = solve_unique(problem, finite, resolution, problem.kN) if structured is Classification.UNIQUE \
        else Trajectory(problem.k0, tuple(_states(finite, resolution.family.particular, problem)))
    s_part = _flat(s_traj)
    if oracle_class is OracleClass.EMPTY:
        return report(Agreement.MISMATCH, s_traj, "structured trajectory rejected by the oracle")

    # affine sets agree iff each particular lies in the other and the direction spaces coincide
    s_dirs = Matrix.from_columns(
        [_flat(Trajectory(problem.k0, tuple(_states(finite, v, problem))))
         for v in resolution.family.kernel_basis], width) if resolution.family else Matrix.zeros(width, 0)
    diff = tuple(a - b for a, b in zip(s_part, o_part))
    if not column_space_contains(o_dirs, diff):
        return report(Agreement.MISMATCH, s_traj, "structured trajectory rejected by the oracle")
    extra = extend_basis(s_dirs, o_dirs)
    if extra.cols:
        witness = as_traj(vector_add(o_part, extra.column(0)))
        return report(Agreement.MISMATCH, witness, "oracle solution missing from the structured family")
    missing = extend_basis(o_dirs, s_dirs)
    if missing.cols:
        witness = as_traj(vector_add(s_part, missing.column(0)))
        return report(Agreement.MISMATCH, witness, "structured family member rejected by the oracle")
    if oracle_class is not _structured_class(structured):
        return report(Agreement.MISMATCH, s_traj, "solution counts differ")
    return report(Agreement.MATCH)


def _states(finite, z, problem):
    return iter_states(finite, z, problem.k0, problem.kN)
