"""Optimal initial states for inconsistent or underdetermined boundary systems.

Every routine returns an exact state ``C`` for ``K C ~ D`` together with the
exact squared residual.  Optimality is certified algebraically (normal
equations, stationarity, row-space membership), never numerically.  The
only floating-point computation is the advisory spectral radius of ``W``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .bvp import BvpProblem, BvpResolution, BoundaryOperator, Classification, Trajectory, iter_states
from .errors import DimensionError, PreconditionError, UsageError
from .linalg import inverse, is_invertible, norm2, pseudoinverse, rank
from .matrix import Matrix, Vector, as_vector, vector_sub
from .pencil import FiniteRegularPart

__all__ = [
    "OptimalMethod",
    "OptimalSolution",
    "ResidualReport",
    "DEFAULT_THETA",
    "least_squares",
    "regularized",
    "pinv_solution",
    "min_norm",
    "residual_report",
    "spectral_radius_estimate",
    "optimal_bvp",
]

DEFAULT_THETA = Fraction(1, 1000)


class OptimalMethod(enum.Enum):
    LEAST_SQUARES = "LeastSquares"
    REGULARIZED = "Regularized"
    PSEUDOINVERSE = "Pseudoinverse"
    MINIMUM_NORM = "MinimumNorm"


@dataclass(frozen=True)
class ResidualReport:
    norm_squared: Fraction
    perturbed_boundary: Vector


@dataclass(frozen=True)
class OptimalSolution:
    """State ``C`` with residual data; ``trajectory`` needs the finite part attached."""

    method: OptimalMethod
    state: Vector
    residual_norm_squared: Fraction
    perturbed_boundary: Vector
    regularizer: Optional[tuple] = None
    spectral_warning: bool = False
    finite: Optional[FiniteRegularPart] = None
    k0: int = 0

    def trajectory(self, k_end: int) -> Trajectory:
        if self.finite is None:
            raise UsageError("no finite part attached; use optimal_bvp to build trajectories")
        return Trajectory(self.k0, tuple(iter_states(self.finite, self.state, self.k0, k_end)))


def _k(K: Union[BoundaryOperator, Matrix]) -> Matrix:
    return K.K if isinstance(K, BoundaryOperator) else K


def residual_report(K, D: Sequence, C: Sequence) -> ResidualReport:
    """``||D - K C||^2`` exactly, plus ``K C``."""
    K, D, C = _k(K), as_vector(D), as_vector(C)
    if len(D) != K.rows or len(C) != K.cols:
        raise DimensionError(f"K is {K.shape}, D has length {len(D)}, C has length {len(C)}")
    kc = K @ C
    return ResidualReport(norm2(vector_sub(D, kc)), kc)


def _result(method, K, D, C, **extra):
    rep = residual_report(K, D, C)
    return OptimalSolution(method, C, rep.norm_squared, rep.perturbed_boundary, **extra)


def _check_rhs(K, D):
    if len(D) != K.rows:
        raise DimensionError(f"D has length {len(D)}, expected {K.rows}")


def least_squares(K, D: Sequence) -> OptimalSolution:
    """``C = (K* K)^-1 K* D``; needs full column rank."""
    K, D = _k(K), as_vector(D)
    _check_rhs(K, D)
    if rank(K) != K.cols:
        raise PreconditionError(
            f"least squares needs full column rank (rank {rank(K)} < {K.cols}); use the regularized method"
        )
    Kh = K.H
    return _result(OptimalMethod.LEAST_SQUARES, K, D, inverse(Kh @ K) @ (Kh @ D))


def regularized(K, D: Sequence, E: Matrix = None, theta=None) -> OptimalSolution:
    """``C = (K* K + E* E)^-1 K* D``; ``E`` defaults to ``theta I``."""
    K, D = _k(K), as_vector(D)
    _check_rhs(K, D)
    p = K.cols
    if E is None:
        theta = DEFAULT_THETA if theta is None else Fraction(theta)
        E = Matrix.identity(p).scaled(theta)
    elif E.cols != p:
        raise DimensionError(f"E needs {p} columns, got {E.cols}")
    Kh = K.H
    normal = Kh @ K + E.H @ E
    if not is_invertible(normal):
        raise PreconditionError("K*K + E*E is singular; choose a different regularizer E")
    C = inverse(normal) @ (Kh @ D)
    return _result(OptimalMethod.REGULARIZED, K, D, C, regularizer=(E, theta))


def pinv_solution(K, D: Sequence) -> OptimalSolution:
    """``C = K+ D`` (minimum-norm least-squares state)."""
    K, D = _k(K), as_vector(D)
    _check_rhs(K, D)
    return _result(OptimalMethod.PSEUDOINVERSE, K, D, pseudoinverse(K) @ D)


def min_norm(K, D: Sequence) -> OptimalSolution:
    """``C = K* (K K*)^-1 D`` for a wide ``K`` of full row rank."""
    K, D = _k(K), as_vector(D)
    _check_rhs(K, D)
    n, p = K.shape
    if n >= p or rank(K) != n:
        raise PreconditionError(
            f"minimum norm needs a wide full-row-rank K (K is {n}x{p}, rank {rank(K)}); use pinv"
        )
    Kh = K.H
    return _result(OptimalMethod.MINIMUM_NORM, K, D, Kh @ (inverse(K @ Kh) @ D))


def spectral_radius_estimate(W: Matrix) -> float:
    """Floating-point spectral radius, for warnings only."""
    if W.rows == 0:
        return 0.0
    arr = np.array([[complex(float(x.real), float(x.imag)) for x in row] for row in W.row_lists()])
    return float(max(abs(np.linalg.eigvals(arr))))


_METHODS = {
    OptimalMethod.LEAST_SQUARES: least_squares,
    OptimalMethod.PSEUDOINVERSE: pinv_solution,
    OptimalMethod.MINIMUM_NORM: min_norm,
}


def optimal_bvp(problem: BvpProblem, finite: FiniteRegularPart, resolution: BvpResolution,
                method: Optional[OptimalMethod] = None, E: Matrix = None, theta=None) -> OptimalSolution:
    """Optimal state for a problem classified NoSolutionBoundary or Infinite.

    Without an explicit method: full-column-rank inconsistent problems use
    least squares, rank-deficient ones the regularized method, and
    underdetermined consistent problems the pseudoinverse.
    """
    cls = resolution.classification
    if cls is Classification.NO_SOLUTION_SINGULAR_STRUCTURE:
        raise PreconditionError("optimal solutions assume a pencil without column minimal indices")
    if cls is Classification.UNIQUE:
        raise UsageError("the problem has a unique solution; there is nothing to optimize")
    K, D = resolution.boundary.K, problem.D
    if method is None:
        if cls is Classification.INFINITE:
            method = OptimalMethod.PSEUDOINVERSE
        elif rank(K) == K.cols:
            method = OptimalMethod.LEAST_SQUARES
        else:
            method = OptimalMethod.REGULARIZED
    if method is OptimalMethod.REGULARIZED:
        sol = regularized(K, D, E, theta)
    else:
        sol = _METHODS[method](K, D)
    warn = spectral_radius_estimate(finite.W) >= 1.0
    return OptimalSolution(sol.method, sol.state, sol.residual_norm_squared, sol.perturbed_boundary,
                           sol.regularizer, warn, finite, problem.k0)
