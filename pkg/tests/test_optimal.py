import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pencilbvp.bvp import BvpProblem, Classification, analyze
from pencilbvp.errors import DimensionError, PreconditionError, UsageError
from pencilbvp.linalg import SolutionKind, norm2, pseudoinverse, rank, solve_general
from pencilbvp.matrix import Matrix, vector_sub
from pencilbvp.optimal import (
    DEFAULT_THETA,
    OptimalMethod,
    least_squares,
    min_norm,
    optimal_bvp,
    pinv_solution,
    regularized,
    residual_report,
    spectral_radius_estimate,
)
from pencilbvp.pencil import MatrixPencil

from conftest import mat
import derived_oracles as ref
from generators import random_matrix, random_matrix_of_rank

HALF = Fraction(1, 2)


def test_least_squares_examples():
    sol = least_squares(mat([[1], [1]]), (0, 2))
    assert sol.state == (1,) and sol.residual_norm_squared == 2
    sol = least_squares(mat([[1, 0], [0, 1], [1, 1]]), (1, 1, 1))
    assert sol.state == (Fraction(2, 3), Fraction(2, 3))
    sol = least_squares(mat([[1, 0], [0, 1], [1, 1]]), (1, 2, 3))
    assert sol.state == (1, 2) and sol.residual_norm_squared == 0


def test_least_squares_rejects_rank_deficient():
    with pytest.raises(PreconditionError, match="regularized"):
        least_squares(mat(ref.K3), ref.EX3_D)


def test_regularized_examples():
    assert regularized(Matrix.zeros(1, 1), (5,), E=mat([[1]])).state == (0,)
    theta = Fraction(1, 10)
    sol = regularized(mat([[1], [1]]), (0, 2), E=mat([[theta]]), theta=theta)
    assert sol.state == (Fraction(200, 201),)
    assert sol.regularizer[1] == theta


def test_regularized_default_and_singular():
    sol = regularized(mat(ref.K3), ref.EX3_D)
    E, theta = sol.regularizer
    assert theta == DEFAULT_THETA and E == Matrix.identity(2) * DEFAULT_THETA
    with pytest.raises(PreconditionError, match="different regularizer"):
        regularized(mat(ref.K3), ref.EX3_D, E=Matrix.zeros(2, 2))
    with pytest.raises(DimensionError):
        regularized(mat(ref.K3), ref.EX3_D, E=Matrix.identity(3))


def test_regularized_approaches_pseudoinverse_on_example3():
    K, D = mat(ref.K3), ref.EX3_D
    target = (HALF, HALF)
    dists = []
    for theta in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
        sol = regularized(K, D, theta=theta)
        dists.append(norm2(vector_sub(sol.state, target)))
    assert dists[0] > dists[1] > dists[2]


def test_skewed_regularizer_limit_on_example3():
    # E = [[0, 0], [1, theta]] drives the state toward (0, 1), not (1, 0)
    theta = Fraction(1, 10 ** 6)
    sol = regularized(mat(ref.K3), ref.EX3_D, E=mat([[0, 0], [1, theta]]), theta=theta)
    assert norm2(vector_sub(sol.state, (0, 1))) < Fraction(1, 10 ** 6)


def test_pinv_examples():
    K = mat([[2, 1], [1, 1]])
    assert pinv_solution(K, (3, 2)).state == (1, 1)
    assert pinv_solution(mat(ref.K3), ref.EX3_D).state == (HALF, HALF)
    assert pinv_solution(Matrix.zeros(2, 2), (1, 1)).state == (0, 0)


def test_min_norm_examples():
    assert min_norm(mat([[1, 1]]), (2,)).state == (1, 1)
    assert min_norm(mat([[1, 0, 0]]), (3,)).state == (3, 0, 0)
    assert min_norm(mat([[1, 2]]), (5,)).state == (1, 2)
    with pytest.raises(PreconditionError, match="pinv"):
        min_norm(mat(ref.K3), ref.EX3_D)
    with pytest.raises(PreconditionError):
        min_norm(mat([[1, 1, 0], [2, 2, 0]]), (1, 2))


def test_residual_report_examples():
    K, D = mat([[1], [1]]), (0, 2)
    assert residual_report(K, D, (1,)).norm_squared == 2
    assert residual_report(K, D, (0,)).norm_squared == 4
    assert residual_report(K, (3, 3), (3,)).norm_squared == 0
    assert residual_report(K, D, (1,)).perturbed_boundary == (1, 1)
    with pytest.raises(DimensionError):
        residual_report(K, D, (1, 2))


def test_spectral_radius_estimate():
    assert spectral_radius_estimate(Matrix.diag([1, 2])) == pytest.approx(2.0)
    assert spectral_radius_estimate(Matrix.zeros(0, 0)) == 0.0


def test_optimal_bvp_example3(ex3_problem):
    a = analyze(ex3_problem)
    sol = optimal_bvp(ex3_problem, a.finite, a.resolution, OptimalMethod.REGULARIZED)
    K, D = a.resolution.boundary.K, ex3_problem.D
    E = sol.regularizer[0]
    assert (K.H @ K + E.H @ E) @ sol.state == K.H @ D
    assert sol.spectral_warning
    auto = optimal_bvp(ex3_problem, a.finite, a.resolution)
    assert auto.method is OptimalMethod.PSEUDOINVERSE and auto.state == (HALF, HALF)
    traj = auto.trajectory(3)
    assert traj.at(3) == a.finite.Qp @ (HALF, 8 * HALF)


def test_optimal_bvp_dispatch_least_squares():
    pen = MatrixPencil(Matrix.identity(1), mat([[Fraction(1, 2)]]))
    prob = BvpProblem(pen, mat([[1], [1]]), mat([[0], [0]]), (0, 2), 0, 1)
    a = analyze(prob)
    assert a.resolution.classification is Classification.NO_SOLUTION_BOUNDARY
    sol = optimal_bvp(prob, a.finite, a.resolution)
    assert sol.method is OptimalMethod.LEAST_SQUARES
    assert sol.state == least_squares(a.resolution.boundary, prob.D).state
    assert not sol.spectral_warning


def test_optimal_bvp_rejects_unique_and_cmi(ex2_problem, ex1_pencil):
    a = analyze(ex2_problem)
    with pytest.raises(UsageError):
        optimal_bvp(ex2_problem, a.finite, a.resolution)
    prob = BvpProblem(ex1_pencil, Matrix.identity(7), Matrix.zeros(7, 7), (0,) * 7, 0, 2)
    a = analyze(prob)
    with pytest.raises(PreconditionError):
        optimal_bvp(prob, a.finite, a.resolution)


# ---------------------------------------------------------------------------
# identity suites on random instances of every rank profile


def _instance(seed, tall=None):
    rng = random.Random(seed)
    n, p = rng.randint(1, 5), rng.randint(1, 5)
    if tall is True and n < p:
        n, p = p, n
    if tall is False and n > p:
        n, p = p, n
    r = rng.randint(0, min(n, p))
    K = random_matrix_of_rank(rng, n, p, r)
    D = tuple(rng.randint(-4, 4) for _ in range(n))
    return rng, K, D


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_normal_equations_and_competitors(seed):
    rng, K, D = _instance(seed, tall=True)
    if rank(K) != K.cols:
        with pytest.raises(PreconditionError):
            least_squares(K, D)
        return
    sol = least_squares(K, D)
    assert K.H @ vector_sub(D, K @ sol.state) == (0,) * K.cols
    for _ in range(5):
        z = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(K.cols))
        assert sol.residual_norm_squared <= residual_report(K, D, z).norm_squared


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_stationarity(seed):
    rng, K, D = _instance(seed)
    E = random_matrix(rng, K.cols, K.cols)
    if rank(K.H @ K + E.H @ E) < K.cols:
        E = Matrix.identity(K.cols)
    sol = regularized(K, D, E=E)
    assert (K.H @ K + E.H @ E) @ sol.state == K.H @ D


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pinv_is_minimum_norm_solution(seed):
    rng, K, _ = _instance(seed)
    x = tuple(rng.randint(-3, 3) for _ in range(K.cols))
    D = K @ x
    sol = pinv_solution(K, D)
    assert K @ sol.state == D
    family = solve_general(K, D)
    assert family.kind is not SolutionKind.EMPTY
    for _ in range(5):
        c = [rng.randint(-3, 3) for _ in family.kernel_basis]
        assert norm2(sol.state) <= norm2(family.member(c))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_min_norm_row_space_membership(seed):
    rng, K, D = _instance(seed, tall=False)
    if K.rows >= K.cols or rank(K) != K.rows:
        with pytest.raises(PreconditionError):
            min_norm(K, D)
        return
    sol = min_norm(K, D)
    assert K @ sol.state == D
    assert solve_general(K.H, sol.state).kind is not SolutionKind.EMPTY
    assert sol.state == pseudoinverse(K) @ D


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_regularized_convergence(seed):
    _, K, D = _instance(seed)
    target = pinv_solution(K, D).state
    d = [norm2(vector_sub(regularized(K, D, theta=Fraction(1, t)).state, target))
         for t in (10, 100, 1000)]
    if d[0] == 0:
        assert d == [0, 0, 0]
    else:
        assert d[0] > d[1] > d[2]
