"""Seeded random instances shared by the property and acceptance suites."""

from __future__ import annotations

import random
from fractions import Fraction

from pencilbvp.bvp import BvpProblem
from pencilbvp.linalg import matrix_power, rank
from pencilbvp.matrix import Matrix
from pencilbvp.pencil import (
    ElementaryDivisor,
    KroneckerStructure,
    MatrixPencil,
    assemble_canonical,
    finite_part,
    kronecker_structure,
)


def small_rational(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> Matrix:
    return Matrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols)


def random_invertible(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> Matrix:
    while True:
        m = random_matrix(rng, n, n, lo, hi)
        if rank(m) == n:
            return m


def random_matrix_of_rank(rng: random.Random, rows: int, cols: int, r: int) -> Matrix:
    """Product of random ``rows x r`` and ``r x cols`` factors, retried until the rank is exactly ``r``."""
    while True:
        m = random_matrix(rng, rows, r) @ random_matrix(rng, r, cols)
        if r == 0 or rank(m) == r:
            return m if r else Matrix.zeros(rows, cols)


def _split(rng, total, max_part):
    parts = []
    while total:
        k = rng.randint(1, min(total, max_part))
        parts.append(k)
        total -= k
    return parts


def random_structure(rng: random.Random, max_p=4, max_q=3, max_index=3, max_count=2) -> KroneckerStructure:
    divisors = []
    eigenvalues = [small_rational(rng) for _ in range(2)]
    for size in _split(rng, rng.randint(0, max_p), max_p):
        lam = rng.choice(eigenvalues)
        divisors.append(ElementaryDivisor((Fraction(1), -lam), size))
    infinite = _split(rng, rng.randint(0, max_q), max_q)
    cmi = [rng.randint(0, max_index) for _ in range(rng.randint(0, max_count))]
    rmi = [rng.randint(0, max_index) for _ in range(rng.randint(0, max_count))]
    return KroneckerStructure(tuple(divisors), tuple(infinite), tuple(cmi), tuple(rmi))


def scrambled_pencil(rng: random.Random, structure: KroneckerStructure) -> MatrixPencil:
    canonical = assemble_canonical(structure)
    P = random_invertible(rng, canonical.F.rows)
    Q = random_invertible(rng, canonical.F.cols)
    return MatrixPencil(P @ canonical.F @ Q, P @ canonical.G @ Q)


def random_zero_cmi_problem(rng: random.Random, max_m: int = 5, max_horizon: int = 8):
    """A BVP whose pencil has no column minimal indices, with ``kN - k0 + S <= max_horizon``.

    Half of the instances take ``D`` from a genuine trajectory, so every
    classification occurs.
    """
    while True:
        count = 0 if rng.random() < 0.5 else 1
        target = random_structure(rng, max_p=3, max_q=2, max_index=2, max_count=count)
        if target.cmi:
            target = KroneckerStructure(target.finite_divisors, target.infinite_degrees, (), target.rmi)
        if 1 <= target.cols <= max_m and target.rows <= max_m + 1:
            break
    pencil = scrambled_pencil(rng, target)
    m = pencil.m
    bound = max(target.nilpotency_index, max(target.rmi, default=0), 1)
    span = rng.randint(1, max_horizon - bound)
    k0 = rng.randint(-2, 2)
    n = rng.randint(1, m + 1)
    A = random_matrix_of_rank(rng, n, m, rng.randint(0, min(n, m)))
    B = random_matrix_of_rank(rng, n, m, rng.randint(0, min(n, m)))
    if rng.random() < 0.5:
        structure = kronecker_structure(pencil)
        fp = finite_part(structure, pencil)
        z = tuple(small_rational(rng) for _ in range(fp.p))
        y0 = fp.Qp @ z
        yN = fp.Qp @ (matrix_power(fp.W, span) @ z)
        D = tuple(a + b for a, b in zip(A @ y0, B @ yN))
    else:
        D = tuple(rng.randint(-3, 3) for _ in range(n))
    return BvpProblem(pencil, A, B, D, k0, k0 + span)


def random_cmi_problem(rng: random.Random, max_m: int = 5):
    """A BVP whose pencil has at least one column minimal index."""
    while True:
        target = random_structure(rng, max_p=2, max_q=1, max_index=2, max_count=2)
        if target.cmi and target.cols <= max_m:
            break
    pencil = scrambled_pencil(rng, target)
    m = pencil.m
    n = rng.randint(1, m)
    A = random_matrix(rng, n, m)
    B = random_matrix(rng, n, m)
    D = tuple(rng.randint(-3, 3) for _ in range(n))
    return BvpProblem(pencil, A, B, D, 0, rng.randint(1, 3))
