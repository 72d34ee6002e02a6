"""Assembly of Kronecker canonical pencils from invariant lists."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DimensionError
from ..linalg import is_invertible
from ..matrix import Matrix
from ..scalar import as_scalar
from .structure import (
    BlockKind,
    CanonicalBlock,
    CanonicalPencil,
    ElementaryDivisor,
    KroneckerStructure,
    MatrixPencil,
)

__all__ = [
    "jordan_block",
    "companion_matrix",
    "poly_power",
    "finite_block",
    "nilpotent_block",
    "assemble_canonical",
    "verify_equivalence",
]

_ONE = Fraction(1)


def jordan_block(eigenvalue, size: int) -> Matrix:
    """``J_size(a)``: ``a`` on the diagonal, ones on the superdiagonal."""
    a = as_scalar(eigenvalue)
    rows = [[a if i == j else (_ONE if j == i + 1 else 0) for j in range(size)] for i in range(size)]
    return Matrix.from_rows(rows, size)


def nilpotent_block(size: int) -> Matrix:
    return jordan_block(0, size)


def poly_power(coeffs, k: int) -> tuple:
    """Coefficients (leading first) of ``poly ** k``."""
    out = (_ONE,)
    for _ in range(k):
        prod = [0] * (len(out) + len(coeffs) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(coeffs):
                prod[i + j] = prod[i + j] + a * b
        out = tuple(as_scalar(c) for c in prod)
    return out


def companion_matrix(coeffs) -> Matrix:
    """Companion of a monic polynomial: ones below the diagonal, ``-c`` in the last column.

    It is the matrix of ``A`` in the Krylov basis ``v, Av, ..., A^(n-1)v``.
    """
    n = len(coeffs) - 1
    ascending = list(reversed(coeffs[1:]))
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -ascending[i]
    return Matrix.from_rows(rows, n)


def finite_block(divisor: ElementaryDivisor) -> Matrix:
    """``J`` for a linear divisor, the companion of ``factor**k`` otherwise."""
    if divisor.is_linear:
        return jordan_block(divisor.eigenvalue, divisor.multiplicity)
    return companion_matrix(poly_power(divisor.factor, divisor.multiplicity))


def _l_eps(e):
    """``[I | 0]`` and ``[0 | I]`` of shape ``e x (e+1)``."""
    F = Matrix.from_rows([[1 if j == i else 0 for j in range(e + 1)] for i in range(e)], e + 1)
    G = Matrix.from_rows([[1 if j == i + 1 else 0 for j in range(e + 1)] for i in range(e)], e + 1)
    return F, G


def assemble_canonical(structure: KroneckerStructure) -> CanonicalPencil:
    """Block-diagonal ``(F_K, G_K)``: finite, infinite, eps, zeta, then the zero block."""
    pieces = []
    for dv in structure.finite_divisors:
        n = dv.degree
        pieces.append((BlockKind.FINITE_JORDAN, Matrix.identity(n), finite_block(dv), dv))
    for qd in structure.infinite_degrees:
        pieces.append((BlockKind.INFINITE_NILPOTENT, nilpotent_block(qd), Matrix.identity(qd), qd))
    for e in structure.cmi:
        if e:
            F, G = _l_eps(e)
            pieces.append((BlockKind.COLUMN_MINIMAL, F, G, e))
    for z in structure.rmi:
        if z:
            F, G = _l_eps(z)
            pieces.append((BlockKind.ROW_MINIMAL, F.T, G.T, z))
    h, g = structure.h, structure.g
    if h or g:
        pieces.append((BlockKind.ZERO_BLOCK, Matrix.zeros(h, g), Matrix.zeros(h, g), (h, g)))

    blocks = []
    r0 = c0 = 0
    for kind, F, _, param in pieces:
        blocks.append(CanonicalBlock(kind, range(r0, r0 + F.rows), range(c0, c0 + F.cols), param))
        r0 += F.rows
        c0 += F.cols
    FK = Matrix.block_diag([pc[1] for pc in pieces])
    GK = Matrix.block_diag([pc[2] for pc in pieces])

    if structure.P is not None and structure.P.rows != FK.rows:
        raise DimensionError(
            f"invariants describe {FK.rows} rows but P is {structure.P.rows}x{structure.P.cols}"
        )
    if structure.Q is not None and structure.Q.cols != FK.cols:
        raise DimensionError(
            f"invariants describe {FK.cols} columns but Q is {structure.Q.rows}x{structure.Q.cols}"
        )
    return CanonicalPencil(FK, GK, tuple(blocks))


def verify_equivalence(pencil: MatrixPencil, P: Matrix, Q: Matrix,
                       canonical: CanonicalPencil) -> bool:
    """True iff ``P F Q == F_K``, ``P G Q == G_K`` and ``P``, ``Q`` are invertible."""
    r, m = pencil.r, pencil.m
    if P.shape != (r, r) or Q.shape != (m, m):
        raise DimensionError(f"P must be {r}x{r} and Q {m}x{m}, got {P.shape} and {Q.shape}")
    if canonical.F.shape != (r, m):
        raise DimensionError(f"canonical pencil is {canonical.F.shape}, expected {(r, m)}")
    if not (is_invertible(P) and is_invertible(Q)):
        return False
    return P @ pencil.F @ Q == canonical.F and P @ pencil.G @ Q == canonical.G
