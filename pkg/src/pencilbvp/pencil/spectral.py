"""Exact spectral data of a square matrix: irreducible factors and chain bases.

Characteristic polynomials are factored with sympy over the rationals (or
the Gaussian rationals when the matrix has complex entries).  Everything
else is linear algebra from :mod:`pencilbvp.linalg`.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from ..linalg import nullspace_basis, rank
from ..matrix import Matrix
from ..scalar import GaussianRational, as_scalar

__all__ = ["irreducible_factors", "poly_at_matrix", "chain_bases"]

_s = sympy.Symbol("s")


def _to_sympy(x):
    x = as_scalar(x)
    if isinstance(x, GaussianRational):
        return sympy.Rational(x.real.numerator, x.real.denominator) + sympy.I * sympy.Rational(
            x.imag.numerator, x.imag.denominator
        )
    return sympy.Rational(x.numerator, x.denominator)


def _from_sympy(v):
    re_part, im_part = sympy.expand(v).as_real_imag()
    return as_scalar(GaussianRational(Fraction(int(re_part.p), int(re_part.q)),
                                      Fraction(int(im_part.p), int(im_part.q))))


def irreducible_factors(a: Matrix):
    """Monic irreducible factors of ``det(sI - A)`` with algebraic multiplicities.

    Returns a list of ``(coefficients, multiplicity)`` with coefficients from
    the leading one down to the constant term.
    """
    n = a.rows
    if n == 0:
        return []
    sm = sympy.Matrix(n, n, [_to_sympy(x) for x in a.entries])
    charpoly = sm.charpoly(_s).as_expr()
    _, factors = sympy.factor_list(charpoly, _s, gaussian=not a.is_real())
    out = []
    for f, mult in factors:
        poly = sympy.Poly(f, _s)
        lc = poly.LC()
        coeffs = tuple(_from_sympy(c / lc) for c in poly.all_coeffs())
        out.append((coeffs, mult))
    return out


def poly_at_matrix(coeffs, a: Matrix) -> Matrix:
    """Horner evaluation of a polynomial (leading coefficient first) at ``A``."""
    n = a.rows
    result = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for c in coeffs:
        result = result @ a + ident.scaled(c)
    return result


def _basis_matrix(vectors, n):
    return Matrix.from_columns(vectors, n)


def chain_bases(a: Matrix, factor: tuple):
    """Chain bases of the primary component of ``A`` belonging to ``factor``.

    Returns a list of ``(k, vectors)``, one entry per elementary divisor
    ``factor**k``.  For a linear factor ``s - c`` the vectors form a Jordan
    chain ``[N^(k-1) v, ..., N v, v]`` with ``N = A - cI`` (eigenvector
    first, so ``A`` acts as ``J_k(c)``).  For a nonlinear factor they form
    the Krylov basis ``[v, A v, ..., A^(dk-1) v]`` on which ``A`` acts as
    the companion matrix of ``factor**k``.
    """
    n = a.rows
    deg = len(factor) - 1
    nmat = poly_at_matrix(factor, a)
    kernels = [Matrix.zeros(n, 0)]
    power = Matrix.identity(n)
    while True:
        power = power @ nmat
        ker = nullspace_basis(power)
        if len(ker) == kernels[-1].cols:
            break
        kernels.append(_basis_matrix(ker, n))
    top = len(kernels) - 1
    kernels.append(kernels[-1])

    chains = []
    for j in range(top, 0, -1):
        below = kernels[j - 1].hstack(nmat @ kernels[j + 1])
        current = kernels[j]
        if rank(below) == current.cols:
            continue
        covered = below
        for cand in current.columns():
            if rank(covered.hstack(Matrix.column_vector(cand))) == rank(covered):
                continue
            krylov = [cand]
            for _ in range(deg - 1):
                krylov.append(a @ krylov[-1])
            covered = covered.hstack(_basis_matrix(krylov, n))
            if deg == 1:
                vectors = [cand]
                for _ in range(j - 1):
                    vectors.append(nmat @ vectors[-1])
                vectors.reverse()
            else:
                vectors = [cand]
                for _ in range(deg * j - 1):
                    vectors.append(a @ vectors[-1])
            chains.append((j, vectors))
            if rank(covered) == current.cols:
                break
    return chains
