"""Tolerance-free linear algebra over the (Gaussian) rationals.

All rank and consistency decisions come from one elimination kernel that
works on integral rows: every row is scaled to clear its denominators, rows
are combined fraction-free (``p*row_i - f*row_pivot``) and each new row is
divided by the gcd of its components.  Fractions reappear only when a
reduced row echelon form is normalized at the very end.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DimensionError, PreconditionError
from .matrix import Matrix, Vector, as_vector, vector_add, scale
from .scalar import GaussianRational, abs2

__all__ = [
    "SolutionKind",
    "SolutionSet",
    "rref",
    "rank",
    "solve_general",
    "nullspace_basis",
    "matrix_power",
    "inverse",
    "pseudoinverse",
    "column_space_contains",
    "is_invertible",
    "span_basis",
    "extend_basis",
    "intersection_basis",
    "norm2",
]


# ---------------------------------------------------------------------------
# elimination kernel


def _integral_rows(lists, complex_mode):
    out = []
    if not complex_mode:
        for row in lists:
            den = lcm(*(x.denominator for x in row)) if row else 1
            out.append([x.numerator * (den // x.denominator) for x in row])
        return out
    for row in lists:
        dens = []
        for x in row:
            dens.append(x.real.denominator)
            dens.append(Fraction(x.imag).denominator)
        den = lcm(*dens) if dens else 1
        out.append([_gauss_collapse(x * den) for x in row])
    return out


def _gauss_collapse(x):
    if isinstance(x, GaussianRational):
        return x
    return int(x)


def _primitive_real(row):
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def _primitive_complex(row):
    g = 0
    for x in row:
        if x:
            if isinstance(x, GaussianRational):
                g = gcd(g, x.real.numerator, x.imag.numerator)
            else:
                g = gcd(g, int(x))
            if g == 1:
                return row
    if g > 1:
        return [_gauss_collapse(x / g) if isinstance(x, GaussianRational) else int(x) // g
                for x in row]
    return row


def _eliminate(rows, ncols, reduced, complex_mode):
    """Fraction-free echelon reduction in place; returns pivot columns."""
    primitive = _primitive_complex if complex_mode else _primitive_real
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            x = rows[i][c]
            if x:
                # prefer the pivot row with the fewest nonzeros to limit fill-in
                weight = sum(1 for y in rows[i] if y)
                if best is None or weight < best:
                    piv, best = i, weight
                    if weight == 1:
                        break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        targets = range(nrows) if reduced else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            new = [p * x for x in row]
            for j in nz:
                new[j] = new[j] - f * prow[j]
            rows[i] = primitive(new)
        pivots.append(c)
        r += 1
    return pivots


def _is_complex(m: Matrix) -> bool:
    return not m.is_real()


def rref(m: Matrix):
    """Reduced row echelon form and pivot columns, exact."""
    cm = _is_complex(m)
    rows = _integral_rows(m.row_lists(), cm)
    pivots = _eliminate(rows, m.cols, True, cm)
    out = []
    for i, c in enumerate(pivots):
        p = rows[i][c]
        if cm:
            out.append([Fraction(x) / p if type(x) is int else x / p for x in rows[i]])
        else:
            out.append([Fraction(x, p) for x in rows[i]])
    for _ in range(len(pivots), m.rows):
        out.append([Fraction(0)] * m.cols)
    return Matrix._from_lists(out, m.rows, m.cols), tuple(pivots)


def rank(m: Matrix) -> int:
    """Exact rank by fraction-free forward elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    cm = _is_complex(m)
    rows = _integral_rows(m.row_lists(), cm)
    return len(_eliminate(rows, m.cols, False, cm))


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and rank(m) == m.rows


# ---------------------------------------------------------------------------
# solution sets


class SolutionKind(enum.Enum):
    EMPTY = "Empty"
    UNIQUE = "Unique"
    AFFINE = "Affine"


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``M x = b``: ``particular + span(kernel_basis)``."""

    kind: SolutionKind
    particular: Vector = None
    kernel_basis: tuple = field(default_factory=tuple)

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis) if self.kind is not SolutionKind.EMPTY else -1

    def member(self, coefficients: Sequence) -> Vector:
        """``particular + sum(c_i * kernel_i)``."""
        if self.kind is SolutionKind.EMPTY:
            raise PreconditionError("an empty solution set has no members")
        coefficients = as_vector(coefficients)
        if len(coefficients) != len(self.kernel_basis):
            raise DimensionError(
                f"expected {len(self.kernel_basis)} coefficients, got {len(coefficients)}"
            )
        x = self.particular
        for c, v in zip(coefficients, self.kernel_basis):
            if c:
                x = vector_add(x, scale(c, v))
        return x


def _nullspace_from_rref(r: Matrix, pivots, ncols):
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -r[i, f]
        basis.append(tuple(v))
    return basis


def nullspace_basis(m: Matrix) -> list:
    """Basis of ``{x : M x = 0}``; one vector per free column."""
    if m.rows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(m.cols)) for j in range(m.cols)]
    r, pivots = rref(m)
    return _nullspace_from_rref(r, pivots, m.cols)


def solve_general(m: Matrix, b: Sequence) -> SolutionSet:
    """Classify and describe every solution of ``M x = b``."""
    b = as_vector(b)
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {m.rows}")
    aug = m.hstack(Matrix.column_vector(b)) if m.rows else Matrix.zeros(0, m.cols + 1)
    r, pivots = rref(aug)
    n = m.cols
    if n in pivots:
        return SolutionSet(SolutionKind.EMPTY)
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = r[i, n]
    kernel = _nullspace_from_rref(r, pivots, n)
    kind = SolutionKind.AFFINE if kernel else SolutionKind.UNIQUE
    return SolutionSet(kind, tuple(x), tuple(kernel))


def column_space_contains(m: Matrix, b: Sequence) -> bool:
    b = as_vector(b)
    if len(b) != m.rows:
        raise DimensionError(f"vector has length {len(b)}, expected {m.rows}")
    return rank(m.hstack(Matrix.column_vector(b))) == rank(m) if m.rows else True


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionError(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    r, pivots = rref(m.hstack(Matrix.identity(n)))
    if pivots[:n] != tuple(range(n)):
        raise PreconditionError("matrix is singular")
    return r.submatrix(range(n), range(n, 2 * n))


def matrix_power(m: Matrix, e: int) -> Matrix:
    """``M**e`` by binary exponentiation; ``M**0`` is the identity."""
    if not m.is_square():
        raise DimensionError(f"matrix power needs a square matrix, got {m.rows}x{m.cols}")
    if e < 0:
        raise PreconditionError("negative exponents are not supported")
    result = Matrix.identity(m.rows)
    base = m
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def rank_factorization(k: Matrix):
    """``K = C @ R`` with ``C`` full column rank and ``R`` full row rank."""
    r, pivots = rref(k)
    c = k.select_columns(pivots)
    return c, r.select_rows(range(len(pivots)))


def pseudoinverse(k: Matrix) -> Matrix:
    """Moore-Penrose inverse from an exact rank factorization.

    ``K+ = R* (R R*)^-1 (C* C)^-1 C*`` for ``K = C R``.
    """
    if k.rows == 0 or k.cols == 0 or k.is_zero():
        return Matrix.zeros(k.cols, k.rows)
    c, r = rank_factorization(k)
    rh, ch = r.H, c.H
    return rh @ inverse(r @ rh) @ inverse(ch @ c) @ ch


def norm2(v: Sequence) -> Fraction:
    """Squared Euclidean norm ``v* v`` (always rational)."""
    return sum((abs2(x) for x in v), Fraction(0))


# ---------------------------------------------------------------------------
# subspaces, represented by matrices whose columns form a basis


def span_basis(m: Matrix) -> Matrix:
    """Canonical basis (reduced echelon columns) of the column space of ``m``."""
    if m.cols == 0 or m.rows == 0:
        return Matrix.zeros(m.rows, 0)
    r, pivots = rref(m.T)
    return r.select_rows(range(len(pivots))).T


def extend_basis(sub: Matrix, sup: Matrix) -> Matrix:
    """Columns of ``sup`` completing the columns of ``sub`` to a basis of their sum."""
    both = sub.hstack(sup)
    if both.rows == 0:
        return Matrix.zeros(0, 0)
    _, pivots = rref(both)
    extra = [c - sub.cols for c in pivots if c >= sub.cols]
    return sup.select_columns(extra)


def intersection_basis(b1: Matrix, b2: Matrix) -> Matrix:
    """Basis of ``span(b1) & span(b2)`` given bases ``b1``, ``b2``."""
    if b1.cols == 0 or b2.cols == 0:
        return Matrix.zeros(b1.rows, 0)
    kernel = nullspace_basis(b1.hstack(-b2))
    if not kernel:
        return Matrix.zeros(b1.rows, 0)
    coeffs = Matrix.from_columns([v[:b1.cols] for v in kernel], b1.cols)
    return span_basis(b1 @ coeffs)
