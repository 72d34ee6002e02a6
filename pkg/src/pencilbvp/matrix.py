"""Immutable dense matrices of exact scalars.

Vectors are plain tuples of scalars.  Zero-dimension matrices (``0 x n``,
``n x 0``) are legal everywhere; the canonical forms need them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError
from .scalar import GaussianRational, as_scalar, format_scalar

__all__ = ["Matrix", "Vector", "as_vector", "dot", "vector_sub", "vector_add", "scale"]

Vector = tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _norm(x):
    # fast path for the overwhelmingly common entry type
    if type(x) is Fraction:
        return x
    return as_scalar(x)


def as_vector(values: Iterable) -> Vector:
    return tuple(_norm(v) for v in values)


def dot(u: Sequence, v: Sequence):
    """Bilinear product sum(u_i * v_i), no conjugation."""
    s = _ZERO
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def vector_add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vector_sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v) -> Vector:
    return tuple(c * a for a in v)


class Matrix:
    """Dense ``rows x cols`` matrix stored row-major as a flat tuple."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable = None):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape {rows}x{cols}")
        if entries is None:
            flat = (_ZERO,) * (rows * cols)
        else:
            flat = tuple(_norm(x) for x in entries)
            if len(flat) != rows * cols:
                raise DimensionError(
                    f"{len(flat)} entries given for a {rows}x{cols} matrix"
                )
        self.rows = rows
        self.cols = cols
        self.entries = flat
        self._hash = None

    @classmethod
    def _trusted(cls, rows, cols, flat):
        m = cls.__new__(cls)
        m.rows, m.cols, m.entries, m._hash = rows, cols, flat, None
        return m

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise DimensionError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise DimensionError(f"column {j} has {len(c)} entries, expected {rows}")
        return cls(rows, len(columns), (columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        flat = [_ZERO] * (n * n)
        for i in range(n):
            flat[i * n + i] = _ONE
        return cls._trusted(n, n, tuple(flat))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        values = [_norm(v) for v in values]
        n = len(values)
        flat = [_ZERO] * (n * n)
        for i, v in enumerate(values):
            flat[i * n + i] = v
        return cls._trusted(n, n, tuple(flat))

    @classmethod
    def column_vector(cls, v: Sequence) -> "Matrix":
        return cls(len(v), 1, v)

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[_ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b.row(i)
            r0 += b.rows
            c0 += b.cols
        return cls._from_lists(out, rows, cols)

    @classmethod
    def _from_lists(cls, lists, rows=None, cols=None) -> "Matrix":
        if rows is None:
            rows = len(lists)
        if cols is None:
            cols = len(lists[0]) if lists else 0
        flat = []
        for r in lists:
            flat.extend(r)
        return cls(rows, cols, flat)

    def hstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        for m in others:
            if m.rows != self.rows:
                raise DimensionError("hstack needs equal row counts")
        lists = [sum((m.row(i) for m in mats), ()) for i in range(self.rows)]
        return Matrix._from_lists(lists, self.rows, sum(m.cols for m in mats))

    def vstack(self, *others: "Matrix") -> "Matrix":
        for m in others:
            if m.cols != self.cols:
                raise DimensionError("vstack needs equal column counts")
        flat = self.entries + sum((m.entries for m in others), ())
        return Matrix._trusted(self.rows + sum(m.rows for m in others), self.cols, flat)

    # -- access -----------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            if isinstance(i, slice) or isinstance(j, slice):
                ri = range(self.rows)[i] if isinstance(i, slice) else [i]
                cj = range(self.cols)[j] if isinstance(j, slice) else [j]
                return self.submatrix(ri, cj)
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"index ({i}, {j}) out of range for {self.rows}x{self.cols}")
            return self.entries[i * self.cols + j]
        raise TypeError("index a Matrix with m[i, j]")

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def row_lists(self):
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "Matrix":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        c = self.cols
        e = self.entries
        flat = tuple(e[i * c + j] for i in row_idx for j in col_idx)
        return Matrix._trusted(len(row_idx), len(col_idx), flat)

    def select_columns(self, col_idx: Iterable[int]) -> "Matrix":
        return self.submatrix(range(self.rows), col_idx)

    def select_rows(self, row_idx: Iterable[int]) -> "Matrix":
        return self.submatrix(row_idx, range(self.cols))

    # -- algebra ----------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        r, c, e = self.rows, self.cols, self.entries
        return Matrix._trusted(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)))

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        t = self.T
        if self.is_real():
            return t
        return Matrix._trusted(t.rows, t.cols, tuple(x.conjugate() for x in t.entries))

    def is_real(self) -> bool:
        return all(type(x) is not GaussianRational for x in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(self.rows, self.cols,
                               tuple(_norm(a + b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._trusted(self.rows, self.cols,
                               tuple(_norm(a - b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(self.rows, self.cols, tuple(-a for a in self.entries))

    def scaled(self, c) -> "Matrix":
        c = _norm(c)
        return Matrix._trusted(self.rows, self.cols, tuple(_norm(c * a) for a in self.entries))

    def __mul__(self, c):
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scaled(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            cols = other.columns()
            flat = []
            for i in range(self.rows):
                row = self.row(i)
                for col in cols:
                    flat.append(_norm(dot(row, col)))
            return Matrix._trusted(self.rows, other.cols, tuple(flat))
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionError(f"cannot apply {self.rows}x{self.cols} matrix to length-{len(v)} vector")
        return tuple(_norm(dot(self.row(i), v)) for i in range(self.rows))

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- comparison & display ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def to_strings(self):
        return [[format_scalar(x) for x in self.row(i)] for i in range(self.rows)]

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"Matrix.zeros({self.rows}, {self.cols})"
        return f"Matrix.from_rows({self.to_strings()!r})"

    def __str__(self):
        if self.rows == 0 or self.cols == 0:
            return f"[{self.rows}x{self.cols} empty]"
        cells = self.to_strings()
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)
