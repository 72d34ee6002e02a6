"""Data types describing a pencil ``sF - G`` and its Kronecker structure."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import DimensionError
from ..matrix import Matrix
from ..scalar import GaussianRational, as_scalar, format_scalar

__all__ = [
    "MatrixPencil",
    "PencilClass",
    "ElementaryDivisor",
    "BlockKind",
    "CanonicalBlock",
    "CanonicalPencil",
    "KroneckerStructure",
    "FiniteRegularPart",
]


@dataclass(frozen=True)
class MatrixPencil:
    """The pencil ``sF - G`` with ``F, G`` of equal shape ``r x m``."""

    F: Matrix
    G: Matrix

    def __post_init__(self):
        if self.F.shape != self.G.shape:
            raise DimensionError(f"F is {self.F.shape}, G is {self.G.shape}")

    @property
    def r(self) -> int:
        return self.F.rows

    @property
    def m(self) -> int:
        return self.F.cols

    def at(self, s) -> Matrix:
        """The constant matrix ``s*F - G``."""
        return self.F.scaled(s) - self.G

    def transpose(self) -> "MatrixPencil":
        return MatrixPencil(self.F.T, self.G.T)


class PencilClass(enum.Enum):
    REGULAR = "Regular"
    SINGULAR = "Singular"


def _root_key(x):
    x = as_scalar(x)
    if isinstance(x, GaussianRational):
        return (x.real, x.imag)
    return (x, Fraction(0))


@dataclass(frozen=True)
class ElementaryDivisor:
    """``factor(s) ** multiplicity`` with ``factor`` monic and irreducible.

    ``factor`` holds coefficients from the leading one down to the constant
    term, so ``s - 2`` is ``(1, -2)``.
    """

    factor: tuple
    multiplicity: int

    @property
    def factor_degree(self) -> int:
        return len(self.factor) - 1

    @property
    def degree(self) -> int:
        return self.factor_degree * self.multiplicity

    @property
    def is_linear(self) -> bool:
        return self.factor_degree == 1

    @property
    def eigenvalue(self):
        """Root of a linear factor; ``None`` for nonlinear factors."""
        if not self.is_linear:
            return None
        return as_scalar(-self.factor[1])

    def sort_key(self):
        # linear factors first, by ascending eigenvalue (real, then imaginary part)
        if self.is_linear:
            head = _root_key(self.eigenvalue)
        else:
            head = tuple(_root_key(c) for c in self.factor[1:])
        return (self.factor_degree, head, self.multiplicity)

    def factor_string(self, var: str = "s") -> str:
        terms = []
        n = self.factor_degree
        for k, c in enumerate(self.factor):
            power = n - k
            c = as_scalar(c)
            if not c:
                continue
            mono = "" if power == 0 else (var if power == 1 else f"{var}^{power}")
            if isinstance(c, GaussianRational):
                if c.real == 0:
                    # purely imaginary: keep the sign outside, e.g. "s-i"
                    sign = "-" if c.imag < 0 else "+"
                    body = format_scalar(GaussianRational(0, abs(c.imag)))
                    terms.append((sign, body + mono if mono else body))
                else:
                    coef = f"({format_scalar(c)})"
                    terms.append(("+", coef + mono if mono else coef))
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            else:
                body = format_scalar(mag) + mono
            terms.append((sign, body))
        text = ""
        for i, (sign, body) in enumerate(terms):
            if i == 0:
                text = body if sign == "+" else "-" + body
            else:
                text += sign + body
        return text

    def __str__(self):
        base = self.factor_string()
        if self.multiplicity == 1:
            return base
        return f"({base})^{self.multiplicity}"


class BlockKind(enum.Enum):
    FINITE_JORDAN = "FiniteJordan"
    INFINITE_NILPOTENT = "InfiniteNilpotent"
    COLUMN_MINIMAL = "ColumnMinimal"
    ROW_MINIMAL = "RowMinimal"
    ZERO_BLOCK = "ZeroBlock"


@dataclass(frozen=True)
class CanonicalBlock:
    kind: BlockKind
    rows: range
    cols: range
    parameter: object


@dataclass(frozen=True)
class CanonicalPencil:
    """``sF_K - G_K`` together with the layout of its diagonal blocks."""

    F: Matrix
    G: Matrix
    blocks: tuple

    @property
    def pencil(self) -> MatrixPencil:
        return MatrixPencil(self.F, self.G)


@dataclass(frozen=True)
class KroneckerStructure:
    """Complete invariants of a pencil plus strict-equivalence transforms.

    ``cmi`` and ``rmi`` are ascending and include their zero entries.  When
    computed from a pencil, ``P @ F @ Q`` and ``P @ G @ Q`` equal the
    canonical pair assembled from the invariants.
    """

    finite_divisors: tuple
    infinite_degrees: tuple
    cmi: tuple
    rmi: tuple
    P: Optional[Matrix] = None
    Q: Optional[Matrix] = None

    def __post_init__(self):
        object.__setattr__(self, "finite_divisors",
                           tuple(sorted(self.finite_divisors, key=ElementaryDivisor.sort_key)))
        object.__setattr__(self, "infinite_degrees", tuple(sorted(self.infinite_degrees)))
        object.__setattr__(self, "cmi", tuple(sorted(self.cmi)))
        object.__setattr__(self, "rmi", tuple(sorted(self.rmi)))
        if any(q <= 0 for q in self.infinite_degrees):
            raise DimensionError("infinite elementary divisor degrees must be positive")
        if any(e < 0 for e in self.cmi + self.rmi):
            raise DimensionError("minimal indices must be nonnegative")

    @property
    def p(self) -> int:
        return sum(d.degree for d in self.finite_divisors)

    @property
    def q(self) -> int:
        return sum(self.infinite_degrees)

    @property
    def nilpotency_index(self) -> int:
        return max(self.infinite_degrees, default=0)

    @property
    def g(self) -> int:
        return sum(1 for e in self.cmi if e == 0)

    @property
    def h(self) -> int:
        return sum(1 for z in self.rmi if z == 0)

    @property
    def d(self) -> int:
        return len(self.cmi)

    @property
    def t(self) -> int:
        return len(self.rmi)

    @property
    def rows(self) -> int:
        return self.p + self.q + sum(self.cmi) + sum(z + 1 for z in self.rmi)

    @property
    def cols(self) -> int:
        return self.p + self.q + sum(e + 1 for e in self.cmi) + sum(self.rmi)

    @property
    def normal_rank(self) -> int:
        return self.cols - self.d

    @property
    def partition(self) -> dict:
        """Column ranges of ``Q`` for the finite, infinite, eps, zeta and zero parts."""
        p, q = self.p, self.q
        eps = sum(e + 1 for e in self.cmi if e)
        zeta = sum(self.rmi)
        out = {}
        start = 0
        for name, width in (("p", p), ("q", q), ("epsilon", eps), ("zeta", zeta), ("g", self.g)):
            out[name] = range(start, start + width)
            start += width
        return out

    def invariants(self) -> tuple:
        """Hashable invariant lists, for comparing structures."""
        return (
            tuple((d.factor, d.multiplicity) for d in self.finite_divisors),
            self.infinite_degrees,
            self.cmi,
            self.rmi,
        )


@dataclass(frozen=True)
class FiniteRegularPart:
    """Basis ``Qp`` of the finite dynamics and the map ``W`` acting on it.

    ``F @ Qp @ W == G @ Qp`` holds exactly.
    """

    Qp: Matrix
    W: Matrix

    @property
    def p(self) -> int:
        return self.W.rows
