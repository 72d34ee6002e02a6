"""Dynamic Leontief models as singular descriptor systems.

The balance ``Y_k = M Y_k + Fcap (Y_(k+1) - Y_k)`` rearranges to
``Fcap Y_(k+1) = (I - M + Fcap) Y_k``.  Capital matrices are usually
singular, so the resulting pencil normally has infinite or singular
structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bvp import BvpProblem
from .errors import DimensionError
from .matrix import Matrix
from .pencil import MatrixPencil

__all__ = ["LeontiefModel", "build_pencil", "recover_model", "attach_boundary", "demo_model"]


@dataclass(frozen=True)
class LeontiefModel:
    """Flow coefficients ``M``, capital coefficients ``Fcap`` and optional sector labels."""

    M: Matrix
    Fcap: Matrix
    sectors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.M.is_square():
            raise DimensionError(f"flow matrix must be square, got {self.M.rows}x{self.M.cols}")
        if self.Fcap.shape != self.M.shape:
            raise DimensionError(f"capital matrix is {self.Fcap.shape}, flow matrix is {self.M.shape}")
        if not (self.M.is_real() and self.Fcap.is_real()):
            raise DimensionError("Leontief coefficients must be real")
        sectors = tuple(self.sectors)
        if sectors and len(sectors) != self.M.rows:
            raise DimensionError(f"{len(sectors)} sector names for {self.M.rows} sectors")
        if not sectors:
            sectors = tuple(f"sector{i + 1}" for i in range(self.M.rows))
        object.__setattr__(self, "sectors", sectors)

    @property
    def size(self) -> int:
        return self.M.rows


def build_pencil(model: LeontiefModel) -> MatrixPencil:
    """``F = Fcap``, ``G = I - M + Fcap``."""
    return MatrixPencil(model.Fcap, Matrix.identity(model.size) - model.M + model.Fcap)


def recover_model(pencil: MatrixPencil, sectors: Sequence[str] = ()) -> LeontiefModel:
    """Inverse of :func:`build_pencil`: ``M = I - G + F``."""
    if pencil.r != pencil.m:
        raise DimensionError("a Leontief pencil is square")
    m = pencil.m
    return LeontiefModel(Matrix.identity(m) - pencil.G + pencil.F, pencil.F, tuple(sectors))


def attach_boundary(pencil: MatrixPencil, A: Matrix, B: Matrix, D, k0: int, kN: int) -> BvpProblem:
    return BvpProblem(pencil, A, B, D, k0, kN)


def demo_model() -> LeontiefModel:
    """Two sectors; only the first one contributes to capital formation."""
    half = Fraction(1, 2)
    return LeontiefModel(
        Matrix.diag([half, half]),
        Matrix.diag([1, 0]),
        ("industry", "services"),
    )
