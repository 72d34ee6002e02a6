"""JSON problem files and result documents.

Every scalar is written as an exact string (``"-3/4"``, ``"1/2+i"``).  In
problem files integers may also appear as JSON numbers; floats are refused
because they cannot be represented exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .bvp import BvpAnalysis, BvpProblem, Trajectory
from .errors import DimensionError, ParseError
from .leontief import LeontiefModel, build_pencil
from .matrix import Matrix
from .optimal import OptimalSolution
from .oracle import OracleReport
from .pencil import KroneckerStructure, MatrixPencil, PencilClass
from .scalar import format_scalar, parse_scalar

__all__ = [
    "ProblemFile",
    "parse_problem",
    "load_problem",
    "parse_matrix",
    "load_matrix",
    "matrix_doc",
    "vector_doc",
    "structure_doc",
    "resolution_doc",
    "trajectory_doc",
    "trajectory_csv",
    "optimal_doc",
    "oracle_doc",
    "dumps",
]


# ---------------------------------------------------------------------------
# reading


def _scalar(value, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"expected an exact scalar string, got {value!r}", where)
    if isinstance(value, int):
        return parse_scalar(str(value))
    if isinstance(value, str):
        try:
            return parse_scalar(value)
        except ParseError as exc:
            raise ParseError(str(exc), where) from None
    raise ParseError(f"expected a scalar, got {type(value).__name__}", where)


def parse_matrix(value, where: str) -> Matrix:
    """Array of equal-length arrays of scalars; ``[]`` is a 0x0 matrix."""
    if not isinstance(value, list):
        raise ParseError("expected an array of rows", where)
    rows = []
    width = None
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise ParseError("expected an array of scalars", f"{where}[{i}]")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"ragged row: length {len(row)}, expected {width}", f"{where}[{i}]")
        rows.append([_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix.from_rows(rows, width or 0)


def _vector(value, where):
    if not isinstance(value, list):
        raise ParseError("expected an array of scalars", where)
    return tuple(_scalar(x, f"{where}[{i}]") for i, x in enumerate(value))


def _integer(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, str) and value.strip().lstrip("+-").isdigit():
            return int(value)
        raise ParseError(f"expected an integer, got {value!r}", where)
    return value


def _loads(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


@dataclass(frozen=True)
class ProblemFile:
    pencil: MatrixPencil
    problem: Optional[BvpProblem]
    leontief: Optional[LeontiefModel]

    def require_problem(self) -> BvpProblem:
        if self.problem is None:
            raise ParseError("boundary data A, B, D, k0, kN are required for this command")
        return self.problem


_BOUNDARY_KEYS = ("A", "B", "D", "k0", "kN")


def parse_problem(text: str, source: str = "<input>", kN_override: Optional[int] = None) -> ProblemFile:
    doc = _loads(text, source)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", source)

    leontief = None
    if "leontief" in doc:
        sec = doc["leontief"]
        if not isinstance(sec, dict):
            raise ParseError("expected an object", "leontief")
        for key in ("M", "Fcap"):
            if key not in sec:
                raise ParseError(f"missing key {key!r}", "leontief")
        sectors = sec.get("sectors", [])
        if not isinstance(sectors, list) or not all(isinstance(s, str) for s in sectors):
            raise ParseError("expected an array of strings", "leontief.sectors")
        leontief = LeontiefModel(parse_matrix(sec["M"], "leontief.M"),
                                 parse_matrix(sec["Fcap"], "leontief.Fcap"), tuple(sectors))

    if "F" in doc or "G" in doc:
        for key in ("F", "G"):
            if key not in doc:
                raise ParseError(f"missing key {key!r}", source)
        pencil = MatrixPencil(parse_matrix(doc["F"], "F"), parse_matrix(doc["G"], "G"))
        if leontief is not None and pencil != build_pencil(leontief):
            raise DimensionError("F, G disagree with the pencil built from the leontief section")
    elif leontief is not None:
        pencil = build_pencil(leontief)
    else:
        raise ParseError("missing keys 'F' and 'G'", source)

    present = [k for k in _BOUNDARY_KEYS if k in doc]
    problem = None
    if present:
        missing = [k for k in _BOUNDARY_KEYS if k not in doc]
        if missing:
            raise ParseError(f"incomplete boundary data, missing {', '.join(missing)}", source)
        kN = _integer(doc["kN"], "kN") if kN_override is None else kN_override
        problem = BvpProblem(pencil, parse_matrix(doc["A"], "A"), parse_matrix(doc["B"], "B"),
                             _vector(doc["D"], "D"), _integer(doc["k0"], "k0"), kN)
    return ProblemFile(pencil, problem, leontief)


def load_problem(path: str, kN_override: Optional[int] = None) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read(), path, kN_override)


def load_matrix(path: str, key: str = "E") -> Matrix:
    """A matrix file: a bare array of rows or an object holding it under ``key``."""
    with open(path, encoding="utf-8") as fh:
        doc = _loads(fh.read(), path)
    if isinstance(doc, dict):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", path)
        doc = doc[key]
    return parse_matrix(doc, key)


# ---------------------------------------------------------------------------
# writing


def matrix_doc(m: Matrix) -> list:
    return [[format_scalar(x) for x in row] for row in m.row_lists()]


def vector_doc(v) -> list:
    return [format_scalar(x) for x in v]


def structure_doc(pencil: MatrixPencil, structure: KroneckerStructure, pencil_class: PencilClass,
                  normal_rank: int) -> dict:
    return {
        "pencil": {"rows": pencil.r, "cols": pencil.m, "class": pencil_class.value,
                   "normal_rank": normal_rank},
        "invariants": {
            "finite_divisors": [
                {"divisor": str(d), "factor": d.factor_string(), "multiplicity": d.multiplicity,
                 "eigenvalue": None if d.eigenvalue is None else format_scalar(d.eigenvalue)}
                for d in structure.finite_divisors
            ],
            "infinite_degrees": list(structure.infinite_degrees),
            "cmi": list(structure.cmi),
            "rmi": list(structure.rmi),
            "p": structure.p,
            "q": structure.q,
            "g": structure.g,
            "h": structure.h,
        },
        "transforms": {"P": matrix_doc(structure.P), "Q": matrix_doc(structure.Q)},
    }


def resolution_doc(analysis: BvpAnalysis) -> dict:
    res = analysis.resolution
    d = res.diagnostics
    out = {
        "classification": res.classification.value,
        "diagnostics": {"fired": d.fired, "detail": d.detail, "rank_K": d.rank_K, "p": d.p,
                        "n": d.n, "square_full_rank": d.square_full_rank},
        "subsystems": [{"kind": b.kind.value, "columns": [b.state_range.start, b.state_range.stop],
                        "rule": b.rule} for b in analysis.decomposition.blocks],
        "finite_part": {"Qp": matrix_doc(analysis.finite.Qp), "W": matrix_doc(analysis.finite.W)},
        "boundary_operator": {"K": matrix_doc(res.boundary.K), "exponent": res.boundary.exponent},
        "unique_state": None if res.unique_state is None else vector_doc(res.unique_state),
        "family": None,
        "free_components": None,
    }
    if res.family is not None and res.unique_state is None:
        out["family"] = {"particular": vector_doc(res.family.particular),
                         "kernel_basis": [vector_doc(v) for v in res.family.kernel_basis],
                         "dimension": res.family.dimension}
    if res.free_components is not None:
        fc = res.free_components
        out["free_components"] = {
            "epsilon_columns": [fc.epsilon_columns.start, fc.epsilon_columns.stop],
            "zero_columns": [fc.zero_columns.start, fc.zero_columns.stop],
            "column_minimal_indices": list(fc.column_minimal_indices),
        }
    return out


def trajectory_doc(traj: Trajectory) -> list:
    return [{"k": traj.k0 + i, "Y": vector_doc(y)} for i, y in enumerate(traj.values)]


def trajectory_csv(traj: Trajectory) -> str:
    m = len(traj.values[0]) if traj.values else 0
    lines = [",".join(["k"] + [f"y{i + 1}" for i in range(m)])]
    for i, y in enumerate(traj.values):
        lines.append(",".join([str(traj.k0 + i)] + vector_doc(y)))
    return "\n".join(lines) + "\n"


def optimal_doc(sol: OptimalSolution) -> dict:
    reg = None
    if sol.regularizer is not None:
        E, theta = sol.regularizer
        reg = {"E": matrix_doc(E), "theta": None if theta is None else format_scalar(theta)}
    return {
        "method": sol.method.value,
        "state": vector_doc(sol.state),
        "residual_norm_squared": format_scalar(sol.residual_norm_squared),
        "perturbed_boundary": vector_doc(sol.perturbed_boundary),
        "regularizer": reg,
        "spectral_warning": sol.spectral_warning,
    }


def oracle_doc(report: OracleReport) -> dict:
    return {
        "agreement": report.agreement.value,
        "oracle_classification": report.oracle_classification.value,
        "structured_classification": report.structured_classification.value,
        "horizon": report.horizon,
        "structural_bound": report.structural_bound,
        "reason": report.reason,
        "witness": None if report.witness is None else trajectory_doc(report.witness),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
