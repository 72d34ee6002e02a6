"""Exact reduction of a pencil ``sF - G`` to Kronecker canonical form.

The reduction runs in four stages, all in exact arithmetic:

1. Wong sequences ``V_{i+1} = G^-1(F V_i)`` and ``W_{i+1} = F^-1(G W_i)``
   split the column space into the right-singular part ``V* & W*``, the
   finite part (complement inside ``V*``), the infinite part (complement
   inside ``W*``) and the left-singular rest.  Matching row spaces make
   the pencil block upper triangular.
2. Each diagonal block is brought to canonical form on its own: a minimal
   polynomial basis of the right null space for the eps-blocks (and of the
   left null space for the zeta-blocks), Jordan or companion chains for
   the finite part, nilpotent Jordan chains for the infinite part.
3. Off-diagonal couplings are removed one canonical sub-block pair at a
   time by solving ``E1 R + L E2 = -X_F``, ``A1 R + L A2 = -X_G``.
4. Blocks are permuted into the fixed output order and each block is
   scaled so the first nonzero entry of its leading ``Q`` column is one.

The result is checked against the pencil assembled from the invariants
before it is returned.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import ConsistencyError
from ..linalg import (
    extend_basis,
    intersection_basis,
    inverse,
    nullspace_basis,
    rank,
    solve_general,
    span_basis,
)
from ..linalg import SolutionKind
from ..matrix import Matrix
from .canonical import assemble_canonical, verify_equivalence
from .spectral import chain_bases, irreducible_factors
from .structure import (
    BlockKind,
    ElementaryDivisor,
    FiniteRegularPart,
    KroneckerStructure,
    MatrixPencil,
    PencilClass,
)

__all__ = ["normal_rank", "classify_pencil", "kronecker_structure", "finite_part"]

_SAMPLE_SEED = 20130517


def _sample_points(count: int):
    rng = random.Random(_SAMPLE_SEED)
    points = []
    seen = set()
    while len(points) < count:
        s = Fraction(rng.randint(-997, 997), rng.randint(1, 89))
        if s not in seen:
            seen.add(s)
            points.append(s)
    return points


def normal_rank(pencil: MatrixPencil) -> int:
    """Generic rank of ``sF - G``: the maximum rank over ``min(r, m) + 1`` sample points."""
    n = min(pencil.r, pencil.m)
    best = 0
    for s in _sample_points(n + 1):
        best = max(best, rank(pencil.at(s)))
        if best == n:
            break
    return best


def classify_pencil(pencil: MatrixPencil) -> PencilClass:
    if pencil.r != pencil.m:
        return PencilClass.SINGULAR
    if normal_rank(pencil) == pencil.m:
        return PencilClass.REGULAR
    return PencilClass.SINGULAR


# ---------------------------------------------------------------------------
# stage 1: Wong sequences


def _preimage(M: Matrix, target: Matrix) -> Matrix:
    """Basis of ``{x : M x in span(target)}``."""
    n = M.cols
    if target.cols == 0:
        kernel = nullspace_basis(M)
    else:
        kernel = [v[:n] for v in nullspace_basis(M.hstack(-target))]
    if not kernel:
        return Matrix.zeros(n, 0)
    return span_basis(Matrix.from_columns(kernel, n))


def _wong_limits(F: Matrix, G: Matrix):
    m = F.cols
    V = Matrix.identity(m)
    while True:
        nxt = _preimage(G, F @ V)
        if nxt.cols == V.cols:
            break
        V = nxt
    W = Matrix.zeros(m, 0)
    while True:
        nxt = _preimage(F, G @ W)
        if nxt.cols == W.cols:
            break
        W = nxt
    return V, W


def _triangularize(F: Matrix, G: Matrix):
    """Invertible ``S``, ``T`` and group sizes making ``S^-1 (sF - G) T`` block upper triangular."""
    r, m = F.shape
    V, W = _wong_limits(F, G)
    TU = intersection_basis(V, W)
    TJ = extend_basis(TU, V)
    TN = extend_basis(TU, W)
    TO = extend_basis(TU.hstack(TJ, TN), Matrix.identity(m))
    SU = span_basis(F @ TU)
    SJ = extend_basis(SU, span_basis(F @ V))
    SN = extend_basis(SU, span_basis(G @ W))
    SO = extend_basis(SU.hstack(SJ, SN), Matrix.identity(r))
    if SJ.cols != TJ.cols or SN.cols != TN.cols:
        raise ConsistencyError("finite/infinite row and column dimensions disagree")
    T = TU.hstack(TJ, TN, TO)
    S = SU.hstack(SJ, SN, SO)
    rows = (SU.cols, SJ.cols, SN.cols, SO.cols)
    cols = (TU.cols, TJ.cols, TN.cols, TO.cols)
    return S, T, rows, cols


# ---------------------------------------------------------------------------
# stage 2: canonical form of each diagonal block


def _toeplitz(F: Matrix, G: Matrix, k: int) -> Matrix:
    """Coefficient system of ``(sF - G) u(s) = 0`` for ``deg u <= k``."""
    a, b = F.shape
    zero = Matrix.zeros(a, b)
    block_rows = []
    for i in range(k + 2):
        row = []
        for j in range(k + 1):
            if i == j:
                row.append(-G)
            elif i == j + 1:
                row.append(F)
            else:
                row.append(zero)
        block_rows.append(row[0].hstack(*row[1:]))
    return block_rows[0].vstack(*block_rows[1:])


def _column_minimal(F: Matrix, G: Matrix):
    """Canonical form of a pencil made only of eps-blocks (zero columns included).

    Returns ``(S, T, blocks)`` with ``S^-1 F T`` and ``S^-1 G T`` block
    diagonal: nonzero eps ascending first, then the zero columns.  Each
    block is ``(kind, nrows, ncols, parameter)``.
    """
    a, b = F.shape
    count = b - a
    chosen = []
    k = 0
    while len(chosen) < count:
        if k > a:
            raise ConsistencyError("minimal basis search exceeded the degree bound")
        width = (k + 1) * b
        kernel = nullspace_basis(_toeplitz(F, G, k)) if a else [
            tuple(Fraction(int(i == j)) for i in range(b)) for j in range(b)
        ]
        if kernel:
            old = []
            for e, u in chosen:
                for shift in range(k - e + 1):
                    old.append((Fraction(0),) * (shift * b) + u + (Fraction(0),) * ((k - e - shift) * b))
            old_m = Matrix.from_columns(old, width)
            new = extend_basis(old_m, Matrix.from_columns(kernel, width))
            for v in new.columns():
                chosen.append((k, v))
        k += 1
    if len(chosen) != count:
        raise ConsistencyError("minimal basis has the wrong number of vectors")

    eps_blocks = sorted((c for c in chosen if c[0] > 0), key=lambda c: c[0])
    zero_cols = [c[1] for c in chosen if c[0] == 0]
    tcols, scols, blocks = [], [], []
    for e, u in eps_blocks:
        coeffs = [u[j * b:(j + 1) * b] for j in range(e + 1)]
        tcols.extend(coeffs)
        scols.extend(F @ c for c in coeffs[:e])
        blocks.append((BlockKind.COLUMN_MINIMAL, e, e + 1, e))
    tcols.extend(zero_cols)
    if zero_cols:
        blocks.append((BlockKind.ZERO_BLOCK, 0, len(zero_cols), None))
    S = Matrix.from_columns(scols, a)
    T = Matrix.from_columns(tcols, b)
    if S.cols != a:
        raise ConsistencyError("eps-block row count mismatch")
    return S, T, blocks


def _row_minimal(F: Matrix, G: Matrix):
    """Canonical form of a pencil made only of zeta-blocks, by duality."""
    St, Tt, tblocks = _column_minimal(F.T, G.T)
    S = inverse(Tt).T
    T = inverse(St).T
    blocks = []
    for kind, nr, nc, param in tblocks:
        if kind is BlockKind.COLUMN_MINIMAL:
            blocks.append((BlockKind.ROW_MINIMAL, nc, nr, param))
        else:
            blocks.append((BlockKind.ZERO_BLOCK, nc, nr, None))
    return S, T, blocks


def _chains_of(a: Matrix):
    """Chain basis ``T`` and divisors with ``T^-1 A T`` block diagonal canonical."""
    entries = []
    for factor, _ in irreducible_factors(a):
        for k, vectors in chain_bases(a, factor):
            entries.append((ElementaryDivisor(factor, k), vectors))
    entries.sort(key=lambda e: e[0].sort_key())
    cols = [v for _, vs in entries for v in vs]
    return Matrix.from_columns(cols, a.rows), [e[0] for e in entries]


def _finite_regular(F: Matrix, G: Matrix):
    T, divisors = _chains_of(inverse(F) @ G)
    blocks = [(BlockKind.FINITE_JORDAN, d.degree, d.degree, d) for d in divisors]
    return F @ T, T, blocks


def _infinite_regular(F: Matrix, G: Matrix):
    T, divisors = _chains_of(inverse(G) @ F)
    for d in divisors:
        if d.factor != (Fraction(1), Fraction(0)):
            raise ConsistencyError("infinite part is not nilpotent")
    blocks = [(BlockKind.INFINITE_NILPOTENT, d.multiplicity, d.multiplicity, d.multiplicity)
              for d in divisors]
    return G @ T, T, blocks


# ---------------------------------------------------------------------------
# stage 3: decoupling


def _sub(lists, rows, cols):
    return [[lists[i][j] for j in cols] for i in rows]


def _solve_coupling(E1, A1, E2, A2, XF, XG, r1, c1, r2, c2):
    """Solve ``E1 R + L E2 = -XF`` and ``A1 R + L A2 = -XG`` for ``R`` (c1 x c2), ``L`` (r1 x r2)."""
    n_unknown = c1 * c2 + r1 * r2
    rows = []
    rhs = []
    for E, Ex, X in ((E1, E2, XF), (A1, A2, XG)):
        for x in range(r1):
            for v in range(c2):
                row = [0] * n_unknown
                for u in range(c1):
                    if E[x][u]:
                        row[u * c2 + v] = E[x][u]
                for y in range(r2):
                    if Ex[y][v]:
                        row[c1 * c2 + x * r2 + y] = Ex[y][v]
                rows.append(row)
                rhs.append(-X[x][v])
    sol = solve_general(Matrix.from_rows(rows, n_unknown), rhs)
    if sol.kind is SolutionKind.EMPTY:
        raise ConsistencyError("coupling equation between canonical blocks has no solution")
    x = sol.particular
    R = [list(x[u * c2:(u + 1) * c2]) for u in range(c1)]
    L = [list(x[c1 * c2 + i * r2: c1 * c2 + (i + 1) * r2]) for i in range(r1)]
    return R, L


def _decouple(Fc, Gc, P, Q, subblocks):
    """Zero every coupling above the block diagonal, updating ``P`` and ``Q`` in place."""
    pairs = []
    for a in subblocks:
        for b in subblocks:
            if a["group"] < b["group"]:
                pairs.append((b["group"] - a["group"], a, b))
    pairs.sort(key=lambda t: t[0])
    for _, a, b in pairs:
        ra, ca, rb, cb = a["rows"], a["cols"], b["rows"], b["cols"]
        r1, c1, r2, c2 = len(ra), len(ca), len(rb), len(cb)
        if r1 == 0 or c2 == 0:
            continue
        XF = _sub(Fc, ra, cb)
        XG = _sub(Gc, ra, cb)
        if not any(any(row) for row in XF) and not any(any(row) for row in XG):
            continue
        R, L = _solve_coupling(_sub(Fc, ra, ca), _sub(Gc, ra, ca), _sub(Fc, rb, cb),
                               _sub(Gc, rb, cb), XF, XG, r1, c1, r2, c2)
        # rows of block a  +=  L @ rows of block b
        for M in (Fc, Gc, P):
            width = len(M[0]) if M else 0
            for i, ri in enumerate(ra):
                lrow = L[i]
                target = M[ri]
                for y, ry in enumerate(rb):
                    coef = lrow[y]
                    if coef:
                        src = M[ry]
                        for j in range(width):
                            if src[j]:
                                target[j] = target[j] + coef * src[j]
        # columns of block b  +=  columns of block a @ R
        for M in (Fc, Gc, Q):
            for row in M:
                for u, cu in enumerate(ca):
                    val = row[cu]
                    if val:
                        Ru = R[u]
                        for v, cv in enumerate(cb):
                            if Ru[v]:
                                row[cv] = row[cv] + val * Ru[v]


# ---------------------------------------------------------------------------
# driver


_KIND_ORDER = {
    BlockKind.FINITE_JORDAN: 0,
    BlockKind.INFINITE_NILPOTENT: 1,
    BlockKind.COLUMN_MINIMAL: 2,
    BlockKind.ROW_MINIMAL: 3,
}


def _first_nonzero(values):
    for x in values:
        if x:
            return x
    return None


def kronecker_structure(pencil: MatrixPencil) -> KroneckerStructure:
    """Invariants of ``sF - G`` with exact ``P``, ``Q`` such that ``P (sF - G) Q`` is canonical."""
    F, G = pencil.F, pencil.G
    r, m = F.shape
    S, T, grows, gcols = _triangularize(F, G)
    Sinv = inverse(S)
    Ft = Sinv @ F @ T
    Gt = Sinv @ G @ T

    row_starts = [sum(grows[:i]) for i in range(5)]
    col_starts = [sum(gcols[:i]) for i in range(5)]

    def diag(M, g):
        return M.submatrix(range(row_starts[g], row_starts[g + 1]),
                           range(col_starts[g], col_starts[g + 1]))

    for gi in range(4):
        for gj in range(gi):
            for M in (Ft, Gt):
                if not M.submatrix(range(row_starts[gi], row_starts[gi + 1]),
                                   range(col_starts[gj], col_starts[gj + 1])).is_zero():
                    raise ConsistencyError("Wong decomposition is not block triangular")

    canon = (
        _column_minimal(diag(Ft, 0), diag(Gt, 0)),
        _finite_regular(diag(Ft, 1), diag(Gt, 1)),
        _infinite_regular(diag(Ft, 2), diag(Gt, 2)),
        _row_minimal(diag(Ft, 3), diag(Gt, 3)),
    )
    Sd_inv = Matrix.block_diag([inverse(c[0]) for c in canon])
    Td = Matrix.block_diag([c[1] for c in canon])
    Fc = (Sd_inv @ Ft @ Td).row_lists()
    Gc = (Sd_inv @ Gt @ Td).row_lists()
    P = (Sd_inv @ Sinv).row_lists()
    Q = (T @ Td).row_lists()

    subblocks = []
    for g, (_, _, blocks) in enumerate(canon):
        r0, c0 = row_starts[g], col_starts[g]
        for kind, nr, nc, param in blocks:
            subblocks.append({"group": g, "kind": kind, "param": param,
                              "rows": list(range(r0, r0 + nr)), "cols": list(range(c0, c0 + nc))})
            r0 += nr
            c0 += nc

    _decouple(Fc, Gc, P, Q, subblocks)

    main = [b for b in subblocks if b["kind"] is not BlockKind.ZERO_BLOCK]
    # finite blocks already follow divisor order; the rest are sorted by size
    finite = [b for b in main if b["kind"] is BlockKind.FINITE_JORDAN]
    others = sorted((b for b in main if b["kind"] is not BlockKind.FINITE_JORDAN),
                    key=lambda b: (_KIND_ORDER[b["kind"]], b["param"]))
    zero_rows = [i for b in subblocks if b["kind"] is BlockKind.ZERO_BLOCK for i in b["rows"]]
    zero_cols = [j for b in subblocks if b["kind"] is BlockKind.ZERO_BLOCK for j in b["cols"]]
    ordered = finite + others
    row_perm = [i for b in ordered for i in b["rows"]] + zero_rows
    col_perm = [j for b in ordered for j in b["cols"]] + zero_cols

    P = [list(P[i]) for i in row_perm]
    Q = [[row[j] for j in col_perm] for row in Q]

    # normalize: first nonzero of each block's leading Q column becomes 1
    r0 = c0 = 0
    for b in ordered:
        nr, nc = len(b["rows"]), len(b["cols"])
        lead = _first_nonzero(row[c0] for row in Q)
        if lead is not None and lead != 1:
            for row in Q:
                for j in range(c0, c0 + nc):
                    row[j] = row[j] / lead
            for i in range(r0, r0 + nr):
                P[i] = [x * lead for x in P[i]]
        r0 += nr
        c0 += nc
    for j in range(c0, m):
        lead = _first_nonzero(row[j] for row in Q)
        if lead is not None and lead != 1:
            for row in Q:
                row[j] = row[j] / lead
    for i in range(r0, r):
        lead = _first_nonzero(P[i])
        if lead is not None and lead != 1:
            P[i] = [x / lead for x in P[i]]

    structure = KroneckerStructure(
        finite_divisors=tuple(b["param"] for b in finite),
        infinite_degrees=tuple(b["param"] for b in others
                               if b["kind"] is BlockKind.INFINITE_NILPOTENT),
        cmi=tuple([b["param"] for b in others if b["kind"] is BlockKind.COLUMN_MINIMAL]
                  + [0] * len(zero_cols)),
        rmi=tuple([b["param"] for b in others if b["kind"] is BlockKind.ROW_MINIMAL]
                  + [0] * len(zero_rows)),
        P=Matrix._from_lists(P, r, r),
        Q=Matrix._from_lists(Q, m, m),
    )
    if not verify_equivalence(pencil, structure.P, structure.Q, assemble_canonical(structure)):
        raise ConsistencyError("computed transforms do not reach the canonical form")
    return structure


def finite_part(structure: KroneckerStructure, pencil: MatrixPencil) -> FiniteRegularPart:
    """``Qp`` (leading ``p`` columns of ``Q``) and ``W`` (the finite block of ``G_K``)."""
    if structure.Q is None:
        raise ConsistencyError("structure carries no transforms; compute it from the pencil")
    p = structure.p
    m = pencil.m
    Qp = structure.Q.submatrix(range(m), range(p))
    W = assemble_canonical(structure).G.submatrix(range(p), range(p))
    if pencil.F @ Qp @ W != pencil.G @ Qp:
        raise ConsistencyError("deflation identity F Qp W = G Qp fails")
    return FiniteRegularPart(Qp, W)
