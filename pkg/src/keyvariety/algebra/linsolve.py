"""Exact linear solving over Q(i) by sparse Gauss–Jordan elimination.

Pivoting is "first nonzero": columns are processed left to right and the
pivot for a column is the first remaining row (in input order) with a
nonzero entry there.  Free variables are set to zero in the particular
solution, so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..errors import ContractViolation
from . import _backend as K
from .gaussian import ZERO, as_gaussian


@dataclass
class LinearSolution:
    status: str  # "unique", "underdetermined" or "inconsistent"
    solution: list | None
    nullspace: list = field(default_factory=list)
    rank: int = 0
    pivots: tuple = ()
    inconsistent_row: int | None = None

    @property
    def consistent(self) -> bool:
        return self.status != "inconsistent"


def _as_row(row, ncols):
    if isinstance(row, Mapping):
        out = {}
        for j, v in row.items():
            if not 0 <= j < ncols:
                raise ContractViolation(f"column index {j} out of range")
            v = as_gaussian(v)
            if v:
                out[j] = v
        return out
    if len(row) != ncols:
        raise ContractViolation("row length does not match column count")
    return {j: g for j, v in enumerate(row) if (g := as_gaussian(v))}


def solve_linear_exact(system: Sequence, rhs: Sequence, ncols: int | None = None) -> LinearSolution:
    """Solve ``system · x = rhs``.

    ``system`` is a sequence of rows, each either a dense sequence or a
    sparse ``{column: value}`` mapping (then ``ncols`` is required).
    """
    if len(system) != len(rhs):
        raise ContractViolation("row count of system and rhs differ")
    if ncols is None:
        if not system:
            raise ContractViolation("cannot infer column count of an empty system")
        if isinstance(system[0], Mapping):
            raise ContractViolation("ncols is required for sparse rows")
        ncols = len(system[0])
    n = ncols
    rows = []
    for k, (row, b) in enumerate(zip(system, rhs)):
        r = _as_row(row, n)
        b = as_gaussian(b)
        if b:
            r[n] = b
        rows.append((k, r))

    # column -> list of row positions that may contain it (lazily validated)
    remaining = rows
    pivots = []
    for col in range(n):
        hit = None
        for pos, (k, r) in enumerate(remaining):
            if col in r:
                hit = pos
                break
        if hit is None:
            continue
        k, piv = remaining.pop(hit)
        inv = piv[col].inverse()
        piv = K.scale_terms(piv, inv)
        for _, r in remaining:
            c = r.get(col)
            if c is not None:
                K.sub_scaled_inplace(r, piv, c)
        pivots.append((col, piv))

    for k, r in remaining:
        if r:
            # only the augmented column can survive
            return LinearSolution("inconsistent", None, [], len(pivots),
                                  tuple(c for c, _ in pivots), k)

    # back substitution to reduced row echelon form
    for idx in range(len(pivots) - 1, -1, -1):
        col, piv = pivots[idx]
        for jdx in range(idx):
            r = pivots[jdx][1]
            c = r.get(col)
            if c is not None:
                K.sub_scaled_inplace(r, piv, c)

    x = [ZERO] * n
    pivot_cols = {}
    for col, piv in pivots:
        x[col] = piv.get(n, ZERO)
        pivot_cols[col] = piv
    free = [j for j in range(n) if j not in pivot_cols]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = as_gaussian(1)
        for col, piv in pivot_cols.items():
            c = piv.get(f)
            if c is not None:
                v[col] = -c
        lead = next(e for e in v if e)
        inv = lead.inverse()
        basis.append([e * inv for e in v])
    status = "underdetermined" if free else "unique"
    return LinearSolution(status, x, basis, len(pivots), tuple(pivot_cols))
