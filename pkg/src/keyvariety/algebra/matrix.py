"""Matrices of polynomials and their minors."""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..errors import ContractViolation
from .poly import MultiPoly


class PolyMatrix:
    def __init__(self, rows: Sequence[Sequence[MultiPoly]]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ContractViolation("matrix must have positive size")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ContractViolation("ragged matrix")
        ctx = rows[0][0].ctx
        for r in rows:
            for e in r:
                if not isinstance(e, MultiPoly) or e.ctx.names != ctx.names:
                    raise ContractViolation("matrix entries must share one context")
        self.ctx = ctx
        self._rows = tuple(tuple(r) for r in rows)

    @classmethod
    def parse(cls, ctx, rows: Sequence[Sequence], **env) -> "PolyMatrix":
        def conv(x):
            if isinstance(x, MultiPoly):
                return x
            if isinstance(x, str):
                return MultiPoly.parse(ctx, x, **env)
            return MultiPoly.constant(ctx, x)
        return cls([[conv(x) for x in r] for r in rows])

    @property
    def shape(self):
        return len(self._rows), len(self._rows[0])

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def column(self, j):
        return [r[j] for r in self._rows]

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in r] for r in self._rows])

    def submatrix(self, rows, cols) -> "PolyMatrix":
        return PolyMatrix([[self._rows[i][j] for j in cols] for i in rows])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self._rows == other._rows

    def det(self) -> MultiPoly:
        n, m = self.shape
        if n != m:
            raise ContractViolation("determinant of a non-square matrix")
        return _det([list(r) for r in self._rows])

    def minors(self, k: int) -> list:
        """All k×k minors; row subsets outer, column subsets inner, both in
        lexicographic order of index tuples."""
        n, m = self.shape
        if not 1 <= k <= min(n, m):
            raise ContractViolation(f"minor size {k} out of range for {n}x{m} matrix")
        out = []
        for rs in combinations(range(n), k):
            for cs in combinations(range(m), k):
                out.append(_det([[self._rows[i][j] for j in cs] for i in rs]))
        return out

    def to_text(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in r) + "]" for r in self._rows)

    __str__ = to_text


def _det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = MultiPoly.zero(a[0][0].ctx)
    for j in range(n):
        if a[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * _det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total
