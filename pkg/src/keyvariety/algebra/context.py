"""Ordered variable sets with gradings, and packed exponent vectors.

A monomial is stored as one Python int: variable ``k`` of an ``n``-variable
context occupies bits ``[BITS*(n-1-k), BITS*(n-k))``.  Integer comparison of
packed monomials is then lexicographic comparison of exponent vectors with
the first variable most significant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import ContractViolation

BITS = 16
MAX_EXPONENT = (1 << BITS) - 1
_MASK = MAX_EXPONENT


@dataclass(frozen=True)
class VariableContext:
    names: tuple
    weights: tuple | None = None
    eigensigns: tuple | None = None
    bidegrees: tuple | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _shifts: tuple = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ContractViolation(f"duplicate variable names in {names}")
        n = len(names)
        for attr in ("weights", "eigensigns", "bidegrees"):
            val = getattr(self, attr)
            if val is None:
                continue
            val = tuple(tuple(v) if attr == "bidegrees" else v for v in val)
            if len(val) != n:
                raise ContractViolation(f"{attr} has length {len(val)}, expected {n}")
            object.__setattr__(self, attr, val)
        if self.weights is not None and any(w < 0 for w in self.weights):
            raise ContractViolation("weights must be non-negative")
        if self.eigensigns is not None and any(e not in (1, -1) for e in self.eigensigns):
            raise ContractViolation("eigensigns must be +1 or -1")
        object.__setattr__(self, "_index", {v: k for k, v in enumerate(names)})
        object.__setattr__(self, "_shifts", tuple(BITS * (n - 1 - k) for k in range(n)))

    @classmethod
    def weighted(cls, spec: Sequence[tuple[str, int]], **kw) -> "VariableContext":
        """Build from ``[(name, weight), ...]``."""
        return cls(tuple(n for n, _ in spec), tuple(w for _, w in spec), **kw)

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ContractViolation(f"unknown variable {name!r} in context {self.names}") from None

    def weight(self, name: str) -> int:
        if self.weights is None:
            raise ContractViolation("context carries no weights")
        return self.weights[self.index(name)]

    # packing ----------------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != len(self.names):
            raise ContractViolation(
                f"exponent vector of length {len(exps)} for {len(self.names)} variables")
        m = 0
        for e, s in zip(exps, self._shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise ContractViolation(f"exponent {e} out of range")
            m |= e << s
        return m

    def pack_named(self, exps: dict) -> int:
        """Pack ``{name: exponent}``; unnamed variables get exponent 0."""
        v = [0] * len(self.names)
        for name, e in exps.items():
            v[self.index(name)] = e
        return self.pack(v)

    def unpack(self, m: int) -> tuple:
        return tuple((m >> s) & _MASK for s in self._shifts)

    def var_mono(self, name: str, power: int = 1) -> int:
        return power << self._shifts[self.index(name)]

    def exponent(self, m: int, k: int) -> int:
        return (m >> self._shifts[k]) & _MASK

    def degree_of(self, m: int) -> int:
        """Weighted degree of a packed monomial (total degree if unweighted)."""
        exps = self.unpack(m)
        if self.weights is None:
            return sum(exps)
        return sum(e * w for e, w in zip(exps, self.weights))

    def bidegree_of(self, m: int) -> tuple:
        if self.bidegrees is None:
            raise ContractViolation("context carries no bidegrees")
        exps = self.unpack(m)
        return (sum(e * b[0] for e, b in zip(exps, self.bidegrees)),
                sum(e * b[1] for e, b in zip(exps, self.bidegrees)))

    def monomial_text(self, m: int) -> str:
        parts = []
        for name, e in zip(self.names, self.unpack(m)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def sub(self, names: Sequence[str]) -> "VariableContext":
        """Sub-context on ``names`` (in the given order), carrying gradings."""
        idx = [self.index(n) for n in names]
        pick = lambda t: None if t is None else tuple(t[k] for k in idx)
        return VariableContext(tuple(names), pick(self.weights),
                               pick(self.eigensigns), pick(self.bidegrees))

    def extend(self, spec: Sequence[tuple[str, int]]) -> "VariableContext":
        """Append weighted variables (drops eigensigns and bidegrees)."""
        if self.weights is None:
            raise ContractViolation("extend() needs a weighted context")
        return VariableContext(self.names + tuple(n for n, _ in spec),
                               self.weights + tuple(w for _, w in spec))

    def monomials_of_degree(self, degree: int, names: Sequence[str] | None = None) -> list:
        """All packed monomials of the given weighted degree in ``names``
        (default: all variables of positive weight), in descending order."""
        if self.weights is None:
            raise ContractViolation("context carries no weights")
        use = [self.index(n) for n in (names if names is not None else self.names)]
        use = [k for k in use if self.weights[k] > 0]
        out = []

        def rec(pos, remaining, acc):
            if pos == len(use):
                if remaining == 0:
                    out.append(acc)
                return
            k = use[pos]
            w = self.weights[k]
            for e in range(remaining // w, -1, -1):
                rec(pos + 1, remaining - e * w, acc | (e << self._shifts[k]))

        rec(0, degree, 0)
        out.sort(reverse=True)
        return out
