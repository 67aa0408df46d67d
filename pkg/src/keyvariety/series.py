"""Truncated power series in t with coefficients in Z[e]/(e^2 - 1).

A coefficient ``a + b e`` is stored as the pair ``(a, b)``: ``a`` counts the
invariant part, ``b`` the anti-invariant part of a Z/2-graded piece.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContractViolation

DEFAULT_TRUNCATION = 12


def _mul_pair(x, y):
    (a, b), (c, d) = x, y
    return (a * c + b * d, a * d + b * c)


def _pair_text(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    e = "e" if b == 1 else "-e" if b == -1 else f"{b}e"
    if a == 0:
        return e
    if b > 0:
        return f"{a}+{e}"
    return f"{a}{e}"


@dataclass(frozen=True)
class BigradedSeries:
    """Coefficients of t^0 .. t^N, each an (invariant, anti-invariant) pair."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple((int(a), int(b)) for a, b in self.coefficients)
        if not coeffs:
            raise ContractViolation("a series needs at least the constant coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_pairs(cls, pairs: Iterable, truncation: int | None = None):
        pairs = list(pairs)
        if truncation is not None:
            pairs = (pairs + [(0, 0)] * (truncation + 1))[:truncation + 1]
        return cls(tuple(pairs))

    @classmethod
    def one(cls, truncation: int = DEFAULT_TRUNCATION):
        return cls.from_pairs([(1, 0)], truncation)

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> tuple:
        return self.coefficients[n]

    def truncate(self, n: int) -> "BigradedSeries":
        return BigradedSeries.from_pairs(self.coefficients, n)

    def __mul__(self, other: "BigradedSeries") -> "BigradedSeries":
        n = min(self.truncation, other.truncation)
        out = [(0, 0)] * (n + 1)
        for i in range(n + 1):
            x = self.coefficients[i]
            if x == (0, 0):
                continue
            for j in range(n + 1 - i):
                p = _mul_pair(x, other.coefficients[j])
                q = out[i + j]
                out[i + j] = (q[0] + p[0], q[1] + p[1])
        return BigradedSeries(tuple(out))

    def __add__(self, other):
        n = min(self.truncation, other.truncation)
        return BigradedSeries(tuple((x[0] + y[0], x[1] + y[1]) for x, y in
                                    zip(self.coefficients[:n + 1], other.coefficients[:n + 1])))

    def inverse(self) -> "BigradedSeries":
        """Multiplicative inverse; the constant term must be a unit (±1 or ±e)."""
        c0 = self.coefficients[0]
        units = {(1, 0): (1, 0), (-1, 0): (-1, 0), (0, 1): (0, 1), (0, -1): (0, -1)}
        if c0 not in units:
            raise ContractViolation(f"constant term {_pair_text(*c0)} is not a unit")
        inv0 = units[c0]
        n = self.truncation
        out = [inv0] + [(0, 0)] * n
        for k in range(1, n + 1):
            acc = (0, 0)
            for j in range(1, k + 1):
                p = _mul_pair(self.coefficients[j], out[k - j])
                acc = (acc[0] + p[0], acc[1] + p[1])
            r = _mul_pair(inv0, acc)
            out[k] = (-r[0], -r[1])
        return BigradedSeries(tuple(out))

    def __truediv__(self, other: "BigradedSeries") -> "BigradedSeries":
        n = min(self.truncation, other.truncation)
        return self.truncate(n) * other.truncate(n).inverse()

    def first_nonunit_term(self):
        """Lowest positive degree with a nonzero coefficient, as (degree, pair)."""
        for n, c in enumerate(self.coefficients[1:], start=1):
            if c != (0, 0):
                return n, c
        return None

    def to_text(self, var: str = "t") -> str:
        parts = []
        for n, (a, b) in enumerate(self.coefficients):
            if a == 0 and b == 0:
                continue
            body = _pair_text(a, b)
            if n == 0:
                parts.append(body)
                continue
            mono = var if n == 1 else f"{var}^{n}"
            if b == 0 or a == 0:
                if body == "1":
                    parts.append(mono)
                elif body == "-1":
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{body} {mono}")
            else:
                parts.append(f"({body}) {mono}")
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text + f" + O({var}^{self.truncation + 1})"

    __str__ = to_text

    def to_json(self) -> list:
        return [list(c) for c in self.coefficients]


@dataclass(frozen=True)
class DenominatorSpec:
    """A product of factors ``(1 - eps t^w)``; eps is +1 for 1 and -1 for e."""

    factors: tuple

    def __post_init__(self):
        fs = tuple((int(w), int(s)) for w, s in self.factors)
        for w, s in fs:
            if w <= 0:
                raise ContractViolation(f"factor weight {w} must be positive")
            if s not in (1, -1):
                raise ContractViolation(f"eigensign {s} must be +1 or -1")
        object.__setattr__(self, "factors", fs)

    def extend(self, *factors) -> "DenominatorSpec":
        return DenominatorSpec(self.factors + tuple(factors))

    def series(self, truncation: int) -> BigradedSeries:
        out = BigradedSeries.one(truncation)
        for f in self.factors:
            out = out * factor_series(f, truncation)
        return out


def factor_series(factor: Sequence[int], truncation: int) -> BigradedSeries:
    """The polynomial ``1 - eps t^w`` as a truncated series."""
    w, s = factor
    coeffs = [(0, 0)] * (truncation + 1)
    coeffs[0] = (1, 0)
    if w <= truncation:
        coeffs[w] = (-1, 0) if s == 1 else (0, -1)
    return BigradedSeries(tuple(coeffs))


def numerator_of(series: BigradedSeries, denom: DenominatorSpec) -> BigradedSeries:
    """``series * prod(1 - eps t^w)``, truncated at the series' degree."""
    return series * denom.series(series.truncation)


def divide_by_factor(series: BigradedSeries, factor: Sequence[int]) -> BigradedSeries:
    """Exact division by ``1 - eps t^w`` as power series."""
    w, s = factor
    if w <= 0:
        raise ContractViolation(f"factor weight {w} must be positive")
    if s not in (1, -1):
        raise ContractViolation(f"eigensign {s} must be +1 or -1")
    return series / factor_series(factor, series.truncation)


def godeaux_cover_series(truncation: int = DEFAULT_TRUNCATION) -> BigradedSeries:
    """Dimensions of the invariant and anti-invariant pieces of the
    canonical ring of the double cover of a Godeaux surface with 2-torsion.

    Riemann-Roch with chi = 1, K^2 = 1 gives h0(nK) = h0(nK + s) =
    1 + n(n-1)/2 for n >= 2; in degree 1 only the twisted piece is nonzero.
    """
    if truncation < 4:
        raise ContractViolation("truncation must be at least 4")
    coeffs = [(1, 0), (0, 1)]
    for n in range(2, truncation + 1):
        h = 1 + n * (n - 1) // 2
        coeffs.append((h, h))
    return BigradedSeries(tuple(coeffs))


# weights and eigensigns of the generators of the cover's canonical ring
GODEAUX_DENOMINATOR = DenominatorSpec(((1, -1), (2, 1), (2, -1), (2, -1),
                                       (3, 1), (3, 1), (3, -1), (3, -1)))
EXTRA_GENERATOR = (4, -1)


def hilbert_summary(truncation: int = DEFAULT_TRUNCATION) -> dict:
    """The series, its numerator over the standard denominator, and the
    numerator after adjoining an anti-invariant generator in degree 4."""
    p = godeaux_cover_series(truncation)
    num = numerator_of(p, GODEAUX_DENOMINATOR)
    num4 = numerator_of(p, GODEAUX_DENOMINATOR.extend(EXTRA_GENERATOR))
    first = num.first_nonunit_term()
    return {
        "series": p,
        "numerator": num,
        "numerator_with_degree4_generator": num4,
        "first_numerator_term": first,
    }


def generator_relation_reading(truncation: int = DEFAULT_TRUNCATION) -> list:
    """Read off what the numerators say about generators and relations."""
    s = hilbert_summary(truncation)
    deg, (inv, anti) = s["first_numerator_term"]
    lines = [f"first non-unit numerator term: degree {deg}, "
             f"{_pair_text(inv, anti)} (invariant part {inv}, anti-invariant part {anti})"]
    if anti > 0:
        lines.append(f"the anti-invariant part is positive, so an anti-invariant generator "
                     f"of degree {deg} is missing from the denominator")
    inv4, anti4 = s["numerator_with_degree4_generator"][EXTRA_GENERATOR[0]]
    lines.append(f"after adjoining it the degree-{EXTRA_GENERATOR[0]} numerator term is "
                 f"{_pair_text(inv4, anti4)}")
    if inv4 < 0 and anti4 == 0:
        lines.append(f"that is {-inv4} invariant relation(s) in degree {EXTRA_GENERATOR[0]} "
                     "which cannot eliminate the new generator")
    return lines
