"""Exact arithmetic in the Gaussian rationals Q(i).

Real and imaginary parts are ``gmpy2.mpq`` values, which are always kept in
lowest terms with a positive denominator.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq, is_square, isqrt

__all__ = ["GaussianRational", "I", "ONE", "ZERO", "as_gaussian", "QZERO", "QONE"]

QZERO = mpq(0)
QONE = mpq(1)

_NUM = r"\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^[+-]?{_NUM}$")
_IMAG_RE = re.compile(rf"^[+-]?(?:{_NUM}\*?)?i$")


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.replace(" ", "").lstrip("+"))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _make(cls, re: mpq, im: mpq) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"p/q"``, ``"p/q+r/s*i"``, ``"r/s*i"``, ``"-i"`` and similar."""
        if not isinstance(text, str):
            return as_gaussian(text)
        t = text.replace(" ", "")
        if _REAL_RE.match(t):
            return cls._make(_q(t), QZERO)
        # split off a trailing imaginary term at the last interior sign
        cut = max(t.rfind("+"), t.rfind("-"))
        head, tail = (t[:cut], t[cut:]) if cut > 0 else ("", t)
        if not _IMAG_RE.match(tail) or (head and not _REAL_RE.match(head)):
            raise ValueError(f"not a Gaussian rational: {text!r}")
        body = tail[:-1].rstrip("*")
        if body in ("", "+"):
            im_part = QONE
        elif body == "-":
            im_part = -QONE
        else:
            im_part = _q(body)
        re_part = _q(head) if head else QZERO
        return cls._make(re_part, im_part)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._make(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._make(a * c, QZERO)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational._make(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = ONE
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self) -> "GaussianRational | None":
        """Exact square root in Q(i) (the one with positive real part, or
        positive imaginary part when purely imaginary), or None."""
        a, b = self.re, self.im
        if not a and not b:
            return ZERO
        r = _qsqrt(a * a + b * b)
        if r is None:
            return None
        x = _qsqrt((a + r) / 2)
        y = _qsqrt((r - a) / 2)
        if x is None or y is None:
            return None
        if b < 0:
            y = -y
        if x == 0 and y < 0:
            y = -y
        cand = GaussianRational._make(x, y)
        return cand if cand * cand == self else None

    # comparisons ------------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # text -------------------------------------------------------------------
    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_text(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{_imag_text(abs(self.im))}"

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"


def _imag_text(im: mpq) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def _qsqrt(x: mpq):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    if is_square(n) and is_square(d):
        return mpq(isqrt(n), isqrt(d))
    return None


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, mpq, Fraction)):
        return GaussianRational._make(mpq(x), QZERO)
    if isinstance(x, Rational):
        return GaussianRational._make(mpq(x.numerator, x.denominator), QZERO)
    if isinstance(x, complex):
        raise TypeError("floating point complex values are not exact")
    return None


def as_gaussian(x) -> GaussianRational:
    """Convert ints, rationals and strings to :class:`GaussianRational`."""
    if isinstance(x, str):
        return GaussianRational.parse(x)
    g = _coerce(x)
    if g is None:
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")
    return g


ZERO = GaussianRational._make(QZERO, QZERO)
ONE = GaussianRational._make(QONE, QZERO)
I = GaussianRational._make(QZERO, QONE)
