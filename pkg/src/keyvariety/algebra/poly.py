"""Sparse multivariate polynomials over Q(i) in a fixed variable context."""
from __future__ import annotations

import ast
from dataclasses import dataclass
from typing import Iterable, Mapping

from ..errors import ContractViolation
from . import _backend as K
from .context import MAX_EXPONENT, VariableContext
from .gaussian import I, ONE, ZERO, GaussianRational, as_gaussian

__all__ = ["MultiPoly", "Homogeneity", "divide", "is_homogeneous"]


class MultiPoly:
    """Immutable polynomial ``sum c_m x^m`` with coefficients in Q(i).

    Terms live in a dict keyed by packed exponent vectors (see
    :mod:`keyvariety.algebra.context`); zero coefficients are never stored, so
    equality of term dicts is equality of polynomials.
    """

    __slots__ = ("ctx", "_t", "_hash", "_maxdeg")

    def __init__(self, ctx: VariableContext, terms: Mapping | None = None):
        self.ctx = ctx
        self._hash = None
        self._maxdeg = None
        t = {}
        if terms:
            for exps, c in terms.items():
                c = as_gaussian(c)
                if c:
                    m = ctx.pack(exps)
                    prev = t.get(m)
                    s = c if prev is None else prev + c
                    if s:
                        t[m] = s
                    else:
                        t.pop(m, None)
        self._t = t

    @classmethod
    def _raw(cls, ctx, t: dict) -> "MultiPoly":
        p = object.__new__(cls)
        p.ctx = ctx
        p._t = t
        p._hash = None
        p._maxdeg = None
        return p

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, ctx):
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx, c):
        c = as_gaussian(c)
        return cls._raw(ctx, {0: c} if c else {})

    @classmethod
    def one(cls, ctx):
        return cls._raw(ctx, {0: ONE})

    @classmethod
    def var(cls, ctx, name: str, power: int = 1):
        return cls._raw(ctx, {ctx.var_mono(name, power): ONE})

    @classmethod
    def monomial(cls, ctx, packed: int, coeff=ONE):
        c = as_gaussian(coeff)
        return cls._raw(ctx, {packed: c} if c else {})

    @classmethod
    def parse(cls, ctx, text: str, **env) -> "MultiPoly":
        """Evaluate an arithmetic expression over the context's variables.

        ``^`` and ``**`` both mean power, ``i`` is the imaginary unit unless it
        names a variable, and keyword arguments bind extra names to
        polynomials or scalars.
        """
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _Evaluator(ctx, env).visit(tree.body)

    def variables_of(self):
        return {n: MultiPoly.var(self.ctx, n) for n in self.ctx.names}

    # basic queries ----------------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self):
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> GaussianRational:
        return self._t.get(0, ZERO)

    def terms(self) -> list:
        """``[(exponents, coefficient), ...]`` in descending lex order."""
        ctx = self.ctx
        return [(ctx.unpack(m), self._t[m]) for m in sorted(self._t, reverse=True)]

    def packed_terms(self) -> dict:
        return dict(self._t)

    def coefficient(self, exps) -> GaussianRational:
        if isinstance(exps, Mapping):
            v = [0] * len(self.ctx)
            for name, e in exps.items():
                v[self.ctx.index(name)] = e
            exps = v
        return self._t.get(self.ctx.pack(exps), ZERO)

    def leading(self):
        if not self._t:
            return None
        m = max(self._t)
        return self.ctx.unpack(m), self._t[m]

    def total_degree(self) -> int:
        if self._maxdeg is None:
            self._maxdeg = max((sum(self.ctx.unpack(m)) for m in self._t), default=0)
        return self._maxdeg

    def degree(self, name: str) -> int:
        k = self.ctx.index(name)
        return max((self.ctx.exponent(m, k) for m in self._t), default=0)

    def variables(self) -> tuple:
        used = 0
        for m in self._t:
            used |= m
        return tuple(n for k, n in enumerate(self.ctx.names) if self.ctx.exponent(used, k))

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContractViolation(
                    f"context mismatch: {self.ctx.names} vs {other.ctx.names}")
            return other
        try:
            return MultiPoly.constant(self.ctx, as_gaussian(other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._t:
            return self
        return MultiPoly._raw(self.ctx, K.add_scaled(self._t, o._t))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.ctx, {m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MultiPoly._raw(self.ctx, K.add_scaled(self._t, o._t, -ONE))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            o = self._coerce(other)
            if self.total_degree() + o.total_degree() > MAX_EXPONENT:
                raise OverflowError("exponent exceeds packed monomial range")
            return MultiPoly._raw(self.ctx, K.mul_terms(self._t, o._t))
        try:
            c = as_gaussian(other)
        except TypeError:
            return NotImplemented
        return MultiPoly._raw(self.ctx, K.scale_terms(self._t, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise ContractViolation("division only by nonzero constants")
            other = other.constant_term()
        c = as_gaussian(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * c.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ContractViolation("power must be a non-negative integer")
        if n and self.total_degree() * n > MAX_EXPONENT:
            raise OverflowError("exponent exceeds packed monomial range")
        result = MultiPoly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ctx.names == other.ctx.names and self._t == other._t
        try:
            c = as_gaussian(other)
        except TypeError:
            return NotImplemented
        return self._t == ({0: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.names, frozenset(self._t.items())))
        return self._hash

    # evaluation and restriction --------------------------------------------
    def evaluate(self, point) -> GaussianRational:
        """Value at a point given as a name->scalar mapping or a sequence."""
        vals = self._point(point)
        total = ZERO
        for exps, c in self.terms():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def _point(self, point):
        if isinstance(point, Mapping):
            missing = [n for n in self.variables() if n not in point]
            if missing:
                raise ContractViolation(f"no value for {missing}")
            return [as_gaussian(point.get(n, 0)) for n in self.ctx.names]
        if len(point) != len(self.ctx):
            raise ContractViolation("point has wrong length")
        return [as_gaussian(v) for v in point]

    def restrict(self, assignment: Mapping) -> "MultiPoly":
        """Substitute scalars for some variables, staying in the same context."""
        idx = {self.ctx.index(n): as_gaussian(v) for n, v in assignment.items()}
        ctx = self.ctx
        out = {}
        for m, c in self._t.items():
            for k, v in idx.items():
                e = ctx.exponent(m, k)
                if e:
                    c = c * v ** e
                    m -= e << ctx._shifts[k]
            if c:
                prev = out.get(m)
                s = c if prev is None else prev + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return MultiPoly._raw(ctx, out)

    def embed(self, ctx: VariableContext) -> "MultiPoly":
        """The same polynomial in another context, matching variables by name."""
        if ctx is self.ctx:
            return self
        src = self.ctx
        used = self.variables()
        for n in used:
            if n not in ctx:
                raise ContractViolation(f"variable {n!r} missing from target context")
        pairs = [(src.index(n), ctx.index(n)) for n in used]
        out = {}
        for m, c in self._t.items():
            nm = 0
            for ks, kt in pairs:
                e = src.exponent(m, ks)
                if e:
                    nm |= e << ctx._shifts[kt]
            out[nm] = c
        return MultiPoly._raw(ctx, out)

    def collect(self, names: Iterable[str]) -> dict:
        """Split as ``sum_e x^e * P_e`` over the given variables.

        Returns ``{exponent tuple over names: P_e}`` with ``P_e`` in the same
        context and free of those variables.
        """
        ctx = self.ctx
        ks = [ctx.index(n) for n in names]
        out = {}
        for m, c in self._t.items():
            key = tuple(ctx.exponent(m, k) for k in ks)
            rest = m
            for k, e in zip(ks, key):
                rest -= e << ctx._shifts[k]
            out.setdefault(key, {})[rest] = c
        return {k: MultiPoly._raw(ctx, t) for k, t in out.items()}

    def map_coefficients(self, fn) -> "MultiPoly":
        out = {}
        for m, c in self._t.items():
            v = as_gaussian(fn(c))
            if v:
                out[m] = v
        return MultiPoly._raw(self.ctx, out)

    # text -------------------------------------------------------------------
    def to_text(self) -> str:
        if not self._t:
            return "0"
        pieces = []
        for m in sorted(self._t, reverse=True):
            sign, body = _term_text(self._t[m], self.ctx.monomial_text(m))
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = [("-" if first_sign == "-" else "") + first_body]
        for sign, body in pieces[1:]:
            out.append(f" {sign} {body}")
        return "".join(out)

    __str__ = to_text

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"


def _term_text(c: GaussianRational, mono: str):
    if c.im and c.re:
        coeff = f"({c})"
        sign = "+"
    else:
        value = c.re if c.re else c.im
        sign = "-" if value < 0 else "+"
        mag = abs(value)
        if c.im:
            coeff = "i" if mag == 1 else f"{mag}*i"
        else:
            coeff = "" if (mag == 1 and mono) else str(mag)
    if not mono:
        return sign, coeff
    return sign, f"{coeff}*{mono}" if coeff else mono


def divide(p: MultiPoly, q: MultiPoly):
    """Division with remainder by one polynomial in the lex order.

    Returns ``(quotient, remainder)`` with ``p = quotient*q + remainder`` and
    no remainder term divisible by the leading monomial of ``q``.  A single
    polynomial is a Groebner basis of the ideal it generates, so ``p`` lies
    in ``(q)`` exactly when the remainder is zero.
    """
    if p.ctx.names != q.ctx.names:
        raise ContractViolation("division across different contexts")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ctx = p.ctx
    lm = max(q._t)
    lexp = ctx.unpack(lm)
    inv = q._t[lm].inverse()
    rest = dict(p._t)
    quot = {}
    rem = {}
    while rest:
        m = max(rest)
        c = rest.pop(m)
        exps = ctx.unpack(m)
        if all(a >= b for a, b in zip(exps, lexp)):
            shift = m - lm
            k = c * inv
            quot[shift] = quot.get(shift, ZERO) + k
            for mq, cq in q._t.items():
                if mq == lm:
                    continue
                t = mq + shift
                v = rest.get(t, ZERO) - k * cq
                if v:
                    rest[t] = v
                else:
                    rest.pop(t, None)
        else:
            rem[m] = c
    return MultiPoly._raw(ctx, {m: c for m, c in quot.items() if c}), MultiPoly._raw(ctx, rem)


@dataclass(frozen=True)
class Homogeneity:
    """Verdict of a (bi)homogeneity check.

    ``degree`` is None for the zero polynomial, which is homogeneous of every
    degree.  When not homogeneous, ``witnesses`` holds two monomials (as text)
    of different degree.
    """

    homogeneous: bool
    degree: object = None
    witnesses: tuple = ()

    def __bool__(self):
        return self.homogeneous


def is_homogeneous(p: MultiPoly, bidegree: bool = False) -> Homogeneity:
    ctx = p.ctx
    if bidegree:
        if ctx.bidegrees is None:
            raise ContractViolation("context carries no bidegrees")
        deg = ctx.bidegree_of
    else:
        if ctx.weights is None:
            raise ContractViolation("context carries no weights")
        deg = ctx.degree_of
    first = None
    for m in sorted(p._t, reverse=True):
        d = deg(m)
        if first is None:
            first = (m, d)
        elif d != first[1]:
            return Homogeneity(False, None,
                               (ctx.monomial_text(first[0]) or "1", ctx.monomial_text(m) or "1"))
    return Homogeneity(True, None if first is None else first[1])


class _Evaluator(ast.NodeVisitor):
    def __init__(self, ctx, env):
        self.ctx = ctx
        self.env = env

    def _lift(self, v):
        if isinstance(v, MultiPoly):
            return v.embed(self.ctx) if v.ctx.names != self.ctx.names else v
        return MultiPoly.constant(self.ctx, v)

    def visit_Name(self, node):
        name = node.id
        if name in self.env:
            return self._lift(self.env[name])
        if name in self.ctx:
            return MultiPoly.var(self.ctx, name)
        if name == "i":
            return MultiPoly.constant(self.ctx, I)
        raise ContractViolation(f"unknown name {name!r} in expression")

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ContractViolation(f"only integer literals are allowed, got {node.value!r}")
        return MultiPoly.constant(self.ctx, node.value)

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ContractViolation("unsupported unary operator")

    def visit_BinOp(self, node):
        left = self.visit(node.left)
        if isinstance(node.op, ast.Pow):
            exp = self.visit(node.right)
            if not exp.is_constant() or exp.constant_term().im or exp.constant_term().re.denominator != 1:
                raise ContractViolation("exponent must be an integer constant")
            return left ** int(exp.constant_term().re)
        right = self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        raise ContractViolation("unsupported operator")

    def generic_visit(self, node):
        raise ContractViolation(f"unsupported syntax: {type(node).__name__}")
