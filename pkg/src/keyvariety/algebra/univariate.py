"""Dense univariate polynomials over Q(i): coefficient lists, lowest degree first."""
from __future__ import annotations

from .gaussian import ONE, ZERO, as_gaussian


def trim(p):
    p = [as_gaussian(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def derivative(p):
    return trim([c * k for k, c in enumerate(p)][1:])


def evaluate(p, x):
    x = as_gaussian(x)
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divmod_poly(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    a = list(a)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for k, bc in enumerate(b):
            a[k + shift] = a[k + shift] - c * bc
        a = trim(a)
    return trim(q), a


def monic(p):
    p = trim(p)
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a) if a else []


def squarefree_part(p):
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = gcd(p, derivative(p))
    q, _ = divmod_poly(p, g)
    return monic(q)


def distinct_root_count(p) -> int:
    """Number of distinct roots in the algebraic closure."""
    return max(degree(squarefree_part(p)), 0)


def is_squarefree(p) -> bool:
    return degree(gcd(p, derivative(p))) <= 0


def from_poly(poly, name):
    """Coefficient list of a MultiPoly in the single variable ``name``."""
    others = [n for n in poly.variables() if n != name]
    if others:
        raise ValueError(f"polynomial involves {others} besides {name}")
    d = poly.degree(name)
    k = poly.ctx.index(name)
    out = [ZERO] * (d + 1)
    for exps, c in poly.terms():
        out[exps[k]] = c
    return trim(out)


ONE_POLY = [ONE]
