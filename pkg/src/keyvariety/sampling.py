"""Seeded random scalars and forms with small Gaussian-rational coefficients."""
from __future__ import annotations

import random

from .algebra import GaussianRational, MultiPoly

BOUND = 7


def rng_for(seed) -> random.Random:
    return random.Random(seed)


def small_rational(rng: random.Random, nonzero: bool = True) -> str:
    lo = -BOUND
    while True:
        n = rng.randint(lo, BOUND)
        if n or not nonzero:
            break
    return f"{n}/{rng.randint(1, BOUND)}"


def small_scalar(rng: random.Random, nonzero: bool = True, complex_prob: float = 0.5) -> GaussianRational:
    """Numerators and denominators bounded by 7; imaginary part present with
    probability ``complex_prob``."""
    re = small_rational(rng, nonzero)
    if rng.random() < complex_prob:
        im = small_rational(rng, nonzero=False)
        return GaussianRational(re, im)
    return GaussianRational(re)


def random_form(ctx, monomials, rng: random.Random, **kw) -> MultiPoly:
    """Linear combination of the given packed monomials with random coefficients."""
    return MultiPoly._raw(ctx, {m: small_scalar(rng, **kw) for m in monomials})


def bihomogeneous_monomials(ctx, first, second, bidegree):
    """Packed monomials of bidegree ``(a, b)`` in variable pairs ``first`` and ``second``."""
    a, b = bidegree
    out = []
    for i in range(a, -1, -1):
        for j in range(b, -1, -1):
            out.append(ctx.pack_named({first[0]: i, first[1]: a - i,
                                       second[0]: j, second[1]: b - j}))
    return sorted(out, reverse=True)
