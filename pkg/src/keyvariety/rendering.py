"""Writing forms on P^1 and P^1 x P^1 in Veronese / Segre coordinates.

A form of even degree in ``s1, s2`` is a polynomial in ``y1 = s1^2,
y2 = s1 s2, y3 = s2^2``; a form of bidegree ``(n, n)`` in ``s1, s2; t1, t2``
is a polynomial in ``y1 = s1 t1, y2 = s2 t1, y3 = s1 t2, y4 = s2 t2``.  The
answer is unique only modulo the quadric relation among the ``y``, so a
fixed greedy rule picks one: walk the ``y`` in order and use each as often
as the remaining exponents allow.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import MultiPoly, RingMap, VariableContext
from .algebra.poly import divide
from .errors import ContractViolation, RenderError

__all__ = [
    "RenderTarget", "VERONESE", "SEGRE", "render", "pullback", "split",
    "split_bihomogeneous", "verify_render_ambiguity",
]


@dataclass(frozen=True)
class RenderTarget:
    kind: str
    base: VariableContext
    ambient: VariableContext
    images: tuple  # exponent vector over base for each ambient variable
    relation: str

    def pullback_map(self) -> RingMap:
        return RingMap(self.ambient, self.base,
                       {y: MultiPoly(self.base, {e: 1}) for y, e in
                        zip(self.ambient.names, self.images)})

    def relation_poly(self) -> MultiPoly:
        return MultiPoly.parse(self.ambient, self.relation)

    def degree_ok(self, exps) -> bool:
        if self.kind == "veronese":
            return sum(exps) % 2 == 0
        return exps[0] + exps[1] == exps[2] + exps[3]


VERONESE = RenderTarget(
    "veronese",
    VariableContext(("s1", "s2"), (1, 1)),
    VariableContext(("y1", "y2", "y3"), (2, 2, 2)),
    ((2, 0), (1, 1), (0, 2)),
    "y1*y3 - y2^2",
)

SEGRE = RenderTarget(
    "segre",
    VariableContext(("s1", "s2", "t1", "t2"), (1, 1, 1, 1),
                    bidegrees=((1, 0), (1, 0), (0, 1), (0, 1))),
    VariableContext(("y1", "y2", "y3", "y4"), (2, 2, 2, 2)),
    ((1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1)),
    "y1*y4 - y2*y3",
)


def _to_base(p: MultiPoly, target: RenderTarget) -> MultiPoly:
    extra = [n for n in p.variables() if n not in target.base]
    if extra:
        raise ContractViolation(
            f"{target.kind} rendering takes forms in {target.base.names}; got {extra}")
    return p.embed(target.base)


def _render_monomial(exps, target: RenderTarget):
    rest = list(exps)
    out = []
    for img in target.images:
        k = min((r // e for r, e in zip(rest, img) if e), default=0)
        out.append(k)
        if k:
            rest = [r - k * e for r, e in zip(rest, img)]
    if any(rest):
        return None
    return tuple(out)


def render(p: MultiPoly, target: RenderTarget, into: VariableContext | None = None) -> MultiPoly:
    """A polynomial in the target coordinates pulling back to ``p``.

    ``into`` optionally names a larger context containing the target
    coordinates, for building equations directly in an ambient ring.
    """
    p = _to_base(p, target)
    degrees = set()
    out = {}
    for exps, c in p.terms():
        mono = target.base.monomial_text(target.base.pack(exps)) or "1"
        if not target.degree_ok(exps):
            raise RenderError(f"monomial {mono} cannot be written in {target.kind} "
                              "coordinates", monomial=mono)
        degrees.add(sum(exps))
        ys = _render_monomial(exps, target)
        if ys is None:  # unreachable for balanced input
            raise RenderError(f"greedy rendering of {mono} failed", monomial=mono)
        out[ys] = c
    if len(degrees) > 1:
        raise ContractViolation(f"form is not homogeneous (degrees {sorted(degrees)})")
    q = MultiPoly(target.ambient, out)
    return q.embed(into) if into is not None else q


def pullback(q: MultiPoly, target: RenderTarget) -> MultiPoly:
    extra = [n for n in q.variables() if n not in target.ambient]
    if extra:
        raise ContractViolation(f"pullback takes polynomials in {target.ambient.names}")
    return target.pullback_map()(q.embed(target.ambient))


def split(p: MultiPoly, first: str, second: str):
    """Write ``p = first*q + second*q'``: terms divisible by ``first`` go to
    ``q``, the rest must be divisible by ``second`` and go to ``q'``."""
    ctx = p.ctx
    k1, k2 = ctx.index(first), ctx.index(second)
    q, qq = {}, {}
    for exps, c in p.terms():
        e = list(exps)
        if e[k1] >= 1:
            e[k1] -= 1
            q[tuple(e)] = c
        elif e[k2] >= 1:
            e[k2] -= 1
            qq[tuple(e)] = c
        else:
            raise ContractViolation(
                f"term {ctx.monomial_text(ctx.pack(exps)) or '1'} divisible by neither "
                f"{first} nor {second}")
    return MultiPoly(ctx, q), MultiPoly(ctx, qq)


def split_bihomogeneous(f: MultiPoly, multiplier: str = "t1", prefer_first: bool = True):
    """For ``f`` of bidegree (3,1) return ``(q, q')`` of bidegree (2,2) with
    ``multiplier * f = s1*q + s2*q'``."""
    f = _to_base(f, SEGRE)
    h = _bidegree(f)
    if h not in (None, (3, 1)):
        raise ContractViolation(f"expected bidegree (3, 1), got {h}")
    g = MultiPoly.var(SEGRE.base, multiplier) * f
    if prefer_first:
        return split(g, "s1", "s2")
    qq, q = split(g, "s2", "s1")
    return q, qq


def _bidegree(p: MultiPoly):
    from .algebra import is_homogeneous
    h = is_homogeneous(p, bidegree=True)
    if not h:
        raise ContractViolation(f"form is not bihomogeneous: {h.witnesses}")
    return h.degree


def _alternatives(exps, target: RenderTarget):
    """All target monomials pulling back to the base monomial ``exps``."""
    deg = sum(exps) // 2
    found = []
    for ys in product(range(deg + 1), repeat=len(target.images)):
        if sum(ys) != deg:
            continue
        img = [0] * len(exps)
        for k, y in zip(ys, target.images):
            for j, e in enumerate(y):
                img[j] += k * e
        if tuple(img) == tuple(exps):
            found.append(ys)
    return found


def verify_render_ambiguity(p: MultiPoly, target: RenderTarget) -> bool:
    """Every other choice of rendering for each monomial differs from the
    greedy choice by a multiple of the quadric relation, and pulls back to
    the same form."""
    if any(n in target.ambient for n in p.ctx.names):
        raise ContractViolation("input is already in target coordinates")
    p = _to_base(p, target)
    canon = render(p, target)
    pb = target.pullback_map()
    rel = target.relation_poly()
    for exps, c in p.terms():
        greedy = _render_monomial(exps, target)
        for ys in _alternatives(exps, target):
            if ys == greedy:
                continue
            alt = canon + MultiPoly(target.ambient, {ys: c, greedy: -c})
            diff = alt - canon
            if pb(diff) or divide(diff, rel)[1]:
                return False
    return pb(canon) == p
