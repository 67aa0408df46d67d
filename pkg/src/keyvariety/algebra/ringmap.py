"""Substitution homomorphisms between polynomial rings."""
from __future__ import annotations

from typing import Mapping

from ..errors import ContractViolation
from .context import VariableContext
from .poly import MultiPoly, is_homogeneous


class RingMap:
    """The ring map sending each source variable to a polynomial in the target.

    Variables without an explicit image go to the same-named target
    variable.  When both contexts are weighted, every image must be
    homogeneous of its source variable's weight.
    """

    def __init__(self, source: VariableContext, target: VariableContext,
                 images: Mapping, *, check: bool = True, **env):
        self.source = source
        self.target = target
        imgs = []
        for name in source.names:
            if name in images:
                v = images[name]
                if isinstance(v, str):
                    v = MultiPoly.parse(target, v, **env)
                elif isinstance(v, MultiPoly):
                    if v.ctx.names != target.names:
                        v = v.embed(target)
                else:
                    v = MultiPoly.constant(target, v)
            elif name in target:
                v = MultiPoly.var(target, name)
            else:
                raise ContractViolation(f"no image given for source variable {name!r}")
            imgs.append(v)
        extra = set(images) - set(source.names)
        if extra:
            raise ContractViolation(f"images for unknown variables {sorted(extra)}")
        self.images = tuple(imgs)
        if check and source.weights is not None and target.weights is not None:
            for name, w, img in zip(source.names, source.weights, imgs):
                h = is_homogeneous(img)
                if not h.homogeneous or (h.degree is not None and h.degree != w):
                    raise ContractViolation(
                        f"image of {name} is not homogeneous of weight {w}: {img}")

    def image(self, name: str) -> MultiPoly:
        return self.images[self.source.index(name)]

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return self.substitute(p)

    def substitute(self, p: MultiPoly) -> MultiPoly:
        if p.ctx.names != self.source.names:
            raise ContractViolation(
                f"polynomial in {p.ctx.names} given to map from {self.source.names}")
        powers = [dict() for _ in self.images]
        return self._subst(p._t, 0, powers)

    def _power(self, k, e, powers):
        cache = powers[k]
        if e not in cache:
            if e == 1:
                cache[e] = self.images[k]
            else:
                half = self._power(k, e // 2, powers)
                sq = half * half
                cache[e] = sq * self.images[k] if e % 2 else sq
        return cache[e]

    def _subst(self, terms, k, powers):
        ctx = self.source
        if k == len(ctx):
            return MultiPoly.constant(self.target, terms.get(0, 0))
        shift = ctx._shifts[k]
        groups = {}
        for m, c in terms.items():
            e = (m >> shift) & 0xFFFF
            groups.setdefault(e, {})[m - (e << shift)] = c
        total = MultiPoly.zero(self.target)
        for e in sorted(groups):
            rest = self._subst(groups[e], k + 1, powers)
            total = total + (rest if e == 0 else rest * self._power(k, e, powers))
        return total

    def compose(self, inner: "RingMap") -> "RingMap":
        """``self ∘ inner`` as maps of spaces: substitute ``inner`` first."""
        if inner.target.names != self.source.names:
            raise ContractViolation("contexts do not compose")
        return RingMap(inner.source, self.target,
                       {n: self(img) for n, img in zip(inner.source.names, inner.images)},
                       check=False)

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, ctx, {})

    def __repr__(self):
        pairs = ", ".join(f"{n} -> {img}" for n, img in zip(self.source.names, self.images))
        return f"RingMap({pairs})"
