"""Presentations of the curve D, its double cover E, the K3 surface T and the
projected surface T', each checked against an explicit parametrization.

Every variety here is the image of (or double covered by) something simple:
a polynomial ring, or a double cover algebra ``base[u, v]/(u^2 - f, v^2 - g)``.
An equation holds on the variety exactly when its pullback reduces to zero,
which replaces ideal membership by substitution.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (GaussianRational, MultiPoly, PolyMatrix, RingMap,
                      VariableContext, as_gaussian, is_homogeneous)
from .algebra import univariate as uni
from .errors import ContractViolation, DegenerateInput
from .rendering import SEGRE, VERONESE, render, split
from .sampling import bihomogeneous_monomials, random_form, rng_for

# ---------------------------------------------------------------------------
# double cover algebras


class CoverAlgebra:
    """``base[u, v]`` modulo ``u^2 = f`` and ``v^2 = g``.

    Every element has a unique normal form ``c0 + cu*u + cv*v + cuv*uv`` with
    coefficients in the base ring.
    """

    def __init__(self, base: VariableContext, f: MultiPoly, g: MultiPoly,
                 u: str = "u", v: str = "v"):
        for name, p in (("f", f), ("g", g)):
            bad = [n for n in p.variables() if n not in base]
            if bad:
                raise ContractViolation(f"{name} must live in the base ring, uses {bad}")
        self.base = base
        self.u, self.v = u, v
        wu = self._half_degree(f, "f")
        wv = self._half_degree(g, "g")
        weights = None if base.weights is None else base.weights + (wu, wv)
        self.ctx = VariableContext(base.names + (u, v), weights)
        self.f = f.embed(self.ctx)
        self.g = g.embed(self.ctx)
        self._fpow = [MultiPoly.one(self.ctx)]
        self._gpow = [MultiPoly.one(self.ctx)]

    def _half_degree(self, p, label):
        if self.base.weights is None:
            return None
        h = is_homogeneous(p)
        if not h:
            raise ContractViolation(f"{label} is not homogeneous: {h.witnesses}")
        if h.degree is None:
            return 1
        if h.degree % 2:
            raise ContractViolation(f"{label} has odd degree {h.degree}")
        return h.degree // 2

    def _power(self, cache, base, k):
        while len(cache) <= k:
            cache.append(cache[-1] * base)
        return cache[k]

    def reduce(self, p: MultiPoly) -> tuple:
        """Normal form ``(c0, cu, cv, cuv)`` with coefficients in the base ring."""
        if p.ctx.names != self.ctx.names:
            p = p.embed(self.ctx)
        parts = [MultiPoly.zero(self.ctx) for _ in range(4)]
        for (i, j), c in p.collect([self.u, self.v]).items():
            term = c
            if i >= 2:
                term = term * self._power(self._fpow, self.f, i // 2)
            if j >= 2:
                term = term * self._power(self._gpow, self.g, j // 2)
            k = 2 * (i % 2) + (j % 2)  # 0:1, 1:v, 2:u, 3:uv
            parts[k] = parts[k] + term
        c0, cv, cu, cuv = parts
        return tuple(x.embed(self.base) for x in (c0, cu, cv, cuv))

    def is_zero(self, p: MultiPoly) -> bool:
        return not any(self.reduce(p))

    def variable(self, name: str) -> MultiPoly:
        return MultiPoly.var(self.ctx, name)

    def parse(self, text: str, **env) -> MultiPoly:
        return MultiPoly.parse(self.ctx, text, **env)


# ---------------------------------------------------------------------------
# branch data

CURVE_BASE = VERONESE.base
K3_BASE = SEGRE.base


@dataclass(frozen=True)
class BranchData:
    """Branch forms of a double cover: binary quartics for the curve, forms
    of bidegree (3,1) and (1,3) on P^1 x P^1 for the K3 surface."""

    kind: str
    f: MultiPoly
    g: MultiPoly

    def __post_init__(self):
        if self.kind == "curve":
            base, want = CURVE_BASE, (4, 4)
            for name, p, d in (("f", self.f, want[0]), ("g", self.g, want[1])):
                p = _in_base(p, base, name)
                h = is_homogeneous(p)
                if p.is_zero() or not h or h.degree != d:
                    raise ContractViolation(f"{name} must be a nonzero binary form of degree {d}")
                object.__setattr__(self, name, p)
        elif self.kind == "k3":
            base = K3_BASE
            for name, p, d in (("f", self.f, (3, 1)), ("g", self.g, (1, 3))):
                p = _in_base(p, base, name)
                h = is_homogeneous(p, bidegree=True)
                if p.is_zero() or not h or h.degree != d:
                    raise ContractViolation(f"{name} must be a nonzero form of bidegree {d}")
                object.__setattr__(self, name, p)
        else:
            raise ContractViolation(f"unknown branch kind {self.kind!r}")

    @property
    def F(self) -> MultiPoly:
        return self.f * self.g

    @classmethod
    def curve(cls, f4, g4):
        return cls("curve", _as_poly(f4, CURVE_BASE), _as_poly(g4, CURVE_BASE))

    @classmethod
    def k3(cls, f31, g13):
        return cls("k3", _as_poly(f31, K3_BASE), _as_poly(g13, K3_BASE))

    @classmethod
    def random_curve(cls, seed=0):
        rng = rng_for(f"curve:{seed}")
        mons = CURVE_BASE.monomials_of_degree(4)
        return cls("curve", random_form(CURVE_BASE, mons, rng), random_form(CURVE_BASE, mons, rng))

    @classmethod
    def random_k3(cls, seed=0):
        rng = rng_for(f"k3:{seed}")
        fm = bihomogeneous_monomials(K3_BASE, ("s1", "s2"), ("t1", "t2"), (3, 1))
        gm = bihomogeneous_monomials(K3_BASE, ("s1", "s2"), ("t1", "t2"), (1, 3))
        return cls("k3", random_form(K3_BASE, fm, rng), random_form(K3_BASE, gm, rng))

    def squarefree(self) -> bool:
        """Whether F has no repeated factor (curve case only)."""
        if self.kind != "curve":
            raise ContractViolation("squarefree() applies to curve branch data")
        return _binary_distinct_roots(self.F, "s1", "s2") == 8


def _as_poly(p, ctx):
    return MultiPoly.parse(ctx, p) if isinstance(p, str) else p


def _in_base(p, base, name):
    bad = [n for n in p.variables() if n not in base]
    if bad:
        raise ContractViolation(f"{name} must be a form in {base.names}, uses {bad}")
    return p.embed(base)


# ---------------------------------------------------------------------------
# presentations


@dataclass
class EquationCheck:
    index: int
    text: str
    degree: object
    homogeneous: bool
    pullback_zero: bool
    terms: int

    @property
    def ok(self) -> bool:
        return self.homogeneous and self.pullback_zero


@dataclass
class VarietyPresentation:
    """Equations in a weighted ambient ring together with a map into a
    (possibly double-covered) parameter ring on which they must vanish."""

    name: str
    ambient: VariableContext
    equations: list
    parametrization: RingMap | None = None
    cover: CoverAlgebra | None = None
    metadata: dict = field(default_factory=dict)

    def pullback(self, p: MultiPoly):
        image = self.parametrization(p.embed(self.ambient))
        if self.cover is None:
            return (image,)
        return self.cover.reduce(image)

    def check(self, index: int) -> EquationCheck:
        eq = self.equations[index]
        h = is_homogeneous(eq)
        zero = self.parametrization is None or not any(self.pullback(eq))
        return EquationCheck(index, eq.to_text(), h.degree, h.homogeneous, zero, len(eq))

    def verify(self) -> list:
        return [self.check(k) for k in range(len(self.equations))]

    def verified(self) -> bool:
        return all(c.ok for c in self.verify())

    def to_json(self, checks: bool = True) -> dict:
        out = {
            "name": self.name,
            "ambient": [[n, w] for n, w in zip(self.ambient.names, self.ambient.weights)],
            "equations": [e.to_text() for e in self.equations],
            "metadata": self.metadata,
        }
        if self.parametrization is not None:
            out["parametrization"] = {n: img.to_text() for n, img in
                                      zip(self.parametrization.source.names,
                                          self.parametrization.images)}
        if self.cover is not None:
            out["cover"] = {"u^2": self.cover.f.to_text(), "v^2": self.cover.g.to_text()}
        if checks:
            out["checks"] = [
                {"index": c.index, "degree": c.degree, "homogeneous": c.homogeneous,
                 "pullback_zero": c.pullback_zero, "terms": c.terms}
                for c in self.verify()]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=str)


def dedupe(polys: Sequence[MultiPoly]) -> list:
    """Drop zeros and scalar multiples of earlier entries, keeping order."""
    seen = set()
    out = []
    for p in polys:
        if p.is_zero():
            continue
        lc = p.leading()[1]
        key = p * lc.inverse()
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# the curve D in P(2^3, 3^4, 4) and its cover E in P(1,1,2,2)

CURVE_AMBIENT = VariableContext.weighted(
    [("y1", 2), ("y2", 2), ("y3", 2), ("z1", 3), ("z2", 3), ("z3", 3), ("z4", 3), ("t", 4)])


def curve_matrix(f2: MultiPoly, g2: MultiPoly, ctx: VariableContext = CURVE_AMBIENT) -> PolyMatrix:
    return PolyMatrix.parse(ctx, [["y1", "y2", "z1", "z3"],
                                  ["y2", "y3", "z2", "z4"],
                                  ["z1", "z2", f2.embed(ctx), "t"],
                                  ["z3", "z4", "t", g2.embed(ctx)]])


def construct_curve(branch: BranchData) -> VarietyPresentation:
    if branch.kind != "curve":
        raise ContractViolation("construct_curve needs curve branch data")
    f2 = render(branch.f, VERONESE, into=CURVE_AMBIENT)
    g2 = render(branch.g, VERONESE, into=CURVE_AMBIENT)
    m = curve_matrix(f2, g2)
    raw = m.minors(2)
    eqs = dedupe(raw)
    cover = CoverAlgebra(CURVE_BASE, branch.f, branch.g)
    par = RingMap(CURVE_AMBIENT, cover.ctx, {
        "y1": "s1^2", "y2": "s1*s2", "y3": "s2^2",
        "z1": "s1*u", "z2": "s2*u", "z3": "s1*v", "z4": "s2*v", "t": "u*v"})
    meta = {"raw_minors": len(raw), "distinct_minors": len(eqs),
            "f2": f2.to_text(), "g2": g2.to_text(),
            "branch_squarefree": branch.squarefree()}
    return VarietyPresentation("D", CURVE_AMBIENT, eqs, par, cover, meta)


E_AMBIENT = VariableContext.weighted([("s1", 1), ("s2", 1), ("u", 2), ("v", 2)])

# generators of each graded piece of the cover ring of E, split by the
# eigenvalue of the deck involution (all coordinates negated)
E_EIGENSPACES = {
    0: (["1"], []),
    1: ([], ["s1", "s2"]),
    2: (["s1^2", "s1*s2", "s2^2"], ["u", "v"]),
}


def construct_E(branch: BranchData) -> VarietyPresentation:
    if branch.kind != "curve":
        raise ContractViolation("construct_E needs curve branch data")
    eqs = [MultiPoly.var(E_AMBIENT, "u", 2) - branch.f.embed(E_AMBIENT),
           MultiPoly.var(E_AMBIENT, "v", 2) - branch.g.embed(E_AMBIENT)]
    cover = CoverAlgebra(CURVE_BASE, branch.f, branch.g)
    par = RingMap(E_AMBIENT, cover.ctx, {})
    meta = {"genus": 5, "double_cover_of": "D", "complete_intersection": [4, 4],
            "eigenspaces": {str(k): {"invariant": v[0], "anti_invariant": v[1]}
                            for k, v in E_EIGENSPACES.items()}}
    return VarietyPresentation("E", E_AMBIENT, eqs, par, cover, meta)


# ---------------------------------------------------------------------------
# the K3 surface T in P(2^4, 3^4, 4)

K3_AMBIENT = VariableContext.weighted(
    [("y1", 2), ("y2", 2), ("y3", 2), ("y4", 2),
     ("z1", 3), ("z2", 3), ("z3", 3), ("z4", 3), ("t", 4)])

K3_PARAMETRIZATION = {
    "y1": "s1*t1", "y2": "s2*t1", "y3": "s1*t2", "y4": "s2*t2",
    "z1": "t1*u", "z2": "t2*u", "z3": "s1*v", "z4": "s2*v", "t": "u*v"}


def k3_matrix(ctx: VariableContext = K3_AMBIENT) -> PolyMatrix:
    return PolyMatrix.parse(ctx, [["y1", "y2", "z1"], ["y3", "y4", "z2"], ["z3", "z4", "t"]])


def construct_K3(branch: BranchData, prefer_first: bool = True) -> VarietyPresentation:
    """``prefer_first=False`` splits the z*t relations the other way round,
    for checking that the choice does not matter."""
    if branch.kind != "k3":
        raise ContractViolation("construct_K3 needs K3 branch data")
    A = K3_AMBIENT
    B = K3_BASE
    V = lambda n: MultiPoly.var(A, n)
    W = lambda n: MultiPoly.var(B, n)
    R = lambda p: render(p, SEGRE, into=A)
    f, g = branch.f, branch.g

    eqs = list(k3_matrix().minors(2))
    for z, zz, mult in (("z1", "z1", W("t1") ** 2), ("z1", "z2", W("t1") * W("t2")),
                        ("z2", "z2", W("t2") ** 2)):
        eqs.append(V(z) * V(zz) - R(mult * f))
    for z, zz, mult in (("z3", "z3", W("s1") ** 2), ("z3", "z4", W("s1") * W("s2")),
                        ("z4", "z4", W("s2") ** 2)):
        eqs.append(V(z) * V(zz) - R(mult * g))

    def pieces(p, a, b):
        if prefer_first:
            return split(p, a, b)
        q2, q1 = split(p, b, a)
        return q1, q2

    # z1 t = t1 f v = q z3 + q' z4 with t1 f = s1 q + s2 q'
    for z, mult in (("z1", "t1"), ("z2", "t2")):
        q, qq = pieces(W(mult) * f, "s1", "s2")
        eqs.append(V(z) * V("t") - R(q) * V("z3") - R(qq) * V("z4"))
    # z3 t = s1 g u = q z1 + q' z2 with s1 g = t1 q + t2 q'
    for z, mult in (("z3", "s1"), ("z4", "s2")):
        q, qq = pieces(W(mult) * g, "t1", "t2")
        eqs.append(V(z) * V("t") - R(q) * V("z1") - R(qq) * V("z2"))
    eqs.append(V("t") ** 2 - R(f * g))

    cover = CoverAlgebra(B, f, g)
    par = RingMap(A, cover.ctx, K3_PARAMETRIZATION)
    meta = {"minors": 9, "z_squares": 6, "z_t_relations": 4, "t_square": 1,
            "split": "first" if prefer_first else "second"}
    return VarietyPresentation("T", A, eqs, par, cover, meta)


# ---------------------------------------------------------------------------
# nodes of the branch curve


@dataclass(frozen=True)
class NodeCount:
    count: int
    transversal: bool
    resultant: str
    resultant_degree: int
    fibre_component: bool

    def to_json(self):
        return {"count": self.count, "transversal": self.transversal,
                "resultant_degree": self.resultant_degree,
                "fibre_component": self.fibre_component}


def _binary_coeffs(p: MultiPoly, x: str, y: str):
    """Coefficients of a binary form in ``x`` (``y`` set to 1), lowest first,
    plus the form's degree."""
    h = is_homogeneous(p)
    d = h.degree if h.degree is not None else 0
    kx = p.ctx.index(x)
    out = [GaussianRational()] * (d + 1)
    for exps, c in p.terms():
        out[exps[kx]] = c
    return out, d


def _binary_distinct_roots(p: MultiPoly, x: str, y: str) -> int:
    """Distinct zeros on P^1 of a nonzero binary form."""
    coeffs, d = _binary_coeffs(p, x, y)
    finite = uni.distinct_root_count(coeffs)
    at_infinity = 1 if not coeffs[d] else 0
    return finite + at_infinity


def node_count(branch: BranchData) -> NodeCount:
    """Number of common zeros of f (3,1) and g (1,3) on P^1 x P^1.

    Writing f = A t1 + B t2 with A, B cubic in s, the zeros of f over a point
    s are t = (-B, A), and substituting into g gives the resultant in t, a
    binary form of degree 10 in s whose distinct roots are the intersection
    points (unless A and B share a root, when f contains a whole fibre).
    """
    if branch.kind != "k3":
        raise ContractViolation("node_count needs K3 branch data")
    f, g = branch.f, branch.g
    ctx = f.ctx
    cf = f.collect(["t1", "t2"])
    cg = g.collect(["t1", "t2"])
    zero = MultiPoly.zero(ctx)
    A, B = cf.get((1, 0), zero), cf.get((0, 1), zero)
    C = [cg.get((3 - k, k), zero) for k in range(4)]
    res = -C[0] * B ** 3 + C[1] * A * B ** 2 - C[2] * A ** 2 * B + C[3] * A ** 3
    if res.is_zero():
        raise DegenerateInput("resultant vanishes identically: f and g share a component")
    distinct = _binary_distinct_roots(res, "s1", "s2")
    if A.is_zero() or B.is_zero():
        fibre = True
    else:
        common = uni.gcd(_binary_coeffs(A, "s1", "s2")[0], _binary_coeffs(B, "s1", "s2")[0])
        inf = not A.coefficient({"s1": 3}) and not B.coefficient({"s1": 3})
        fibre = uni.degree(common) > 0 or inf
    transversal = distinct == 10 and not fibre
    return NodeCount(distinct, transversal, res.to_text(), 10, fibre)


# ---------------------------------------------------------------------------
# the projected surface T'_{6,6} in P(2,2,2,3,3)

TPRIME_AMBIENT = VariableContext.weighted(
    [("y1", 2), ("y2", 2), ("y3", 2), ("z1", 3), ("z2", 3)])

P1_CONTEXT = VariableContext.weighted([("u", 1), ("v", 1)])


@dataclass(frozen=True)
class ProjectionParams:
    alpha: GaussianRational
    beta: GaussianRational
    l: tuple
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_gaussian(self.alpha))
        object.__setattr__(self, "beta", as_gaussian(self.beta))
        for name in ("l", "m"):
            v = tuple(as_gaussian(x) for x in getattr(self, name))
            if len(v) != 4:
                raise ContractViolation(f"{name} needs 4 scalars, got {len(v)}")
            object.__setattr__(self, name, v)

    @classmethod
    def make(cls, alpha=0, beta=0, l=(0, 0, 0, 0), m=(0, 0, 0, 0)):
        return cls(alpha, beta, tuple(l), tuple(m))


def q_forms(ctx: VariableContext, alpha, beta) -> tuple:
    """``(f, g, [Q1, Q2, Q3, Q4])`` with f = y1 + alpha y3, g = beta y1 + y3."""
    y1, y2, y3 = (MultiPoly.var(ctx, n) for n in ("y1", "y2", "y3"))
    f = y1 + y3 * alpha
    g = y1 * beta + y3
    return f, g, [f * y2 ** 2, y2 ** 3, g * y2 ** 2, f * g * y2]


def project_T(params: ProjectionParams) -> VarietyPresentation:
    """Two weight-6 equations ``z1^2 - y1 f^2 - sum l_i Q_i`` and
    ``z2^2 - y3 g^2 - sum m_i Q_i`` containing the image of the map
    ``(u, v) -> (u^2, 0, v^2, u(u^2 + alpha v^2), v(beta u^2 + v^2))``."""
    A = TPRIME_AMBIENT
    f, g, Q = q_forms(A, params.alpha, params.beta)
    y1, y3, z1, z2 = (MultiPoly.var(A, n) for n in ("y1", "y3", "z1", "z2"))
    eq1 = z1 ** 2 - y1 * f ** 2
    eq2 = z2 ** 2 - y3 * g ** 2
    for li, mi, q in zip(params.l, params.m, Q):
        eq1 = eq1 - q * li
        eq2 = eq2 - q * mi
    a, b = params.alpha, params.beta
    par = RingMap(A, P1_CONTEXT, {
        "y1": "u^2", "y2": 0, "y3": "v^2",
        "z1": MultiPoly.parse(P1_CONTEXT, "u^3 + a*u*v^2", a=a),
        "z2": MultiPoly.parse(P1_CONTEXT, "b*u^2*v + v^3", b=b)})
    meta = {"alpha": str(a), "beta": str(b),
            "l": [str(x) for x in params.l], "m": [str(x) for x in params.m]}
    return VarietyPresentation("Tprime", A, [eq1, eq2], par, None, meta)


# ---------------------------------------------------------------------------
# alternative descriptions as quotients of affine spaces

VERONESE_P3_AMBIENT = VariableContext.weighted(
    [("y1", 2), ("y2", 2), ("y3", 2), ("z1", 3), ("z2", 3), ("z3", 3), ("z4", 3),
     ("x1", 4), ("x2", 4), ("t", 4)])

SUVW = VariableContext.weighted([("s1", 1), ("s2", 1), ("u", 2), ("v", 2)])

# (lambda, mu) weights of the torus acting on C^2 x C^2 x C^2
TORUS_CONTEXT = VariableContext(
    ("s1", "s2", "t1", "t2", "u", "v"), (1, 1, 1, 1, 2, 2),
    bidegrees=((2, 0), (2, 0), (0, 2), (0, 2), (3, 1), (1, 3)))


@dataclass
class DescriptionReport:
    veronese_minors: int
    veronese_ok: bool
    segre_minors: int
    segre_ok: bool
    bidegrees: dict
    bidegrees_ok: bool
    branch_bidegrees: dict

    @property
    def ok(self):
        return self.veronese_ok and self.segre_ok and self.bidegrees_ok


def verify_parametrized_descriptions() -> DescriptionReport:
    A = VERONESE_P3_AMBIENT
    m = PolyMatrix.parse(A, [["y1", "y2", "z1", "z3"], ["y2", "y3", "z2", "z4"],
                             ["z1", "z2", "x1", "t"], ["z3", "z4", "t", "x2"]])
    par = RingMap(A, SUVW, {
        "y1": "s1^2", "y2": "s1*s2", "y3": "s2^2", "z1": "s1*u", "z2": "s2*u",
        "z3": "s1*v", "z4": "s2*v", "x1": "u^2", "x2": "v^2", "t": "u*v"})
    vminors = m.minors(2)
    vok = all(par(p).is_zero() for p in vminors)

    par_t = RingMap(K3_AMBIENT, TORUS_CONTEXT, K3_PARAMETRIZATION)
    sminors = k3_matrix().minors(2)
    sok = all(par_t(p).is_zero() for p in sminors)

    bideg = {}
    bok = True
    for name, img in zip(par_t.source.names, par_t.images):
        h = is_homogeneous(img, bidegree=True)
        w = K3_AMBIENT.weight(name)
        bideg[name] = h.degree
        bok &= bool(h) and h.degree == (w, w)
    u2 = is_homogeneous(MultiPoly.parse(TORUS_CONTEXT, "u^2"), bidegree=True).degree
    v2 = is_homogeneous(MultiPoly.parse(TORUS_CONTEXT, "v^2"), bidegree=True).degree
    f31 = is_homogeneous(MultiPoly.parse(TORUS_CONTEXT, "s1^3*t1"), bidegree=True).degree
    g13 = is_homogeneous(MultiPoly.parse(TORUS_CONTEXT, "s1*t1^3"), bidegree=True).degree
    bok &= (u2 == f31 == (6, 2)) and (v2 == g13 == (2, 6))
    branch = {"u^2": u2, "f31": f31, "v^2": v2, "g13": g13}
    return DescriptionReport(len(vminors), vok, len(sminors), sok, bideg, bok, branch)
