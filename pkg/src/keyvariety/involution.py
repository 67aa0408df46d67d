"""Involutions on the tower and the Godeaux layer.

Every action here is monomial: each coordinate goes to a scalar multiple of
a single coordinate of the same weight.  Points of weighted projective space
are compared up to the weighted scaling ``x_j -> mu^{w_j} x_j``; for a point
with nonzero coordinates of weights ``w_j`` the scalar ``mu^g`` with
``g = gcd(w_j)`` is pinned down by a Bezout combination of the coordinate
ratios, which keeps the test exact without extracting roots.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (GaussianRational, MultiPoly, PolyMatrix, RingMap, VariableContext,
                      as_gaussian, solve_linear_exact)
from .errors import ContractViolation, NotEigenvector
from .extension import build_Wprime, phi, rings, theorem_solution
from .rendering import VERONESE, pullback
from .tower import (CURVE_AMBIENT, E_AMBIENT, K3_AMBIENT, K3_BASE, K3_PARAMETRIZATION,
                    TPRIME_AMBIENT, BranchData, CoverAlgebra, ProjectionParams,
                    VarietyPresentation, _binary_distinct_roots, construct_K3,
                    curve_matrix, project_T)

# ---------------------------------------------------------------------------
# monomial actions


@dataclass(frozen=True)
class InvolutionSpec:
    """``images[k] = (c, j)``: variable k pulls back to ``c * x_j``.

    ``order`` is 2 or 4; ``square`` is the declared composite of the action
    with itself (``None`` meaning the identity).
    """

    name: str
    context: VariableContext
    images: tuple
    order: int = 2
    square: "InvolutionSpec | None" = None
    _map: RingMap = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        ctx = self.context
        if len(self.images) != len(ctx):
            raise ContractViolation("one image per variable is required")
        if self.order not in (2, 4):
            raise ContractViolation(f"declared order must be 2 or 4, not {self.order}")
        for k, (c, j) in enumerate(self.images):
            if not c:
                raise ContractViolation(f"{ctx.names[k]} has zero image")
            if ctx.weights is not None and ctx.weights[k] != ctx.weights[j]:
                raise ContractViolation(
                    f"{ctx.names[k]} -> {ctx.names[j]} does not preserve degree")
        if self.square is not None and self.square.context != ctx:
            raise ContractViolation("declared square lives in another context")
        images = {ctx.names[k]: MultiPoly.var(ctx, ctx.names[j]) * c
                  for k, (c, j) in enumerate(self.images)}
        object.__setattr__(self, "_map", RingMap(ctx, ctx, images, check=False))

    @classmethod
    def make(cls, name, ctx: VariableContext, mapping: dict, order=2, square=None):
        """``mapping`` sends names to texts such as ``"-z3"`` or ``"i*v"``;
        unlisted variables are fixed."""
        images = []
        for k, n in enumerate(ctx.names):
            if n not in mapping:
                images.append((GaussianRational(1), k))
                continue
            img = mapping[n]
            p = MultiPoly.parse(ctx, img) if isinstance(img, str) else img.embed(ctx)
            terms = p.terms()
            if len(terms) != 1 or sum(terms[0][0]) != 1:
                raise ContractViolation(f"image of {n} is not a multiple of one variable: {p}")
            exps, c = terms[0]
            images.append((c, exps.index(1)))
        unknown = set(mapping) - set(ctx.names)
        if unknown:
            raise ContractViolation(f"unknown variables {sorted(unknown)}")
        return cls(name, ctx, tuple(images), order, square)

    def image(self, name: str) -> MultiPoly:
        return self._map.image(name)

    def describe(self) -> dict:
        return {n: self.image(n).to_text() for n in self.context.names}


def identity_spec(ctx: VariableContext) -> InvolutionSpec:
    return InvolutionSpec("id", ctx, tuple((GaussianRational(1), k) for k in range(len(ctx))))


def act(spec: InvolutionSpec, p: MultiPoly) -> MultiPoly:
    if p.ctx != spec.context:
        raise ContractViolation(
            f"{spec.name} acts on {spec.context.names}, polynomial lives in {p.ctx.names}")
    return spec._map(p)


def compose(first: InvolutionSpec, second: InvolutionSpec) -> InvolutionSpec:
    """The action with ``act(compose(a, b), p) == act(a, act(b, p))``."""
    if first.context != second.context:
        raise ContractViolation("cannot compose actions on different rings")
    images = []
    for c, j in second.images:
        c2, j2 = first.images[j]
        images.append((c * c2, j2))
    return InvolutionSpec(f"{first.name}*{second.name}", first.context, tuple(images), 2)


def verify_order(spec: InvolutionSpec) -> bool:
    """The action composed with itself equals its declared square, and for
    order 4 that square is not the identity."""
    sq = compose(spec, spec).images
    want = (spec.square or identity_spec(spec.context)).images
    if sq != want:
        return False
    if spec.order == 4:
        return want != identity_spec(spec.context).images
    return True


def point_image(spec: InvolutionSpec, point) -> tuple:
    """Coordinates of the image point: ``sigma(p)_k = c_k p_j``."""
    pt = _coords(spec.context, point)
    return tuple(pt[j] * c for c, j in spec.images)


def _coords(ctx, point):
    if isinstance(point, dict):
        extra = set(point) - set(ctx.names)
        if extra:
            raise ContractViolation(f"point names unknown coordinates {sorted(extra)}")
        vals = [point.get(n, 0) for n in ctx.names]
    else:
        vals = list(point)
        if len(vals) != len(ctx):
            raise ContractViolation(f"point needs {len(ctx)} coordinates")
    return tuple(v if isinstance(v, MultiPoly) else as_gaussian(v) for v in vals)


# ---------------------------------------------------------------------------
# weighted projective fixedness


@dataclass(frozen=True)
class ScalingTest:
    """Whether ``image = mu^w . point`` for some mu.  ``nu = mu^g``."""

    equal: bool
    g: int | None = None
    nu: GaussianRational | None = None
    mu: GaussianRational | None = None
    reason: str = ""

    def __bool__(self):
        return self.equal

    def to_json(self):
        return {"equal": self.equal, "gcd_weight": self.g,
                "mu_power": None if self.nu is None else str(self.nu),
                "mu": None if self.mu is None else str(self.mu), "reason": self.reason}


def _is_zero(x):
    return x.is_zero() if isinstance(x, MultiPoly) else not x


def _ratio(q, p):
    """Scalar r with ``q == r p`` (p nonzero), or None."""
    if isinstance(p, MultiPoly):
        exps, lp = p.leading()
        r = q.coefficient(exps) / lp
        return r if q == p * r else None
    return q / p


def _bezout(ws):
    """Coefficients k with ``sum k_j w_j == gcd(ws)``."""
    g, ks = ws[0], [1] + [0] * (len(ws) - 1)
    for idx in range(1, len(ws)):
        w = ws[idx]
        # extended Euclid on (g, w)
        a, b, x0, x1, y0, y1 = g, w, 1, 0, 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        ks = [k * x0 for k in ks]
        ks[idx] = y0
        g = a
    return g, ks


def weighted_scaling(image, point, weights) -> ScalingTest:
    """Exact test for ``image_j = mu^{w_j} point_j`` with one scalar mu."""
    if len(image) != len(point) or len(point) != len(weights):
        raise ContractViolation("image, point and weights must have equal length")
    lift = lambda x: x if isinstance(x, MultiPoly) else as_gaussian(x)
    image, point = [lift(x) for x in image], [lift(x) for x in point]
    if all(_is_zero(x) for x in point):
        raise ContractViolation("the zero vector is not a point")
    ratios, ws = [], []
    for j, (q, p, w) in enumerate(zip(image, point, weights)):
        if _is_zero(p):
            if not _is_zero(q):
                return ScalingTest(False, reason=f"coordinate {j} is zero but its image is not")
            continue
        r = _ratio(q, p)
        if r is None or not r:
            return ScalingTest(False, reason=f"coordinate {j} is not scaled by a constant")
        if w == 0:
            if r != 1:
                return ScalingTest(False, reason=f"weight-0 coordinate {j} scales by {r}")
            continue
        ratios.append(r)
        ws.append(w)
    if not ws:
        return ScalingTest(True, None, None, None, "only weight-0 coordinates")
    g, ks = _bezout(ws)
    nu = GaussianRational(1)
    for r, k in zip(ratios, ks):
        nu = nu * (r ** k if k >= 0 else r.inverse() ** (-k))
    for r, w in zip(ratios, ws):
        if nu ** (w // g) != r:
            return ScalingTest(False, g, nu, None, f"ratio {r} is not mu^{w} for mu^{g} = {nu}")
    mu = nu if g == 1 else nu.sqrt() if g == 2 else None
    return ScalingTest(True, g, nu, mu)


def fixed_test(spec: InvolutionSpec, point) -> ScalingTest:
    pt = _coords(spec.context, point)
    return weighted_scaling(point_image(spec, pt), pt, spec.context.weights)


# ---------------------------------------------------------------------------
# the curve D and its cover E

SIGMA_E = InvolutionSpec.make("sigma_E", E_AMBIENT,
                              {"s1": "i*s1", "s2": "-i*s2", "u": "i*v", "v": "i*u"}, order=4,
                              square=InvolutionSpec.make("tau_E", E_AMBIENT,
                                                         {n: f"-{n}" for n in E_AMBIENT.names}))
TAU_E = InvolutionSpec("tau_E", E_AMBIENT, SIGMA_E.square.images, 2)

SIGMA_D = InvolutionSpec.make("sigma_D", CURVE_AMBIENT, {
    "y1": "-y1", "y3": "-y3", "z1": "-z3", "z2": "z4", "z3": "-z1", "z4": "z2", "t": "-t"})

# the curve's coordinates as functions on the cover E
CURVE_ON_E = RingMap(CURVE_AMBIENT, E_AMBIENT, {
    "y1": "s1^2", "y2": "s1*s2", "y3": "s2^2",
    "z1": "s1*u", "z2": "s2*u", "z3": "s1*v", "z4": "s2*v", "t": "u*v"})


def curve_quadrics(alphas) -> tuple:
    """``(f2, g2)`` from the six coefficients, g2 with the printed sign flips."""
    if len(alphas) != 6:
        raise ContractViolation("six coefficients alpha_1..alpha_6 are needed")
    a = [as_gaussian(x) for x in alphas]
    mons = ["y1^2", "y1*y2", "y1*y3", "y2^2", "y2*y3", "y3^2"]
    signs = [-1, 1, -1, -1, 1, -1]
    f2 = sum((MultiPoly.parse(CURVE_AMBIENT, m) * c for m, c in zip(mons, a)),
             MultiPoly.zero(CURVE_AMBIENT))
    g2 = sum((MultiPoly.parse(CURVE_AMBIENT, m) * (c * s) for m, c, s in zip(mons, a, signs)),
             MultiPoly.zero(CURVE_AMBIENT))
    return f2, g2


@dataclass
class CurveInvolutionReport:
    matrix_transform: bool
    sign_flip: bool
    induced_from_E: bool
    minors_permuted: bool
    order: dict
    fixed_strata: list
    fixed_point_free: bool

    @property
    def ok(self) -> bool:
        return (self.matrix_transform and self.sign_flip and self.induced_from_E
                and self.minors_permuted and all(self.order.values()))

    def to_json(self):
        return {"matrix_transform": self.matrix_transform, "sign_flip": self.sign_flip,
                "induced_from_E": self.induced_from_E, "minors_permuted": self.minors_permuted,
                "order": self.order, "fixed_strata": self.fixed_strata,
                "fixed_point_free": self.fixed_point_free}


def _E_fixed_strata(f4: MultiPoly, g4: MultiPoly) -> list:
    """Points p of ``u^2 = f4, v^2 = g4`` with ``sigma(p) = p`` or
    ``sigma(p) = tau(p)``, analysed on the strata of (s1, s2)."""
    ctx = E_AMBIENT
    ks1, ks2, ku, kv = (ctx.index(n) for n in ("s1", "s2", "u", "v"))
    found = []
    for rho in (identity_spec(ctx), TAU_E):
        label = "sigma(p) = p" if rho.name == "id" else "sigma(p) = tau(p)"
        rc = {k: c for k, (c, _) in enumerate(rho.images)}  # rho is diagonal
        sc = dict(enumerate(SIGMA_E.images))
        mu1 = sc[ks1][0] / rc[ks1]
        mu2 = sc[ks2][0] / rc[ks2]
        if mu1 == mu2:
            found.append({"condition": label, "stratum": "s1*s2 != 0",
                          "witness": "unresolved: both s-coordinates admit one scalar"})
        for stratum, s, mu in (("s2 = 0", (1, 0), mu1), ("s1 = 0", (0, 1), mu2)):
            # c_k p_{pi(k)} - mu^2 rho_k p_k = 0 for k in (u, v)
            rows = []
            for k in (ku, kv):
                c, j = sc[k]
                row = {0: GaussianRational(), 1: GaussianRational()}
                row[[ku, kv].index(j)] += c
                row[[ku, kv].index(k)] -= mu * mu * rc[k]
                rows.append({i: x for i, x in row.items() if x})
            sol = solve_linear_exact(rows, [0, 0], ncols=2)
            fs, gs = f4.evaluate({"s1": s[0], "s2": s[1]}), g4.evaluate({"s1": s[0], "s2": s[1]})
            hit = None
            if not fs and not gs:
                hit = "u = v = 0"
            elif len(sol.nullspace) == 2:
                hit = "any u, v"
            elif len(sol.nullspace) == 1:
                wu, wv = sol.nullspace[0]
                if fs * wv * wv == gs * wu * wu and (wu or wv):
                    hit = f"(u, v) proportional to ({wu}, {wv})"
            if hit:
                found.append({"condition": label, "stratum": stratum,
                              "witness": f"s = {s}, {hit}", "mu": str(mu)})
    return found


def check_curve_involution(alphas) -> CurveInvolutionReport:
    f2, g2 = curve_quadrics(alphas)
    s = SIGMA_D
    M = curve_matrix(f2, g2)
    transformed = M.map(lambda e: act(s, e))
    printed = PolyMatrix.parse(CURVE_AMBIENT, [
        ["-y1", "y2", "-z3", "-z1"], ["y2", "-y3", "z4", "z2"],
        ["-z3", "z4", -g2, "-t"], ["-z1", "z2", "-t", -f2]])
    matrix_ok = all(transformed[i, j] == printed[i, j] for i in range(4) for j in range(4))
    flip = act(s, f2) == -g2 and act(s, g2) == -f2
    induced = all(CURVE_ON_E(act(s, MultiPoly.var(CURVE_AMBIENT, n)))
                  == act(SIGMA_E, CURVE_ON_E.image(n)) for n in CURVE_AMBIENT.names)
    minors = {tuple(sorted(m.packed_terms().items())) for m in M.minors(2)}
    permuted = all(tuple(sorted(act(s, m).packed_terms().items())) in minors
                   or tuple(sorted((-act(s, m)).packed_terms().items())) in minors
                   for m in M.minors(2))
    order = {"sigma_E^2 = tau": verify_order(SIGMA_E), "tau^2 = 1": verify_order(TAU_E),
             "sigma_D^2 = 1": verify_order(SIGMA_D)}
    f4 = pullback(f2.embed(VERONESE.ambient), VERONESE).embed(E_AMBIENT)
    g4 = pullback(g2.embed(VERONESE.ambient), VERONESE).embed(E_AMBIENT)
    strata = _E_fixed_strata(f4, g4)
    return CurveInvolutionReport(matrix_ok, flip, induced, permuted, order, strata, not strata)


# ---------------------------------------------------------------------------
# the K3 surface T

SIGMA_T = InvolutionSpec.make("sigma_T", K3_AMBIENT, {
    "y1": "-y1", "y2": "y3", "y3": "y2", "y4": "-y4",
    "z1": "-z3", "z2": "z4", "z3": "-z1", "z4": "z2", "t": "-t"})


def sigma_T() -> InvolutionSpec:
    return SIGMA_T


def sigma_T_cover(ctx: VariableContext) -> InvolutionSpec:
    """Lift of the action on T to the coordinates s, t, u, v of its double
    cover of P^1 x P^1; it squares to negating all four pairs."""
    neg = InvolutionSpec.make("minus", ctx, {n: f"-{n}" for n in
                                             ("s1", "s2", "t1", "t2", "u", "v")})
    return InvolutionSpec.make("sigma_T_cover", ctx, {
        "s1": "t1", "s2": "-t2", "t1": "-s1", "t2": "s2", "u": "v", "v": "-u"},
        order=4, square=neg)


@dataclass(frozen=True)
class BranchSwapData:
    alphas: tuple
    betas: tuple

    def __post_init__(self):
        for name in ("alphas", "betas"):
            v = tuple(as_gaussian(x) for x in getattr(self, name))
            if len(v) != 4:
                raise ContractViolation(f"{name} needs 4 scalars")
            object.__setattr__(self, name, v)

    def f31(self) -> MultiPoly:
        a, b = self.alphas, self.betas
        mons = ["s1^3", "s1^2*s2", "s1*s2^2", "s2^3"]
        out = MultiPoly.zero(K3_BASE)
        for m, x, y in zip(mons, a, b):
            out = out + MultiPoly.parse(K3_BASE, f"{m}*t1") * x + MultiPoly.parse(K3_BASE, f"{m}*t2") * y
        return out

    def g13(self) -> MultiPoly:
        a, b = self.alphas, self.betas
        mons = ["t1^3", "t1^2*t2", "t1*t2^2", "t2^3"]
        sa, sb = (-1, 1, -1, 1), (1, -1, 1, -1)
        out = MultiPoly.zero(K3_BASE)
        for m, x, y, p, q in zip(mons, a, b, sa, sb):
            out = (out + MultiPoly.parse(K3_BASE, f"s1*{m}") * (x * p)
                   + MultiPoly.parse(K3_BASE, f"s2*{m}") * (y * q))
        return out

    def branch(self) -> BranchData:
        return BranchData.k3(self.f31(), self.g13())

    def swap_check(self) -> bool:
        """The cover lift sends f_{3,1} to g_{1,3} and back."""
        cover = CoverAlgebra(K3_BASE, self.f31(), self.g13())
        s = sigma_T_cover(cover.ctx)
        f, g = self.f31().embed(cover.ctx), self.g13().embed(cover.ctx)
        return act(s, f) == g and act(s, g) == f

    @classmethod
    def with_root(cls, lam):
        """Data whose quartic is ``lambda^4 - lam^4``."""
        lam = as_gaussian(lam)
        return cls((1, 0, 0, 0), (0, 0, 0, lam ** 4))


LAMBDA = VariableContext(("lam",), (1,))


def fixed_quartic(data: BranchSwapData) -> MultiPoly:
    a, b = data.alphas, data.betas
    coeffs = [a[0], a[1] - b[0], a[2] - b[1], a[3] - b[2], -b[3]]
    lam = MultiPoly.var(LAMBDA, "lam")
    return sum((lam ** (4 - k) * c for k, c in enumerate(coeffs)), MultiPoly.zero(LAMBDA))


def fixed_point_candidate(lam) -> dict:
    lam = as_gaussian(lam)
    if not lam:
        raise ContractViolation("lambda must be nonzero")
    return {"y1": lam, "y2": 1, "y3": -1, "y4": -lam.inverse()}


@dataclass(frozen=True)
class FixedPointResult:
    on_variety: bool
    fixed: ScalingTest
    nonzero_equations: tuple

    @property
    def ok(self) -> bool:
        return self.on_variety and bool(self.fixed)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"on_variety": self.on_variety, "fixed": self.fixed.to_json(),
                "nonzero_equations": list(self.nonzero_equations)}


def verify_fixed_point(T: VarietyPresentation, point, spec: InvolutionSpec) -> FixedPointResult:
    if T.ambient != spec.context:
        raise ContractViolation("the action and the variety live on different rings")
    pt = _coords(T.ambient, point)
    if all(not x for x in pt):
        raise ContractViolation("the zero vector is not a point")
    bad = tuple(k for k, e in enumerate(T.equations) if e.evaluate(pt))
    return FixedPointResult(not bad, fixed_test(spec, pt), bad)


@dataclass
class K3InvolutionReport:
    order: dict
    matrix_transform: bool
    induced_from_cover: bool
    branch_swap: bool
    quartic: str
    points: list

    @property
    def ok(self):
        return (all(self.order.values()) and self.matrix_transform
                and self.induced_from_cover and self.branch_swap)

    def to_json(self):
        return {"order": self.order, "matrix_transform": self.matrix_transform,
                "induced_from_cover": self.induced_from_cover, "branch_swap": self.branch_swap,
                "quartic": self.quartic, "points": self.points}


def check_K3_involution(data: BranchSwapData, lambdas=()) -> K3InvolutionReport:
    """Structure of the lift to T, plus fixed-point checks at the given lambdas."""
    branch = data.branch()
    cover = CoverAlgebra(K3_BASE, branch.f, branch.g)
    lift = sigma_T_cover(cover.ctx)
    par = RingMap(K3_AMBIENT, cover.ctx, K3_PARAMETRIZATION)
    induced = all(par(act(SIGMA_T, MultiPoly.var(K3_AMBIENT, n))) == act(lift, par.image(n))
                  for n in K3_AMBIENT.names)
    M = PolyMatrix.parse(K3_AMBIENT, [["y1", "y2", "z1"], ["y3", "y4", "z2"], ["z3", "z4", "t"]])
    printed = PolyMatrix.parse(K3_AMBIENT, [["-y1", "y3", "-z3"], ["y2", "-y4", "z4"],
                                            ["-z1", "z2", "-t"]])
    tm = M.map(lambda e: act(SIGMA_T, e))
    matrix_ok = all(tm[i, j] == printed[i, j] for i in range(3) for j in range(3))
    order = {"sigma_T^2 = 1": verify_order(SIGMA_T),
             "cover lift squares to -1": verify_order(lift)}
    q = fixed_quartic(data)
    points = []
    if lambdas:
        T = construct_K3(branch)
        for lam in lambdas:
            res = verify_fixed_point(T, fixed_point_candidate(lam), SIGMA_T)
            points.append({"lambda": str(as_gaussian(lam)),
                           "quartic_value": str(q.evaluate({"lam": lam})),
                           **res.to_json(), "verified": res.ok})
    return K3InvolutionReport(order, matrix_ok, induced, data.swap_check(), q.to_text(), points)


# ---------------------------------------------------------------------------
# the projected surface T' and the extension W'

SIGMA_TPRIME = InvolutionSpec.make("sigma_Tprime", TPRIME_AMBIENT, {
    "y1": "y3", "y2": "-y2", "y3": "y1", "z1": "-z2", "z2": "-z1"})

P1 = VariableContext.weighted([("u", 1), ("v", 1)])
SIGMA_P1 = InvolutionSpec.make("sigma_P1", P1, {"u": "-i*v", "v": "-i*u"}, order=4,
                               square=InvolutionSpec.make("minus", P1, {"u": "-u", "v": "-v"}))


def _sigma_P5(ctx):
    return InvolutionSpec.make("sigma_P5", ctx, {
        "u": "-v", "v": "-u", "a": "-d", "b": "c", "c": "b", "d": "-a"})


def _sigma_S(ctx):
    return InvolutionSpec.make("sigma_S", ctx, {
        "a": "-d", "b": "c", "c": "b", "d": "-a",
        "y1": "y3", "y2": "-y2", "y3": "y1", "z1": "-z2", "z2": "-z1"})


def sigma_Tprime_equations(alpha, l) -> VarietyPresentation:
    """The sigma-compatible pair of weight-6 equations for T'."""
    l = tuple(as_gaussian(x) for x in l)
    if len(l) != 4:
        raise ContractViolation("four scalars l_1..l_4 are needed")
    A = TPRIME_AMBIENT
    alpha = as_gaussian(alpha)
    y1, y2, y3, z1, z2 = (MultiPoly.var(A, n) for n in ("y1", "y2", "y3", "z1", "z2"))
    f, g = y1 + y3 * alpha, y1 * alpha + y3
    eq1 = z1 ** 2 - (y1 * f ** 2 + y2 ** 2 * (f * l[0] + y2 * l[1] + g * l[2]) + y2 * f * g * l[3])
    eq2 = z2 ** 2 - (y3 * g ** 2 + y2 ** 2 * (f * l[2] - y2 * l[1] + g * l[0]) - y2 * f * g * l[3])
    T = project_T(sigma_params(alpha, l))
    if T.equations != [eq1, eq2]:
        raise AssertionError("printed sigma-compatible pair differs from the general family")
    return T


def sigma_params(alpha, l) -> ProjectionParams:
    """Projection parameters of the sigma-compatible family: beta = alpha and
    m = (l3, -l2, l1, -l4)."""
    l = tuple(as_gaussian(x) for x in l)
    return ProjectionParams.make(alpha, alpha, l, (l[2], -l[1], l[0], -l[3]))


@dataclass
class TprimeReport:
    swap: bool
    order: bool
    fixed_on_image: list
    isolated_line_fixed: ScalingTest
    equations_opposite_on_line: bool
    isolated_count: int

    @property
    def ok(self):
        return (self.swap and self.order and bool(self.isolated_line_fixed)
                and self.equations_opposite_on_line
                and all(x["fixed"]["equal"] for x in self.fixed_on_image))

    def to_json(self):
        return {"swap": self.swap, "order": self.order,
                "fixed_on_image": self.fixed_on_image,
                "isolated_line_fixed": self.isolated_line_fixed.to_json(),
                "equations_opposite_on_line": self.equations_opposite_on_line,
                "isolated_count": self.isolated_count}


def check_Tprime_involution(alpha, l) -> TprimeReport:
    T = sigma_Tprime_equations(alpha, l)
    eq1, eq2 = T.equations
    swap = act(SIGMA_TPRIME, eq1) == eq2 and act(SIGMA_TPRIME, eq2) == eq1
    order = verify_order(SIGMA_TPRIME) and verify_order(SIGMA_P1)
    par = T.parametrization
    fixed_on_image = []
    for uv in ((1, 1), (-1, 1)):
        pt = [par.image(n).evaluate(uv) for n in TPRIME_AMBIENT.names]
        fixed_on_image.append({"u_v": list(uv), "fixed": fixed_test(SIGMA_TPRIME, pt).to_json()})
    # the line z1 = z2 = y1 + y3 = 0, parametrized by (y1, y2); plain degrees
    # so that the restricted equations read as binary cubics
    line_ctx = VariableContext.weighted([("y1", 1), ("y2", 1)])
    y1, y2 = MultiPoly.var(line_ctx, "y1"), MultiPoly.var(line_ctx, "y2")
    zero = MultiPoly.zero(line_ctx)
    line = RingMap(TPRIME_AMBIENT, line_ctx, {"y1": y1, "y2": y2, "y3": -y1, "z1": zero, "z2": zero},
                   check=False)
    pt = [line.image(n) for n in TPRIME_AMBIENT.names]
    line_fixed = weighted_scaling(point_image(SIGMA_TPRIME, pt), pt, TPRIME_AMBIENT.weights)
    c1, c2 = line(eq1), line(eq2)
    count = _binary_distinct_roots(c1, "y1", "y2") if c1 else -1
    return TprimeReport(swap, order, fixed_on_image, line_fixed, c1 == -c2, count)


def printed_phi(alpha="alpha", perturb_f1=None) -> RingMap:
    """Phi with the z-images written as in the equivariant family."""
    symbolic = isinstance(alpha, str)
    r = rings(symbolic)
    M = r.M
    al = MultiPoly.var(M, "alpha") if symbolic else MultiPoly.constant(M, alpha)
    V = lambda n: MultiPoly.var(M, n)
    a, b, c, d, u, v = (V(n) for n in "abcduv")
    y1, y2, y3 = u ** 2 + 2 * a * v, b * u + c * v, v ** 2 + 2 * d * u
    f, g = y1 + al * y3, al * y1 + y3
    f1 = u * (f + al * (a ** 2 + al * d ** 2)) + (1 - al ** 2) * a * u * v + al * (al ** 2 - 1) * a * d * v
    f2 = v * (g + al * (al * a ** 2 + d ** 2)) + (1 - al ** 2) * d * u * v + al * (al ** 2 - 1) * a * d * u
    if perturb_f1 is not None:
        f1 = f1 + (MultiPoly.parse(M, perturb_f1) if isinstance(perturb_f1, str) else perturb_f1)
    return RingMap(r.S, M, {"y1": y1, "y2": y2, "y3": y3, "z1": f1, "z2": f2})


@dataclass
class EquivarianceReport:
    generators: dict
    matches_general_solution: bool
    symbolic: bool

    @property
    def ok(self):
        return all(self.generators.values())

    def to_json(self):
        return {"generators": self.generators, "symbolic": self.symbolic,
                "matches_general_solution": self.matches_general_solution}


def check_phi_equivariance(alpha="alpha", beta=None, perturb_f1=None) -> EquivarianceReport:
    """``Phi(sigma_S x) == sigma_P5(Phi(x))`` for every coordinate x.

    Pass ``alpha="alpha"`` to keep alpha as a weight-0 variable.
    """
    if beta is not None and (isinstance(alpha, str) != isinstance(beta, str)
                             or (not isinstance(alpha, str) and as_gaussian(alpha) != as_gaussian(beta))
                             or (isinstance(alpha, str) and alpha != beta)):
        raise ContractViolation("equivariance needs beta = alpha")
    symbolic = isinstance(alpha, str)
    if symbolic and alpha != "alpha":
        raise ContractViolation("the symbolic parameter must be called 'alpha'")
    r = rings(symbolic)
    pm = printed_phi(alpha, perturb_f1)
    sp, ss = _sigma_P5(r.M), _sigma_S(r.S)
    gens = {}
    for n in r.S.names:
        if n in ("alpha", "beta"):
            continue
        x = MultiPoly.var(r.S, n)
        gens[n] = pm(act(ss, x)) == act(sp, pm.image(n))
    gens["sigma_S^2 = 1"] = verify_order(ss)
    gens["sigma_P5^2 = 1"] = verify_order(sp)
    # compare with the general solution at beta = alpha
    if symbolic:
        general = phi(theorem_solution(symbolic=True))
        to_alpha = RingMap(r.M, r.M, {"beta": "alpha"})
        same = all(to_alpha(general.image(z)) == printed_phi(alpha).image(z) for z in ("z1", "z2"))
    else:
        general = phi(theorem_solution(alpha, alpha))
        same = all(general.image(z) == printed_phi(alpha).image(z) for z in ("z1", "z2"))
    return EquivarianceReport(gens, same, symbolic)


# fixed planes in P^5

_PLANE_CTX = VariableContext.weighted([("a", 1), ("b", 1), ("u", 1)])
PLANES = {
    "u=v, a=d, b=-c": {"c": "-b", "d": "a", "v": "u"},
    "u=-v, a=-d, b=c": {"c": "b", "d": "-a", "v": "-u"},
}
CONTROL_PLANE = ("u=v, a=d, b=c", {"c": "b", "d": "a", "v": "u"})


def _plane_map(ctx, subs):
    P = _PLANE_CTX if "alpha" not in ctx else _PLANE_CTX.extend([("alpha", 0), ("beta", 0)])
    images = {n: MultiPoly.parse(P, subs.get(n, n)) for n in ("a", "b", "c", "d", "u", "v")}
    return RingMap(ctx, P, images, check=False)


@dataclass
class FixedPlanesReport:
    planes: dict
    control: dict
    tprime: TprimeReport

    @property
    def ok(self):
        return (all(p["pointwise"]["equal"] and p["image"]["equal"] for p in self.planes.values())
                and not self.control["pointwise"]["equal"] and self.tprime.ok)

    def to_json(self):
        return {"planes": self.planes, "control": self.control, "tprime": self.tprime.to_json()}


def fixed_planes_check(alpha="alpha", l=(1, 2, 3, 4)) -> FixedPlanesReport:
    symbolic = isinstance(alpha, str)
    r = rings(symbolic)
    pm = printed_phi(alpha)
    sp, ss = _sigma_P5(r.M), _sigma_S(r.S)
    m_gens = [n for n in r.M.names if n not in ("alpha", "beta")]
    s_gens = [n for n in r.S.names if n not in ("alpha", "beta")]

    def test(subs):
        iota = _plane_map(r.M, subs)
        pt = [iota.image(n) for n in m_gens]
        img = [iota(act(sp, MultiPoly.var(r.M, n))) for n in m_gens]
        pointwise = weighted_scaling(img, pt, [r.M.weight(n) for n in m_gens])
        spt = [iota(pm.image(n)) for n in s_gens]
        simg = [iota(pm(act(ss, MultiPoly.var(r.S, n)))) for n in s_gens]
        image = weighted_scaling(simg, spt, [r.S.weight(n) for n in s_gens])
        return {"pointwise": pointwise.to_json(), "image": image.to_json()}

    planes = {name: test(subs) for name, subs in PLANES.items()}
    control = test(CONTROL_PLANE[1])
    control["plane"] = CONTROL_PLANE[0]
    al = 2 if symbolic else alpha
    return FixedPlanesReport(planes, control, check_Tprime_involution(al, l))


# ---------------------------------------------------------------------------
# the Godeaux layer

W_AMBIENT = VariableContext.weighted(
    [("a", 1), ("b", 1), ("c", 1), ("d", 1), ("y1", 2), ("y2", 2), ("y3", 2), ("y4", 2),
     ("z1", 3), ("z2", 3), ("z3", 3), ("z4", 3), ("t", 4)])

# on a..d the action is taken to be the one on P^5
SIGMA_W = InvolutionSpec.make("sigma_W", W_AMBIENT, {
    "a": "-d", "b": "c", "c": "b", "d": "-a",
    "y1": "y3", "y2": "-y2", "y3": "y1", "y4": "-y4",
    "z1": "-z2", "z2": "-z1", "z3": "z4", "z4": "z3", "t": "-t"})

EIGENSPACE_TABLE = {
    1: (["a - d", "b + c"], ["a + d", "b - c"]),
    2: (["y1 + y3"], ["y1 - y3", "y2", "y4"]),
    3: (["z1 - z2", "z3 + z4"], ["z1 + z2", "z3 - z4"]),
    4: ([], ["t"]),
}
TABLE_DIMENSIONS = {1: (2, 2), 2: (1, 3), 3: (2, 2), 4: (0, 1)}
ASSUMPTION = "the action on a, b, c, d is the P^5 action lifted to W"


@dataclass(frozen=True)
class EigenspaceTable:
    spec: InvolutionSpec
    entries: dict  # degree -> (invariant forms, anti-invariant forms)

    @classmethod
    def printed(cls) -> "EigenspaceTable":
        return cls(SIGMA_W, {n: ([MultiPoly.parse(W_AMBIENT, p) for p in inv],
                                 [MultiPoly.parse(W_AMBIENT, p) for p in anti])
                             for n, (inv, anti) in EIGENSPACE_TABLE.items()})

    def check(self) -> dict:
        out = {}
        for n, (inv, anti) in sorted(self.entries.items()):
            eig = all(is_eigenvector(self.spec, p, 1) for p in inv) and \
                all(is_eigenvector(self.spec, p, -1) for p in anti)
            gens = [k for k, w in enumerate(self.spec.context.weights) if w == n]
            spans = _rank([*inv, *anti], gens) == len(gens) == len(inv) + len(anti)
            out[n] = {"eigenvectors": eig, "spans_generators": spans,
                      "listed": [len(inv), len(anti)],
                      "computed": list(eigen_dimensions(self.spec, n))}
        return out


def is_eigenvector(spec: InvolutionSpec, p: MultiPoly, sign: int) -> bool:
    return not p.is_zero() and act(spec, p) == p * sign


def _rank(polys, gens) -> int:
    """Rank of linear forms in the listed generator variables."""
    rows = []
    for p in polys:
        row = {}
        for exps, c in p.terms():
            k = exps.index(1) if sum(exps) == 1 else None
            if k is None or k not in gens:
                raise ContractViolation(f"{p} is not a linear form in the degree generators")
            row[gens.index(k)] = c
        rows.append(row)
    return solve_linear_exact(rows, [0] * len(rows), ncols=len(gens)).rank if rows else 0


def eigen_dimensions(spec: InvolutionSpec, degree: int) -> tuple:
    """Dimensions of the +1 and -1 eigenspaces on the generators of a degree."""
    gens = [k for k, w in enumerate(spec.context.weights) if w == degree]
    dims = []
    for sign in (1, -1):
        # columns: coefficient of each generator; rows: (S - sign) x = 0
        rows = []
        for k in gens:
            row = {}
            for col, j in enumerate(gens):
                c, tgt = spec.images[j]
                if tgt == k:
                    row[col] = row.get(col, GaussianRational()) + c
            row[gens.index(k)] = row.get(gens.index(k), GaussianRational()) - sign
            rows.append({i: x for i, x in row.items() if x})
        sol = solve_linear_exact(rows, [0] * len(rows), ncols=len(gens))
        dims.append(len(gens) - sol.rank)
    return tuple(dims)


@dataclass
class GodeauxReport:
    sections: list
    table: dict
    wprime: VarietyPresentation
    wprime_swapped: bool
    free_scalars: dict
    assumption: str = ASSUMPTION

    @property
    def ok(self):
        return all(v["eigenvectors"] and v["spans_generators"]
                   and tuple(v["computed"]) == TABLE_DIMENSIONS[n]
                   and tuple(v["listed"]) == TABLE_DIMENSIONS[n]
                   for n, v in self.table.items())

    def to_json(self):
        return {"assumption": self.assumption, "sections": self.sections,
                "table": {str(k): v for k, v in self.table.items()},
                "wprime_equations": [e.to_text() for e in self.wprime.equations],
                "wprime_swapped": self.wprime_swapped,
                "free_scalars": self.free_scalars}


DEFAULT_CHOICES = {
    "invariant_linear": ["a - d", "b + c"],
    "anti_linear": "a + d",
    "anti_quadric": "y2 + y4 + (a + d)*(b + c)",
}
_SLOTS = (("invariant_linear", 1, 1), ("anti_linear", 1, -1), ("anti_quadric", 2, -1))


def godeaux_assembly(choices: dict | None = None, alpha=2, l=(1, 2, 3, 4)) -> GodeauxReport:
    """Check a choice of sections of type (1+, 1+, 1-, 2-) and the table."""
    choices = dict(DEFAULT_CHOICES if choices is None else choices)
    unknown = set(choices) - {s for s, _, _ in _SLOTS}
    if unknown:
        raise ContractViolation(f"unknown section slots {sorted(unknown)}")
    sections = []
    for slot, degree, sign in _SLOTS:
        forms = choices.get(slot, DEFAULT_CHOICES[slot])
        forms = forms if isinstance(forms, list) else [forms]
        want = 2 if slot == "invariant_linear" else 1
        if len(forms) != want:
            raise ContractViolation(f"{slot} needs {want} form(s)")
        polys = [MultiPoly.parse(W_AMBIENT, p) if isinstance(p, str) else p for p in forms]
        for text, p in zip(forms, polys):
            h_ok = all(W_AMBIENT.degree_of(m) == degree for m in p.packed_terms())
            if p.is_zero() or not h_ok:
                raise ContractViolation(f"{slot} form {text} is not a nonzero form of degree {degree}")
            if not is_eigenvector(SIGMA_W, p, sign):
                raise NotEigenvector(
                    f"{text} is not {'invariant' if sign > 0 else 'anti-invariant'}", form=str(text))
            sections.append({"slot": slot, "form": p.to_text(), "degree": degree,
                             "sign": "+" if sign > 0 else "-"})
        if slot == "invariant_linear" and _rank(polys, [0, 1, 2, 3]) < 2:
            raise ContractViolation("the two invariant linear forms are dependent")
    table = EigenspaceTable.printed().check()
    W = build_Wprime(sigma_params(alpha, l))
    sS = _sigma_S(W.ambient)
    e1, e2 = W.equations
    swapped = act(sS, e1) == e2 and act(sS, e2) == e1
    free = {
        "invariant_linear": 2 * eigen_dimensions(SIGMA_W, 1)[0],
        "anti_linear": eigen_dimensions(SIGMA_W, 1)[1],
        "anti_quadric": _anti_quadric_dimension(),
        "note": "raw coefficient count, informational only",
    }
    return GodeauxReport(sections, table, W, swapped, free)


def _anti_quadric_dimension() -> int:
    """Dimension of the anti-invariant weight-2 forms: products of linear
    forms plus the weight-2 generators."""
    mons = W_AMBIENT.monomials_of_degree(2)
    index = {m: k for k, m in enumerate(mons)}
    rows = []
    for m in mons:  # (S + 1) applied to each monomial gives a column
        p = MultiPoly._raw(W_AMBIENT, {m: GaussianRational(1)})
        q = act(SIGMA_W, p) + p
        rows.append({index[mm]: c for mm, c in q.packed_terms().items()})
    # rows are images of basis vectors; kernel of (S + 1) = anti-invariants
    cols = [dict() for _ in mons]
    for j, row in enumerate(rows):
        for i, c in row.items():
            cols[i][j] = c
    sol = solve_linear_exact(cols, [0] * len(cols), ncols=len(mons))
    return len(mons) - sol.rank
