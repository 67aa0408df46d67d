"""Extending the projected K3 surface T'_{6,6} to a 6-fold W'_{6,6}.

The map ``Phi0: P^5 -> P(1^4, 2^3)`` makes ``M = k[a,b,c,d,u,v]`` a module
over ``R = k[a,b,c,d,y1,y2,y3]`` generated by ``1, u, v, uv``; lifting it to
``Phi`` with images for ``z1, z2`` and asking for weight-6 kernel elements
``z1^2 - y1 f^2 + ...`` pins down the correction forms ``s_i, t_i``.  This
module builds all of these objects, checks the kernel identities by direct
substitution, and solves the membership problem by exact linear algebra.

The scalars alpha and beta are either numbers or, with ``symbolic=True``,
extra variables of weight 0 carried through every computation.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

from .algebra import (GaussianRational, MultiPoly, PolyMatrix, RingMap,
                      VariableContext, as_gaussian, is_homogeneous,
                      solve_linear_exact)
from .errors import ContractViolation, DomainError
from .tower import TPRIME_AMBIENT, ProjectionParams, VarietyPresentation

# ---------------------------------------------------------------------------
# rings

_PARAMS = [("alpha", 0), ("beta", 0)]


@dataclass(frozen=True)
class Rings:
    """The coordinate rings involved, with or without symbolic alpha, beta."""

    symbolic: bool
    S: VariableContext   # ambient of W': a..d, y1..y3, z1, z2
    M: VariableContext   # P^5: a..d, u, v
    R: VariableContext   # P(1^4, 2^3): a..d, y1..y3
    L: VariableContext   # R with u, v adjoined, for the lifted computation
    F: VariableContext   # forms in a..d only


@lru_cache(maxsize=None)
def rings(symbolic: bool = False) -> Rings:
    extra = _PARAMS if symbolic else []
    abcd = [("a", 1), ("b", 1), ("c", 1), ("d", 1)]
    ys = [("y1", 2), ("y2", 2), ("y3", 2)]
    return Rings(
        symbolic,
        VariableContext.weighted(abcd + ys + [("z1", 3), ("z2", 3)] + extra),
        VariableContext.weighted(abcd + [("u", 1), ("v", 1)] + extra),
        VariableContext.weighted(abcd + ys + extra),
        VariableContext.weighted(abcd + ys + [("u", 1), ("v", 1)] + extra),
        VariableContext.weighted(abcd + extra),
    )


def _scalar(ctx, x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x.embed(ctx)
    if isinstance(x, str) and x in ("alpha", "beta"):
        return MultiPoly.var(ctx, x)
    return MultiPoly.constant(ctx, x)


# ---------------------------------------------------------------------------
# extension data

_CORRECTIONS = ("s1", "s2", "s3", "s4", "s5", "t1", "t2", "t3", "t4", "t5")
_DEGREES = {"s1": 1, "s2": 1, "s3": 1, "s4": 2, "s5": 2,
            "t1": 1, "t2": 1, "t3": 1, "t4": 2, "t5": 2}


@dataclass(frozen=True)
class ExtensionData:
    """Scalars alpha, beta and correction forms in a, b, c, d.

    ``s1, s3, t1, t3`` are absorbed by coordinate changes and default to 0;
    they are accepted only so that falsification tests can switch them on.
    """

    alpha: object
    beta: object
    forms: dict = field(default_factory=dict)
    symbolic: bool = False

    def __post_init__(self):
        F = rings(self.symbolic).F
        if not self.symbolic:
            object.__setattr__(self, "alpha", as_gaussian(self.alpha))
            object.__setattr__(self, "beta", as_gaussian(self.beta))
        forms = {}
        for name in _CORRECTIONS:
            p = self.forms.get(name, 0)
            p = MultiPoly.parse(F, p) if isinstance(p, str) else _scalar(F, p)
            h = is_homogeneous(p)
            if h.degree is not None and h.degree != _DEGREES[name]:
                raise ContractViolation(
                    f"{name} must be homogeneous of degree {_DEGREES[name]} in a,b,c,d: {p}")
            if not h:
                raise ContractViolation(f"{name} is not homogeneous: {h.witnesses}")
            forms[name] = p
        unknown = set(self.forms) - set(_CORRECTIONS)
        if unknown:
            raise ContractViolation(f"unknown correction forms {sorted(unknown)}")
        object.__setattr__(self, "forms", forms)

    def __getitem__(self, name) -> MultiPoly:
        return self.forms[name]

    def form(self, name, ctx) -> MultiPoly:
        return self.forms[name].embed(ctx)

    def scalar(self, name, ctx) -> MultiPoly:
        return _scalar(ctx, name if self.symbolic else getattr(self, name))

    def perturbed(self, name: str, delta) -> "ExtensionData":
        forms = dict(self.forms)
        d = MultiPoly.parse(rings(self.symbolic).F, delta) if isinstance(delta, str) else delta
        forms[name] = forms[name] + d.embed(rings(self.symbolic).F)
        return replace(self, forms=forms)

    @property
    def rings(self) -> Rings:
        return rings(self.symbolic)


def theorem_solution(alpha=None, beta=None, symbolic: bool = False) -> ExtensionData:
    """The unique corrections for which z1^2 - y1 f^2 and z2^2 - y3 g^2
    extend into the kernel of Phi."""
    F = rings(symbolic).F
    if symbolic:
        al, be = MultiPoly.var(F, "alpha"), MultiPoly.var(F, "beta")
    else:
        al, be = _scalar(F, alpha), _scalar(F, beta)
    a, d = MultiPoly.var(F, "a"), MultiPoly.var(F, "d")
    k = 1 - al * be
    forms = {
        "s2": k * a,
        "s4": be * a ** 2 + al ** 2 * d ** 2,
        "s5": -al * k * a * d,
        "t2": k * d,
        "t4": -be * k * a * d,
        "t5": be ** 2 * a ** 2 + al * d ** 2,
    }
    if symbolic:
        return ExtensionData("alpha", "beta", forms, symbolic=True)
    return ExtensionData(alpha, beta, forms)


# ---------------------------------------------------------------------------
# the maps


def phi0(symbolic: bool = False) -> RingMap:
    r = rings(symbolic)
    return RingMap(r.R, r.M, {"y1": "u^2 + 2*a*v", "y2": "b*u + c*v", "y3": "v^2 + 2*d*u"})


def _fg(data: ExtensionData, ctx):
    y1, y3 = MultiPoly.var(ctx, "y1"), MultiPoly.var(ctx, "y3")
    al, be = data.scalar("alpha", ctx), data.scalar("beta", ctx)
    return y1 + al * y3, be * y1 + y3


def z_images(data: ExtensionData, ctx) -> tuple:
    """Images of z1, z2 written over a ring containing y1, y3, u, v."""
    f, g = _fg(data, ctx)
    u, v = MultiPoly.var(ctx, "u"), MultiPoly.var(ctx, "v")
    s = {n: data.form(n, ctx) for n in _CORRECTIONS}
    y1, y3 = MultiPoly.var(ctx, "y1"), MultiPoly.var(ctx, "y3")
    z1 = u * (f + s["s4"]) + s["s2"] * u * v + s["s5"] * v + s["s1"] * y1 + s["s3"] * y3
    z2 = v * (g + s["t5"]) + s["t2"] * u * v + s["t4"] * u + s["t1"] * y1 + s["t3"] * y3
    return z1, z2


def phi(data: ExtensionData) -> RingMap:
    r = data.rings
    p0 = phi0(data.symbolic)
    # write z-images in L, then push y1, y3 through Phi0
    z1, z2 = z_images(data, r.L)
    to_m = RingMap(r.L, r.M, {"y1": p0.image("y1"), "y2": p0.image("y2"),
                              "y3": p0.image("y3")})
    images = {n: p0.image(n) for n in ("y1", "y2", "y3")}
    images["z1"] = to_m(z1)
    images["z2"] = to_m(z2)
    return RingMap(r.S, r.M, images)


# ---------------------------------------------------------------------------
# presentation matrices

A_ENTRIES = [["-y2", "b*y1", "c*y3", "-2*c*d*y1 + 4*a*d*y2 - 2*a*b*y3"],
             ["b", "-y2", "-2*c*d", "c*y3"],
             ["c", "-2*a*b", "-y2", "b*y1"],
             ["0", "c", "b", "-y2"]]


def matrix_A(symbolic: bool = False) -> PolyMatrix:
    return PolyMatrix.parse(rings(symbolic).R, A_ENTRIES)


def matrix_B(data: ExtensionData) -> PolyMatrix:
    R = data.rings.R
    f, g = _fg(data, R)
    s = {n: data.form(n, R) for n in _CORRECTIONS}
    first = [[1, 0, 0], [0, f + s["s4"], s["t4"]], [0, s["s5"], g + s["t5"]],
             [0, s["s2"], s["t2"]]]
    rows = [first[k] + A_ENTRIES[k] for k in range(4)]
    return PolyMatrix.parse(R, rows)


def _generators(ctx):
    u, v = MultiPoly.var(ctx, "u"), MultiPoly.var(ctx, "v")
    return [MultiPoly.one(ctx), u, v, u * v]


def column_image(column, symbolic: bool = False) -> MultiPoly:
    """Image in M of ``(1, u, v, uv) . column`` for a column over R."""
    p0 = phi0(symbolic)
    gens = _generators(p0.target)
    total = MultiPoly.zero(p0.target)
    for gen, entry in zip(gens, column):
        total = total + gen * p0(entry)
    return total


def verify_presentation(A: PolyMatrix | None = None, symbolic: bool = False) -> list:
    """For each column of A, whether it maps to zero in M."""
    A = A if A is not None else matrix_A(symbolic)
    return [column_image(A.column(j), symbolic).is_zero() for j in range(A.shape[1])]


# ---------------------------------------------------------------------------
# residuals


def lifted_normal_form(p: MultiPoly, symbolic: bool = False) -> tuple:
    """Rewrite ``u^2 -> y1 - 2 a v`` and ``v^2 -> y3 - 2 d u`` to exhaustion.

    Returns the coefficients of ``(1, u, v, uv)`` over R.  The two rules have
    coprime leading monomials for an order ranking u, v first, so they form a
    Groebner basis and the result does not depend on the rewriting order.
    """
    r = rings(symbolic)
    L = r.L
    p = p.embed(L)
    y1, y3 = MultiPoly.var(L, "y1"), MultiPoly.var(L, "y3")
    a, d = MultiPoly.var(L, "a"), MultiPoly.var(L, "d")
    u, v = MultiPoly.var(L, "u"), MultiPoly.var(L, "v")
    ru, rv = y1 - 2 * a * v, y3 - 2 * d * u
    out = [MultiPoly.zero(L) for _ in range(4)]
    pending = p
    while pending:
        parts = pending.collect(["u", "v"])
        pending = MultiPoly.zero(L)
        for (i, j), c in parts.items():
            if i <= 1 and j <= 1:
                out[2 * i + j] = out[2 * i + j] + c
                continue
            term = c * (u ** (i % 2)) * (v ** (j % 2))
            if i >= 2:
                term = term * ru ** (i // 2)
            if j >= 2:
                term = term * rv ** (j // 2)
            pending = pending + term
    c0, cv, cu, cuv = out
    return tuple(x.embed(r.R) for x in (c0, cu, cv, cuv))


def base_parts(data: ExtensionData, ctx) -> tuple:
    """The R-parts subtracted from z1^2 and z2^2 before taking residuals."""
    f, g = _fg(data, ctx)
    V = lambda n: MultiPoly.var(ctx, n)
    a, d, y1, y3 = V("a"), V("d"), V("y1"), V("y3")
    s = {n: data.form(n, ctx) for n in _CORRECTIONS}
    F1, G1 = f + s["s4"], g + s["t5"]
    s2, s5, t2, t4 = s["s2"], s["s5"], s["t2"], s["t4"]
    p1 = (y1 * F1 ** 2 - 4 * F1 * s2 * a * y3 - 4 * s2 * s5 * d * y1
          + s2 ** 2 * y1 * y3 + s5 ** 2 * y3)
    p2 = (y3 * G1 ** 2 - 4 * G1 * t2 * d * y1 - 4 * t2 * t4 * a * y3
          + t2 ** 2 * y1 * y3 + t4 ** 2 * y1)
    return p1, p2


@dataclass(frozen=True)
class Residuals:
    K: tuple   # (K_u, K_v, K_uv) over R
    L: tuple
    constant_parts: tuple  # leftover R-parts; zero when the reduction is right

    def to_dict(self):
        names = ("u", "v", "uv")
        out = {f"K_{n}": p.to_text() for n, p in zip(names, self.K)}
        out.update({f"L_{n}": p.to_text() for n, p in zip(names, self.L)})
        return out


def residuals(data: ExtensionData) -> Residuals:
    r = data.rings
    z1, z2 = z_images(data, r.L)
    p1, p2 = base_parts(data, r.L)
    n1 = lifted_normal_form(z1 ** 2 - p1, data.symbolic)
    n2 = lifted_normal_form(z2 ** 2 - p2, data.symbolic)
    return Residuals(n1[1:], n2[1:], (n1[0], n2[0]))


def printed_residuals(data: ExtensionData) -> Residuals:
    """The closed forms of K and L, for comparison with :func:`residuals`."""
    R = data.rings.R
    f, g = _fg(data, R)
    V = lambda n: MultiPoly.var(R, n)
    a, d, y1, y3 = V("a"), V("d"), V("y1"), V("y3")
    s = {n: data.form(n, R) for n in _CORRECTIONS}
    F1, G1 = f + s["s4"], g + s["t5"]
    s2, s5, t2, t4 = s["s2"], s["s5"], s["t2"], s["t4"]
    K = (8 * F1 * s2 * a * d - 2 * s5 ** 2 * d - 2 * s2 ** 2 * d * y1 + 2 * s2 * s5 * y3,
         -2 * F1 ** 2 * a + 8 * s2 * s5 * a * d + 2 * F1 * s2 * y1 - 2 * s2 ** 2 * a * y3,
         2 * F1 * s5 + 4 * s2 ** 2 * a * d)
    L = (-2 * G1 ** 2 * d + 8 * t2 * t4 * a * d + 2 * G1 * t2 * y3 - 2 * t2 ** 2 * d * y1,
         8 * G1 * t2 * a * d - 2 * t4 ** 2 * a - 2 * t2 ** 2 * a * y3 + 2 * t2 * t4 * y1,
         2 * G1 * t4 + 4 * t2 ** 2 * a * d)
    zero = MultiPoly.zero(R)
    return Residuals(K, L, (zero, zero))


def residual_in_M(parts: tuple, symbolic: bool = False) -> MultiPoly:
    """``K_u u + K_v v + K_uv uv`` as an element of M."""
    return column_image((MultiPoly.zero(parts[0].ctx),) + tuple(parts), symbolic)


# ---------------------------------------------------------------------------
# the extended equations and the kernel check


def xi_eta(data: ExtensionData) -> tuple:
    """The syzygy vectors over R: nonzero only in the z1, z2 slots."""
    R = data.rings.R
    f, g = _fg(data, R)
    al, be = data.scalar("alpha", R), data.scalar("beta", R)
    a, d = MultiPoly.var(R, "a"), MultiPoly.var(R, "d")
    k = 1 - al * be
    F1, G1 = f + data.form("s4", R), g + data.form("t5", R)
    zero = MultiPoly.zero(R)
    xi = [zero, 6 * k * a ** 2 * d, -2 * al * a * F1 - 2 * k * a ** 3] + [zero] * 4
    eta = [zero, -2 * be * d * G1 - 2 * k * d ** 3, 6 * k * a * d ** 2] + [zero] * 4
    return xi, eta


def extended_equations(data: ExtensionData) -> tuple:
    """The two weight-6 equations extending ``z1^2 = y1 f^2``, ``z2^2 = y3 g^2``."""
    S = data.rings.S
    p1, p2 = base_parts(data, S)
    xi, eta = xi_eta(data)
    z1, z2 = MultiPoly.var(S, "z1"), MultiPoly.var(S, "z2")
    e1 = z1 ** 2 - p1 - xi[1].embed(S) * z1 - xi[2].embed(S) * z2
    e2 = z2 ** 2 - p2 - eta[1].embed(S) * z1 - eta[2].embed(S) * z2
    return e1, e2


def verify_kernel(p: MultiPoly, data: ExtensionData, phi_map: RingMap | None = None) -> bool:
    """Whether ``p`` maps to the zero polynomial under Phi."""
    phi_map = phi_map or phi(data)
    if any(n not in phi_map.source for n in p.variables()):
        raise ContractViolation(f"polynomial uses variables outside {phi_map.source.names}")
    return phi_map(p.embed(phi_map.source)).is_zero()


# ---------------------------------------------------------------------------
# equations extending Q1..Q4


@dataclass(frozen=True)
class NuVector:
    """Components nu_1..nu_7 and the equation ``lhs - nu1 - nu2 z1 - nu3 z2``.

    With symbolic alpha, beta the vector for Q2 is multiplied through by
    ``alpha beta - 1`` to clear its denominator (``scale`` records this).
    """

    index: int
    lhs: MultiPoly
    components: tuple
    equation: MultiPoly
    scale: str = "1"


def _assemble(index, lhs, nu, S, scale="1"):
    R = lhs.ctx
    V = lambda n: MultiPoly.var(R, n)
    a, b, c, d, y1, y2, y3 = (V(n) for n in ("a", "b", "c", "d", "y1", "y2", "y3"))
    nu2, nu3, nu4, nu5, nu6, nu7 = nu
    a14 = -2 * c * d * y1 + 4 * a * d * y2 - 2 * a * b * y3
    nu1 = y2 * nu4 - b * y1 * nu5 - c * y3 * nu6 - a14 * nu7
    comps = (nu1,) + tuple(nu)
    z1, z2 = MultiPoly.var(S, "z1"), MultiPoly.var(S, "z2")
    eq = lhs.embed(S) - nu1.embed(S) - nu2.embed(S) * z1 - nu3.embed(S) * z2
    return NuVector(index, lhs, comps, eq, scale)


def nu_vectors(data: ExtensionData, which=(1, 2, 3, 4)) -> list:
    r = data.rings
    R, S = r.R, r.S
    f, g = _fg(data, R)
    V = lambda n: MultiPoly.var(R, n)
    a, b, c, d, y2 = (V(n) for n in ("a", "b", "c", "d", "y2"))
    al, be = data.scalar("alpha", R), data.scalar("beta", R)
    s = {n: data.form(n, R) for n in _CORRECTIONS}
    F1, G1 = f + s["s4"], g + s["t5"]
    s2, s5, t2, t4 = s["s2"], s["s5"], s["t2"], s["t4"]
    out = []
    for i in which:
        if i == 1:
            nu = (2 * b * y2 + 2 * (be * a * b - c * d) * c,
                  2 * (al * b ** 2 + c ** 2) * a,
                  -be * a * s2 * y2 - 2 * a * c * G1 + 2 * (c * d - be * a * b) * s5,
                  b * F1 - be * a * b * s2,
                  -c * F1 - be * a * c * s2 + 2 * b * s5,
                  2 * b * s2)
            out.append(_assemble(1, F1 * y2 ** 2, nu, S))
        elif i == 2:
            if data.symbolic:
                scale, inv, tag = al * be - 1, MultiPoly.one(R), "alpha*beta - 1"
            else:
                den = data.alpha * data.beta - 1
                if not den:
                    raise DomainError("the equation extending Q2 needs alpha*beta != 1")
                scale, inv, tag = MultiPoly.one(R), MultiPoly.constant(R, den.inverse()), "1"
            m = be * a * c + al * b * d
            nu = (2 * inv * (b ** 2 + be * c ** 2) * b,
                  2 * inv * (al * b ** 2 + c ** 2) * c,
                  -2 * inv * (b ** 2 * F1 + c ** 2 * G1)
                  + scale * (m * y2 + 2 * (2 - al * be) * a * b * c * d),
                  scale * (-b * y2 + 2 * c ** 2 * d + m * b),
                  scale * (-c * y2 + 2 * a * b ** 2 + m * c),
                  scale * (-2 * b * c))
            out.append(_assemble(2, scale * y2 ** 3, nu, S, tag))
        elif i == 3:
            nu = (2 * (b ** 2 + be * c ** 2) * d,
                  2 * c * y2 - 2 * (a * b - al * c * d) * b,
                  -al * d * t2 * y2 - 2 * b * d * F1 + 2 * (a * b - al * c * d) * t4,
                  -b * G1 - al * b * d * t2 + 2 * c * t4,
                  c * G1 - al * c * d * t2,
                  2 * c * t2)
            out.append(_assemble(3, G1 * y2 ** 2, nu, S))
        elif i == 4:
            nu = (b * G1 + c * t4 - t2 * y2,
                  c * F1 + b * s5 - s2 * y2,
                  -s5 * t4,
                  -t2 * F1 - s2 * t4,
                  -s2 * G1 - s5 * t2,
                  -2 * s2 * t2)
            out.append(_assemble(4, F1 * G1 * y2, nu, S))
        else:
            raise ContractViolation(f"no equation Q{i}")
    return out


# ---------------------------------------------------------------------------
# membership solving

# summands of the free module mapping onto R + R z1 + R z2: the R-degree of
# each column's generator in M
COLUMN_SHIFTS = (0, 3, 3, 2, 3, 3, 4)


@dataclass
class MembershipResult:
    status: str  # "solution", "inconsistent" or "bound_exhausted"
    xi: list | None = None
    unknowns: int = 0
    equations: int = 0
    rank: int = 0
    nullity: int = 0
    degree_bound: int | None = None
    nullspace: list = field(default_factory=list)
    columns: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "solution"


def _column_generators(data: ExtensionData):
    """Image in M of each column's generator: 1, Phi(z1), Phi(z2), then the
    four presentation columns (which vanish)."""
    r = data.rings
    pm = phi(data)
    one = MultiPoly.one(r.M)
    A = matrix_A(data.symbolic)
    gens = [one, pm.image("z1"), pm.image("z2")]
    gens += [column_image(A.column(j), data.symbolic) for j in range(4)]
    return gens


def _y_degree(ctx, m):
    e = ctx.unpack(m)
    return sum(e[ctx.index(n)] for n in ("y1", "y2", "y3"))


def solve_membership(target: MultiPoly, data: ExtensionData, degree_bound: int | None = None,
                     with_nullspace: bool = False) -> MembershipResult:
    """Find xi with ``(1, u, v, uv) B xi = target`` in M.

    Unknowns are the coefficients of each component of xi in the graded
    piece of R of the right degree; ``degree_bound`` caps their degree in
    y1, y2, y3 (``None`` keeps the whole graded piece, which makes a reported
    inconsistency a certificate of non-membership).
    """
    if data.symbolic:
        raise ContractViolation("membership solving needs numeric alpha and beta")
    r = data.rings
    M, R = r.M, r.R
    target = target.embed(M)
    h = is_homogeneous(target)
    if not h:
        raise ContractViolation(f"target is not homogeneous: {h.witnesses}")
    if target.is_zero():
        deg = 6
    else:
        deg = h.degree
    p0 = phi0()
    gens = _column_generators(data)
    columns = []  # (component index, packed R monomial)
    col_images = []
    cache = {}

    def image(m):
        if m not in cache:
            cache[m] = p0(MultiPoly.monomial(R, m))
        return cache[m]

    for k, shift in enumerate(COLUMN_SHIFTS):
        d = deg - shift
        if d < 0:
            continue
        for m in R.monomials_of_degree(d):
            if degree_bound is not None and _y_degree(R, m) > degree_bound:
                continue
            columns.append((k, m))
            col_images.append(image(m) * gens[k])

    row_index = {m: j for j, m in enumerate(M.monomials_of_degree(deg))}
    rows = [dict() for _ in row_index]
    for col, img in enumerate(col_images):
        for m, c in img.packed_terms().items():
            rows[row_index[m]][col] = c
    rhs = [GaussianRational()] * len(rows)
    for m, c in target.packed_terms().items():
        rhs[row_index[m]] = c

    sol = solve_linear_exact(rows, rhs, ncols=len(columns))
    res = MembershipResult("inconsistent", None, len(columns), len(rows), sol.rank,
                           len(columns) - sol.rank, degree_bound, columns=columns)
    if not sol.consistent:
        if degree_bound is not None:
            res.status = "bound_exhausted"
        return res
    res.status = "solution"
    res.xi = _vector_to_components(sol.solution, columns, R)
    if with_nullspace:
        res.nullspace = sol.nullspace
    return res


def _vector_to_components(x, columns, R):
    comps = [dict() for _ in COLUMN_SHIFTS]
    for val, (k, m) in zip(x, columns):
        if val:
            comps[k][m] = val
    return [MultiPoly._raw(R, t) for t in comps]


def components_to_vector(xi, columns) -> list:
    return [xi[k].packed_terms().get(m, GaussianRational()) for k, m in columns]


def apply_B(xi, data: ExtensionData) -> MultiPoly:
    """``(1, u, v, uv) B xi`` in M for a vector xi over R."""
    gens = _column_generators(data)
    p0 = phi0(data.symbolic)
    total = MultiPoly.zero(data.rings.M)
    for comp, gen in zip(xi, gens):
        if comp:
            total = total + p0(comp.embed(data.rings.R)) * gen
    return total


def in_span(vector, basis) -> bool:
    """Whether ``vector`` is a linear combination of ``basis``."""
    n = len(vector)
    if not basis:
        return not any(vector)
    rows = [{j: b[i] for j, b in enumerate(basis) if b[i]} for i in range(n)]
    return solve_linear_exact(rows, vector, ncols=len(basis)).consistent


# ---------------------------------------------------------------------------
# W'


def build_Wprime(params: ProjectionParams, data: ExtensionData | None = None) -> VarietyPresentation:
    """Two weight-6 equations: the extended equations minus the chosen
    combinations of the equations extending Q1..Q4."""
    data = data or theorem_solution(params.alpha, params.beta)
    S = data.rings.S
    e1, e2 = extended_equations(data)
    need = [i + 1 for i in range(4) if params.l[i] or params.m[i]]
    if 2 in need and not data.symbolic and data.alpha * data.beta == 1:
        raise DomainError("alpha*beta = 1 leaves no equation extending Q2; set l2 = m2 = 0")
    nus = {nv.index: nv for nv in nu_vectors(data, need)}
    for i in need:
        eq = nus[i].equation
        e1 = e1 - eq * params.l[i - 1]
        e2 = e2 - eq * params.m[i - 1]
    meta = {"alpha": str(params.alpha), "beta": str(params.beta),
            "l": [str(x) for x in params.l], "m": [str(x) for x in params.m]}
    return VarietyPresentation("Wprime", S, [e1, e2], phi(data), None, meta)


def restrict_to_surface(W: VarietyPresentation) -> list:
    """Set a = b = c = d = 0 and read the equations in the ambient of T'."""
    zero = {n: 0 for n in ("a", "b", "c", "d")}
    return [e.restrict(zero).embed(TPRIME_AMBIENT) for e in W.equations]
