import pytest
import sympy as sp
from conftest import to_sympy

from keyvariety import ContractViolation, DegenerateInput, MultiPoly
from keyvariety.tower import (BranchData, CoverAlgebra, ProjectionParams, construct_curve,
                              construct_E, construct_K3, dedupe, node_count, project_T,
                              verify_parametrized_descriptions)

u, v = sp.symbols("u v")


def sympy_pullback_is_zero(P, eq) -> bool:
    """Substitute the parametrization with sympy and reduce mod u^2 = f, v^2 = g."""
    par = P.parametrization
    subs = {sp.Symbol(n): to_sympy(img) for n, img in zip(par.source.names, par.images)}
    expr = sp.expand(to_sympy(eq).xreplace(subs))
    if P.cover is not None:
        f, g = to_sympy(P.cover.f), to_sympy(P.cover.g)
        expr = sp.rem(sp.Poly(expr, u), sp.Poly(u ** 2 - f, u)).as_expr()
        expr = sp.rem(sp.Poly(sp.expand(expr), v), sp.Poly(v ** 2 - g, v)).as_expr()
    return sp.expand(expr) == 0


# [DERIVED] equations vanish on the parametrization, checked in sympy


@pytest.mark.parametrize("seed", range(3))
def test_curve_equations_oracle(seed):
    D = construct_curve(BranchData.random_curve(seed))
    for k in (0, 7, 20):
        assert sympy_pullback_is_zero(D, D.equations[k])
    assert D.metadata["raw_minors"] == 36 and D.metadata["distinct_minors"] == 21


@pytest.mark.parametrize("seed", range(3))
def test_k3_equations_oracle(seed):
    T = construct_K3(BranchData.random_k3(seed))
    assert len(T.equations) == 20
    for eq in T.equations[9:]:
        assert sympy_pullback_is_zero(T, eq)


def test_E_oracle():
    E = construct_E(BranchData.random_curve(4))
    assert all(sympy_pullback_is_zero(E, e) for e in E.equations)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("first", [True, False])
def test_tower_verifies(seed, first):
    assert construct_curve(BranchData.random_curve(seed)).verified()
    assert construct_E(BranchData.random_curve(seed)).verified()
    assert construct_K3(BranchData.random_k3(seed), first).verified()


def test_tampered_equation_fails():
    T = construct_K3(BranchData.random_k3(0))
    T.equations[-1] = T.equations[-1] + MultiPoly.parse(T.ambient, "y1^2")
    assert not T.verified()
    assert not T.verify()[-1].pullback_zero


def test_cover_normal_form():
    b = BranchData.curve("s1^4 + s2^4", "s1^3*s2")
    C = CoverAlgebra(b.f.ctx, b.f, b.g)
    c0, cu, cv, cuv = C.reduce(C.parse("u^3*v + 2*v^2"))
    assert cuv == b.f and c0 == b.g * 2 and not cu and not cv


def test_branch_validation():
    with pytest.raises(ContractViolation):
        BranchData.curve("s1^3*s2", "s1^3")
    with pytest.raises(ContractViolation):
        BranchData.k3("s1^2*t1^2", "s1*t1^3")
    with pytest.raises(ContractViolation):
        construct_K3(BranchData.random_curve(0))


def test_dedupe_scalar_multiples():
    ctx = construct_E(BranchData.random_curve(0)).ambient
    p = MultiPoly.parse(ctx, "s1*s2 + u")
    assert dedupe([p, p * 3, MultiPoly.zero(ctx), -p, p + MultiPoly.parse(ctx, "v")]) == \
        [p, p + MultiPoly.parse(ctx, "v")]


# nodes of the branch curve: [DERIVED] via sympy Groebner eliminants

s1, s2, t1, t2 = sp.symbols("s1 s2 t1 t2")


def _s_values(F, G, t_chart):
    """Eliminant in s1 (s2 = 1) of the zeros of F, G in one affine t chart."""
    f, g = (sp.expand(X.subs({s2: 1, **t_chart})) for X in (F, G))
    free = (t1 if t_chart.get(t2) == 1 else t2)
    basis = sp.groebner([f, g], free, s1, order="lex")
    return sp.Poly(basis.exprs[-1], s1)


def sympy_node_count(branch) -> int:
    """f is linear in t, so each zero lies over a single s; count the s over
    s2 = 1 in both t charts, then the point over s2 = 0."""
    F, G = to_sympy(branch.f), to_sympy(branch.g)
    e = sp.lcm(_s_values(F, G, {t2: 1}), _s_values(F, G, {t1: 1}))
    affine = sp.Poly(sp.quo(e, sp.gcd(e, e.diff(s1))), s1).degree()
    A, B = F.coeff(t1).subs({s1: 1, s2: 0}), F.coeff(t2).subs({s1: 1, s2: 0})
    at_infinity = sp.expand(G.subs({s1: 1, s2: 0, t1: -B, t2: A})) == 0
    return affine + int(at_infinity)


@pytest.mark.parametrize("seed", range(5))
def test_node_count_matches_sympy(seed):
    b = BranchData.random_k3(seed)
    n = node_count(b)
    assert n.count == sympy_node_count(b) == 10
    assert n.transversal and not n.fibre_component


@pytest.mark.parametrize("f,g,count", [
    ("s1^3*t2 + s2^3*t1", "s1*t2^3 + s2*t1^3 + s1*t1^2*t2", 10),
    ("2*s1^3*t2 + 2*s1^3*t1 - s2^3*t1", "t1*t2^2*s1 - t1^2*t2*s2 + 2*t1*t2^2*s2", 8),
    ("-s2^3*t2 + s1^3*t1 - s1*s2^2*t1", "-t1*t2^2*s1 - t2^3*s2 - t1*t2^2*s2", 6),
])
def test_node_count_special(f, g, count):
    b = BranchData.k3(f, g)
    n = node_count(b)
    assert n.count == sympy_node_count(b) == count
    assert n.transversal == (count == 10)


def test_node_count_shared_fibre():
    with pytest.raises(DegenerateInput):
        node_count(BranchData.k3("s1^3*t1", "s1*t1^3"))
    n = node_count(BranchData.k3("s1^2*s2*t1 + s1^3*t2", "s2*t2^3 + s1*t1^3"))
    assert n.fibre_component and not n.transversal


def test_project_T():
    T = project_T(ProjectionParams.make(2, 3, (1, 2, 3, 4), (5, 6, 7, 8)))
    assert T.verified() and len(T.equations) == 2
    assert all(sympy_pullback_is_zero(T, e) for e in T.equations)
    with pytest.raises(ContractViolation):
        ProjectionParams.make(1, 1, (1, 2, 3))


def test_quotient_descriptions():
    rep = verify_parametrized_descriptions()
    assert rep.ok
    assert rep.veronese_minors == 36 and rep.segre_minors == 9
    assert rep.branch_bidegrees == {"u^2": (6, 2), "f31": (6, 2), "v^2": (2, 6), "g13": (2, 6)}
