import pytest
import sympy as sp
from conftest import XYZ, nonzero_gaussians, polys, to_sympy, to_sympy_scalar
from hypothesis import given
from hypothesis import strategies as st

from keyvariety import (ContractViolation, GaussianRational, MultiPoly, NotEigenvector,
                        as_gaussian)
from keyvariety import involution as inv
from keyvariety.tower import K3_AMBIENT, construct_K3

I = GaussianRational(0, 1)
UNITS = [GaussianRational(1), GaussianRational(-1), I, -I]

# --- the action API -------------------------------------------------------------


@st.composite
def specs(draw, ctx=XYZ):
    perm = draw(st.permutations(range(len(ctx))))
    images = tuple((draw(st.sampled_from(UNITS)), j) for j in perm)
    return inv.InvolutionSpec("g", ctx, images, order=2)


@given(specs(), specs(), polys())
def test_compose_is_action(s, t, p):
    assert inv.act(inv.compose(s, t), p) == inv.act(s, inv.act(t, p))


@given(specs(), polys())
def test_action_is_ring_map(s, p):
    q = MultiPoly.parse(XYZ, "x*y - i*z + 2")
    assert inv.act(s, p * q) == inv.act(s, p) * inv.act(s, q)


def test_make_rejects_non_monomial_images():
    with pytest.raises(ContractViolation):
        inv.InvolutionSpec.make("bad", XYZ, {"x": "x + y"})
    with pytest.raises(ContractViolation):
        inv.InvolutionSpec.make("bad", inv.E_AMBIENT, {"s1": "u"})


def test_act_checks_ring():
    with pytest.raises(ContractViolation):
        inv.act(inv.SIGMA_E, MultiPoly.parse(XYZ, "x"))


@pytest.mark.parametrize("spec", [inv.SIGMA_E, inv.TAU_E, inv.SIGMA_D, inv.SIGMA_T,
                                  inv.SIGMA_TPRIME, inv.SIGMA_P1, inv.SIGMA_W])
def test_declared_orders(spec):
    assert inv.verify_order(spec)


def test_sigma_E_squares_to_tau():
    assert inv.compose(inv.SIGMA_E, inv.SIGMA_E).images == inv.TAU_E.images
    assert inv.compose(inv.SIGMA_E, inv.SIGMA_E).images != inv.identity_spec(inv.E_AMBIENT).images


def test_wrong_square_is_caught():
    fake = inv.InvolutionSpec("fake", inv.E_AMBIENT, inv.SIGMA_E.images, order=2)
    assert not inv.verify_order(fake)


# --- weighted projective scaling -----------------------------------------------


@given(st.lists(nonzero_gaussians, min_size=2, max_size=5),
       st.lists(st.integers(1, 4), min_size=5, max_size=5), st.sampled_from(UNITS + [GaussianRational(2)]))
def test_scaling_recovers_mu(point, weights, mu):
    w = weights[:len(point)]
    image = [p * mu ** k for p, k in zip(point, w)]
    res = inv.weighted_scaling(image, point, w)
    assert res.equal
    if res.mu is not None:
        assert all(p * res.mu ** k == q for p, q, k in zip(point, image, w))


def test_scaling_rejects():
    assert not inv.weighted_scaling([1, 2], [1, 1], [1, 1])
    assert not inv.weighted_scaling([0, 1], [1, 1], [2, 2])
    # mu^2 = -1 and mu^3 = 1 have no common mu
    assert not inv.weighted_scaling([-1, 1], [1, 1], [2, 3])
    with pytest.raises(ContractViolation):
        inv.weighted_scaling([0, 0], [0, 0], [1, 1])


def test_scaling_even_weights():
    # all weights even: only mu^2 is determined
    res = inv.weighted_scaling([-1, -2, 4], [1, 2, 4], [2, 2, 4])
    assert res.equal and res.g == 2 and res.nu == -1 and res.mu in (I, -I)


# --- the curve ------------------------------------------------------------------------


def test_curve_generic():
    rep = inv.check_curve_involution([1, 2, 3, 4, 5, 6])
    assert rep.ok and rep.fixed_point_free


@pytest.mark.parametrize("k,stratum,mu", [(0, "s2 = 0", "i"), (5, "s1 = 0", None)])
def test_curve_degenerate(k, stratum, mu):
    alphas = [1, 2, 3, 4, 5, 6]
    alphas[k] = 0
    rep = inv.check_curve_involution(alphas)
    assert rep.ok and not rep.fixed_point_free
    assert rep.fixed_strata[0]["stratum"] == stratum
    if mu:
        assert rep.fixed_strata[0]["mu"] == mu


def test_curve_quadrics_sign_flip():
    f2, g2 = inv.curve_quadrics([1, 2, 3, 4, 5, 6])
    assert inv.act(inv.SIGMA_D, f2) == -g2


# --- the K3 surface ---------------------------------------------------------------------


def test_K3_structure():
    rep = inv.check_K3_involution(inv.BranchSwapData((1, 2, 3, 4), (5, 6, 7, 8)))
    assert rep.ok


def test_engineered_fixed_point_oracle():
    data = inv.BranchSwapData((1, 0, 0, 0), (0, 0, 0, 1))
    T = construct_K3(data.branch())
    pt = inv.fixed_point_candidate(1)
    # [DERIVED] sympy evaluates every equation at the point
    subs = {sp.Symbol(n): to_sympy_scalar(as_gaussian(pt.get(n, 0))) for n in K3_AMBIENT.names}
    assert all(sp.expand(to_sympy(e).xreplace(subs)) == 0 for e in T.equations)
    res = inv.verify_fixed_point(T, pt, inv.SIGMA_T)
    assert res.ok and res.fixed.mu == I


def test_lambda_two_is_not_on_T():
    data = inv.BranchSwapData((1, 0, 0, 0), (0, 0, 0, 1))
    rep = inv.check_K3_involution(data, lambdas=[2])
    assert not rep.points[0]["on_variety"] and rep.points[0]["quartic_value"] == "15"


def test_point_with_equal_y2_y3_not_fixed():
    T = construct_K3(inv.BranchSwapData((1, 0, 0, 0), (0, 0, 0, 1)).branch())
    res = inv.verify_fixed_point(T, {"y1": 1, "y2": 1, "y3": 1, "y4": 1}, inv.SIGMA_T)
    assert not res.fixed


@pytest.mark.parametrize("lam", [1, -2, "1/2", "i", "2+i"])
def test_quartic_roots_are_fixed_points(lam):
    rep = inv.check_K3_involution(inv.BranchSwapData.with_root(lam), lambdas=[lam])
    assert rep.points[0]["verified"] and rep.points[0]["quartic_value"] == "0"


# --- T', Phi and the fixed planes -------------------------------------------------------


def test_tprime_report():
    rep = inv.check_Tprime_involution(2, (1, 2, 3, 4))
    assert rep.ok and rep.isolated_count == 3


def test_tprime_degenerate_count():
    # with all l_i = 0 the restricted cubic is y1^3 up to sign, one point
    assert inv.check_Tprime_involution(2, (0, 0, 0, 0)).isolated_count == 1


def test_equivariance_symbolic_and_numeric():
    sym = inv.check_phi_equivariance("alpha")
    assert sym.ok and sym.matches_general_solution and sym.symbolic
    assert inv.check_phi_equivariance(3).ok
    assert not inv.check_phi_equivariance("alpha", perturb_f1="a^3").ok
    with pytest.raises(ContractViolation):
        inv.check_phi_equivariance(2, beta=3)


def test_fixed_planes():
    rep = inv.fixed_planes_check("alpha")
    assert rep.ok
    mus = [p["image"]["mu"] for p in rep.planes.values()]
    assert mus == ["-1", "1"]
    assert not rep.control["pointwise"]["equal"]


# --- the Godeaux layer ------------------------------------------------------------------


def _sympy_eigen_dimensions(degree):
    gens = [k for k, w in enumerate(inv.W_AMBIENT.weights) if w == degree]
    n = len(gens)
    M = sp.zeros(n, n)
    for col, j in enumerate(gens):
        c, tgt = inv.SIGMA_W.images[j]
        M[gens.index(tgt), col] += to_sympy_scalar(c)
    return tuple(n - (M - s * sp.eye(n)).rank() for s in (1, -1))


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_eigen_dimensions_oracle(degree):
    got = inv.eigen_dimensions(inv.SIGMA_W, degree)
    assert got == _sympy_eigen_dimensions(degree) == inv.TABLE_DIMENSIONS[degree]


def test_table_entries():
    table = inv.EigenspaceTable.printed().check()
    assert all(v["eigenvectors"] and v["spans_generators"] for v in table.values())
    assert {n: tuple(v["computed"]) for n, v in table.items()} == \
        {1: (2, 2), 2: (1, 3), 3: (2, 2), 4: (0, 1)}


def test_godeaux_assembly():
    rep = inv.godeaux_assembly()
    assert rep.ok and rep.wprime_swapped
    assert [s["sign"] for s in rep.sections] == ["+", "+", "-", "-"]
    assert rep.free_scalars["anti_quadric"] == 7


def test_godeaux_rejects_wrong_parity():
    with pytest.raises(NotEigenvector) as exc:
        inv.godeaux_assembly({"anti_linear": "a - d"})
    assert exc.value.form == "a - d"
    with pytest.raises(ContractViolation):
        inv.godeaux_assembly({"invariant_linear": ["a - d", "2*a - 2*d"]})
