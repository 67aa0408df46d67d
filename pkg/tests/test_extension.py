import pytest
import sympy as sp
from conftest import to_sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from keyvariety import ContractViolation, DomainError, MultiPoly, PolyMatrix, RingMap
from keyvariety.extension import (apply_B, build_Wprime, components_to_vector,
                                  extended_equations, in_span, lifted_normal_form, matrix_A,
                                  matrix_B, nu_vectors, phi, phi0, printed_residuals,
                                  residual_in_M, residuals, restrict_to_surface, rings,
                                  solve_membership, theorem_solution, verify_kernel,
                                  verify_presentation, xi_eta)
from keyvariety.tower import ProjectionParams, project_T

a, b, c, d, u, v = sp.symbols("a b c d u v")
Y = {sp.Symbol("y1"): u ** 2 + 2 * a * v, sp.Symbol("y2"): b * u + c * v,
     sp.Symbol("y3"): v ** 2 + 2 * d * u}
GENS = (1, u, v, u * v)


def sympy_phi(data):
    pm = phi(data)
    return {sp.Symbol(n): to_sympy(img) for n, img in zip(pm.source.names, pm.images)}


def sympy_kernel(eq, data) -> bool:
    return sp.expand(to_sympy(eq).xreplace(sympy_phi(data))) == 0


# --- the presentation of M over R ---------------------------------------------


def test_presentation_columns_oracle():
    A = matrix_A()
    for j in range(4):
        col = sum(g * to_sympy(A[i, j]) for i, g in enumerate(GENS))
        assert sp.expand(col.xreplace(Y)) == 0
    assert verify_presentation() == [True] * 4


def test_presentation_symbolic():
    assert verify_presentation(symbolic=True) == [True] * 4


@pytest.mark.parametrize("i,j", [(0, 0), (1, 2), (3, 3)])
def test_tampered_column_detected(i, j):
    A = matrix_A()
    R = A[0, 0].ctx
    T = PolyMatrix([[A[r, k] + (MultiPoly.parse(R, "a") ** A[r, k].total_degree()
                                if (r, k) == (i, j) and A[r, k] else
                                (MultiPoly.parse(R, "y2") if (r, k) == (i, j) else 0))
                     for k in range(4)] for r in range(4)])
    assert not verify_presentation(T)[j]


# --- the extended equations -----------------------------------------------------


def test_kernel_symbolic_oracle():
    data = theorem_solution(symbolic=True)
    for eq in extended_equations(data):
        assert sympy_kernel(eq, data)
        assert verify_kernel(eq, data)


@settings(max_examples=10, deadline=None)
@given(st.fractions(-9, 9, max_denominator=5), st.fractions(-9, 9, max_denominator=5))
def test_kernel_numeric(alpha, beta):
    data = theorem_solution(alpha, beta)
    assert all(verify_kernel(e, data) for e in extended_equations(data))


def test_kernel_gaussian_parameters():
    data = theorem_solution("1/2+i", "-3*i")
    eqs = extended_equations(data)
    assert all(verify_kernel(e, data) for e in eqs)
    assert all(sympy_kernel(e, data) for e in eqs)


@pytest.mark.parametrize("name,form", [("s2", "a + b"), ("t4", "c^2"), ("s5", "a*d")])
def test_perturbed_correction_leaves_kernel(name, form):
    data = theorem_solution(2, 3)
    bad = data.perturbed(name, MultiPoly.parse(data.rings.F, form))
    assert not all(verify_kernel(e, bad) for e in extended_equations(bad))


def test_kernel_rejects_foreign_variables():
    data = theorem_solution(1, 2)
    with pytest.raises(ContractViolation):
        verify_kernel(MultiPoly.parse(rings().M, "u"), data)


def test_residuals_closed_form():
    data = theorem_solution(symbolic=True)
    got, want = residuals(data), printed_residuals(data)
    assert got.K == want.K and got.L == want.L
    assert not any(got.constant_parts)
    assert set(got.to_dict()) == {"K_u", "K_v", "K_uv", "L_u", "L_v", "L_uv"}


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-5, 5)),
                min_size=1, max_size=4))
def test_lifted_normal_form_kills_relations(terms):
    L = rings().L
    p = MultiPoly.zero(L)
    for i, j, k in terms:
        p = p + MultiPoly.parse(L, f"{k}*a*u^{i}*v^{j}")
    rel_u = MultiPoly.parse(L, "u^2 - y1 + 2*a*v")
    rel_v = MultiPoly.parse(L, "v^2 - y3 + 2*d*u")
    assert not any(lifted_normal_form(p * rel_u + rel_v * rel_u))
    c0, cu, cv, cuv = lifted_normal_form(p)
    gens = [MultiPoly.var(L, n) for n in ("u", "v")]
    back = c0.embed(L) + cu.embed(L) * gens[0] + cv.embed(L) * gens[1] + \
        cuv.embed(L) * gens[0] * gens[1]
    assert lifted_normal_form(back) == (c0, cu, cv, cuv)
    # the normal form is an identity in M
    p0 = phi0()
    to_m = RingMap(L, rings().M, {n: p0.image(n) for n in ("y1", "y2", "y3")})
    assert to_m(p) == to_m(back)


# --- the equations extending Q1..Q4 --------------------------------------------


def test_nu_symbolic_oracle():
    data = theorem_solution(symbolic=True)
    vecs = nu_vectors(data)
    assert [nv.scale for nv in vecs] == ["1", "alpha*beta - 1", "1", "1"]
    for nv in vecs:
        assert sympy_kernel(nv.equation, data)


@pytest.mark.parametrize("alpha,beta", [(2, 3), ("-1/2", 5), ("i", "2-i"), (0, 0)])
def test_nu_numeric(alpha, beta):
    data = theorem_solution(alpha, beta)
    assert all(verify_kernel(nv.equation, data) for nv in nu_vectors(data))


def test_q2_rejected_at_unit_product():
    data = theorem_solution(4, "1/4")
    with pytest.raises(DomainError):
        nu_vectors(data, which=(2,))
    assert len(nu_vectors(data, which=(1, 3, 4))) == 3


# --- membership ------------------------------------------------------------------


@pytest.fixture(scope="module")
def solved():
    data = theorem_solution(2, 3)
    res = residuals(data)
    out = {}
    for which, parts in (("xi", res.K), ("eta", res.L)):
        target = residual_in_M(parts)
        out[which] = (target, solve_membership(target, data, with_nullspace=True))
    return data, out


def test_membership_dimensions(solved):
    _, out = solved
    sol = out["xi"][1]
    assert sol.found
    assert (sol.equations, sol.unknowns, sol.rank, sol.nullity) == (462, 471, 319, 152)


@pytest.mark.parametrize("which", ["xi", "eta"])
def test_membership_resubstitution_oracle(solved, which):
    data, out = solved
    target, sol = out[which]
    B = matrix_B(data)
    total = sp.Integer(0)
    for k, comp in enumerate(sol.xi):
        col = sum(g * to_sympy(B[i, k]) for i, g in enumerate(GENS))
        total += col * to_sympy(comp)
    assert sp.expand(total.xreplace(Y) - to_sympy(target)) == 0


@pytest.mark.parametrize("which", ["xi", "eta"])
def test_membership_matches_printed(solved, which):
    data, out = solved
    target, sol = out[which]
    printed = xi_eta(data)[0 if which == "xi" else 1]
    assert apply_B(printed, data) == target
    diff = [p - q for p, q in zip(components_to_vector(printed, sol.columns),
                                  components_to_vector(sol.xi, sol.columns))]
    assert in_span(diff, sol.nullspace)


def test_membership_certifies_nonmembership():
    data = theorem_solution(2, 3)
    bad = data.perturbed("s2", MultiPoly.parse(data.rings.F, "a - c"))
    sol = solve_membership(residual_in_M(residuals(bad).K), bad)
    assert sol.status == "inconsistent"


def test_membership_bound_exhausted():
    data = theorem_solution(2, 3)
    sol = solve_membership(residual_in_M(residuals(data).K), data, degree_bound=0)
    assert sol.status == "bound_exhausted"


def test_membership_needs_numeric_data():
    data = theorem_solution(symbolic=True)
    with pytest.raises(ContractViolation):
        solve_membership(MultiPoly.zero(data.rings.M), data)


def test_in_span():
    assert in_span([1, 2], [[1, 2]])
    assert not in_span([1, 0], [[1, 2]])
    assert in_span([0, 0], [])


# --- W' -----------------------------------------------------------------------------


@pytest.mark.parametrize("params", [
    ProjectionParams.make(2, 3, (1, 2, 3, 4), (5, 6, 7, 8)),
    ProjectionParams.make("1/2", "i", (0, 1, 0, -1), (3, 0, "2/3", 0)),
    ProjectionParams.make(2, "1/2", (1, 0, 1, 1), (0, 0, 4, 1)),
])
def test_wprime_restricts_to_tprime(params):
    W = build_Wprime(params)
    assert W.verified()
    assert restrict_to_surface(W) == project_T(params).equations


def test_wprime_unit_product():
    with pytest.raises(DomainError):
        build_Wprime(ProjectionParams.make(2, "1/2", (0, 1, 0, 0), (0, 0, 0, 0)))
