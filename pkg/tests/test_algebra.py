import os
import subprocess
import sys
from fractions import Fraction

import pytest
import sympy as sp
from conftest import XYZ, gaussians, nonzero_gaussians, polys, to_sympy, to_sympy_scalar
from hypothesis import given, settings
from hypothesis import strategies as st

from keyvariety import (ContractViolation, GaussianRational, MultiPoly, PolyMatrix, RingMap,
                        VariableContext, as_gaussian, is_homogeneous, solve_linear_exact)
from keyvariety.algebra import _kernels_py, univariate
from keyvariety.algebra.poly import divide

# --- scalars -----------------------------------------------------------------


@pytest.mark.parametrize("text,re,im", [
    ("3/4", Fraction(3, 4), 0), ("+3/4", Fraction(3, 4), 0), ("-2*i", 0, -2),
    ("1/2+3*i", Fraction(1, 2), 3), ("i", 0, 1), ("-7/3-i", Fraction(-7, 3), -1),
])
def test_parse_scalar(text, re, im):
    assert GaussianRational.parse(text) == GaussianRational(re, im)


def test_parse_rejects_garbage():
    with pytest.raises((ValueError, ContractViolation)):
        as_gaussian("1/2+x")


@given(gaussians, gaussians)
def test_field_ops_match_sympy(x, y):
    sx, sy = to_sympy_scalar(x), to_sympy_scalar(y)
    assert to_sympy_scalar(x + y) == sp.expand(sx + sy)
    assert to_sympy_scalar(x * y) == sp.expand(sx * sy)
    if y:
        assert to_sympy_scalar(x / y) == sp.nsimplify(sp.expand(sx / sy))


@given(nonzero_gaussians)
def test_inverse(x):
    assert x * x.inverse() == 1


@given(gaussians)
def test_sqrt_of_square(x):
    r = (x * x).sqrt()
    assert r is not None and r * r == x * x


@pytest.mark.parametrize("x", [2, -3, GaussianRational(1, 1), Fraction(1, 2)])
def test_sqrt_outside_field(x):
    assert as_gaussian(x).sqrt() is None


def test_sqrt_values():
    assert as_gaussian(-4).sqrt() ** 2 == -4
    assert GaussianRational(0, 2).sqrt() == GaussianRational(1, 1)


# --- polynomials -------------------------------------------------------------


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.zero(XYZ)


@given(polys(), polys())
def test_product_matches_sympy(p, q):
    assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(polys(max_terms=3, max_exp=2), st.integers(0, 4))
def test_power(p, n):
    expect = MultiPoly.one(XYZ)
    for _ in range(n):
        expect = expect * p
    assert p ** n == expect


def test_parse_and_text_roundtrip():
    p = MultiPoly.parse(XYZ, "3/4*x^2*y - i*z^3 + (1+i)*x*y*z")
    assert MultiPoly.parse(XYZ, p.to_text()) == p
    assert sp.expand(to_sympy(p) - sp.sympify("3*x**2*y/4 - I*z**3 + (1+I)*x*y*z")) == 0


def test_parse_unknown_variable():
    with pytest.raises(ContractViolation):
        MultiPoly.parse(XYZ, "x + w")


def test_evaluate_and_restrict():
    p = MultiPoly.parse(XYZ, "x^2 - y*z + i")
    assert p.evaluate({"x": 2, "y": 1, "z": 3}) == GaussianRational(1, 1)
    assert p.restrict({"x": 0}) == MultiPoly.parse(XYZ, "-y*z + i")


def test_homogeneity_witnesses():
    ctx = VariableContext(("a", "y"), (1, 2))
    assert is_homogeneous(MultiPoly.parse(ctx, "a^4 + y^2 + a^2*y")).degree == 4
    h = is_homogeneous(MultiPoly.parse(ctx, "a^3 + y"))
    assert not h and h.witnesses


def test_exact_division():
    p = MultiPoly.parse(XYZ, "x^2 - y^2")
    q, r = divide(p, MultiPoly.parse(XYZ, "x - y"))
    assert q == MultiPoly.parse(XYZ, "x + y") and not r
    assert p / 2 == MultiPoly.parse(XYZ, "1/2*x^2 - 1/2*y^2")
    with pytest.raises(ContractViolation):
        p / MultiPoly.parse(XYZ, "x")


# --- ring maps and matrices --------------------------------------------------


@given(polys(max_terms=4, max_exp=2))
def test_ringmap_composition(p):
    f = RingMap(XYZ, XYZ, {"x": MultiPoly.parse(XYZ, "x + y"), "y": MultiPoly.parse(XYZ, "i*z"),
                           "z": MultiPoly.parse(XYZ, "x*y")}, check=False)
    g = RingMap(XYZ, XYZ, {"x": MultiPoly.parse(XYZ, "z"), "y": MultiPoly.parse(XYZ, "x - z"),
                           "z": MultiPoly.parse(XYZ, "y^2")}, check=False)
    assert f.compose(g)(p) == f(g(p))


def test_ringmap_checks_degree():
    ctx = VariableContext(("a", "y"), (1, 2))
    with pytest.raises(ContractViolation):
        RingMap(ctx, ctx, {"a": MultiPoly.parse(ctx, "y"), "y": MultiPoly.parse(ctx, "y")})


def test_minors_match_sympy():
    ctx = VariableContext(("a", "b", "c", "d"), (1, 1, 1, 1))
    rows = [["a", "b", "c"], ["b", "d", "a"], ["c", "a", "b"]]
    M = PolyMatrix([[MultiPoly.parse(ctx, e) for e in r] for r in rows])
    S = sp.Matrix([[sp.Symbol(e) for e in r] for r in rows])
    assert sp.expand(to_sympy(M.minors(3)[0]) - S.det()) == 0
    twos = {sp.expand(to_sympy(m)) for m in M.minors(2)}
    want = {sp.expand(S.extract(list(r), list(c)).det())
            for r in ((0, 1), (0, 2), (1, 2)) for c in ((0, 1), (0, 2), (1, 2))}
    assert twos == want


# --- linear algebra ----------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_linsolve_matches_sympy(m, n, data):
    A = [[data.draw(gaussians) for _ in range(n)] for _ in range(m)]
    b = [data.draw(gaussians) for _ in range(m)]
    sol = solve_linear_exact(A, b)
    SA = sp.Matrix([[to_sympy_scalar(x) for x in row] for row in A])
    Sb = sp.Matrix([to_sympy_scalar(x) for x in b])
    assert sol.rank == SA.rank()
    consistent = SA.rank() == SA.row_join(Sb).rank()
    assert sol.consistent == consistent
    if consistent:
        for row, rhs in zip(A, b):
            assert sum((a * x for a, x in zip(row, sol.solution)), GaussianRational(0)) == rhs
        assert len(sol.nullspace) == n - sol.rank
        for v in sol.nullspace:
            for row in A:
                assert sum((a * x for a, x in zip(row, v)), GaussianRational(0)) == 0


def test_linsolve_sparse_rows():
    sol = solve_linear_exact([{0: 1, 2: 1}, {1: 2}], [3, 4], ncols=3)
    assert sol.status == "underdetermined"
    assert sol.solution[1] == 2


def test_linsolve_contract():
    with pytest.raises(ContractViolation):
        solve_linear_exact([[1, 2]], [1, 2])


# --- univariate ----------------------------------------------------------------


@pytest.mark.parametrize("roots,count", [([1, 2, 3], 3), ([1, 1, 2], 2), ([0, 0, 0, 5], 2)])
def test_distinct_root_count(roots, count):
    x = sp.Symbol("x")
    coeffs = sp.Poly(sp.prod([x - r for r in roots]), x).all_coeffs()[::-1]
    assert univariate.distinct_root_count([int(c) for c in coeffs]) == count


# --- backends ------------------------------------------------------------------


def _packed(p):
    return p.packed_terms()


@given(polys(), polys(), gaussians)
def test_python_kernels_agree(p, q, c):
    assert _kernels_py.mul_terms(_packed(p), _packed(q)) == _packed(p * q)
    assert _kernels_py.add_scaled(_packed(p), _packed(q), c) == _packed(p + q * c)


def test_compiled_kernels_agree():
    compiled = pytest.importorskip("keyvariety.algebra._kernels")
    p = MultiPoly.parse(XYZ, "x^2 + 1/3*i*y*z - z + 7")
    q = MultiPoly.parse(XYZ, "x - y + 2/5*z^2")
    for k in (compiled, _kernels_py):
        assert k.mul_terms(_packed(p), _packed(q)) == _packed(p * q)
        assert k.add_scaled(_packed(p), _packed(q), as_gaussian("1-i")) == _packed(p + q * as_gaussian("1-i"))
        assert k.scale_terms(_packed(p), as_gaussian(3)) == _packed(p * 3)


def test_pure_python_switch():
    env = dict(os.environ, KEYVARIETY_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import keyvariety; print(keyvariety.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
