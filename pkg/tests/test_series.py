import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from keyvariety import ContractViolation
from keyvariety.series import (EXTRA_GENERATOR, GODEAUX_DENOMINATOR, BigradedSeries,
                               DenominatorSpec, divide_by_factor, generator_relation_reading,
                               godeaux_cover_series, hilbert_summary, numerator_of)

t, e = sp.symbols("t e")
N = 12


def _pairs_from_sympy(expr, n=N):
    """Coefficients (invariant, anti-invariant) of a series in t with e^2 = 1."""
    poly = sp.Poly(sp.series(expr, t, 0, n + 1).removeO(), t)
    out = []
    for k in range(n + 1):
        c = sp.expand(poly.coeff_monomial(t ** k))
        c = sp.Poly(c, e).rem(sp.Poly(e ** 2 - 1, e)) if c.has(e) else sp.Poly(c, e)
        out.append((int(c.coeff_monomial(1)), int(c.coeff_monomial(e))))
    return out


def _oracle_series():
    # closed form of 1 + e t + sum_{n>=2} (1 + n(n-1)/2)(1 + e) t^n
    x = t
    tail = (1 + e) * (1 / (1 - x) + x ** 2 / (1 - x) ** 3 - 1 - x)
    return 1 + e * x + tail


def _oracle_denominator(factors):
    out = sp.Integer(1)
    for w, s in factors:
        out *= 1 - (1 if s == 1 else e) * t ** w
    return out


# [DERIVED] the series and numerators agree with an independent sympy expansion


def test_series_matches_closed_form():
    got = godeaux_cover_series(N).to_json()
    assert [tuple(x) for x in got] == _pairs_from_sympy(_oracle_series())


@pytest.mark.parametrize("extra", [False, True])
def test_numerators_match_sympy(extra):
    denom = GODEAUX_DENOMINATOR.extend(EXTRA_GENERATOR) if extra else GODEAUX_DENOMINATOR
    got = numerator_of(godeaux_cover_series(N), denom)
    want = _pairs_from_sympy(_oracle_series() * _oracle_denominator(denom.factors))
    assert [tuple(x) for x in got.to_json()] == want


# [PAPER] printed coefficients


def test_printed_series_start():
    p = godeaux_cover_series(N)
    assert [p[n] for n in range(4)] == [(1, 0), (0, 1), (2, 2), (4, 4)]


def test_printed_numerator():
    num = hilbert_summary(N)["numerator"]
    printed = {0: (1, 0), 1: (0, 0), 2: (0, 0), 3: (0, 0), 4: (-1, 1), 5: (-2, -2),
               6: (-6, -4), 7: (0, 0), 8: (8, 7)}
    assert {n: num[n] for n in printed} == printed


def test_printed_numerator_after_extra_generator():
    num = hilbert_summary(N)["numerator_with_degree4_generator"]
    assert [num[n] for n in range(7)] == [(1, 0), (0, 0), (0, 0), (0, 0), (-1, 0), (-2, -2), (-6, -4)]


def test_reading():
    lines = generator_relation_reading()
    assert lines[0].startswith("first non-unit numerator term: degree 4")
    assert any("anti-invariant generator of degree 4" in x for x in lines)
    assert "1 invariant relation(s) in degree 4" in lines[-1]


def test_text_rendering():
    s = BigradedSeries.from_pairs([(1, 0), (2, 1), (0, -1)], 5)
    assert s.to_text() == "1 + (2+e) t - e t^2 + O(t^6)"


def test_contracts():
    with pytest.raises(ContractViolation):
        godeaux_cover_series(3)
    with pytest.raises(ContractViolation):
        DenominatorSpec(((0, 1),))
    with pytest.raises(ContractViolation):
        divide_by_factor(BigradedSeries.one(5), (2, 3))


# properties

pairs = st.tuples(st.integers(-50, 50), st.integers(-50, 50))
factors = st.tuples(st.integers(1, 6), st.sampled_from([1, -1]))


@given(st.lists(pairs, min_size=1, max_size=10), factors)
def test_divide_back(coeffs, factor):
    s = BigradedSeries.from_pairs(coeffs, 10)
    denom = DenominatorSpec((factor,))
    assert divide_by_factor(numerator_of(s, denom), factor) == s


@given(st.lists(pairs, min_size=1, max_size=8), st.lists(pairs, min_size=1, max_size=8))
def test_product_commutes_and_inverts(a, b):
    x = BigradedSeries.from_pairs(a, 8)
    y = BigradedSeries.from_pairs(b, 8)
    assert x * y == y * x
    if x[0][0] in (1, -1) and x[0][1] == 0:
        assert (x * x.inverse()) == BigradedSeries.one(8)
