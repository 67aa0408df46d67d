import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussians, to_sympy
from keyvariety import ContractViolation, MultiPoly, RenderError
from keyvariety.rendering import (SEGRE, VERONESE, pullback, render, split, split_bihomogeneous,
                                  verify_render_ambiguity)

B = VERONESE.base
S = SEGRE.base


@st.composite
def binary_forms(draw, degree=None):
    d = degree if degree is not None else 2 * draw(st.integers(0, 4))
    mons = B.monomials_of_degree(d)
    terms = {B.unpack(m): draw(gaussians) for m in draw(st.lists(st.sampled_from(mons), max_size=6))}
    return MultiPoly(B, terms)


@st.composite
def bi_forms(draw, bidegree=(2, 2)):
    mons = [m for m in S.monomials_of_degree(sum(bidegree)) if S.bidegree_of(m) == bidegree]
    terms = {S.unpack(m): draw(gaussians) for m in draw(st.lists(st.sampled_from(mons), max_size=6))}
    return MultiPoly(S, terms)


@given(binary_forms())
def test_veronese_roundtrip(p):
    assert pullback(render(p, VERONESE), VERONESE) == p


@given(bi_forms((3, 3)))
def test_segre_roundtrip(p):
    assert pullback(render(p, SEGRE), SEGRE) == p


@given(binary_forms(6))
def test_ambiguity_is_the_quadric(p):
    assert verify_render_ambiguity(p, VERONESE)


@given(bi_forms((2, 2)))
def test_segre_ambiguity(p):
    assert verify_render_ambiguity(p, SEGRE)


def test_greedy_choice():
    # s1^2 s2^2 could be y1*y3 or y2^2; the rule takes y1 first
    q = render(MultiPoly.parse(B, "s1^2*s2^2"), VERONESE)
    assert q == MultiPoly.parse(VERONESE.ambient, "y1*y3")


def test_odd_degree_rejected():
    with pytest.raises(RenderError) as exc:
        render(MultiPoly.parse(B, "s1^3"), VERONESE)
    assert exc.value.monomial == "s1^3"


def test_unbalanced_bidegree_rejected():
    with pytest.raises(RenderError):
        render(MultiPoly.parse(S, "s1^2*t1"), SEGRE)


def test_inhomogeneous_rejected():
    with pytest.raises(ContractViolation):
        render(MultiPoly.parse(B, "s1^2 + s1^4"), VERONESE)


@given(bi_forms((3, 1)), st.booleans())
def test_split_bihomogeneous(f, first):
    q, qq = split_bihomogeneous(f, "t1", first)
    t1, s1, s2 = (MultiPoly.var(S, n) for n in ("t1", "s1", "s2"))
    assert s1 * q + s2 * qq == t1 * f


def test_split_requires_divisibility():
    with pytest.raises(ContractViolation):
        split(MultiPoly.parse(S, "t1^2"), "s1", "s2")


def test_render_matches_sympy_substitution():
    import sympy as sp
    p = MultiPoly.parse(B, "3*s1^4 - i*s1^3*s2 + 1/2*s1*s2^3 + s2^4")
    y1, y2, y3, s1, s2 = sp.symbols("y1 y2 y3 s1 s2")
    back = to_sympy(render(p, VERONESE)).subs({y1: s1 ** 2, y2: s1 * s2, y3: s2 ** 2})
    assert sp.expand(back - to_sympy(p)) == 0
