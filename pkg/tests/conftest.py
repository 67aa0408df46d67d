"""Shared helpers: a sympy oracle for MultiPoly and hypothesis strategies."""
import sympy as sp
from hypothesis import strategies as st

from keyvariety import GaussianRational, MultiPoly, VariableContext


def to_sympy_scalar(c: GaussianRational):
    re = sp.Rational(int(c.re.numerator), int(c.re.denominator))
    im = sp.Rational(int(c.im.numerator), int(c.im.denominator))
    return re + sp.I * im


def to_sympy(p: MultiPoly):
    """Rebuild ``p`` term by term as a sympy expression."""
    syms = [sp.Symbol(n) for n in p.ctx.names]
    out = sp.Integer(0)
    for exps, c in p.terms():
        term = to_sympy_scalar(c)
        for s, e in zip(syms, exps):
            term *= s ** e
        out += term
    return out


def sympy_is_zero(expr) -> bool:
    return sp.expand(expr) == 0


XYZ = VariableContext(("x", "y", "z"), (1, 1, 1))

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussians = gaussians.filter(bool)


@st.composite
def polys(draw, ctx=XYZ, max_terms=5, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(0, max_exp)) for _ in ctx.names)
        terms[exps] = draw(gaussians)
    return MultiPoly(ctx, terms)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
