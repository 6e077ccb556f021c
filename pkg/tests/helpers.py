"""Random generators and independent oracles shared by the tests."""

import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from smithalg.numfield import QQ, SparsePoly, UniPoly
from smithalg.weyl import WeylOp

small_fractions = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def sparse_polys(draw, nvars, max_degree=4, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars))
        if sum(mono) > max_degree:
            continue
        terms[tuple(mono)] = draw(small_fractions)
    return SparsePoly(nvars, terms)


@st.composite
def unipolys(draw, max_degree=4):
    return UniPoly(draw(st.lists(small_fractions, max_size=max_degree + 1)), QQ)


@st.composite
def weyl_ops(draw, nvars, max_order=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        a = tuple(draw(st.lists(st.integers(0, max_order), min_size=nvars, max_size=nvars)))
        b = tuple(draw(st.lists(st.integers(0, max_order), min_size=nvars, max_size=nvars)))
        if sum(b) > max_order or sum(a) > max_order:
            continue
        terms[(a, b)] = draw(small_fractions)
    return WeylOp(nvars, terms)


def random_word(rng: random.Random, max_len=6, letters="xye"):
    return "".join(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def random_unipoly(rng: random.Random, max_degree=3):
    return UniPoly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(0, max_degree + 1))], QQ)


# --- sympy oracles -----------------------------------------------------------

def to_sympy(p: SparsePoly, symbols):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** e for s, e in zip(symbols, m)])
                       for m, c in p.terms.items()])


def from_sympy(expr, symbols) -> SparsePoly:
    poly = sympy.Poly(sympy.expand(expr), *symbols)
    return SparsePoly(len(symbols), {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def sympy_apply_constant_coeff(p: SparsePoly, symbols, target):
    """p(d) applied to a sympy expression by repeated differentiation."""
    total = 0
    for m, c in p.terms.items():
        term = target
        for s, e in zip(symbols, m):
            if e:
                term = sympy.diff(term, s, e)
        total += sympy.Rational(c.numerator, c.denominator) * term
    return sympy.expand(total)
