"""Shared strategies and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from invdiv.polyring import Polynomial

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
nonzero_rationals = small_rationals.filter(bool)


def symbols(nvars):
    return sympy.symbols(f"X0:{nvars}")


def to_sympy(p: Polynomial, syms=None):
    syms = syms or symbols(p.nvars)
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            term *= s**e
        expr += term
    return expr


def from_sympy(expr, nvars: int) -> Polynomial:
    syms = symbols(nvars)
    poly = sympy.Poly(sympy.expand(expr), *syms, domain="QQ")
    return Polynomial(nvars, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def monomials_of_degree(nvars: int, d: int):
    for c in itertools.combinations_with_replacement(range(nvars), d):
        yield tuple(c.count(i) for i in range(nvars))


@st.composite
def polynomials(draw, nvars=None, max_degree=4, max_terms=5):
    nvars = nvars if nvars is not None else draw(st.integers(1, 4))
    exps = st.tuples(*[st.integers(0, max_degree) for _ in range(nvars)])
    terms = draw(st.dictionaries(exps, nonzero_rationals, max_size=max_terms))
    return Polynomial(nvars, terms)


@st.composite
def homogeneous_polynomials(draw, nvars=None, degree=None, max_terms=6, max_nvars=5, max_degree=6):
    nvars = nvars if nvars is not None else draw(st.integers(1, max_nvars))
    degree = degree if degree is not None else draw(st.integers(0, max_degree))
    monos = list(monomials_of_degree(nvars, degree))
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(nonzero_rationals, min_size=len(chosen), max_size=len(chosen)))
    return Polynomial(nvars, dict(zip(chosen, coeffs)))


def random_homogeneous(rng: random.Random, nvars: int, degree: int, terms: int = 5) -> Polynomial:
    monos = list(monomials_of_degree(nvars, degree))
    chosen = rng.sample(monos, min(terms, len(monos)))
    return Polynomial(nvars, {m: Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 3)) for m in chosen})


def random_change(rng: random.Random, size: int, box: int = 3):
    """Random invertible integer matrix, and the linear forms x -> A x."""
    from invdiv import linalg

    a = linalg.random_invertible(rng, size, box)
    return a, [Polynomial.linear_form(row) for row in a]
