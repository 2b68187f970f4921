"""Hypothesis strategies and seeded generators shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from crtangents import GaussianRational, Polynomial

small_fractions = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)
gaussians = st.builds(GaussianRational, small_fractions, small_fractions)
nonzero_gaussians = gaussians.filter(bool)


@st.composite
def monomials(draw, n: int, max_degree: int):
    exps = draw(st.lists(st.integers(0, max_degree), min_size=2 * n, max_size=2 * n))
    while sum(exps) > max_degree:
        k = exps.index(max(exps))
        exps[k] -= 1
    return tuple(exps[:n]), tuple(exps[n:])


@st.composite
def polynomials(draw, n: int = 2, max_degree: int = 3, max_terms: int = 4):
    terms = draw(
        st.lists(st.tuples(monomials(n, max_degree), gaussians), max_size=max_terms)
    )
    return Polynomial(n, terms)


def random_polynomial(rng: random.Random, n: int, max_degree: int = 6, max_terms: int = 20) -> Polynomial:
    """Seeded random polynomial with small Gaussian-rational coefficients."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(0, max_degree)
        exps = [0] * (2 * n)
        for _ in range(degree):
            exps[rng.randrange(2 * n)] += 1
        coeff = GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        terms.append(((tuple(exps[:n]), tuple(exps[n:])), coeff))
    return Polynomial(n, terms)
