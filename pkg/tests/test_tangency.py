import random

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings

from crtangents import (
    GraphEmbedding,
    NumericPathRequired,
    OffSurfaceError,
    Polynomial,
    SampleSpec,
    canonical_embedding,
    canonical_reduction,
    cofactor_determinant,
    heisenberg_rho,
    minimal_sphere_embedding,
    sample_surface,
    solve_preimage,
    tangency_eval,
    tangency_eval_many,
    totally_real_embedding,
    webster_determinant,
)
from crtangents.gaussian import I
from crtangents.tangency import hadamard_scale, unit_relation

import oracle
from strategies import polynomials, random_polynomial

# c_n in B = c_n * conj(W(f)), computed with the sympy oracle
C_N = {2: -1, 3: 1, 4: 1, 5: -1}
# B of the totally real embedding, from the same oracle
TOTALLY_REAL_B = {2: I, 3: -I, 4: -I, 5: I, 6: I}


@given(polynomials(n=3, max_degree=3, max_terms=4).filter(lambda f: not f.is_zero()))
@settings(max_examples=15, deadline=None)
def test_determinant_matches_oracle(f):
    e = canonical_embedding(f, 3)
    zs, ws = oracle.symbols(3)
    expected = oracle.tangency_determinant([oracle.to_sympy(f), ws[0]], 3)
    assert sp.expand(oracle.to_sympy(webster_determinant(e)) - expected) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_determinant_identity(n):
    rng = random.Random(n)
    for _ in range(3):
        f = random_polynomial(rng, n, 3, 5)
        B = webster_determinant(canonical_embedding(f, n))
        assert B == canonical_reduction(f, n).conj().scale(C_N[n])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_totally_real_constants(n):
    B = webster_determinant(totally_real_embedding(n))
    assert B.is_constant()
    assert B.constant_term() == TOTALLY_REAL_B[n]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reim_convention_factor(n):
    f = random_polynomial(random.Random(10 + n), n, 3, 4)
    e = canonical_embedding(f, n)
    assert webster_determinant(e, "reim") == webster_determinant(e).scale((I / 2) ** (n - 1))


@given(
    polynomials(n=2, max_degree=2, max_terms=3),
    polynomials(n=2, max_degree=2, max_terms=3),
    polynomials(n=2, max_degree=2, max_terms=3),
    polynomials(n=2, max_degree=2, max_terms=3),
)
@settings(max_examples=30, deadline=None)
def test_cofactor_matches_oracle_3x3(a, b, c, d):
    zero = Polynomial.zero(2)
    M = [[a, b, zero], [c, d, a], [zero, b, c]]
    expected = sp.Matrix([[oracle.to_sympy(x) for x in row] for row in M]).det(method="berkowitz")
    assert sp.expand(oracle.to_sympy(cofactor_determinant(M)) - expected) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_numeric_path_matches_symbolic(n):
    f = solve_preimage(Polynomial.z(1, n) * Polynomial.zbar(1, n) - Polynomial.one(n), n - 1)
    e = canonical_embedding(f, n)
    B = webster_determinant(e)
    pts = sample_surface(SampleSpec("heisenberg", n, count=50, seed=3))
    assert tangency_eval_many(e, pts) == pytest.approx(B.evaluate_many(pts), rel=1e-9, abs=1e-9)
    assert tangency_eval(e, pts[0]) == pytest.approx(B.evaluate(pts[0]), rel=1e-9, abs=1e-9)


def test_hadamard_bounds_determinant():
    e = minimal_sphere_embedding(3)
    pts = sample_surface(SampleSpec("sphere", 3, count=200, seed=1))
    pts = pts[np.abs(1 - pts[:, -1]) > 0.1]
    assert np.all(np.abs(tangency_eval_many(e, pts)) <= hadamard_scale(e, pts) * (1 + 1e-12))


def test_rational_components_need_numeric_path():
    with pytest.raises(NumericPathRequired):
        webster_determinant(minimal_sphere_embedding(2))


def test_off_surface_points_rejected():
    with pytest.raises(OffSurfaceError):
        tangency_eval(totally_real_embedding(2), [1, 1])


def test_embedding_validation():
    with pytest.raises(ValueError):
        GraphEmbedding(3, heisenberg_rho(3), [Polynomial.z(1, 3)])
    with pytest.raises(ValueError):
        GraphEmbedding(2, Polynomial.z(1, 2), [Polynomial.z(1, 2)])


def test_unit_relation():
    p = Polynomial.z(1, 2) + Polynomial.zbar(2, 2)
    assert unit_relation(p.conj().scale(I), p) == I
    assert unit_relation(p.conj() + Polynomial.one(2), p) is None
