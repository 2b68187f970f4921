import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from crtangents import (
    DimensionError,
    NotRealError,
    Polynomial,
    apply,
    cr_basis,
    heisenberg_operator,
    heisenberg_rho,
    is_cr,
    solve_preimage,
)
from crtangents.gaussian import I

import oracle
from strategies import gaussians, polynomials, random_polynomial


def test_solver_example_n3():
    p = Polynomial.zbar(3, 3)
    f = solve_preimage(p, 2, 3)
    assert str(f) == "-i*zb2*zb3 + z2*zb2^2"
    assert apply(heisenberg_operator(2, 3), f) == p


def test_solver_example_z1():
    assert str(solve_preimage(Polynomial.z(1, 2), 1)) == "-i*z1*zb1"
    assert str(solve_preimage(Polynomial.z(1, 3), 2)) == "-i*z1*zb2"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_basis_of_heisenberg_is_the_explicit_operator(n):
    for j, L in enumerate(cr_basis(heisenberg_rho(n)), start=1):
        f = random_polynomial(random.Random(j), n, 4, 6)
        assert apply(L, f) == apply(heisenberg_operator(j, n), f)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_basis_annihilates_rho(n):
    rho = heisenberg_rho(n)
    assert all(apply(L, rho).is_zero() for L in cr_basis(rho))


@given(polynomials(n=3, max_degree=4, max_terms=5), st.integers(1, 2))
@settings(max_examples=60)
def test_round_trip(p, j):
    f = solve_preimage(p, j, 3)
    assert apply(heisenberg_operator(j, 3), f) == p
    assert f.degree() <= p.degree() + p.max_exponent(3, "anti") + 1


@given(polynomials(n=3, max_degree=3), polynomials(n=3, max_degree=3), gaussians)
@settings(max_examples=40)
def test_solver_is_linear(p, q, c):
    assert solve_preimage(p + q.scale(c), 2) == solve_preimage(p, 2) + solve_preimage(q, 2).scale(c)


@given(polynomials(n=3, max_degree=3, max_terms=4))
@settings(max_examples=40)
def test_spectator_equivariance(p):
    # multiplying by a CR spectator factor (z_1 is annihilated by L_{23}) commutes with solving
    s = Polynomial.z(1, 3)
    assert solve_preimage(p * s, 2) == solve_preimage(p, 2) * s


@given(polynomials(n=3, max_degree=3, max_terms=4))
@settings(max_examples=30, deadline=None)
def test_operator_matches_oracle(f):
    expected = oracle.apply_L(oracle.to_sympy(f), 2, 3)
    assert sp.expand(oracle.to_sympy(apply(heisenberg_operator(2, 3), f)) - expected) == 0


def test_holomorphic_functions_are_cr():
    basis = cr_basis(heisenberg_rho(3))
    assert is_cr(Polynomial.z(1, 3) ** 2 * Polynomial.z(3, 3), basis)
    assert not is_cr(Polynomial.zbar(2, 3), basis)


def test_cr_basis_requires_real_rho():
    with pytest.raises(NotRealError):
        cr_basis(Polynomial.z(1, 2))


def test_index_errors():
    with pytest.raises(DimensionError):
        solve_preimage(Polynomial.z(1, 3), 3)
    with pytest.raises(DimensionError):
        heisenberg_operator(0, 3)


def test_constant_target():
    f = solve_preimage(Polynomial.constant(I, 2), 1)
    assert apply(heisenberg_operator(1, 2), f) == Polynomial.constant(I, 2)
