from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from crtangents import (
    GaussianRational,
    NotUnitaryError,
    Polynomial,
    exact_divide,
    is_unitary,
    linear_change_of_vars,
    real_variable,
    substitute_real_coords,
)
from crtangents.gaussian import I
from crtangents.polynomial import conjugate_transpose

import oracle
from strategies import gaussians, polynomials

polys = polynomials(n=2, max_degree=3, max_terms=4)
polys3 = polynomials(n=3, max_degree=3, max_terms=4)
half = GaussianRational(Fraction(1, 2))


def z(j, n=2):
    return Polynomial.z(j, n)


def zb(j, n=2):
    return Polynomial.zbar(j, n)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(2)
    assert p * Polynomial.one(2) == p


@given(polys, polys)
@settings(max_examples=40)
def test_product_matches_oracle(p, q):
    expected = oracle.to_sympy(p) * oracle.to_sympy(q)
    assert sp.expand(oracle.to_sympy(p * q) - expected) == 0


@given(polys3)
@settings(max_examples=40)
def test_wirtinger_matches_oracle(p):
    zs, ws = oracle.symbols(3)
    for j in range(1, 4):
        assert sp.expand(oracle.to_sympy(p.d_z(j)) - sp.diff(oracle.to_sympy(p), zs[j - 1])) == 0
        assert sp.expand(oracle.to_sympy(p.d_zbar(j)) - sp.diff(oracle.to_sympy(p), ws[j - 1])) == 0


@given(polys, polys)
def test_conjugation_involution(p, q):
    assert p.conj().conj() == p
    assert (p * q).conj() == p.conj() * q.conj()
    assert (p + q).conj() == p.conj() + q.conj()
    assert (p + p.conj()).is_real()
    assert (p * p.conj()).is_real()


@given(polys, polys)
def test_leibniz_and_conjugate_derivative(p, q):
    for j in (1, 2):
        assert (p * q).d_zbar(j) == p.d_zbar(j) * q + p * q.d_zbar(j)
        assert p.conj().d_zbar(j) == p.d_z(j).conj()
        assert p.d_z(j).d_zbar(1) == p.d_zbar(1).d_z(j)


@given(polys, polys, st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False), min_size=2, max_size=2))
def test_evaluation_is_a_homomorphism(p, q, point):
    pq = (p * q).evaluate(point)
    assert pq == pytest.approx(p.evaluate(point) * q.evaluate(point), rel=1e-9, abs=1e-9)
    assert p.conj().evaluate(point) == pytest.approx(p.evaluate(point).conjugate(), rel=1e-9, abs=1e-9)


@given(polys)
def test_evaluate_many_matches_evaluate(p):
    pts = np.array([[0.3 + 0.1j, -1.2j], [1.5, 0.25 - 0.5j]])
    many = p.evaluate_many(pts)
    assert many == pytest.approx([p.evaluate(pt) for pt in pts], rel=1e-12, abs=1e-12)


@given(polys)
def test_exact_evaluation(p):
    point = [GaussianRational(Fraction(1, 3), 2), GaussianRational(-1, Fraction(1, 2))]
    assert complex(p.evaluate_exact(point)) == pytest.approx(p.evaluate([complex(x) for x in point]), abs=1e-9)


def test_text_form():
    p = zb(2, 3).scale(-I) * zb(3, 3) + z(2, 3) * zb(2, 3) ** 2
    assert str(p) == "-i*zb2*zb3 + z2*zb2^2"
    assert str(Polynomial.zero(3)) == "0"


@given(polys)
def test_record_round_trip(p):
    assert Polynomial.from_record(p.to_record()) == p


def test_degree_and_exponents():
    p = z(1) ** 2 * zb(2) ** 3 + z(2)
    assert p.degree() == 5
    assert p.max_exponent(2, "anti") == 3
    assert Polynomial.zero(2).degree() == -1


def test_real_coordinates():
    n = 2
    x1, y1 = real_variable("x", 1, n), real_variable("y", 1, n)
    assert substitute_real_coords(x1 + y1.scale(I), n) == z(1)
    assert substitute_real_coords(x1 * x1 + y1 * y1, n) == z(1) * zb(1)
    assert substitute_real_coords(x1 - y1.scale(I), n) == zb(1)


def test_real_coordinate_polynomials_are_real():
    n = 3
    q = real_variable("x", 1, n) ** 2 * real_variable("y", 3, n) - real_variable("y", 2, n).scale(3)
    assert substitute_real_coords(q, n).is_real()


def _rational_unitary():
    # (3/5, 4/5 i; 4/5 i, 3/5) is exactly unitary
    a, b = GaussianRational(Fraction(3, 5)), GaussianRational(0, Fraction(4, 5))
    return [[a, b], [b, a]]


@given(polys)
@settings(max_examples=30)
def test_unitary_change_is_invertible(p):
    U = _rational_unitary()
    assert is_unitary(U)
    back = linear_change_of_vars(linear_change_of_vars(p, U), conjugate_transpose(U))
    assert back == p


@given(polys)
@settings(max_examples=30)
def test_unitary_change_numerically(p):
    U = _rational_unitary()
    point = np.array([0.4 - 0.2j, 1.1 + 0.3j])
    M = np.array([[complex(x) for x in row] for row in U])
    assert linear_change_of_vars(p, U).evaluate(point) == pytest.approx(p.evaluate(M @ point), abs=1e-9)


def test_unitary_preserves_sphere_function():
    n = 2
    U = _rational_unitary()
    norm2 = z(1) * zb(1) + z(2) * zb(2)
    assert linear_change_of_vars(norm2, U) == norm2
    assert linear_change_of_vars(z(1), [[0, 1], [1, 0]]) == z(2)


def test_non_unitary_rejected():
    with pytest.raises(NotUnitaryError):
        linear_change_of_vars(z(1), [[1, 1], [0, 1]])
    assert not is_unitary([[2, 0], [0, 1]])


@given(polys, polys.filter(lambda d: not d.is_zero()))
def test_division_identity(p, d):
    q, r = exact_divide(p, d)
    assert q * d + r == p


@given(polys, polys.filter(lambda d: not d.is_zero()))
def test_exact_division_of_multiples(q, d):
    quotient, remainder = exact_divide(q * d, d)
    assert remainder.is_zero()
    assert quotient == q


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        exact_divide(z(1), Polynomial.zero(2))


def test_substitute_composition():
    p = z(1) * zb(2) + Polynomial.constant(GaussianRational(2, 1), 2)
    images = [z(1) + z(2), z(2)]
    anti = [zb(1) + zb(2), zb(2)]
    assert p.substitute(images, anti) == (z(1) + z(2)) * zb(2) + Polynomial.constant(GaussianRational(2, 1), 2)


def test_lift_and_project():
    p = z(1) * zb(2)
    assert p.lift(4).project(2) == p
    assert p.lift(4).dimension == 4
