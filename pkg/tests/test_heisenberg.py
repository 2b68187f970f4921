from fractions import Fraction

import numpy as np
import pytest

from crtangents import (
    AlgebraicTarget,
    GaussianRational,
    Polynomial,
    PreconditionError,
    SampleSpec,
    certify_totally_real,
    certify_trough,
    heisenberg_rho,
    parametrize,
    realize_algebraic_set,
    real_variable,
    trough_surface,
    vanishing_report,
)
from crtangents.heisenberg import canonical_embedding
from crtangents.sampling import make_rng, sample_off_target, sample_target


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("target_id", ["z1", "circle", "x1y2"])
def test_builtin_targets_realized(n, target_id):
    target = AlgebraicTarget.builtin(target_id, n)
    e, cert = realize_algebraic_set(target, SampleSpec("heisenberg", n, count=200, seed=1))
    assert cert.passed, cert.reports["heisenberg"].summary
    assert cert.checks["preimage_roundtrip"]
    assert cert.convention_constant in (1, -1)
    assert cert.symbolic_locus == target.p.conj().scale(cert.convention_constant)


def test_target_from_real_pair():
    n = 2
    q1 = real_variable("x", 1, n)
    q2 = real_variable("y", 1, n)
    target = AlgebraicTarget.from_real(q1, q2, n)
    assert target.p == Polynomial.z(1, n)
    e, cert = realize_algebraic_set(target, SampleSpec("heisenberg", n, count=100))
    assert cert.passed


def test_target_needs_real_coefficients():
    n = 2
    q = real_variable("x", 1, n).scale(GaussianRational(0, 1))
    with pytest.raises(PreconditionError):
        AlgebraicTarget.from_real(q, None, n)


def test_single_equation_defaults_q2_to_q1():
    n = 2
    q1 = real_variable("x", 1, n)
    target = AlgebraicTarget.from_real(q1, None, n)
    assert target.q2 == q1


@pytest.mark.parametrize("n", [2, 3])
def test_negative_control_fails(n):
    target = AlgebraicTarget.builtin("z1", n)
    spec = SampleSpec("heisenberg", n, count=200, seed=4)
    e, _ = realize_algebraic_set(target, spec)
    bad = canonical_embedding(e.components[0] + Polynomial.zbar(n - 1, n), n)
    rng = make_rng(spec.seed)
    on = sample_target("z1", spec, rng)
    off = sample_off_target(target.p, spec, rng)
    assert not vanishing_report(bad, target.p, on, off, spec).passed


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_totally_real_certificates(n):
    e, cert = certify_totally_real(n, SampleSpec("heisenberg", n, count=100))
    assert cert.passed
    assert cert.symbolic_locus.is_constant()


def test_trough_certificate():
    n = 3
    h = Polynomial.z(2, n) * Polynomial.zbar(2, n) - Polynomial.z(3, n) * Polynomial.zbar(3, n)
    surface = trough_surface(2, Fraction(-1, 3), h)
    spec = SampleSpec("trough", n, count=100, alpha=Fraction(2), beta=Fraction(-1, 3), h=h)
    e, cert = certify_trough(surface, spec)
    assert cert.passed
    # B = +-(alpha - i*beta)/2 up to the row convention
    assert abs(complex(cert.symbolic_locus.constant_term())) == pytest.approx(abs(complex(2, 1 / 3)) / 2)


def test_trough_validation():
    h = Polynomial.z(2, 2) * Polynomial.zbar(2, 2)
    with pytest.raises(PreconditionError):
        trough_surface(0, 0, h)
    with pytest.raises(PreconditionError):
        trough_surface(1, 0, Polynomial.z(1, 2))
    with pytest.raises(PreconditionError):
        trough_surface(1, 0, Polynomial.z(2, 2))


def test_parametrize_is_exact():
    w = [GaussianRational(Fraction(1, 3), 2), GaussianRational(-1, Fraction(5, 7))]
    point = parametrize(w, Fraction(11, 13))
    assert heisenberg_rho(3).evaluate_exact(point) == 0


def test_parametrize_numeric():
    point = parametrize([0.3 + 0.4j], 1.5)
    assert abs(heisenberg_rho(2).evaluate(point)) < 1e-15
    assert point[1] == pytest.approx(1.5 + 0.25j)
