from fractions import Fraction

import numpy as np
import pytest

from crtangents import (
    Polynomial,
    PreconditionError,
    SampleSpec,
    emit_point_cloud,
    read_point_cloud,
    sample_surface,
    sample_target,
    totally_real_embedding,
    vanishing_report,
)
from crtangents.sampling import (
    GENERATOR_ID,
    cloud_header,
    north_pole_curve,
    sample_off_target,
)
from crtangents.surfaces import sphere_surface


def test_heisenberg_samples_on_surface():
    spec = SampleSpec("heisenberg", 2, count=10, seed=42)
    pts = sample_surface(spec)
    assert pts.shape == (10, 2)
    assert np.max(spec.hypersurface().residuals(pts)) <= 1e-12


def test_sphere_samples_have_unit_norm():
    pts = sample_surface(SampleSpec("sphere", 3, count=50, seed=1))
    assert np.max(np.abs(np.linalg.norm(pts, axis=1) - 1)) < 1e-12


def test_trough_samples():
    h = Polynomial.z(2, 2) * Polynomial.zbar(2, 2)
    spec = SampleSpec("trough", 2, count=20, alpha=Fraction(1), beta=Fraction(3), h=h)
    assert np.max(spec.hypersurface().residuals(sample_surface(spec))) < 1e-12


def test_same_seed_same_points():
    spec = SampleSpec("heisenberg", 3, count=25, seed=7)
    assert np.array_equal(sample_surface(spec), sample_surface(spec))
    assert not np.array_equal(sample_surface(spec), sample_surface(spec.replace(seed=8)))


@pytest.mark.parametrize(
    "surface,target_id,n",
    [("heisenberg", "z1", 5), ("heisenberg", "circle", 2), ("heisenberg", "x1y2", 2), ("heisenberg", "x1y2", 3), ("sphere", "z1", 3)],
)
def test_target_samples_on_target(surface, target_id, n):
    from crtangents.sampling import get_target

    spec = SampleSpec(surface, n, count=50, seed=3)
    pts = sample_target(target_id, spec)
    p = get_target(target_id, surface).polynomial(n)
    assert np.max(np.abs(p.evaluate_many(pts))) <= 1e-12
    assert np.max(spec.hypersurface().residuals(pts)) <= 1e-12


def test_sphere_target_includes_north_pole():
    pts = sample_target("z1", SampleSpec("sphere", 3, count=5))
    assert np.array_equal(pts[0], [0, 0, 1])


def test_unknown_target():
    with pytest.raises(PreconditionError):
        sample_target("nope", SampleSpec("heisenberg", 2))


def test_spec_validation():
    with pytest.raises(PreconditionError):
        SampleSpec("heisenberg", 2, count=0)
    with pytest.raises(PreconditionError):
        SampleSpec("trough", 2, alpha=Fraction(0), beta=Fraction(0), h=Polynomial.zero(2))
    with pytest.raises(PreconditionError):
        SampleSpec("heisenberg", 2, zero_tol=0)


def test_spec_record_round_trip():
    h = Polynomial.z(2, 2) * Polynomial.zbar(2, 2)
    spec = SampleSpec("trough", 2, count=5, seed=3, alpha=Fraction(1, 2), beta=Fraction(2), h=h)
    assert SampleSpec.from_record(spec.to_record()) == spec
    assert spec.to_record()["generator"] == GENERATOR_ID


def test_spec_accepts_h_as_text():
    record = {"surface": "trough", "n": 2, "alpha": "1", "beta": "0", "h": "z2*zb2"}
    assert SampleSpec.from_record(record).h == Polynomial.z(2, 2) * Polynomial.zbar(2, 2)


def test_off_target_buffer():
    p = Polynomial.z(1, 2)
    spec = SampleSpec("heisenberg", 2, count=100)
    pts = sample_off_target(p, spec)
    assert np.min(np.abs(p.evaluate_many(pts))) >= 0.1
    sphere = sample_off_target(p, SampleSpec("sphere", 2, count=100), pole_buffer=0.1)
    assert np.min(np.abs(1 - sphere[:, -1])) >= 0.1


def test_north_pole_curve_on_sphere():
    for eps in (1e-2, 1e-4, 1e-6):
        pt = north_pole_curve(3, eps)
        assert sphere_surface(3).residual(pt) < 1e-12
        assert pt[-1] == pytest.approx(1 - eps)


def test_cloud_round_trip(tmp_path):
    pts = sample_surface(SampleSpec("sphere", 2, count=30, seed=5))
    path = emit_point_cloud(pts, tmp_path / "cloud.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(cloud_header(2)) == "re_z1,im_z1,re_z2,im_z2"
    assert len(lines) == 31
    assert np.array_equal(read_point_cloud(path), pts)


def test_cloud_io_error(tmp_path):
    with pytest.raises(OSError):
        emit_point_cloud(np.zeros((1, 2), dtype=complex), tmp_path / "missing" / "cloud.csv")


def test_report_structure_and_elision():
    n = 2
    spec = SampleSpec("heisenberg", n, count=1200)
    pts = sample_surface(spec)
    report = vanishing_report(totally_real_embedding(n), None, [], pts, spec)
    assert report.passed
    assert report.summary["misses"] == 1200
    record = report.to_record()
    assert len(record["rows"]) == 1000 and record["rows_elided"] == 200
    assert record["generator"] == GENERATOR_ID and record["seed"] == spec.seed


def test_classification_thresholds():
    # an on-target set that is not tangent must be reported as a failure
    n = 2
    spec = SampleSpec("heisenberg", n, count=50)
    pts = sample_surface(spec)
    report = vanishing_report(totally_real_embedding(n), None, pts, [], spec)
    assert not report.passed
    assert report.summary["hits"] == 0
