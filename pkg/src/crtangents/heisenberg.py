"""Embeddings of Heisenberg groups complex-tangent along prescribed algebraic sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cr import cr_basis, solve_preimage
from .errors import DimensionError, PreconditionError
from .gaussian import I
from .polynomial import Polynomial, substitute_real_coords
from .sampling import (
    SampleSpec,
    find_target,
    get_target,
    make_rng,
    sample_off_target,
    sample_surface,
    sample_target,
    vanishing_report,
)
from .surfaces import (
    Hypersurface,
    heisenberg_rho,
    heisenberg_surface,
    parametrize,
    parametrize_many,
    trough_surface,
)
from .tangency import (
    GraphEmbedding,
    TangencyCertificate,
    canonical_reduction,
    tangency_eval_many,
    unit_relation,
    webster_determinant,
)

__all__ = [
    "AlgebraicTarget",
    "canonical_embedding",
    "realize_algebraic_set",
    "totally_real_embedding",
    "certify_totally_real",
    "trough_totally_real_embedding",
    "certify_trough",
    "heisenberg_surface",
    "parametrize",
    "parametrize_many",
    "trough_surface",
]


@dataclass(frozen=True)
class AlgebraicTarget:
    """The set {p = 0} on the Heisenberg group; p = q1 + i*q2 in real coordinates."""

    n: int
    p: Polynomial
    q1: Polynomial | None = None
    q2: Polynomial | None = None
    target_id: str | None = None

    def __post_init__(self):
        if self.n < 2:
            raise DimensionError("need n >= 2")
        if self.p.dimension != self.n:
            raise DimensionError("target polynomial has the wrong dimension")

    @classmethod
    def from_real(cls, q1: Polynomial, q2: Polynomial | None, n: int) -> AlgebraicTarget:
        """q1, q2 over the real-coordinate ring (x_1..x_n, y_1..y_n); q2 defaults to q1."""
        q2 = q1 if q2 is None else q2
        for q in (q1, q2):
            if q.dimension != 2 * n:
                raise DimensionError(f"expected polynomials in {2 * n} real variables")
            if any(not c.is_real() for _, c in q.terms()):
                raise PreconditionError("q1 and q2 must have real coefficients")
        p = substitute_real_coords(q1 + q2.scale(I), n)
        return cls(n, p, q1, q2)

    @classmethod
    def builtin(cls, target_id: str, n: int) -> AlgebraicTarget:
        target = get_target(target_id, "heisenberg")
        return cls(n, target.polynomial(n), target_id=target_id)


def canonical_embedding(f: Polynomial, n: int | None = None) -> GraphEmbedding:
    """Graph of F = (f, zb_1, ..., zb_{n-2}) over the Heisenberg group."""
    n = f.dimension if n is None else n
    comps = [f] + [Polynomial.zbar(j, n) for j in range(1, n - 1)]
    return GraphEmbedding(n, heisenberg_rho(n), comps, "heisenberg")


def realize_algebraic_set(
    target: AlgebraicTarget, spec: SampleSpec | None = None
) -> tuple[GraphEmbedding, TangencyCertificate]:
    """Embedding complex tangent exactly along {p = 0} on the Heisenberg group.

    The symbolic check is B == c * conj(p) with c a nonzero constant; the
    sampled report backs it with on/off-target evaluations.
    """
    n, p = target.n, target.p
    f = solve_preimage(p, n - 1, n)
    e = canonical_embedding(f, n)
    B = webster_determinant(e)
    c = unit_relation(B, p)
    checks = {
        "preimage_roundtrip": canonical_reduction(f, n) == p,
        "determinant_is_unit_times_conj_target": c is not None,
    }
    spec = SampleSpec("heisenberg", n) if spec is None else spec
    if spec.surface != "heisenberg" or spec.n != n:
        raise PreconditionError("sample spec must describe the same Heisenberg group")
    notes = []
    target_id = target.target_id or spec.target
    if target_id is None:
        found = find_target(p, "heisenberg")
        target_id = found.id if found else None

    rng = make_rng(spec.seed)
    if target_id is not None:
        on = sample_target(target_id, spec, rng)
    else:
        pts = sample_surface(spec, rng)
        on = pts[np.abs(p.evaluate_many(pts)) <= spec.zero_tol]
        if not len(on):
            notes.append("no on-surface zeros of the target were found by sampling")
    off = sample_off_target(p, spec, rng)
    report = vanishing_report(e, p, on, off, spec)
    cert = TangencyCertificate(
        symbolic_locus=B,
        convention_constant=c,
        target=p,
        tolerances=spec.tolerances(),
        reports={"heisenberg": report},
        checks=checks,
        notes=notes,
    )
    cert.notes.append(f"target set: {target_id or 'user polynomial'}; seed {spec.seed}")
    return e, cert


def totally_real_embedding(n: int) -> GraphEmbedding:
    """Graph of (zb_{n-1}, zb_1, ..., zb_{n-2}); its determinant is a nonzero constant."""
    if n < 2:
        raise DimensionError("need n >= 2")
    return canonical_embedding(Polynomial.zbar(n - 1, n), n)


def certify_totally_real(n: int, spec: SampleSpec | None = None) -> tuple[GraphEmbedding, TangencyCertificate]:
    e = totally_real_embedding(n)
    B = webster_determinant(e)
    spec = SampleSpec("heisenberg", n) if spec is None else spec
    pts = sample_surface(spec)
    report = vanishing_report(e, None, [], pts, spec)
    values = np.abs(tangency_eval_many(e, pts, spec.surface_tol))
    checks = {
        "determinant_constant_nonzero": B.is_constant() and not B.is_zero(),
        "sampled_abs_B_equal": bool(np.allclose(values, values[0], rtol=1e-12, atol=0)),
    }
    cert = TangencyCertificate(B, None, None, spec.tolerances(), {"heisenberg": report}, checks=checks)
    return e, cert


# -- trough-like hypersurfaces ------------------------------------------------------------

def trough_totally_real_embedding(surface: Hypersurface) -> GraphEmbedding:
    """Graph of (zb_2, ..., zb_n) over alpha*Re z_1 + beta*Im z_1 + h = 0.

    The tangency determinant is +-rho_{z_1} = +-(alpha - i*beta)/2, constant.
    """
    if surface.kind != "trough":
        raise PreconditionError("expected a trough-like surface")
    n = surface.n
    comps = [Polynomial.zbar(j, n) for j in range(2, n + 1)]
    return GraphEmbedding(n, surface.rho, comps, "trough", {"alpha": str(surface.params["alpha"]), "beta": str(surface.params["beta"])})


def certify_trough(surface: Hypersurface, spec: SampleSpec) -> tuple[GraphEmbedding, TangencyCertificate]:
    e = trough_totally_real_embedding(surface)
    B = webster_determinant(e)
    pts = sample_surface(spec)
    grads = np.column_stack([surface.rho.d_z(j).evaluate_many(pts) for j in range(1, surface.n + 1)])
    values = np.abs(tangency_eval_many(e, pts, spec.surface_tol))
    checks = {
        "tangential_basis": all(L(surface.rho).is_zero() for L in cr_basis(surface.rho)),
        "determinant_constant_nonzero": B.is_constant() and not B.is_zero(),
        "gradient_nonvanishing": bool(np.all(np.linalg.norm(grads, axis=1) > 0)),
        "sampled_abs_B_positive": bool(np.all(values > 0)),
    }
    report = vanishing_report(e, None, [], pts, spec)
    cert = TangencyCertificate(B, None, None, spec.tolerances(), {"trough": report}, checks=checks)
    return e, cert
