"""Transfer of Heisenberg constructions to odd spheres through psi.

A graph G over the Heisenberg group is pulled back to the sphere as G o psi,
then multiplied by the holomorphic factor (1 - z_n)^(2l + r) so that it
extends to the north pole, where it is complex tangent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cr import solve_preimage
from .errors import DimensionError, PreconditionError
from .gaussian import GaussianRational
from .polynomial import Polynomial, linear_change_of_vars
from .rational import RestrictedRational, compose_rational
from .sampling import (
    SampleSpec,
    find_target,
    make_rng,
    north_pole_values,
    sample_off_target,
    sample_surface,
    sample_target,
    vanishing_report,
)
from .surfaces import (
    north_pole,
    phi,
    phi_many,
    phi_rational,
    psi,
    psi_many,
    psi_rational,
    sphere_surface,
)
from .tangency import GraphEmbedding, TangencyCertificate, tangency_eval_many

__all__ = [
    "RationalEmbedding",
    "phi",
    "psi",
    "phi_many",
    "psi_many",
    "phi_rational",
    "psi_rational",
    "transfer_target",
    "pullback_components",
    "sphere_embedding",
    "sphere_realize",
    "north_pole_decay",
    "north_pole_check",
    "minimal_sphere_embedding",
    "certify_minimal_sphere",
    "rotate_target",
    "EPSILONS",
]

EPSILONS = (1e-2, 1e-4, 1e-6)


@dataclass(frozen=True)
class RationalEmbedding(GraphEmbedding):
    """Graph over the sphere of restricted rationals with pole center 1 - z_n."""

    r: int = 3
    l: int = 0
    clearing_exponent: int = 0
    g: Polynomial | None = None

    def to_record(self) -> dict:
        return {
            "kind": "rational",
            "n": self.n,
            "r": self.r,
            "l": self.l,
            "clearing_exponent": self.clearing_exponent,
            "rho": self.rho.to_record(),
            "g": self.g.to_record() if self.g is not None else None,
            "components": [c.to_record() for c in self.components],
        }


def transfer_target(p: Polynomial, n: int | None = None) -> Polynomial:
    """Numerator of p o phi; its zeros on the Heisenberg group are psi({p = 0} minus NP)."""
    n = p.dimension if n is None else n
    if p.dimension != n:
        raise DimensionError("target dimension mismatch")
    return compose_rational(p, phi_rational(n)).numerator


def _clear(rr: RestrictedRational, exponent: int) -> RestrictedRational:
    """Multiply by (1 - z_n)^exponent, kept factored."""
    return RestrictedRational(rr.numerator, rr.pole_holo - exponent, rr.pole_anti, rr.center, rr.pole_var)


def pullback_components(G, n: int) -> list[RestrictedRational]:
    """G o psi over the least common denominators."""
    psi_r = psi_rational(n)
    return [compose_rational(g, psi_r) for g in G]


def sphere_embedding(g: Polynomial, n: int, r: int, clear: bool = True) -> RationalEmbedding:
    """Graph over the sphere of (1 - z_n)^(2l + r) * (G o psi), G = (g, zb_1, ..., zb_{n-2})."""
    l = g.degree()
    if l < 0:
        raise PreconditionError("g must be nonzero")
    G = [g] + [Polynomial.zbar(j, n) for j in range(1, n - 1)]
    comps = pullback_components(G, n)
    exponent = 2 * l + r
    if clear:
        comps = [_clear(c, exponent) for c in comps]
    return RationalEmbedding(
        n,
        sphere_surface(n).rho,
        comps,
        "sphere",
        {},
        r,
        l,
        exponent if clear else 0,
        g,
    )


def north_pole_decay(e: GraphEmbedding, epsilons=EPSILONS, u=None) -> dict:
    """|B| along (sqrt(2e - e^2) u, 1 - e) and the fitted decay rate."""
    values = north_pole_values(e, epsilons, u)
    monotone = all(a > b for a, b in zip(values, values[1:]))
    positive = all(v > 0 for v in values)
    if positive:
        logs_e = np.log10(np.asarray(epsilons))
        logs_v = np.log10(np.asarray(values))
        rate = float(np.polyfit(logs_e, logs_v, 1)[0])
    else:
        rate = math.inf
    return {
        "epsilons": list(epsilons),
        "abs_B": values,
        "monotone": monotone,
        "rate": rate,
        "passed": monotone and rate > 0,
    }


def north_pole_check(e: GraphEmbedding, epsilons=EPSILONS, u=None) -> bool:
    """True iff |B| decays monotonically to 0 approaching the north pole."""
    return north_pole_decay(e, epsilons, u)["passed"]


def _north_pole_value(p: Polynomial) -> GaussianRational:
    n = p.dimension
    return p.evaluate_exact([0] * (n - 1) + [1])


def sphere_realize(
    p: Polynomial, r: int = 3, n: int | None = None, spec: SampleSpec | None = None
) -> tuple[RationalEmbedding, TangencyCertificate]:
    """Embedding of the sphere complex tangent exactly along {p = 0}, which must contain NP."""
    n = p.dimension if n is None else n
    if p.dimension != n:
        raise DimensionError("target dimension mismatch")
    if n < 2:
        raise DimensionError("need n >= 2")
    if r < 3:
        raise PreconditionError("smoothness parameter r must be at least 3")
    if p.is_zero():
        raise PreconditionError("the zero polynomial does not define a proper algebraic set")
    if _north_pole_value(p) != 0:
        raise PreconditionError(
            "target does not vanish at the north pole; move a target point there with rotate_target"
        )
    p_heis = transfer_target(p, n)
    g = solve_preimage(p_heis, n - 1, n)
    e = sphere_embedding(g, n, r)

    spec = SampleSpec("sphere", n) if spec is None else spec
    if spec.surface != "sphere" or spec.n != n:
        raise PreconditionError("sample spec must describe the same sphere")
    notes = []
    target_id = spec.target
    if target_id is None:
        found = find_target(p, "sphere")
        target_id = found.id if found else None
    rng = make_rng(spec.seed)
    if target_id is not None:
        on = sample_target(target_id, spec, rng)
    else:
        pts = sample_surface(spec, rng)
        on = np.vstack([np.array([north_pole(n)]), pts[np.abs(p.evaluate_many(pts)) <= spec.zero_tol]])
        notes.append("on-target samples: north pole plus sampled zeros of the target")
    off = sample_off_target(p, spec, rng, pole_buffer=0.1)
    report = vanishing_report(e, p, on, off, spec, scale_mode="hadamard")
    decay = north_pole_decay(e)
    checks = {
        "north_pole_decay": decay["passed"],
        "target_vanishes_at_north_pole": True,
    }
    notes.append(f"l = {e.l}, clearing exponent = {e.clearing_exponent}, target set: {target_id or 'user polynomial'}")
    cert = TangencyCertificate(
        symbolic_locus=None,
        convention_constant=None,
        target=p,
        tolerances=spec.tolerances(),
        reports={"sphere": report},
        north_pole=decay,
        checks=checks,
        notes=notes,
    )
    return e, cert


def minimal_sphere_embedding(n: int, r: int = 3) -> RationalEmbedding:
    """The graph with g = zb_{n-1}: complex tangent only at the north pole."""
    if n < 2:
        raise DimensionError("need n >= 2")
    if r < 3:
        raise PreconditionError("smoothness parameter r must be at least 3")
    return sphere_embedding(Polynomial.zbar(n - 1, n), n, r)


def certify_minimal_sphere(
    n: int, r: int = 3, spec: SampleSpec | None = None, pole_buffer: float = 0.1
) -> tuple[RationalEmbedding, TangencyCertificate]:
    e = minimal_sphere_embedding(n, r)
    spec = SampleSpec("sphere", n, count=10_000) if spec is None else spec
    rng = make_rng(spec.seed)
    pts = []
    have = 0
    while have < spec.count:
        batch = sample_surface(spec, rng)
        batch = batch[np.abs(1 - batch[:, -1]) >= pole_buffer]
        pts.append(batch)
        have += len(batch)
    pts = np.vstack(pts)[: spec.count]
    values = np.abs(tangency_eval_many(e, pts, spec.surface_tol))
    decay = north_pole_decay(e)
    min_abs_B = float(values.min())
    checks = {"min_abs_B_positive": min_abs_B > 0, "north_pole_decay": decay["passed"]}
    report = vanishing_report(e, None, [], pts, spec, scale_mode="hadamard")
    cert = TangencyCertificate(
        None,
        None,
        None,
        spec.tolerances(),
        {"sphere": report},
        north_pole=decay,
        checks=checks,
        notes=[f"sampled min |B| = {min_abs_B!r} over {len(pts)} points with |1 - z_n| >= {pole_buffer}"],
    )
    return e, cert


def rotate_target(p: Polynomial, U) -> Polynomial:
    """p(U z); the caller chooses U so that a known target point lands on the north pole."""
    return linear_change_of_vars(p, U)
