"""Seeded sampling of surfaces and of built-in target sets, vanishing reports, CSV clouds."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import DimensionError, PoleError, PreconditionError
from .gaussian import I
from .polynomial import Polynomial, real_variable, substitute_real_coords
from .surfaces import (
    Hypersurface,
    heisenberg_surface,
    north_pole,
    parametrize_many,
    phi_many,
    sphere_surface,
    trough_surface,
)
from .tangency import (
    GraphEmbedding,
    hadamard_scale,
    polynomial_scale,
    tangency_eval_many,
    webster_determinant,
)

__all__ = [
    "GENERATOR_ID",
    "SampleSpec",
    "Target",
    "TARGETS",
    "get_target",
    "find_target",
    "make_rng",
    "sample_surface",
    "sample_target",
    "sample_off_target",
    "VanishingReport",
    "vanishing_report",
    "north_pole_curve",
    "north_pole_values",
    "emit_point_cloud",
    "read_point_cloud",
]

GENERATOR_ID = "numpy.random.Generator(PCG64)"
ROW_LIMIT = 1000


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class SampleSpec:
    surface: str
    n: int
    count: int = 1000
    seed: int = 0
    box: float = 2.0
    surface_tol: float = 1e-10
    zero_tol: float = 1e-8
    nonzero_floor: float = 1e-4
    alpha: Fraction | None = None
    beta: Fraction | None = None
    h: Polynomial | None = None
    target: str | None = None

    def __post_init__(self):
        if self.surface not in ("heisenberg", "sphere", "trough"):
            raise PreconditionError(f"unknown surface {self.surface!r}")
        if self.count < 1:
            raise PreconditionError("count must be at least 1")
        if min(self.surface_tol, self.zero_tol, self.nonzero_floor, self.box) <= 0:
            raise PreconditionError("tolerances and box must be positive")
        if self.surface == "trough":
            if self.h is None or self.alpha is None or self.beta is None:
                raise PreconditionError("trough spec needs alpha, beta and h")
            if self.alpha == 0 and self.beta == 0:
                raise PreconditionError("trough spec needs (alpha, beta) != (0, 0)")

    def hypersurface(self) -> Hypersurface:
        if self.surface == "heisenberg":
            return heisenberg_surface(self.n)
        if self.surface == "sphere":
            return sphere_surface(self.n)
        return trough_surface(self.alpha, self.beta, self.h)

    def tolerances(self) -> dict:
        return {
            "surface_tol": self.surface_tol,
            "zero_tol": self.zero_tol,
            "nonzero_floor": self.nonzero_floor,
        }

    def replace(self, **changes) -> SampleSpec:
        values = {f: getattr(self, f) for f in self.__dataclass_fields__}
        values.update(changes)
        return SampleSpec(**values)

    def to_record(self) -> dict:
        record = {
            "surface": self.surface,
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "box": self.box,
            "tolerances": self.tolerances(),
            "generator": GENERATOR_ID,
        }
        if self.surface == "trough":
            record["alpha"] = str(self.alpha)
            record["beta"] = str(self.beta)
            record["h"] = self.h.to_record()
        if self.target is not None:
            record["target"] = self.target
        return record

    @classmethod
    def from_record(cls, record: dict) -> SampleSpec:
        tol = record.get("tolerances", {})
        h = record.get("h")
        if isinstance(h, str):
            from .parser import parse_expression

            h = parse_expression(h, n=record["n"])
        elif isinstance(h, dict):
            h = Polynomial.from_record(h)
        return cls(
            surface=record["surface"],
            n=int(record["n"]),
            count=int(record.get("count", 1000)),
            seed=int(record.get("seed", 0)),
            box=float(record.get("box", 2.0)),
            surface_tol=float(tol.get("surface_tol", 1e-10)),
            zero_tol=float(tol.get("zero_tol", 1e-8)),
            nonzero_floor=float(tol.get("nonzero_floor", 1e-4)),
            alpha=Fraction(record["alpha"]) if "alpha" in record else None,
            beta=Fraction(record["beta"]) if "beta" in record else None,
            h=h,
            target=record.get("target"),
        )


# -- surface sampling ----------------------------------------------------------

def _uniform_complex(rng, box, shape):
    return rng.uniform(-box, box, shape) + 1j * rng.uniform(-box, box, shape)


def _draw_surface(spec: SampleSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    n = spec.n
    if spec.surface == "heisenberg":
        W = _uniform_complex(rng, spec.box, (count, n - 1))
        t = rng.uniform(-spec.box, spec.box, count)
        return parametrize_many(W, t)
    if spec.surface == "sphere":
        Z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
        return Z / np.linalg.norm(Z, axis=1)[:, None]
    # trough: choose z_2..z_n freely, then solve alpha*x_1 + beta*y_1 = -h exactly
    alpha, beta = float(spec.alpha), float(spec.beta)
    rest = _uniform_complex(rng, spec.box, (count, n - 1))
    s = rng.uniform(-spec.box, spec.box, count)
    pts = np.column_stack([np.zeros(count, dtype=complex), rest])
    hv = spec.h.evaluate_many(pts).real
    norm2 = alpha * alpha + beta * beta
    x = -hv * alpha / norm2 - s * beta
    y = -hv * beta / norm2 + s * alpha
    pts[:, 0] = x + 1j * y
    return pts


def sample_surface(spec: SampleSpec, rng: np.random.Generator | None = None) -> np.ndarray:
    """``spec.count`` points on the surface, deterministic in ``spec.seed``."""
    rng = make_rng(spec.seed) if rng is None else rng
    pts = _draw_surface(spec, rng, spec.count)
    residual = spec.hypersurface().residuals(pts)
    if np.any(residual > spec.surface_tol):
        raise PreconditionError(
            f"sampled point off surface (max |rho| = {residual.max():.3e})"
        )
    return pts


# -- built-in targets ---------------------------------------------------------------

@dataclass(frozen=True)
class Target:
    """A target algebraic set with an explicit parametrisation of its points."""

    id: str
    surface: str
    description: str
    polynomial: Callable[[int], Polynomial]
    sampler: Callable[[np.random.Generator, int, int, float], np.ndarray]
    min_n: int = 2


def _z1(n: int) -> Polynomial:
    return Polynomial.z(1, n)


def _circle(n: int) -> Polynomial:
    return Polynomial.z(1, n) * Polynomial.zbar(1, n) - Polynomial.one(n)


def _x1_y2(n: int) -> Polynomial:
    q1 = real_variable("x", 1, n)
    q2 = real_variable("y", 2, n)
    return substitute_real_coords(q1 + q2.scale(I), n)


def _heis_z1_points(rng, count, n, box):
    W = _uniform_complex(rng, box, (count, n - 1))
    W[:, 0] = 0
    t = rng.uniform(-box, box, count)
    return parametrize_many(W, t)


def _heis_circle_points(rng, count, n, box):
    # rational circle points ((1-s^2) + 2si)/(1+s^2) with dyadic s
    s = rng.integers(-1024, 1025, count) / 256.0
    W = _uniform_complex(rng, box, (count, n - 1))
    W[:, 0] = ((1 - s * s) + 2j * s) / (1 + s * s)
    t = rng.uniform(-box, box, count)
    return parametrize_many(W, t)


def _heis_x1_y2_points(rng, count, n, box):
    t = rng.uniform(-box, box, count)
    if n == 2:
        # Im z_2 = |z_1|^2 = 0 forces z_1 = 0
        return parametrize_many(np.zeros((count, 1), dtype=complex), t)
    W = _uniform_complex(rng, box, (count, n - 1))
    W[:, 0] = 1j * W[:, 0].imag
    W[:, 1] = W[:, 1].real
    return parametrize_many(W, t)


def _sphere_z1_points(rng, count, n, box):
    # phi-images of {w_1 = 0} on the Heisenberg group, plus the north pole
    heis = _heis_z1_points(rng, count - 1, n, box)
    return np.vstack([np.array([north_pole(n)], dtype=complex), phi_many(heis)])


TARGETS: dict[tuple[str, str], Target] = {}


def _register(target: Target) -> None:
    TARGETS[(target.surface, target.id)] = target


_register(Target("z1", "heisenberg", "{z_1 = 0}", _z1, _heis_z1_points))
_register(Target("circle", "heisenberg", "{z_1 zb_1 = 1}", _circle, _heis_circle_points))
_register(Target("x1y2", "heisenberg", "{x_1 = 0} and {y_2 = 0}", _x1_y2, _heis_x1_y2_points))
_register(Target("z1", "sphere", "{z_1 = 0}, contains the north pole", _z1, _sphere_z1_points))


def get_target(target_id: str, surface: str) -> Target:
    try:
        return TARGETS[(surface, target_id)]
    except KeyError:
        known = sorted(f"{s}:{t}" for s, t in TARGETS)
        raise PreconditionError(f"unknown target {surface}:{target_id}; known: {known}") from None


def find_target(p: Polynomial, surface: str) -> Target | None:
    """The registered target whose polynomial equals ``p`` exactly, if any."""
    for (surf, _), target in sorted(TARGETS.items()):
        if surf == surface and p.dimension >= target.min_n and target.polynomial(p.dimension) == p:
            return target
    return None


def sample_target(target_id: str, spec: SampleSpec, rng: np.random.Generator | None = None) -> np.ndarray:
    """Points of the target set on the sample spec's surface."""
    target = get_target(target_id, spec.surface)
    if spec.n < target.min_n:
        raise DimensionError(f"target {target_id} needs n >= {target.min_n}")
    rng = make_rng(spec.seed) if rng is None else rng
    pts = target.sampler(rng, spec.count, spec.n, spec.box)
    surf = spec.hypersurface()
    p = target.polynomial(spec.n)
    if np.any(surf.residuals(pts) > spec.surface_tol):
        raise PreconditionError("target sample off surface")
    pscale = polynomial_scale(p, pts)
    if np.any(np.abs(p.evaluate_many(pts)) > spec.zero_tol * pscale):
        raise PreconditionError("target sample off target")
    return pts


def sample_off_target(
    p: Polynomial,
    spec: SampleSpec,
    rng: np.random.Generator | None = None,
    buffer: float = 0.1,
    pole_buffer: float | None = None,
) -> np.ndarray:
    """Surface points with |p| >= buffer (and |1 - z_n| >= pole_buffer if given)."""
    rng = make_rng(spec.seed) if rng is None else rng
    chunks = []
    have = 0
    for _ in range(1000):
        pts = _draw_surface(spec, rng, max(spec.count, 64))
        keep = np.abs(p.evaluate_many(pts)) >= buffer
        if pole_buffer is not None:
            keep &= np.abs(1 - pts[:, -1]) >= pole_buffer
        chunks.append(pts[keep])
        have += int(keep.sum())
        if have >= spec.count:
            break
    else:
        raise PreconditionError("could not find enough off-target points")
    pts = np.vstack(chunks)[: spec.count]
    if np.any(spec.hypersurface().residuals(pts) > spec.surface_tol):
        raise PreconditionError("off-target sample off surface")
    return pts


# -- north pole ------------------------------------------------------------------------

def north_pole_curve(n: int, eps: float, u=None) -> np.ndarray:
    """The sphere point (sqrt(2 eps - eps^2) u, 1 - eps), u a unit vector in C^(n-1)."""
    if u is None:
        u = np.ones(n - 1, dtype=complex) / math.sqrt(n - 1)
    u = np.asarray(u, dtype=complex)
    radius = math.sqrt(2 * eps - eps * eps)
    return np.concatenate([radius * u, [1 - eps]])


def north_pole_values(e: GraphEmbedding, epsilons=(1e-2, 1e-4, 1e-6), u=None) -> list[float]:
    pts = np.array([north_pole_curve(e.n, eps, u) for eps in epsilons])
    return [float(v) for v in np.abs(tangency_eval_many(e, pts, surface_tol=1e-10))]


# -- reports ---------------------------------------------------------------------------

@dataclass
class VanishingReport:
    rows: list[dict]
    summary: dict
    passed: bool
    tolerances: dict
    seed: int
    generator: str = GENERATOR_ID
    scale_mode: str = "polynomial"
    scale: float | None = None

    def to_record(self, row_limit: int = ROW_LIMIT) -> dict:
        rows = self.rows[:row_limit]
        return {
            "passed": self.passed,
            "seed": self.seed,
            "generator": self.generator,
            "tolerances": self.tolerances,
            "scale_mode": self.scale_mode,
            "scale": self.scale,
            "summary": self.summary,
            "rows": [_row_record(r) for r in rows],
            "rows_elided": max(0, len(self.rows) - row_limit),
        }


def _row_record(row: dict) -> dict:
    out = dict(row)
    out["point"] = [[z.real, z.imag] for z in row["point"]]
    return out


def _ratio(row: dict) -> float:
    if row["scale"]:
        return row["abs_B"] / row["scale"]
    return 0.0 if row["abs_B"] == 0 else math.inf


def _classify(value: float, scale: float, zero_tol: float, floor: float) -> str:
    if value <= zero_tol * scale:
        return "hit"
    if value >= floor * scale:
        return "miss"
    return "ambiguous"


def vanishing_report(
    e: GraphEmbedding,
    target_p: Polynomial | None,
    on_target,
    off_target,
    spec: SampleSpec,
    scale_mode: str = "auto",
) -> VanishingReport:
    """Classify each point by |B|; pass iff every on-target point is a hit
    and every off-target point a miss."""
    on = np.asarray(on_target, dtype=complex).reshape(-1, e.n)
    off = np.asarray(off_target, dtype=complex).reshape(-1, e.n)
    if scale_mode == "auto":
        scale_mode = "polynomial" if e.is_polynomial else "hadamard"

    # the north pole is a pole of rational components; it is judged by the decay check
    pole_rows = []
    if not e.is_polynomial and on.size:
        at_pole = np.isclose(on[:, -1], 1.0, rtol=0, atol=0)
        if np.any(at_pole):
            values = north_pole_values(e)
            decays = all(a > b for a, b in zip(values, values[1:]))
            for pt in on[at_pole]:
                pole_rows.append(
                    {
                        "set": "on",
                        "point": [complex(z) for z in pt],
                        "abs_B": values[-1],
                        "abs_p": abs(target_p.evaluate(pt)) if target_p is not None else None,
                        "scale": None,
                        "classification": "hit" if decays else "miss",
                        "note": "north pole: limit along the canonical curve",
                    }
                )
            on = on[~at_pole]

    all_pts = np.vstack([on, off]) if on.size or off.size else np.zeros((0, e.n), dtype=complex)
    values = np.abs(tangency_eval_many(e, all_pts, spec.surface_tol)) if len(all_pts) else np.zeros(0)
    if scale_mode == "polynomial":
        B = webster_determinant(e)
        scalar = polynomial_scale(B, all_pts)
        scales = np.full(len(all_pts), scalar)
    elif scale_mode == "hadamard":
        scalar = None
        scales = hadamard_scale(e, all_pts) if len(all_pts) else np.zeros(0)
    else:
        raise ValueError(f"unknown scale mode {scale_mode!r}")
    pvals = np.abs(target_p.evaluate_many(all_pts)) if target_p is not None and len(all_pts) else None

    rows = list(pole_rows)
    for i, pt in enumerate(all_pts):
        rows.append(
            {
                "set": "on" if i < len(on) else "off",
                "point": [complex(z) for z in pt],
                "abs_B": float(values[i]),
                "abs_p": float(pvals[i]) if pvals is not None else None,
                "scale": float(scales[i]),
                "classification": _classify(
                    float(values[i]), float(scales[i]), spec.zero_tol, spec.nonzero_floor
                ),
            }
        )

    on_rows = [r for r in rows if r["set"] == "on"]
    off_rows = [r for r in rows if r["set"] == "off"]
    on_ratios = [_ratio(r) for r in on_rows if r["scale"] is not None]
    off_ratios = [_ratio(r) for r in off_rows if r["scale"] is not None]
    passed = all(r["classification"] == "hit" for r in on_rows) and all(
        r["classification"] == "miss" for r in off_rows
    )
    summary = {
        "on_target_points": len(on_rows),
        "off_target_points": len(off_rows),
        "max_on_target_abs_B": max((r["abs_B"] for r in on_rows), default=None),
        "min_off_target_abs_B": min((r["abs_B"] for r in off_rows), default=None),
        "max_on_target_ratio": max(on_ratios, default=None),
        "min_off_target_ratio": min(off_ratios, default=None),
        "hits": sum(r["classification"] == "hit" for r in rows),
        "misses": sum(r["classification"] == "miss" for r in rows),
        "ambiguous": sum(r["classification"] == "ambiguous" for r in rows),
    }
    return VanishingReport(
        rows=rows,
        summary=summary,
        passed=passed,
        tolerances=spec.tolerances(),
        seed=spec.seed,
        scale_mode=scale_mode,
        scale=scalar,
    )


# -- point clouds -------------------------------------------------------------------

def cloud_header(n: int) -> list[str]:
    header = []
    for j in range(1, n + 1):
        header.extend([f"re_z{j}", f"im_z{j}"])
    return header


def emit_point_cloud(points, path) -> Path:
    """Write points as CSV (Re z_1, Im z_1, ..., Re z_n, Im z_n)."""
    pts = np.asarray(points, dtype=complex)
    if pts.ndim != 2:
        raise DimensionError("points must be an (N, n) array")
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(cloud_header(pts.shape[1]))
        for pt in pts:
            row = []
            for z in pt:
                row.extend([repr(float(z.real)), repr(float(z.imag))])
            writer.writerow(row)
    return path


def read_point_cloud(path) -> np.ndarray:
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) % 2 or header != cloud_header(len(header) // 2):
            raise ValueError(f"unexpected point-cloud header {header}")
        rows = [[float(x) for x in row] for row in reader]
    arr = np.array(rows, dtype=float).reshape(-1, len(header))
    return arr[:, 0::2] + 1j * arr[:, 1::2]
