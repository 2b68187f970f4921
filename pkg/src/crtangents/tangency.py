"""Complex tangents of graphs over real hypersurfaces.

The graph of F = (f_1..f_{n-1}) over {rho = 0} sits in C^(2n-1) with
coordinates (z_1..z_n, zeta_1..zeta_{n-1}).  It is cut out by
R_k = zeta_k - f_k (k < n) together with rho; a point is complex tangent
exactly where the determinant of holomorphic derivatives of
(R_1, conj R_1, ..., R_{n-1}, conj R_{n-1}, rho) vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .cr import apply, heisenberg_operator
from .errors import DimensionError, NotRealError, NumericPathRequired, OffSurfaceError
from .gaussian import GaussianRational, I
from .polynomial import Polynomial
from .rational import RestrictedRational

__all__ = [
    "GraphEmbedding",
    "graph_system",
    "jacobian",
    "cofactor_determinant",
    "webster_determinant",
    "canonical_reduction",
    "tangency_eval",
    "tangency_eval_many",
    "tangency_matrices",
    "hadamard_scale",
    "unit_relation",
    "polynomial_scale",
]

Component = Union[Polynomial, RestrictedRational]


@dataclass(frozen=True)
class GraphEmbedding:
    """Graph of ``components`` restricted to ``{rho = 0}``."""

    n: int
    rho: Polynomial
    components: tuple
    surface: str = "heisenberg"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.rho.dimension != self.n:
            raise DimensionError("rho has the wrong dimension")
        if len(self.components) != self.n - 1:
            raise DimensionError(
                f"expected {self.n - 1} components, got {len(self.components)}"
            )
        for comp in self.components:
            if comp.dimension != self.n:
                raise DimensionError("component has the wrong dimension")
        if not self.rho.is_real():
            raise NotRealError("rho is not real")

    @property
    def is_polynomial(self) -> bool:
        return all(
            isinstance(c, Polynomial) or c.is_polynomial() for c in self.components
        )

    def polynomial_components(self) -> list[Polynomial]:
        if not self.is_polynomial:
            raise NumericPathRequired("rational components: use the numeric path")
        return [c if isinstance(c, Polynomial) else c.to_polynomial() for c in self.components]

    @cached_property
    def _jacobian(self):
        return jacobian(self)

    def map_point(self, point) -> tuple:
        """The image point (z, F(z)) in C^(2n-1)."""
        return tuple(complex(z) for z in point) + tuple(
            c.evaluate(point) for c in self.components
        )


def graph_system(e: GraphEmbedding, convention: str = "pair") -> list:
    """Defining functions of the graph over the ring in (z, zeta), dimension 2n-1.

    ``convention='pair'`` gives (R_1, conj R_1, ..., rho); ``'reim'`` gives
    (Re R_1, Im R_1, ..., rho).
    """
    n = e.n
    N = 2 * n - 1
    out = []
    for k, comp in enumerate(e.components, start=1):
        zeta = Polynomial.z(n + k, N)
        R = zeta - comp.lift(N) if isinstance(comp, Polynomial) else -comp.lift(N) + zeta
        Rc = R.conj()
        if convention == "pair":
            out.extend([R, Rc])
        elif convention == "reim":
            half = GaussianRational(1, 0) / 2
            out.extend([(R + Rc).scale(half), (R - Rc).scale(-I * half)])
        else:
            raise ValueError(f"unknown row convention {convention!r}")
    out.append(e.rho.lift(N))
    return out


def jacobian(e: GraphEmbedding, convention: str = "pair") -> list[list]:
    """Holomorphic derivatives of :func:`graph_system` w.r.t. (z, zeta).

    None of the derivatives depend on zeta, so entries are returned in the
    base ring of dimension n.
    """
    n = e.n
    N = 2 * n - 1
    if convention != "pair":
        return [[func.d_z(v).project(n) for v in range(1, N + 1)] for func in graph_system(e, convention)]
    # Built entrywise so rational components keep their factored form.
    zero, one = Polynomial.zero(n), Polynomial.one(n)
    rows = []
    for k, comp in enumerate(e.components, start=1):
        for func, has_zeta in ((comp, True), (comp.conj(), False)):
            row = [-func.d_z(v) for v in range(1, n + 1)]
            row += [one if has_zeta and m == k else zero for m in range(1, n)]
            rows.append(row)
    rows.append([e.rho.d_z(v) for v in range(1, n + 1)] + [zero] * (n - 1))
    return rows


def _is_zero(x) -> bool:
    if isinstance(x, Polynomial):
        return x.is_zero()
    return x.numerator.is_zero()


def cofactor_determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact Laplace expansion, always along the sparsest remaining row or column."""
    size = len(M)
    if size == 0:
        raise ValueError("empty matrix")
    dim = M[0][0].dimension
    nonzero = [[not _is_zero(x) for x in row] for row in M]
    memo: dict[tuple[tuple[int, ...], tuple[int, ...]], Polynomial] = {}

    def det(rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        if not rows:
            return Polynomial.one(dim)
        key = (rows, cols)
        if key in memo:
            return memo[key]
        best = None
        for i, r in enumerate(rows):
            count = sum(nonzero[r][c] for c in cols)
            if best is None or count < best[0]:
                best = (count, "row", i)
        for j, c in enumerate(cols):
            count = sum(nonzero[r][c] for r in rows)
            if count < best[0]:
                best = (count, "col", j)
        count, kind, pos = best
        total = Polynomial.zero(dim)
        if count:
            if kind == "row":
                r = rows[pos]
                sub_rows = rows[:pos] + rows[pos + 1 :]
                for j, c in enumerate(cols):
                    if nonzero[r][c]:
                        minor = det(sub_rows, cols[:j] + cols[j + 1 :])
                        term = M[r][c] * minor
                        total = total - term if (pos + j) % 2 else total + term
            else:
                c = cols[pos]
                sub_cols = cols[:pos] + cols[pos + 1 :]
                for i, r in enumerate(rows):
                    if nonzero[r][c]:
                        minor = det(rows[:i] + rows[i + 1 :], sub_cols)
                        term = M[r][c] * minor
                        total = total - term if (pos + i) % 2 else total + term
        memo[key] = total
        return total

    return det(tuple(range(size)), tuple(range(size)))


def webster_determinant(e: GraphEmbedding, convention: str = "pair") -> Polynomial:
    """Symbolic tangency determinant B; its zeros on {rho=0} are the complex tangents."""
    if not e.is_polynomial:
        raise NumericPathRequired("rational components: use tangency_eval")
    M = jacobian(e, convention) if convention != "pair" else e._jacobian
    M = [[x if isinstance(x, Polynomial) else x.to_polynomial() for x in row] for row in M]
    return cofactor_determinant(M)


def canonical_reduction(f: Polynomial, n: int | None = None) -> Polynomial:
    """W(f) = 2 z_{n-1} f_{zb_n} + i f_{zb_{n-1}}."""
    n = f.dimension if n is None else n
    if n < 2:
        raise DimensionError("need n >= 2")
    return apply(heisenberg_operator(n - 1, n), f)


def unit_relation(B: Polynomial, target: Polynomial) -> GaussianRational | None:
    """The constant c with ``B == c * conj(target)``, or None."""
    if target.is_zero() or B.dimension != target.dimension:
        return None
    t = target.conj()
    mono, tc = t.leading_term()
    c = B.coefficient(mono) / tc
    if not c:
        return None
    return c if B == t.scale(c) else None


# -- numeric path ----------------------------------------------------------------

def tangency_matrices(e: GraphEmbedding, points, convention: str = "pair") -> np.ndarray:
    """Numeric Jacobians, shape (N, 2n-1, 2n-1)."""
    pts = np.asarray(points, dtype=complex)
    if pts.ndim == 1:
        pts = pts[None, :]
    size = 2 * e.n - 1
    out = np.zeros((pts.shape[0], size, size), dtype=complex)
    M = e._jacobian if convention == "pair" else jacobian(e, convention)
    for r, row in enumerate(M):
        for c, entry in enumerate(row):
            if not _is_zero(entry):
                out[:, r, c] = entry.evaluate_many(pts)
    return out


def _check_on_surface(e: GraphEmbedding, pts: np.ndarray, surface_tol: float) -> None:
    residual = np.abs(e.rho.evaluate_many(pts))
    bad = np.flatnonzero(residual > surface_tol)
    if bad.size:
        i = int(bad[0])
        raise OffSurfaceError(
            f"point {pts[i].tolist()} is off the surface (|rho| = {residual[i]:.3e})"
        )


def tangency_eval_many(
    e: GraphEmbedding, points, surface_tol: float = 1e-10, convention: str = "pair"
) -> np.ndarray:
    pts = np.asarray(points, dtype=complex)
    if pts.ndim == 1:
        pts = pts[None, :]
    _check_on_surface(e, pts, surface_tol)
    return np.linalg.det(tangency_matrices(e, pts, convention))


def tangency_eval(e: GraphEmbedding, point, surface_tol: float = 1e-10) -> complex:
    """Numeric tangency determinant at one on-surface point."""
    return complex(tangency_eval_many(e, [list(point)], surface_tol)[0])


def hadamard_scale(e: GraphEmbedding, points) -> np.ndarray:
    """Hadamard bound on |B| at each point.

    Expanding along the zeta columns leaves, up to sign, the n x n matrix of
    z-derivatives of the conjugate rows and rho; the bound is the product of
    its row norms.  It is zero only where one of those rows vanishes, and
    then B is zero as well.
    """
    mats = tangency_matrices(e, points)
    n = e.n
    rows = list(range(1, 2 * n - 2, 2)) + [2 * n - 2]
    reduced = mats[:, rows, :n]
    return np.prod(np.linalg.norm(reduced, axis=2), axis=1)


def polynomial_scale(B: Polynomial, points) -> float:
    """(1 + max|coefficient|) * (1 + max point norm)^degree."""
    pts = np.asarray(points, dtype=complex)
    norm = float(np.max(np.linalg.norm(pts, axis=1))) if pts.size else 0.0
    return (1.0 + B.max_coefficient_modulus()) * (1.0 + norm) ** max(B.degree(), 0)


@dataclass
class TangencyCertificate:
    """Symbolic tangent locus (when available) plus sampled evidence."""

    symbolic_locus: Polynomial | None
    convention_constant: GaussianRational | None
    target: Polynomial | None
    tolerances: dict
    reports: dict = field(default_factory=dict)
    north_pole: dict | None = None
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and all(r.passed for r in self.reports.values())

    def sample_evidence(self) -> list[tuple]:
        """(point, |B|, on-target flag) for every sampled point."""
        out = []
        for report in self.reports.values():
            for row in report.rows:
                out.append((row["point"], row["abs_B"], row["set"] == "on"))
        return out

    def to_record(self) -> dict:
        return {
            "passed": self.passed,
            "symbolic_locus": self.symbolic_locus.to_record() if self.symbolic_locus is not None else None,
            "symbolic_locus_text": str(self.symbolic_locus) if self.symbolic_locus is not None else None,
            "convention_constant": (
                self.convention_constant.to_record() if self.convention_constant is not None else None
            ),
            "target": self.target.to_record() if self.target is not None else None,
            "tolerances": self.tolerances,
            "checks": self.checks,
            "north_pole": self.north_pole,
            "notes": self.notes,
            "reports": {name: r.to_record() for name, r in self.reports.items()},
        }
