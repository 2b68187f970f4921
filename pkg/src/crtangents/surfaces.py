"""Real hypersurfaces of C^n: Heisenberg groups, odd spheres, trough-like surfaces.

Also holds the biholomorphisms between the Heisenberg group and the sphere
minus its north pole, both numerically and as symbolic rational maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionError, PoleError, PreconditionError
from .gaussian import ONE, GaussianRational, I, as_gaussian
from .polynomial import Polynomial
from .rational import RestrictedRational

__all__ = [
    "Hypersurface",
    "heisenberg_rho",
    "heisenberg_surface",
    "sphere_surface",
    "trough_surface",
    "parametrize",
    "parametrize_many",
    "north_pole",
    "phi",
    "psi",
    "phi_many",
    "psi_many",
    "phi_rational",
    "psi_rational",
]


@dataclass(frozen=True)
class Hypersurface:
    """``{rho = 0}`` in C^n with a real (conjugation-fixed) defining polynomial."""

    n: int
    rho: Polynomial
    kind: str
    params: dict = field(default_factory=dict, compare=False)

    def residual(self, point) -> float:
        return abs(self.rho.evaluate(point))

    def residuals(self, points) -> np.ndarray:
        return np.abs(self.rho.evaluate_many(points))


def heisenberg_rho(n: int) -> Polynomial:
    """i(zb_n - z_n) - 2 sum_{j<n} z_j zb_j."""
    rho = (Polynomial.zbar(n, n) - Polynomial.z(n, n)).scale(I)
    for j in range(1, n):
        rho = rho - (Polynomial.z(j, n) * Polynomial.zbar(j, n)).scale(2)
    return rho


def heisenberg_surface(n: int) -> Hypersurface:
    if n < 2:
        raise DimensionError("Heisenberg group needs n >= 2")
    return Hypersurface(n, heisenberg_rho(n), "heisenberg")


def sphere_surface(n: int) -> Hypersurface:
    if n < 2:
        raise DimensionError("sphere needs n >= 2")
    rho = Polynomial.constant(-1, n)
    for j in range(1, n + 1):
        rho = rho + Polynomial.z(j, n) * Polynomial.zbar(j, n)
    return Hypersurface(n, rho, "sphere")


def trough_surface(alpha, beta, h: Polynomial) -> Hypersurface:
    """alpha*Re(z_1) + beta*Im(z_1) + h(z_2..z_n) with h real."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == 0 and beta == 0:
        raise PreconditionError("trough surface needs (alpha, beta) != (0, 0)")
    n = h.dimension
    if n < 2:
        raise DimensionError("trough surface needs n >= 2")
    if h.max_exponent(1, "holo") or h.max_exponent(1, "anti"):
        raise PreconditionError("h must not depend on z_1")
    if not h.is_real():
        raise PreconditionError("h must be real (conj(h) == h)")
    z1, zb1 = Polynomial.z(1, n), Polynomial.zbar(1, n)
    re_z1 = (z1 + zb1).scale(Fraction(1, 2))
    im_z1 = (z1 - zb1).scale(-I * Fraction(1, 2))
    rho = re_z1.scale(alpha) + im_z1.scale(beta) + h
    return Hypersurface(n, rho, "trough", {"alpha": alpha, "beta": beta, "h": h})


# -- Heisenberg parametrisation ------------------------------------------------

def parametrize(w: Sequence, t):
    """(w_1..w_{n-1}, t + i*sum|w_j|^2); exact for Gaussian-rational input."""
    if all(isinstance(x, (GaussianRational, int, Fraction)) for x in w) and isinstance(
        t, (int, Fraction)
    ):
        ws = [as_gaussian(x) for x in w]
        height = sum((x.norm() for x in ws), Fraction(0))
        return tuple(ws) + (GaussianRational(t, height),)
    ws = [complex(x) for x in w]
    height = sum(abs(x) ** 2 for x in ws)
    return tuple(ws) + (complex(float(t), height),)


def parametrize_many(W: np.ndarray, t: np.ndarray) -> np.ndarray:
    W = np.asarray(W, dtype=complex)
    t = np.asarray(t, dtype=float)
    zn = t + 1j * np.sum(np.abs(W) ** 2, axis=1)
    return np.column_stack([W, zn])


# -- biholomorphisms ---------------------------------------------------------------

def north_pole(n: int) -> tuple:
    return (0j,) * (n - 1) + (1 + 0j,)


def _imag_unit(x):
    return I if isinstance(x, GaussianRational) else 1j


def phi(point):
    """Heisenberg group -> sphere minus the north pole."""
    pt = list(point)
    zn = pt[-1]
    unit = _imag_unit(zn)
    den = zn + unit
    if den == 0:
        raise PoleError("phi is undefined at z_n = -i")
    return tuple(2 * z / den for z in pt[:-1]) + ((zn - unit) / den,)


def psi(point):
    """Sphere minus the north pole -> Heisenberg group."""
    pt = list(point)
    zn = pt[-1]
    unit = _imag_unit(zn)
    den = 1 - zn
    if den == 0:
        raise PoleError("psi is undefined at the north pole")
    return tuple(unit * z / den for z in pt[:-1]) + (unit * (1 + zn) / den,)


def phi_many(points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=complex)
    den = pts[:, -1] + 1j
    if np.any(den == 0):
        raise PoleError("phi is undefined at z_n = -i")
    return np.column_stack([2 * pts[:, :-1] / den[:, None], (pts[:, -1] - 1j) / den])


def psi_many(points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=complex)
    den = 1 - pts[:, -1]
    if np.any(den == 0):
        raise PoleError("psi is undefined at the north pole")
    return np.column_stack([1j * pts[:, :-1] / den[:, None], 1j * (1 + pts[:, -1]) / den])


def psi_rational(n: int) -> list[RestrictedRational]:
    """psi as restricted rationals with pole center 1 - z_n."""
    comps = [
        RestrictedRational(Polynomial.z(j, n).scale(I), 1, 0, "north")
        for j in range(1, n)
    ]
    comps.append(
        RestrictedRational((Polynomial.one(n) + Polynomial.z(n, n)).scale(I), 1, 0, "north")
    )
    return comps


def phi_rational(n: int) -> list[RestrictedRational]:
    """phi as restricted rationals with pole center z_n + i."""
    comps = [
        RestrictedRational(Polynomial.z(j, n).scale(2), 1, 0, "heis") for j in range(1, n)
    ]
    comps.append(
        RestrictedRational(Polynomial.z(n, n) - Polynomial.constant(I, n), 1, 0, "heis")
    )
    return comps
