"""Rational functions whose denominators are powers of one pole center.

``RestrictedRational(N, a, b, center)`` stands for ``N / (c^a * conj(c)^b)``
where ``c`` is ``1 - z_k`` (``center='north'``) or ``z_k + i``
(``center='heis'``) and ``k`` is the pole variable (default: the last one).

Exponents may be negative: a factor ``c^k`` multiplying the numerator is
kept factored rather than expanded, since expanding ``(1 - z_n)^k`` and
evaluating near ``z_n = 1`` cancels catastrophically in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, PoleError, PreconditionError
from .gaussian import GaussianRational, I
from .polynomial import Polynomial

__all__ = ["RestrictedRational", "pole_polynomial", "compose_rational", "CENTERS"]

CENTERS = ("north", "heis")


@lru_cache(maxsize=None)
def pole_polynomial(center: str, var: int, n: int, conjugate: bool = False) -> Polynomial:
    """The pole center ``c`` (or ``conj(c)``) as a polynomial."""
    if center == "north":
        c = Polynomial.one(n) - Polynomial.z(var, n)
    elif center == "heis":
        c = Polynomial.z(var, n) + Polynomial.constant(I, n)
    else:
        raise ValueError(f"unknown pole center {center!r}")
    return c.conj() if conjugate else c


@lru_cache(maxsize=None)
def _pole_power(center: str, var: int, n: int, conjugate: bool, k: int) -> Polynomial:
    if k == 0:
        return Polynomial.one(n)
    return _pole_power(center, var, n, conjugate, k - 1) * pole_polynomial(
        center, var, n, conjugate
    )


def _center_value(center: str, z: complex) -> complex:
    return 1 - z if center == "north" else z + 1j


def _factor(c, exponent: int):
    if exponent > 0:
        return 1 / c ** exponent
    if exponent < 0:
        return c ** (-exponent)
    return 1


@dataclass(frozen=True)
class RestrictedRational:
    numerator: Polynomial
    pole_holo: int = 0
    pole_anti: int = 0
    center: str = "north"
    pole_var: int | None = None

    def __post_init__(self):
        if self.center not in CENTERS:
            raise ValueError(f"unknown pole center {self.center!r}")
        if self.pole_var is None:
            object.__setattr__(self, "pole_var", self.numerator.dimension)
        if not 1 <= self.pole_var <= self.numerator.dimension:
            raise DimensionError("pole variable out of range")

    # -- basic structure ---------------------------------------------------

    @property
    def dimension(self) -> int:
        return self.numerator.dimension

    @classmethod
    def from_polynomial(cls, p: Polynomial, center: str = "north", pole_var=None):
        return cls(p, 0, 0, center, pole_var)

    def _pow_poly(self, conjugate: bool, k: int) -> Polynomial:
        return _pole_power(self.center, self.pole_var, self.dimension, conjugate, k)

    def _check_compatible(self, other: RestrictedRational):
        if (
            other.center != self.center
            or other.pole_var != self.pole_var
            or other.dimension != self.dimension
        ):
            raise PreconditionError("restricted rationals have different pole centers")

    def _coerce(self, other):
        if isinstance(other, RestrictedRational):
            self._check_compatible(other)
            return other
        if isinstance(other, Polynomial):
            return RestrictedRational(other, 0, 0, self.center, self.pole_var)
        if isinstance(other, (GaussianRational, int, Fraction)):
            return RestrictedRational(
                Polynomial.constant(other, self.dimension), 0, 0, self.center, self.pole_var
            )
        return NotImplemented

    def with_poles(self, a: int, b: int) -> RestrictedRational:
        """Same function over the denominator ``c^a conj(c)^b``, a and b no smaller than now."""
        if a < self.pole_holo or b < self.pole_anti:
            raise ValueError("can only raise pole exponents")
        num = self.numerator
        if a > self.pole_holo:
            num = num * self._pow_poly(False, a - self.pole_holo)
        if b > self.pole_anti:
            num = num * self._pow_poly(True, b - self.pole_anti)
        return RestrictedRational(num, a, b, self.center, self.pole_var)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RestrictedRational.sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return RestrictedRational(-self.numerator, self.pole_holo, self.pole_anti, self.center, self.pole_var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RestrictedRational(
            self.numerator * other.numerator,
            self.pole_holo + other.pole_holo,
            self.pole_anti + other.pole_anti,
            self.center,
            self.pole_var,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("powers must be nonnegative integers")
        return RestrictedRational(
            self.numerator ** k, self.pole_holo * k, self.pole_anti * k, self.center, self.pole_var
        )

    def scale(self, c) -> RestrictedRational:
        return RestrictedRational(
            self.numerator.scale(c), self.pole_holo, self.pole_anti, self.center, self.pole_var
        )

    @staticmethod
    def sum(items: Iterable[RestrictedRational]) -> RestrictedRational:
        """Sum over the least common denominator ``c^max(a) conj(c)^max(b)``."""
        items = list(items)
        if not items:
            raise ValueError("empty sum has no dimension")
        first = items[0]
        for other in items[1:]:
            first._check_compatible(other)
        a = max(x.pole_holo for x in items)
        b = max(x.pole_anti for x in items)
        num = Polynomial.zero(first.dimension)
        for x in items:
            num = num + x.with_poles(a, b).numerator
        return RestrictedRational(num, a, b, first.center, first.pole_var)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            other = RestrictedRational(other, 0, 0, self.center, self.pole_var)
        if not isinstance(other, RestrictedRational):
            return NotImplemented
        if other.center != self.center or other.pole_var != self.pole_var:
            return False
        a = max(self.pole_holo, other.pole_holo)
        b = max(self.pole_anti, other.pole_anti)
        return self.with_poles(a, b).numerator == other.with_poles(a, b).numerator

    def __hash__(self):
        return hash((self.center, self.pole_var, self.dimension))

    # -- involution, calculus -------------------------------------------------

    def conj(self) -> RestrictedRational:
        return RestrictedRational(
            self.numerator.conj(), self.pole_anti, self.pole_holo, self.center, self.pole_var
        )

    def wirtinger(self, j: int, kind: str) -> RestrictedRational:
        """Quotient rule; the result keeps the same pole center."""
        d_num = self.numerator.wirtinger(j, kind)
        if j != self.pole_var:
            return RestrictedRational(d_num, self.pole_holo, self.pole_anti, self.center, self.pole_var)
        exponent = self.pole_holo if kind == "holo" else self.pole_anti
        if exponent == 0:
            return RestrictedRational(d_num, self.pole_holo, self.pole_anti, self.center, self.pole_var)
        conjugate = kind == "anti"
        c = pole_polynomial(self.center, self.pole_var, self.dimension, conjugate)
        dc = c.wirtinger(j, kind)
        num = d_num * c - (self.numerator * dc).scale(exponent)
        if kind == "holo":
            return RestrictedRational(num, self.pole_holo + 1, self.pole_anti, self.center, self.pole_var)
        return RestrictedRational(num, self.pole_holo, self.pole_anti + 1, self.center, self.pole_var)

    def d_z(self, j: int) -> RestrictedRational:
        return self.wirtinger(j, "holo")

    def d_zbar(self, j: int) -> RestrictedRational:
        return self.wirtinger(j, "anti")

    def lift(self, dimension: int) -> RestrictedRational:
        return RestrictedRational(
            self.numerator.lift(dimension), self.pole_holo, self.pole_anti, self.center, self.pole_var
        )

    def project(self, dimension: int) -> RestrictedRational:
        return RestrictedRational(
            self.numerator.project(dimension), self.pole_holo, self.pole_anti, self.center, self.pole_var
        )

    def degree(self) -> int:
        return self.numerator.degree()

    def is_polynomial(self) -> bool:
        return self.pole_holo <= 0 and self.pole_anti <= 0

    def to_polynomial(self) -> Polynomial:
        """Expanded numerator; only for functions without poles."""
        if not self.is_polynomial():
            raise ValueError("function has poles")
        return self.with_poles(0, 0).numerator

    # -- evaluation --------------------------------------------------------------

    def evaluate(self, point) -> complex:
        coords = [complex(z) for z in point]
        if len(coords) != self.dimension:
            raise DimensionError("point dimension mismatch")
        c = _center_value(self.center, coords[self.pole_var - 1])
        if (self.pole_holo > 0 or self.pole_anti > 0) and c == 0:
            raise PoleError(f"pole center vanishes at {coords}")
        value = self.numerator.evaluate(coords)
        return value * _factor(c, self.pole_holo) * _factor(c.conjugate(), self.pole_anti)

    def evaluate_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        value = self.numerator.evaluate_many(pts)
        if not (self.pole_holo or self.pole_anti):
            return value
        c = _center_value(self.center, pts[:, self.pole_var - 1])
        if (self.pole_holo > 0 or self.pole_anti > 0) and np.any(c == 0):
            raise PoleError("pole center vanishes at a sample point")
        return value * _factor(c, self.pole_holo) * _factor(np.conj(c), self.pole_anti)

    def __str__(self):
        c = str(pole_polynomial(self.center, self.pole_var, self.dimension))
        cb = str(pole_polynomial(self.center, self.pole_var, self.dimension, True))
        num, den = [f"({self.numerator})"], []
        for base, e in ((c, self.pole_holo), (cb, self.pole_anti)):
            if e:
                text = f"({base})" + (f"^{abs(e)}" if abs(e) > 1 else "")
                (den if e > 0 else num).append(text)
        if not den:
            return "*".join(num) if len(num) > 1 else str(self.numerator)
        return f"{'*'.join(num)}/{'*'.join(den)}"

    def to_record(self) -> dict:
        return {
            "numerator": self.numerator.to_record(),
            "pole_holo": self.pole_holo,
            "pole_anti": self.pole_anti,
            "center": self.center,
            "pole_var": self.pole_var,
        }

    @classmethod
    def from_record(cls, record) -> RestrictedRational:
        return cls(
            Polynomial.from_record(record["numerator"]),
            record["pole_holo"],
            record["pole_anti"],
            record["center"],
            record["pole_var"],
        )


def compose_rational(p: Polynomial, components: Sequence[RestrictedRational]) -> RestrictedRational:
    """``p`` composed with a rational map: z_j -> F_j, zb_j -> conj(F_j)."""
    if len(components) != p.dimension:
        raise DimensionError("composition needs one component per variable")
    first = components[0]
    for comp in components[1:]:
        first._check_compatible(comp)
    conj = [comp.conj() for comp in components]
    cache: dict[tuple[int, int, int], RestrictedRational] = {}

    def power(kind: int, j: int, e: int) -> RestrictedRational:
        key = (kind, j, e)
        if key not in cache:
            base = components[j] if kind == 0 else conj[j]
            cache[key] = base if e == 1 else power(kind, j, e - 1) * base
        return cache[key]

    terms = []
    for mono, c in p.terms():
        term = RestrictedRational(
            Polynomial.constant(c, first.dimension), 0, 0, first.center, first.pole_var
        )
        for j, e in enumerate(mono.holo):
            if e:
                term = term * power(0, j, e)
        for j, e in enumerate(mono.anti):
            if e:
                term = term * power(1, j, e)
        terms.append(term)
    if not terms:
        return RestrictedRational(Polynomial.zero(first.dimension), 0, 0, first.center, first.pole_var)
    return RestrictedRational.sum(terms)
