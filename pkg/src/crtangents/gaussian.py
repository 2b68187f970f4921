"""Exact complex numbers with rational real and imaginary parts."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "I", "ONE", "ZERO", "as_gaussian"]


class GaussianRational:
    """An element ``re + im*i`` of Q(i).

    Both parts are :class:`fractions.Fraction`, so denominators are positive
    and in lowest terms and no operation ever rounds.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return GaussianRational(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2`` (exact)."""
        return self.re * self.re + self.im * self.im

    # -- comparison / conversion -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_coefficient(self)

    # -- serialization ----------------------------------------------------

    def to_record(self) -> dict:
        return {
            "re": [self.re.numerator, self.re.denominator],
            "im": [self.im.numerator, self.im.denominator],
        }

    @classmethod
    def from_record(cls, record) -> GaussianRational:
        re_num, re_den = record["re"]
        im_num, im_den = record["im"]
        return cls(Fraction(re_num, re_den), Fraction(im_num, im_den))


def as_gaussian(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Rational)):
        return GaussianRational(value)
    if isinstance(value, str):
        return GaussianRational(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")


def format_coefficient(c: GaussianRational) -> str:
    """Render in the CLI expression syntax, e.g. ``3/2``, ``-i``, ``(1 + 2*i)``."""
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{c.im}*i"
    sign = "-" if c.im < 0 else "+"
    mag = abs(c.im)
    imag = "i" if mag == 1 else f"{mag}*i"
    return f"({c.re} {sign} {imag})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
