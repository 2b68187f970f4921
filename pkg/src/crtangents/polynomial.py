"""Sparse exact polynomials in z_1..z_n and their formal conjugates.

A polynomial is a finite map from :class:`Monomial` (holomorphic and
antiholomorphic exponent vectors) to nonzero :class:`GaussianRational`
coefficients.  Values are immutable; every operation returns a new object.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DimensionError, NotUnitaryError
from .gaussian import ONE, ZERO, GaussianRational, I, as_gaussian, format_coefficient

__all__ = [
    "Monomial",
    "Polynomial",
    "monomial_key",
    "substitute_real_coords",
    "real_variable",
    "linear_change_of_vars",
    "is_unitary",
    "conjugate_transpose",
    "evaluate",
    "exact_divide",
]


class Monomial(NamedTuple):
    holo: tuple[int, ...]
    anti: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.holo) + sum(self.anti)

    @property
    def dimension(self) -> int:
        return len(self.holo)

    def times(self, other: Monomial) -> Monomial:
        return Monomial(
            tuple(a + b for a, b in zip(self.holo, other.holo)),
            tuple(a + b for a, b in zip(self.anti, other.anti)),
        )

    def conj(self) -> Monomial:
        return Monomial(self.anti, self.holo)

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.holo, other.holo)) and all(
            a <= b for a, b in zip(self.anti, other.anti)
        )

    def quotient(self, divisor: Monomial) -> Monomial:
        return Monomial(
            tuple(a - b for a, b in zip(self.holo, divisor.holo)),
            tuple(a - b for a, b in zip(self.anti, divisor.anti)),
        )

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * n, (0,) * n)


def monomial_key(m: Monomial):
    """Canonical (graded) order: ascending total degree, then z_1 before z_2 ... before zb_1 ..."""
    return (m.degree, tuple(-e for e in m.holo + m.anti))


def _grlex(m: Monomial):
    return (m.degree, m.holo + m.anti)


def _format_monomial(m: Monomial) -> str:
    parts = []
    for prefix, exps in (("z", m.holo), ("zb", m.anti)):
        for j, e in enumerate(exps, start=1):
            if e == 1:
                parts.append(f"{prefix}{j}")
            elif e > 1:
                parts.append(f"{prefix}{j}^{e}")
    return "*".join(parts)


class Polynomial:
    """Element of Q(i)[z_1..z_n, zb_1..zb_n]."""

    __slots__ = ("dimension", "_terms", "_hash")

    def __init__(self, dimension: int, terms=None):
        if dimension < 1:
            raise DimensionError("dimension must be positive")
        self.dimension = dimension
        clean: dict[Monomial, GaussianRational] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, coeff in items:
                mono = Monomial(tuple(mono[0]), tuple(mono[1]))
                if len(mono.holo) != dimension or len(mono.anti) != dimension:
                    raise DimensionError(
                        f"monomial {mono} does not match dimension {dimension}"
                    )
                if any(e < 0 for e in mono.holo + mono.anti):
                    raise ValueError("exponents must be nonnegative")
                total = clean.get(mono, ZERO) + as_gaussian(coeff)
                if total:
                    clean[mono] = total
                else:
                    clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dimension: int, terms: dict) -> Polynomial:
        obj = cls.__new__(cls)
        obj.dimension = dimension
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Polynomial:
        return cls._raw(n, {})

    @classmethod
    def constant(cls, c, n: int) -> Polynomial:
        c = as_gaussian(c)
        return cls._raw(n, {Monomial.one(n): c} if c else {})

    @classmethod
    def one(cls, n: int) -> Polynomial:
        return cls.constant(1, n)

    @classmethod
    def monomial(cls, holo: Sequence[int], anti: Sequence[int], coeff=1) -> Polynomial:
        return cls(len(holo), {Monomial(tuple(holo), tuple(anti)): coeff})

    @classmethod
    def z(cls, j: int, n: int) -> Polynomial:
        _check_index(j, n)
        holo = [0] * n
        holo[j - 1] = 1
        return cls._raw(n, {Monomial(tuple(holo), (0,) * n): ONE})

    @classmethod
    def zbar(cls, j: int, n: int) -> Polynomial:
        _check_index(j, n)
        anti = [0] * n
        anti[j - 1] = 1
        return cls._raw(n, {Monomial((0,) * n, tuple(anti)): ONE})

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[Monomial, GaussianRational]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __iter__(self) -> Iterator[tuple[Monomial, GaussianRational]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, mono: Monomial) -> GaussianRational:
        return self._terms.get(Monomial(tuple(mono[0]), tuple(mono[1])), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self._terms), default=-1)

    def max_exponent(self, j: int, kind: str = "anti") -> int:
        _check_index(j, self.dimension)
        if kind == "holo":
            return max((m.holo[j - 1] for m in self._terms), default=0)
        return max((m.anti[j - 1] for m in self._terms), default=0)

    def is_constant(self) -> bool:
        return all(m.degree == 0 for m in self._terms)

    def constant_term(self) -> GaussianRational:
        return self._terms.get(Monomial.one(self.dimension), ZERO)

    def max_coefficient_modulus(self) -> float:
        return max((abs(complex(c)) for c in self._terms.values()), default=0.0)

    def is_real(self) -> bool:
        """True when fixed by the conjugation involution (real-valued)."""
        return self.conj() == self

    def leading_term(self) -> tuple[Monomial, GaussianRational]:
        mono = max(self._terms, key=_grlex)
        return mono, self._terms[mono]

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.dimension != self.dimension:
                raise DimensionError(
                    f"dimension mismatch: {self.dimension} vs {other.dimension}"
                )
            return other
        if isinstance(other, (GaussianRational, int, Fraction)):
            return Polynomial.constant(other, self.dimension)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            total = terms.get(mono, ZERO) + c
            if total:
                terms[mono] = total
            else:
                terms.pop(mono, None)
        return Polynomial._raw(self.dimension, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.dimension, {m: -c for m, c in self._terms.items()})

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
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Monomial, GaussianRational] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = m1.times(m2)
                total = terms.get(mono, ZERO) + c1 * c2
                if total:
                    terms[mono] = total
                else:
                    terms.pop(mono, None)
        return Polynomial._raw(self.dimension, terms)

    def __rmul__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> Polynomial:
        c = as_gaussian(c)
        if not c:
            return Polynomial.zero(self.dimension)
        return Polynomial._raw(self.dimension, {m: c * v for m, v in self._terms.items()})

    def __truediv__(self, c):
        if isinstance(c, (GaussianRational, int, Fraction)):
            return self.scale(ONE / as_gaussian(c))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.one(self.dimension)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.dimension == other.dimension and self._terms == other._terms
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self._terms == Polynomial.constant(other, self.dimension)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dimension, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and involution -----------------------------------------

    def conj(self) -> Polynomial:
        """Conjugation involution: swap z/zb exponents and conjugate coefficients."""
        return Polynomial._raw(
            self.dimension, {m.conj(): c.conjugate() for m, c in self._terms.items()}
        )

    def wirtinger(self, j: int, kind: str) -> Polynomial:
        """Formal d/dz_j (``kind='holo'``) or d/dzb_j (``kind='anti'``)."""
        _check_index(j, self.dimension)
        if kind not in ("holo", "anti"):
            raise ValueError(f"kind must be 'holo' or 'anti', not {kind!r}")
        k = j - 1
        terms: dict[Monomial, GaussianRational] = {}
        for mono, c in self._terms.items():
            exps = mono.holo if kind == "holo" else mono.anti
            e = exps[k]
            if e == 0:
                continue
            lowered = exps[:k] + (e - 1,) + exps[k + 1 :]
            new = Monomial(lowered, mono.anti) if kind == "holo" else Monomial(mono.holo, lowered)
            terms[new] = c * e
        return Polynomial._raw(self.dimension, terms)

    def d_z(self, j: int) -> Polynomial:
        return self.wirtinger(j, "holo")

    def d_zbar(self, j: int) -> Polynomial:
        return self.wirtinger(j, "anti")

    def lift(self, dimension: int) -> Polynomial:
        """Embed into a ring with more variables (new variables appended)."""
        if dimension < self.dimension:
            raise DimensionError("cannot lift to a smaller dimension")
        pad = (0,) * (dimension - self.dimension)
        return Polynomial._raw(
            dimension,
            {Monomial(m.holo + pad, m.anti + pad): c for m, c in self._terms.items()},
        )

    def project(self, dimension: int) -> Polynomial:
        """Inverse of :meth:`lift`; the dropped variables must not occur."""
        terms = {}
        for m, c in self._terms.items():
            if any(m.holo[dimension:]) or any(m.anti[dimension:]):
                raise DimensionError("polynomial depends on dropped variables")
            terms[Monomial(m.holo[:dimension], m.anti[:dimension])] = c
        return Polynomial._raw(dimension, terms)

    def substitute(self, holo_images, anti_images):
        """Ring-homomorphic substitution z_j -> holo_images[j], zb_j -> anti_images[j]."""
        n = self.dimension
        if len(holo_images) != n or len(anti_images) != n:
            raise DimensionError("substitution needs one image per variable")
        target_dim = _common_dimension(list(holo_images) + list(anti_images))
        cache: dict[tuple[str, int, int], Polynomial] = {}

        def power(kind, j, e):
            key = (kind, j, e)
            if key not in cache:
                base = holo_images[j] if kind == "h" else anti_images[j]
                cache[key] = base if e == 1 else power(kind, j, e - 1) * base
            return cache[key]

        result = Polynomial.zero(target_dim)
        for mono, c in self._terms.items():
            term = Polynomial.constant(c, target_dim)
            for j, e in enumerate(mono.holo):
                if e:
                    term = term * power("h", j, e)
            for j, e in enumerate(mono.anti):
                if e:
                    term = term * power("a", j, e)
            result = result + term
        return result

    # -- evaluation -------------------------------------------------------

    def evaluate(self, point) -> complex:
        point = _as_point(point, self.dimension)
        conj = [z.conjugate() for z in point]
        total = 0j
        for mono, c in self._terms.items():
            value = complex(c)
            for j, e in enumerate(mono.holo):
                if e:
                    value *= point[j] ** e
            for j, e in enumerate(mono.anti):
                if e:
                    value *= conj[j] ** e
            total += value
        return total

    def evaluate_exact(self, point) -> GaussianRational:
        """Exact value at a point with Gaussian-rational coordinates."""
        coords = [as_gaussian(z) for z in point]
        if len(coords) != self.dimension:
            raise DimensionError("point dimension mismatch")
        conj = [z.conjugate() for z in coords]
        total = ZERO
        for mono, c in self._terms.items():
            value = c
            for j, e in enumerate(mono.holo):
                if e:
                    value = value * coords[j] ** e
            for j, e in enumerate(mono.anti):
                if e:
                    value = value * conj[j] ** e
            total = total + value
        return total

    def evaluate_many(self, points) -> np.ndarray:
        """Vectorised evaluation over an ``(N, n)`` array of points."""
        pts = np.asarray(points, dtype=complex)
        if pts.ndim != 2 or pts.shape[1] != self.dimension:
            raise DimensionError(f"expected points of shape (N, {self.dimension})")
        conj = np.conj(pts)
        out = np.zeros(pts.shape[0], dtype=complex)
        for mono, c in self._terms.items():
            value = np.full(pts.shape[0], complex(c))
            for j, e in enumerate(mono.holo):
                if e:
                    value = value * pts[:, j] ** e
            for j, e in enumerate(mono.anti):
                if e:
                    value = value * conj[:, j] ** e
            out += value
        return out

    # -- text and records -------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.terms():
            body = _format_monomial(mono)
            if not body:
                text = format_coefficient(c)
            elif c == 1:
                text = body
            elif c == -1:
                text = "-" + body
            else:
                text = f"{format_coefficient(c)}*{body}"
            if not pieces:
                pieces.append(text)
            elif text.startswith("-"):
                pieces.append(f" - {text[1:]}")
            else:
                pieces.append(f" + {text}")
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({self.dimension}, {str(self)!r})"

    def to_record(self) -> dict:
        return {
            "dimension": self.dimension,
            "terms": [
                {"coeff": c.to_record(), "holo": list(m.holo), "anti": list(m.anti)}
                for m, c in self.terms()
            ],
        }

    @classmethod
    def from_record(cls, record) -> Polynomial:
        return cls(
            record["dimension"],
            [
                ((t["holo"], t["anti"]), GaussianRational.from_record(t["coeff"]))
                for t in record["terms"]
            ],
        )


def _check_index(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise DimensionError(f"variable index {j} out of range 1..{n}")


def _common_dimension(polys: Iterable[Polynomial]) -> int:
    dims = {p.dimension for p in polys}
    if len(dims) != 1:
        raise DimensionError(f"images have mixed dimensions {sorted(dims)}")
    return dims.pop()


def _as_point(point, n: int) -> list[complex]:
    coords = [complex(z) for z in point]
    if len(coords) != n:
        raise DimensionError(f"point has {len(coords)} coordinates, expected {n}")
    return coords


def evaluate(p, point) -> complex:
    """Evaluate a :class:`Polynomial` or restricted rational function at a point."""
    return p.evaluate(point)


# -- real coordinates ---------------------------------------------------------

def real_variable(name: str, j: int, n: int) -> Polynomial:
    """x_j or y_j as a variable of the real-coordinate ring.

    The real-coordinate ring is a :class:`Polynomial` ring of dimension 2n
    whose holomorphic variables 1..n are x_1..x_n and n+1..2n are y_1..y_n.
    """
    _check_index(j, n)
    if name == "x":
        return Polynomial.z(j, 2 * n)
    if name == "y":
        return Polynomial.z(n + j, 2 * n)
    raise ValueError(f"unknown real coordinate {name!r}")


def substitute_real_coords(q: Polynomial, n: int | None = None) -> Polynomial:
    """Rewrite a polynomial in x_j, y_j as one in z_j, zb_j.

    Uses x_j = (z_j + zb_j)/2 and y_j = (z_j - zb_j)/(2i).
    """
    if n is None:
        if q.dimension % 2:
            raise DimensionError("real-coordinate ring has even dimension 2n")
        n = q.dimension // 2
    if q.dimension != 2 * n:
        raise DimensionError(f"expected a polynomial over {2 * n} real variables")
    if any(any(m.anti) for m, _ in q.terms()):
        raise ValueError("real-coordinate polynomial must not use conjugate variables")
    half = GaussianRational(Fraction(1, 2))
    xs = [(Polynomial.z(j, n) + Polynomial.zbar(j, n)).scale(half) for j in range(1, n + 1)]
    ys = [
        (Polynomial.z(j, n) - Polynomial.zbar(j, n)).scale(-I * half)
        for j in range(1, n + 1)
    ]
    zero = Polynomial.zero(n)
    return q.substitute(xs + ys, [zero] * (2 * n))


# -- unitary changes of variables ----------------------------------------------

def conjugate_transpose(U):
    n = len(U)
    return [[as_gaussian(U[k][j]).conjugate() for k in range(n)] for j in range(n)]


def is_unitary(U) -> bool:
    n = len(U)
    if any(len(row) != n for row in U):
        return False
    M = [[as_gaussian(x) for x in row] for row in U]
    for a in range(n):
        for b in range(n):
            s = ZERO
            for k in range(n):
                s = s + M[a][k] * M[b][k].conjugate()
            if s != (1 if a == b else 0):
                return False
    return True


def linear_change_of_vars(p: Polynomial, U) -> Polynomial:
    """Substitute z -> U z and zb -> conj(U) zb, with U exactly unitary."""
    n = p.dimension
    if len(U) != n or any(len(row) != n for row in U):
        raise DimensionError(f"expected an {n}x{n} matrix")
    if not is_unitary(U):
        raise NotUnitaryError("matrix is not exactly unitary")
    M = [[as_gaussian(x) for x in row] for row in U]
    zs = [Polynomial.z(k, n) for k in range(1, n + 1)]
    zbs = [Polynomial.zbar(k, n) for k in range(1, n + 1)]
    holo = []
    anti = []
    for j in range(n):
        h = Polynomial.zero(n)
        a = Polynomial.zero(n)
        for k in range(n):
            if M[j][k]:
                h = h + zs[k].scale(M[j][k])
                a = a + zbs[k].scale(M[j][k].conjugate())
        holo.append(h)
        anti.append(a)
    return p.substitute(holo, anti)


# -- exact division ----------------------------------------------------------------

def exact_divide(p: Polynomial, d: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Multivariate division of ``p`` by ``d`` under graded lex order.

    Returns ``(quotient, remainder)`` with ``p == quotient*d + remainder``.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = p.dimension
    lead_m, lead_c = d.leading_term()
    quotient: dict[Monomial, GaussianRational] = {}
    remainder: dict[Monomial, GaussianRational] = {}
    rest = p
    while rest:
        m, c = rest.leading_term()
        if lead_m.divides(m):
            qm = m.quotient(lead_m)
            qc = c / lead_c
            quotient[qm] = quotient.get(qm, ZERO) + qc
            rest = rest - Polynomial._raw(n, {qm: qc}) * d
        else:
            remainder[m] = c
            rest = rest - Polynomial._raw(n, {m: c})
    return (
        Polynomial(n, quotient),
        Polynomial(n, remainder),
    )
