"""Tangential Cauchy-Riemann operators and the constructive preimage solver."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, NotRealError
from .gaussian import ONE, ZERO, GaussianRational, I
from .polynomial import Monomial, Polynomial

__all__ = [
    "CROperator",
    "cr_basis",
    "apply",
    "heisenberg_operator",
    "solve_preimage",
    "is_cr",
]


@dataclass(frozen=True)
class CROperator:
    """``f -> sum_k coeff_k * d f / d zb_{index_k}``."""

    dimension: int
    terms: tuple[tuple[Polynomial, int], ...]

    def __post_init__(self):
        for coeff, index in self.terms:
            if coeff.dimension != self.dimension:
                raise DimensionError("operator coefficient has the wrong dimension")
            if not 1 <= index <= self.dimension:
                raise DimensionError(f"antiholomorphic index {index} out of range")

    def __call__(self, f):
        return apply(self, f)

    def coefficient(self, index: int) -> Polynomial:
        total = Polynomial.zero(self.dimension)
        for coeff, k in self.terms:
            if k == index:
                total = total + coeff
        return total

    def __str__(self):
        parts = [f"({coeff})*d/dzb{k}" for coeff, k in self.terms if coeff]
        return " + ".join(parts) if parts else "0"


def apply(L: CROperator, f):
    """Apply ``L`` to a polynomial (or restricted rational) exactly."""
    if f.dimension != L.dimension:
        raise DimensionError(f"operator acts in dimension {L.dimension}, got {f.dimension}")
    result = None
    for coeff, k in L.terms:
        term = f.d_zbar(k) * coeff
        result = term if result is None else result + term
    if result is None:
        return f * 0
    return result


def cr_basis(rho: Polynomial, n: int | None = None) -> list[CROperator]:
    """The operators L_{jn} = rho_{zb_n} d/dzb_j - rho_{zb_j} d/dzb_n, j = 1..n-1."""
    n = rho.dimension if n is None else n
    if n != rho.dimension:
        raise DimensionError("rho dimension does not match n")
    if n < 2:
        raise DimensionError("need n >= 2")
    if not rho.is_real():
        raise NotRealError("defining function is not real (conj(rho) != rho)")
    rho_n = rho.d_zbar(n)
    basis = []
    for j in range(1, n):
        rho_j = rho.d_zbar(j)
        basis.append(CROperator(n, ((rho_n, j), (-rho_j, n))))
    return basis


def heisenberg_operator(j: int, n: int) -> CROperator:
    """L_{jn} = 2 z_j d/dzb_n + i d/dzb_j on the Heisenberg hypersurface."""
    if n < 2 or not 1 <= j <= n - 1:
        raise DimensionError(f"need 1 <= j <= n-1, got j={j}, n={n}")
    return CROperator(
        n,
        (
            (Polynomial.z(j, n).scale(2), n),
            (Polynomial.constant(I, n), j),
        ),
    )


def _preimage_terms(mono: Monomial, coeff: GaussianRational, j: int, n: int):
    """Preimage of one term under L_{jn}; iterates over the zb_n exponent.

    With core z_j^m zb_j^k zb_n^l (everything else is a spectator):
    pre(z_j^m zb_j^k zb_n^l) = z_j^m zb_j^(k+1) zb_n^l / (i(k+1))
                              - pre(2l/(i(k+1)) z_j^(m+1) zb_j^(k+1) zb_n^(l-1)).
    """
    jj, nn = j - 1, n - 1
    holo = list(mono.holo)
    anti = list(mono.anti)
    m, k, l = holo[jj], anti[jj], anti[nn]
    c = coeff
    while True:
        ik1 = I * (k + 1)
        holo[jj], anti[jj], anti[nn] = m, k + 1, l
        yield Monomial(tuple(holo), tuple(anti)), c / ik1
        if l == 0:
            break
        c = -c * (2 * l) / ik1
        m, k, l = m + 1, k + 1, l - 1


def solve_preimage(p: Polynomial, j: int, n: int | None = None) -> Polynomial:
    """A polynomial f with ``heisenberg_operator(j, n)(f) == p``.

    Terms are processed in canonical order; the result is the particular
    solution of the recursion, so it is linear in ``p`` and deterministic.
    """
    n = p.dimension if n is None else n
    if n != p.dimension:
        raise DimensionError("p dimension does not match n")
    if n < 2 or not 1 <= j <= n - 1:
        raise DimensionError(f"need 1 <= j <= n-1, got j={j}, n={n}")
    out: dict[Monomial, GaussianRational] = {}
    for mono, coeff in p.terms():
        for new_mono, c in _preimage_terms(mono, coeff, j, n):
            total = out.get(new_mono, ZERO) + c
            if total:
                out[new_mono] = total
            else:
                out.pop(new_mono, None)
    f = Polynomial._raw(n, out)
    bound = p.degree() + p.max_exponent(n, "anti") + 1
    if f.degree() > bound:
        raise AssertionError(f"preimage degree {f.degree()} exceeds bound {bound}")
    return f


def is_cr(f: Polynomial, basis: Sequence[CROperator]) -> bool:
    """True iff every operator of ``basis`` annihilates ``f`` identically."""
    return all(apply(L, f).is_zero() for L in basis)
