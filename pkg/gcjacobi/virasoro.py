"""Virasoro elements L = (x + alpha*d) Id, quasi-primary bases and the reduction to quasi-primaries."""

from __future__ import annotations

import functools
import logging
import math
import threading
from collections.abc import Mapping
from dataclasses import dataclass, field

from gcjacobi.errors import DomainError, SizeMismatchError
from gcjacobi.gc import GcElem, lambda_bracket, mat_scale, nth_product
from gcjacobi.ring import (
    LAM,
    QQ,
    RING,
    SIGMA,
    D,
    MPoly,
    Scalar,
    X,
    Y,
    as_poly,
    binom_poly,
    degree_in,
    poly_substitute,
    split_by,
)

logger = logging.getLogger(__name__)

_HALF = QQ(1, 2)


def alpha_of(sigma: Scalar) -> MPoly:
    """alpha = (1 - sigma)/2."""
    return (1 - as_poly(sigma)) * _HALF


@dataclass(frozen=True)
class VirasoroElem:
    """The Virasoro element (x + alpha*d) Id of gc_N."""

    alpha: MPoly
    n: int = 1

    def __post_init__(self) -> None:
        """Verify [L l L] = (d + 2l) L."""
        object.__setattr__(self, "alpha", as_poly(self.alpha))
        if degree_in(self.alpha, (D, X)) > 0:
            msg = "alpha must not depend on d or x"
            raise DomainError(msg)
        elem = self.elem
        expected = lambda_bracket(elem, elem).to_matrix()
        if expected != mat_scale(elem.entries, D + 2 * LAM):
            msg = f"x + ({self.alpha})d is not a Virasoro element"
            raise DomainError(msg)

    @classmethod
    def from_sigma(cls, sigma: Scalar, n: int = 1) -> VirasoroElem:
        """The element with alpha = (1 - sigma)/2."""
        return cls(alpha_of(sigma), n)

    @property
    def sigma(self) -> MPoly:
        """sigma = 1 - 2 alpha."""
        return 1 - 2 * self.alpha

    @property
    def elem(self) -> GcElem:
        """L as an element of gc_N."""
        return GcElem.scalar(X + self.alpha * D, self.n)


class QBasis:
    """Lazily built quasi-primary polynomials Q_n for one sigma."""

    def __init__(self, sigma: Scalar) -> None:
        """Start with an empty cache."""
        self.sigma = as_poly(sigma)
        self._cache: dict[int, MPoly] = {}
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> MPoly:
        """Q_n(d, x)."""
        if n < 0:
            msg = f"degree must be non-negative, got {n}"
            raise DomainError(msg)
        with self._lock:
            if n not in self._cache:
                self._cache[n] = self._build(n)
            return self._cache[n]

    def _build(self, n: int) -> MPoly:
        total = RING.zero
        top = n - self.sigma
        for k in range(n + 1):
            total += math.comb(2 * n - k, n) * binom_poly(top, k) * D**k * X ** (n - k)
        return total * QQ(1, math.comb(2 * n, n))


@functools.cache
def _basis_for(sigma: MPoly) -> QBasis:
    return QBasis(sigma)


def q_basis(sigma: Scalar, n: int) -> MPoly:
    """The quasi-primary polynomial Q_n for the given sigma."""
    return _basis_for(as_poly(sigma))[n]


def r_basis(sigma: Scalar, n: int) -> MPoly:
    """Q_n written in d and y = 2x + d."""
    return poly_substitute(q_basis(sigma, n), {X: (Y - D) * _HALF})


def q_coefficient(sigma: Scalar, n: int, k: int) -> MPoly:
    """Coefficient c_{n,k} of d^k x^(n-k) in Q_n."""
    parts = split_by(q_basis(sigma, n), D)
    return poly_substitute(parts.get(k, RING.zero), {X: 1})


def q_coefficient_recursion_holds(sigma: Scalar, n: int) -> bool:
    """c_{n,k} k(2n-k+1) = c_{n,k-1} (n-k+1)(n-k+2 alpha) for k = 1..n."""
    alpha = alpha_of(sigma)
    return all(
        q_coefficient(sigma, n, k) * (k * (2 * n - k + 1))
        == q_coefficient(sigma, n, k - 1) * (n - k + 1) * (n - k + 2 * alpha)
        for k in range(1, n + 1)
    )


def q_basis_symmetry(n: int, sigma: Scalar = SIGMA) -> bool:
    """Q_n^(sigma)(d, x) = Q_n^(-sigma)(-d, d + x)."""
    sigma = as_poly(sigma)
    return q_basis(sigma, n) == poly_substitute(q_basis(-sigma, n), {D: -D, X: D + X})


def r_basis_symmetry(n: int, sigma: Scalar = SIGMA) -> bool:
    """R_n^(sigma)(d, y) = R_n^(-sigma)(-d, y)."""
    sigma = as_poly(sigma)
    return r_basis(sigma, n) == poly_substitute(r_basis(-sigma, n), {D: -D})


def second_product_monomial(alpha: Scalar, k: int, n: int) -> MPoly:
    """L_(2) applied to d^k x^n in closed form."""
    alpha = as_poly(alpha)
    result = RING.zero
    if k > 0:
        result += (k * (k + 1) + 2 * k * n) * D ** (k - 1) * X**n
    if n > 0:
        result -= (n * (n - 1) + 2 * n * alpha) * D**k * X ** (n - 1)
    return result


def is_quasi_primary(a: GcElem, virasoro: VirasoroElem) -> bool:
    """Whether L_(2) a = 0."""
    if a.n != virasoro.n:
        msg = f"size mismatch: {a.n} vs {virasoro.n}"
        raise SizeMismatchError(msg)
    return nth_product(virasoro.elem, a, 2).is_zero


def conformal_weight_holds(a: GcElem, virasoro: VirasoroElem) -> bool:
    """L_(1) multiplies each (d, x)-homogeneous part of degree n by n + 1."""
    return all(
        nth_product(virasoro.elem, part, 1) == part.scale(degree + 1)
        for degree, part in a.homogeneous_parts().items()
    )


@dataclass(frozen=True)
class ReducedElem:
    """Finite sum of Q_m times a constant matrix; zero matrices are not stored."""

    n: int
    components: Mapping[int, GcElem] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Check degrees, sizes and that the matrices are free of d and x."""
        for m, c in self.components.items():
            if m < 0 or c.n != self.n:
                msg = f"bad component at degree {m}"
                raise DomainError(msg)
            if c.is_zero or c.degree() > 0:
                msg = f"component at degree {m} must be a nonzero matrix over Q[sigma]"
                raise DomainError(msg)

    @classmethod
    def build(cls, n: int, components: Mapping[int, GcElem]) -> ReducedElem:
        """Drop zero matrices and sort by degree."""
        return cls(n, {m: c for m, c in sorted(components.items()) if not c.is_zero})

    @classmethod
    def single(cls, degree: int, matrix: GcElem) -> ReducedElem:
        """X^degree times one matrix."""
        return cls.build(matrix.n, {degree: matrix})

    @property
    def is_zero(self) -> bool:
        """No stored component."""
        return not self.components

    def component(self, m: int) -> GcElem:
        """The matrix at degree m (possibly zero)."""
        return self.components.get(m, GcElem.zero(self.n))

    def __add__(self, other: ReducedElem) -> ReducedElem:
        """Degreewise sum."""
        degrees = sorted(set(self.components) | set(other.components))
        return ReducedElem.build(self.n, {m: self.component(m) + other.component(m) for m in degrees})

    def __sub__(self, other: ReducedElem) -> ReducedElem:
        """Degreewise difference."""
        return self + other.scale(-1)

    def scale(self, factor: Scalar) -> ReducedElem:
        """Multiply every matrix by a polynomial in sigma."""
        return ReducedElem.build(self.n, {m: c.scale(factor) for m, c in self.components.items()})

    def lift(self, sigma: Scalar) -> GcElem:
        """Sum of Q_m times the matrix, back in gc_N."""
        total = GcElem.zero(self.n)
        for m, c in self.components.items():
            total += c.scale(q_basis(sigma, m))
        return total

    def __str__(self) -> str:
        """Readable form in the X^m basis."""
        if not self.components:
            return "0"
        return " + ".join(f"X^{m}*{c}" for m, c in self.components.items())


def _coefficient_blocks(entries: list[list[MPoly]], k: int, n: int) -> dict[int, list[list[MPoly]]]:
    """Matrices multiplying d^k x^m, keyed by m."""
    d_idx, x_idx = RING.index(D), RING.index(X)
    blocks: dict[int, list[list[MPoly]]] = {}
    for i in range(n):
        for j in range(n):
            for monom, coeff in entries[i][j].items():
                if monom[d_idx] != k:
                    continue
                rest = list(monom)
                rest[d_idx] = rest[x_idx] = 0
                block = blocks.setdefault(monom[x_idx], [[RING.zero] * n for _ in range(n)])
                block[i][j] += RING({tuple(rest): coeff})
    return blocks


def decompose(a: GcElem, virasoro: VirasoroElem) -> dict[int, ReducedElem]:
    """Write a = sum_i d^i a^i with every a^i quasi-primary."""
    if a.n != virasoro.n:
        msg = f"size mismatch: {a.n} vs {virasoro.n}"
        raise SizeMismatchError(msg)
    n, sigma = a.n, virasoro.sigma
    remainder = [list(row) for row in a.entries]
    d_idx = RING.index(D)
    result: dict[int, dict[int, GcElem]] = {}
    while any(p for row in remainder for p in row):
        k = min(monom[d_idx] for row in remainder for p in row for monom in p)
        for m, block in sorted(_coefficient_blocks(remainder, k, n).items()):
            shift = D**k * q_basis(sigma, m)
            for i in range(n):
                for j in range(n):
                    if block[i][j]:
                        remainder[i][j] -= shift * block[i][j]
            result.setdefault(k, {})[m] = GcElem.from_rows(block)
    return {i: ReducedElem.build(n, parts) for i, parts in sorted(result.items())}


def reconstruct(decomposition: Mapping[int, ReducedElem], virasoro: VirasoroElem) -> GcElem:
    """Inverse of decompose."""
    total = GcElem.zero(virasoro.n)
    for i, part in decomposition.items():
        total += part.lift(virasoro.sigma).scale(D**i)
    return total


def project(a: GcElem, virasoro: VirasoroElem) -> ReducedElem:
    """Projection to the reduced space: put d = 0, then read x^m as Q_m."""
    if a.n != virasoro.n:
        msg = f"size mismatch: {a.n} vs {virasoro.n}"
        raise SizeMismatchError(msg)
    at_zero = a.substitute({D: 0})
    blocks: dict[int, list[list[MPoly]]] = {}
    for i, row in enumerate(at_zero.entries):
        for j, p in enumerate(row):
            for m, part in split_by(p, X).items():
                blocks.setdefault(m, [[RING.zero] * a.n for _ in range(a.n)])[i][j] = part
    return ReducedElem.build(a.n, {m: GcElem.from_rows(rows) for m, rows in blocks.items()})
