"""Coefficients D(sigma; m, n, l) of products of Jacobi polynomials and the interpolation rank certificate."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from sympy import Matrix, Rational

from gcjacobi.errors import DomainError
from gcjacobi.jacobi import JacobiParams, jacobi_poly
from gcjacobi.models import Report
from gcjacobi.reduced import d_coeff
from gcjacobi.ring import (
    QQ,
    RING,
    SIGMA,
    MPoly,
    X,
    Y,
    binom_poly,
    degree_in,
    format_poly,
    poly_divide,
    poly_substitute,
    split_by,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BigD:
    """One coefficient D(sigma; m, n, l)."""

    m: int
    n: int
    l: int
    value: MPoly


def big_d(m: int, n: int, l: int) -> MPoly:
    """Sum over i + j = l of C(m+i,m) C(m+sigma,m-i) C(n+j,n) C(n-sigma,n-j)."""
    if m < 0 or n < 0 or not 0 <= l <= m + n:
        msg = f"need m, n >= 0 and 0 <= l <= m + n, got m={m}, n={n}, l={l}"
        raise DomainError(msg)
    total = RING.zero
    for i in range(max(0, l - n), min(m, l) + 1):
        j = l - i
        total += (
            math.comb(m + i, m) * binom_poly(m + SIGMA, m - i) * math.comb(n + j, n) * binom_poly(n - SIGMA, n - j)
        )
    return total


def d_table(m_max: int, n_max: int) -> list[BigD]:
    """All D(sigma; m, n, l) up to the given m and n."""
    return [
        BigD(m, n, l, big_d(m, n, l))
        for m in range(m_max + 1)
        for n in range(n_max + 1)
        for l in range(m + n + 1)
    ]


def product_expansion_check(m: int, n: int) -> bool:
    """P_m^(sigma,-sigma)(2x+1) P_n^(-sigma,sigma)(2x+1) = sum_l D(sigma; m, n, l) x^l."""
    left = poly_substitute(jacobi_poly(JacobiParams.sigma_pair(-SIGMA), m), {Y: 2 * X + 1})
    right = poly_substitute(jacobi_poly(JacobiParams.sigma_pair(SIGMA), n), {Y: 2 * X + 1})
    parts = split_by(left * right, X)
    return all(parts.get(l, RING.zero) == big_d(m, n, l) for l in range(m + n + 1)) and max(parts) <= m + n


def d_cross_check(m: int, n: int) -> bool:
    """D(sigma; m, n, l) (m+n-l)! / (C(2m,m) C(2n,n)) = d_{m,n,m+n-l}."""
    scale = math.comb(2 * m, m) * math.comb(2 * n, n)
    return all(
        big_d(m, n, l) * QQ(math.factorial(m + n - l), scale) == d_coeff(m, n, m + n - l)
        for l in range(m + n + 1)
    )


def degree_and_exchange_check(m: int, n: int) -> bool:
    """deg_sigma D <= m+n-l and D(sigma; m, n, l) = D(-sigma; n, m, l)."""
    for l in range(m + n + 1):
        value = big_d(m, n, l)
        if degree_in(value, (SIGMA,)) > m + n - l:
            return False
        if value != poly_substitute(big_d(n, m, l), {SIGMA: -SIGMA}):
            return False
    return True


def _at(p: MPoly, sigma: int) -> MPoly:
    return poly_substitute(p, {SIGMA: sigma})


def verify_facts(m: int, n: int) -> Report:
    """Symmetry at sigma = 0..m, vanishing at sigma = l+1..n and the factorization of D for every l."""
    if not 0 <= m <= n:
        msg = f"need 0 <= m <= n, got m={m}, n={n}"
        raise DomainError(msg)
    report = Report(suite="facts")
    for l in range(m + n + 1):
        value = big_d(m, n, l)
        asymmetric = [s for s in range(m + 1) if _at(value, s) != _at(value, -s)]
        report.add(
            {"m": m, "n": n, "l": l, "clause": "symmetry"},
            passed=not asymmetric,
            detail=f"D(s) != D(-s) at s={asymmetric}" if asymmetric else "",
        )
        if l < n:
            nonzero = [s for s in range(l + 1, n + 1) if _at(value, s)]
            report.add(
                {"m": m, "n": n, "l": l, "clause": "vanishing"},
                passed=not nonzero,
                detail=f"D nonzero at s={nonzero}" if nonzero else "",
            )
        factored = factorization(m, n, l)
        report.add(
            {"m": m, "n": n, "l": l, "clause": "even" if l >= n - m else "odd"},
            passed=factored.ok,
            detail=factored.detail,
        )
    return report


@dataclass(frozen=True)
class Factorization:
    """D(sigma; m, n, l) = divisor * quotient, with the checks the quotient passed or failed."""

    divisor: MPoly
    quotient: MPoly
    ok: bool
    detail: str = ""


def even_factorization(m: int, n: int, l: int) -> Factorization:
    """Divide D by the vanishing factors and check the quotient is even in sigma."""
    if not 0 <= m <= n or not n - m <= l <= m + n:
        msg = f"need 0 <= m <= n and n-m <= l <= m+n, got m={m}, n={n}, l={l}"
        raise DomainError(msg)
    divisor = RING.one
    for i in range(l + 1, n + 1):
        divisor *= i * i - SIGMA**2
    quotient, remainder = poly_divide(big_d(m, n, l), divisor)
    if remainder:
        return Factorization(divisor, quotient, ok=False, detail=f"remainder {format_poly(remainder)}")
    even = quotient == poly_substitute(quotient, {SIGMA: -SIGMA})
    return Factorization(divisor, quotient, ok=even, detail="" if even else "quotient is not even")


def odd_factorization(m: int, n: int, l: int) -> Factorization:
    """For l < n-m, divide D by prod_{i=l+1}^{m} (i^2 - sigma^2) prod_{i=max(l,m)+1}^{n} (i - sigma).

    The quotient R must satisfy R(i) prod_j (j - i) = prod_j (j + i) R(-i) over the linear factors j,
    for i = 0..min(m, l).
    """
    if not 0 <= m <= n or not 0 <= l < n - m:
        msg = f"need 0 <= m <= n and 0 <= l < n-m, got m={m}, n={n}, l={l}"
        raise DomainError(msg)
    linear = range(max(l, m) + 1, n + 1)
    divisor = math.prod((i * i - SIGMA**2 for i in range(l + 1, m + 1)), start=RING.one)
    divisor *= math.prod((i - SIGMA for i in linear), start=RING.one)
    quotient, remainder = poly_divide(big_d(m, n, l), divisor)
    if remainder:
        return Factorization(divisor, quotient, ok=False, detail=f"remainder {format_poly(remainder)}")
    unbalanced = [
        i
        for i in range(min(m, l) + 1)
        if _at(quotient, i) * math.prod(j - i for j in linear)
        != math.prod(j + i for j in linear) * _at(quotient, -i)
    ]
    detail = f"ratio condition fails at sigma={unbalanced}" if unbalanced else ""
    return Factorization(divisor, quotient, ok=not unbalanced, detail=detail)


def factorization(m: int, n: int, l: int) -> Factorization:
    """The even form when n-m <= l, the odd form when l < n-m."""
    return even_factorization(m, n, l) if l >= n - m else odd_factorization(m, n, l)


def _rationals(values: Sequence[int | str | Fraction]) -> list[Rational]:
    return [Rational(str(v)) for v in values]


def rank_certificate(xs: Sequence[int | str | Fraction], ys: Sequence[int | str | Fraction], d: int) -> bool:
    """Rank of [1, x, ..., x^(d-1)] rows over xs and [0, y, 0, y^3, ...] rows over ys is at least d - 1."""
    if len(xs) + len(ys) != d:
        msg = f"need |xs| + |ys| = d, got {len(xs)} + {len(ys)} != {d}"
        raise DomainError(msg)
    nodes, odd_nodes = _rationals(xs), _rationals(ys)
    for name, values in (("xs", nodes), ("ys", odd_nodes)):
        if len(set(values)) != len(values) or any(v <= 0 for v in values):
            msg = f"{name} must be distinct positive rationals"
            raise DomainError(msg)
    rows = [[x**c for c in range(d)] for x in nodes]
    rows += [[y**c if c % 2 else 0 for c in range(d)] for y in odd_nodes]
    rank = Matrix(rows).rank()
    logger.debug("rank certificate: d=%s, rank=%s", d, rank)
    return rank >= d - 1
