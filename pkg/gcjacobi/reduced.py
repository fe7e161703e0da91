"""Products of the reduced space: the coefficients d_{m,n,k}, the k-th products and their gc_N oracle."""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass

from gcjacobi.errors import DomainError, SizeMismatchError
from gcjacobi.gc import GcElem, LambdaPoly, lambda_bracket
from gcjacobi.models import Report
from gcjacobi.ring import (
    QQ,
    RING,
    SIGMA,
    MPoly,
    Scalar,
    as_poly,
    binom_poly,
    format_poly,
    ground_value,
    poly_substitute,
)
from gcjacobi.virasoro import ReducedElem, VirasoroElem, project, q_basis

logger = logging.getLogger(__name__)

Part = tuple[int, GcElem]


@dataclass(frozen=True)
class DCoeff:
    """One structure constant d_{m,n,k} as a polynomial in sigma."""

    m: int
    n: int
    k: int
    value: MPoly


def _check_indices(m: int, n: int, k: int) -> None:
    if m < 0 or n < 0 or not 0 <= k <= m + n:
        msg = f"need m, n >= 0 and 0 <= k <= m + n, got m={m}, n={n}, k={k}"
        raise DomainError(msg)


def d_coeff(m: int, n: int, k: int, sigma: Scalar = SIGMA) -> MPoly:
    """Double-binomial sum defining d_{m,n,k}."""
    _check_indices(m, n, k)
    sigma = as_poly(sigma)
    total = RING.zero
    for i in range(max(0, k - n), min(m, k) + 1):
        j = k - i
        total += (
            math.comb(2 * m - i, m) * binom_poly(m + sigma, i) * math.comb(2 * n - j, n) * binom_poly(n - sigma, j)
        )
    return total * QQ(math.factorial(k), math.comb(2 * m, m) * math.comb(2 * n, n))


def d_table(m_max: int, n_max: int, sigma: Scalar = SIGMA) -> list[DCoeff]:
    """All d_{m,n,k} for m <= m_max, n <= n_max, in (m, n, k) order."""
    return [
        DCoeff(m, n, k, d_coeff(m, n, k, sigma))
        for m in range(m_max + 1)
        for n in range(n_max + 1)
        for k in range(m + n + 1)
    ]


def _product_coefficient(m: int, n: int, k: int, sigma: MPoly) -> tuple[MPoly, MPoly]:
    sign = 1 if k % 2 else -1
    return d_coeff(m, n, k, sigma), sign * d_coeff(m, n, k, -sigma)


def reduced_product(a: Part, b: Part, k: int, sigma: Scalar = SIGMA) -> ReducedElem:
    """X^m A <k> X^n B = [d^(sigma) AB + (-1)^(k+1) d^(-sigma) BA] X^(m+n-k)."""
    (m, left), (n, right) = a, b
    if left.n != right.n:
        msg = f"size mismatch: {left.n} vs {right.n}"
        raise SizeMismatchError(msg)
    _check_indices(m, n, k)
    direct, swapped = _product_coefficient(m, n, k, as_poly(sigma))
    return ReducedElem.single(m + n - k, (left @ right).scale(direct) + (right @ left).scale(swapped))


@functools.lru_cache(maxsize=256)
def _lifted_bracket(a: Part, b: Part, sigma: MPoly) -> LambdaPoly:
    (m, left), (n, right) = a, b
    return lambda_bracket(left.scale(q_basis(sigma, m)), right.scale(q_basis(sigma, n)))


def reduced_bracket_oracle(a: Part, b: Part, k: int, sigma: Scalar = SIGMA) -> ReducedElem:
    """Lift to gc_N, take the k-th product there and project back."""
    (m, left), (n, right) = a, b
    if left.n != right.n:
        msg = f"size mismatch: {left.n} vs {right.n}"
        raise SizeMismatchError(msg)
    _check_indices(m, n, k)
    sigma = as_poly(sigma)
    product = _lifted_bracket(a, b, sigma).product(k)
    return project(product, VirasoroElem.from_sigma(sigma, left.n))


def _sigma_product(lower: int, upper: int, sigma: MPoly) -> MPoly:
    result = RING.one
    for i in range(lower, upper + 1):
        result *= i * i - sigma**2
    return result


def top_product(m: int, n: int, sigma: Scalar = SIGMA) -> MPoly:
    """Scalar coefficient of X^m <m+n> X^n."""
    sigma = as_poly(sigma)
    sign = -1 if (m + n) % 2 else 1
    bracket = binom_poly(m + sigma, m) * binom_poly(n - sigma, n) - sign * binom_poly(
        m - sigma, m
    ) * binom_poly(n + sigma, n)
    return bracket * QQ(math.factorial(m + n), math.comb(2 * m, m) * math.comb(2 * n, n))


def d_diagonal_odd(n: int, sigma: Scalar = SIGMA) -> MPoly:
    """d_{n,n,2n-1} = (n+1)/C(2n,n) prod_{i=2}^n (i^2 - sigma^2), n >= 1."""
    return _sigma_product(2, n, as_poly(sigma)) * QQ(n + 1, math.comb(2 * n, n))


def d_next_top(n: int, sigma: Scalar = SIGMA) -> MPoly:
    """d_{n,n+1,2n+1} = (n+1-sigma)/(2 C(2n,n)) prod_{k=1}^n (k^2 - sigma^2)."""
    sigma = as_poly(sigma)
    return (n + 1 - sigma) * _sigma_product(1, n, sigma) * QQ(1, 2 * math.comb(2 * n, n))


def special_products(m: int, n: int, sigma: Scalar = SIGMA) -> list[tuple[str, int, MPoly]]:
    """Closed forms for the scalar coefficient of X^m <k> X^n as (table, k, value) rows."""
    sigma = as_poly(sigma)
    s2 = sigma**2
    rows: list[tuple[str, int, MPoly]] = [("k=0", 0, RING.zero)]
    if m + n >= 1:
        rows.append(("k=1", 1, as_poly(m + n)))
    if m >= 1 and n >= 1 and m + n >= 2:
        rows.append(("k=2", 2, RING.zero))
    elif m == 0 and n >= 2:
        rows.append(("k=2", 2, -sigma * (n - 1)))
    elif n == 0 and m >= 2:
        rows.append(("k=2", 2, sigma * (m - 1)))
    if m + n >= 3:
        poly = 2 * m * m * n + 2 * n * n * m - m * m - n * n - 5 * m * n + 2 * m + 2 * n - 3 * s2
        rows.append(("k=3", 3, poly * QQ((m + n - 1) * (m + n - 2), 2 * (2 * m - 1) * (2 * n - 1))))
    if m + n >= 4:
        if m >= 2 and n >= 2:
            value = RING.zero
        elif m == 1:
            value = -sigma * (1 - s2) * (n - 2)
        elif n == 1:
            value = sigma * (1 - s2) * (m - 2)
        elif m == 0:
            value = -sigma * (n * n - 3 * n + s2 + 1) * QQ((n - 2) * (n - 3), 2 * n - 1)
        else:
            value = sigma * (m * m - 3 * m + s2 + 1) * QQ((m - 2) * (m - 3), 2 * m - 1)
        rows.append(("k=4", 4, value))
    if m == n:
        rows.append(("n=m even", 2 * m, RING.zero))
        if m >= 1:
            rows.append(("n=m odd", 2 * m - 1, 2 * d_diagonal_odd(m, sigma)))
    if n == m + 1:
        rows.append(("n=m+1", 2 * m + 1, _sigma_product(1, m, sigma) * QQ(m + 1, math.comb(2 * m, m))))
    if n == m + 2:
        rows.append(("n=m+2", 2 * m + 2, -sigma * _sigma_product(1, m, sigma) * QQ(m + 1, math.comb(2 * m, m))))
    if m + n >= 1:
        rows.append(("top", m + n, top_product(m, n, sigma)))
    return rows


def _scalar(element: ReducedElem, degree: int) -> MPoly:
    return element.component(degree).entries[0][0]


def products_suite(m_max: int = 8, sigma: Scalar = SIGMA) -> Report:
    """Compare every closed form with reduced_product for N = 1."""
    sigma = as_poly(sigma)
    report = Report(suite="products")
    one = GcElem.identity(1)
    for m in range(m_max + 1):
        for n in range(m_max + 1):
            for table, k, expected in special_products(m, n, sigma):
                got = _scalar(reduced_product((m, one), (n, one), k, sigma), m + n - k)
                report.add(
                    {"table": table, "m": m, "n": n, "k": k},
                    passed=got == expected,
                    detail=f"{format_poly(got)} vs {format_poly(expected)}",
                )
    logger.info("products: %s cases, %s failed", len(report.cases), len(report.failures))
    return report


def skew_symmetry_holds(a: Part, b: Part, k: int, sigma: Scalar = SIGMA) -> bool:
    """X^m A <k> X^n B = (-1)^(k+1) X^n B <k> X^m A."""
    sign = 1 if k % 2 else -1
    return reduced_product(a, b, k, sigma) == reduced_product(b, a, k, sigma).scale(sign)


def d_symmetry_holds(m: int, n: int, k: int) -> bool:
    """d^(sigma)_{m,n,k} = d^(-sigma)_{n,m,k}."""
    return d_coeff(m, n, k) == poly_substitute(d_coeff(n, m, k), {SIGMA: -SIGMA})


def d_sign_holds(m: int, n: int, k: int, sigma: int) -> bool:
    """For sigma = +-S and m, n >= S, d_{m,n,k} is positive if m+n-k >= S and zero otherwise."""
    s = abs(sigma)
    if min(m, n) < s:
        msg = f"need m, n >= S, got m={m}, n={n}, S={s}"
        raise DomainError(msg)
    value = ground_value(d_coeff(m, n, k, sigma))
    return value > 0 if m + n - k >= s else value == 0
