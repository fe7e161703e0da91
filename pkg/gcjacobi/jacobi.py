"""Jacobi polynomials with symbolic parameters and their bridge to the quasi-primary bases."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from gcjacobi.errors import DomainError
from gcjacobi.ring import (
    ALPHA,
    BETA,
    QQ,
    RING,
    SIGMA,
    D,
    MPoly,
    Scalar,
    Series,
    X,
    Y,
    Z,
    as_poly,
    binom_poly,
    format_poly,
    poly_divide,
    poly_substitute,
    rising,
    series_inverse,
    series_log_exp_pow,
    series_sqrt,
    split_by,
)
from gcjacobi.virasoro import q_basis, r_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JacobiParams:
    """The pair (alpha, beta) of P_n^(alpha, beta)."""

    alpha: MPoly
    beta: MPoly

    @classmethod
    def of(cls, alpha: Scalar, beta: Scalar) -> JacobiParams:
        """Coerce both parameters to polynomials."""
        return cls(as_poly(alpha), as_poly(beta))

    @classmethod
    def symbolic(cls) -> JacobiParams:
        """Both parameters as free variables."""
        return cls(ALPHA, BETA)

    @classmethod
    def sigma_pair(cls, sigma: Scalar = SIGMA) -> JacobiParams:
        """(alpha, beta) = (-sigma, sigma)."""
        sigma = as_poly(sigma)
        return cls(-sigma, sigma)

    def swapped(self) -> JacobiParams:
        """(beta, alpha)."""
        return JacobiParams(self.beta, self.alpha)


def jacobi_poly(params: JacobiParams, n: int) -> MPoly:
    """P_n^(alpha, beta)(y) from the terminating hypergeometric series in (1 - y)/2."""
    if n < 0:
        msg = f"degree must be non-negative, got {n}"
        raise DomainError(msg)
    alpha, beta = params.alpha, params.beta
    u = (1 - Y) * QQ(1, 2)
    total = RING.zero
    for j in range(n + 1):
        coefficient = rising(alpha + j + 1, n - j) * rising(n + alpha + beta + 1, j) * rising(as_poly(-n), j)
        total += coefficient * QQ(1, math.factorial(n) * math.factorial(j)) * u**j
    return total


def legendre(n: int) -> MPoly:
    """P_n^(0,0)."""
    return jacobi_poly(JacobiParams.of(0, 0), n)


def check_ode(params: JacobiParams, n: int) -> bool:
    """(1-y^2)u'' + [beta - alpha - (alpha+beta+2)y]u' + n(n+alpha+beta+1)u = 0."""
    alpha, beta = params.alpha, params.beta
    u = jacobi_poly(params, n)
    du = u.diff(Y)
    residual = (1 - Y**2) * du.diff(Y) + (beta - alpha - (alpha + beta + 2) * Y) * du + n * (n + alpha + beta + 1) * u
    return not residual


def check_symmetry(params: JacobiParams, n: int) -> bool:
    """P_n^(alpha, beta)(y) = (-1)^n P_n^(beta, alpha)(-y)."""
    mirrored = poly_substitute(jacobi_poly(params.swapped(), n), {Y: -Y})
    return jacobi_poly(params, n) == (-1) ** n * mirrored


def leading_coefficient_check(params: JacobiParams, n: int) -> bool:
    """The y^n coefficient is 2^(-n) (n+alpha+beta+1)_n / n!."""
    top = split_by(jacobi_poly(params, n), Y).get(n, RING.zero)
    expected = rising(n + params.alpha + params.beta + 1, n) * QQ(1, 2**n * math.factorial(n))
    return top == expected


def value_at_one_check(params: JacobiParams, n: int) -> bool:
    """P_n(1) = binom(alpha + n, n)."""
    return poly_substitute(jacobi_poly(params, n), {Y: 1}) == binom_poly(params.alpha + n, n)


def homogenize(p: MPoly, n: int) -> MPoly:
    """d^n p(y/d) for p of degree at most n in y."""
    parts = split_by(p, Y)
    if parts and max(parts) > n:
        msg = f"cannot homogenize a degree {max(parts)} polynomial to degree {n}"
        raise DomainError(msg)
    return sum((c * Y**j * D ** (n - j) for j, c in parts.items()), RING.zero)


def generating_function(sigma: Scalar, order: int) -> Series:
    """(1-2yz+d^2z^2)^(-1/2) [(1-dz+R)/(1+dz+R)]^sigma with R the square root, to z^order."""
    if order < 0:
        msg = f"order must be non-negative, got {order}"
        raise DomainError(msg)
    radical = series_sqrt(Series.from_poly(1 - 2 * Y * Z + D**2 * Z**2, order))
    numerator = Series.from_poly(1 - D * Z, order) + radical
    denominator = Series.from_poly(1 + D * Z, order) + radical
    ratio = numerator * series_inverse(denominator)
    return series_inverse(radical) * series_log_exp_pow(ratio, sigma)


def generating_check(sigma: Scalar, order: int) -> bool:
    """The z^n coefficient of the generating function is C(2n,n) R_n for every n <= order."""
    series = generating_function(sigma, order)
    for n in range(order + 1):
        if series.coefficient(n) != math.comb(2 * n, n) * r_basis(sigma, n):
            logger.debug("generating function differs at z^%s", n)
            return False
    return True


def qn_jacobi_relation(sigma: Scalar, n: int) -> bool:
    """C(2n,n) R_n(d, y) = d^n P_n^(-sigma, sigma)(y/d), and the same identity in x via y = 2x + d."""
    scale = math.comb(2 * n, n)
    homogeneous = homogenize(jacobi_poly(JacobiParams.sigma_pair(sigma), n), n)
    in_y = scale * r_basis(sigma, n) == homogeneous
    in_x = scale * q_basis(sigma, n) == poly_substitute(homogeneous, {Y: 2 * X + D})
    return in_y and in_x


@dataclass(frozen=True)
class ParityResult:
    """Outcome of dividing P_n^(-S,S) by (y-1)^S and P_n^(S,-S) by (y+1)^S."""

    quotient: MPoly
    ok: bool
    remainder: MPoly
    detail: str = ""


def _x_quotient(p: MPoly, power: int) -> MPoly | None:
    quotient, remainder = poly_divide(p, X**power)
    return None if remainder else quotient


def parity_factorization(s: int, n: int) -> ParityResult:
    """Check divisibility, coincidence and parity of the reduced Jacobi quotients, and the Q_n factorization."""
    if s < 0 or n < s:
        msg = f"need 0 <= S <= n, got S={s}, n={n}"
        raise DomainError(msg)
    minus, minus_rem = poly_divide(jacobi_poly(JacobiParams.of(-s, s), n), (Y - 1) ** s)
    plus, plus_rem = poly_divide(jacobi_poly(JacobiParams.of(s, -s), n), (Y + 1) ** s)
    if minus_rem or plus_rem:
        remainder = minus_rem or plus_rem
        return ParityResult(minus, ok=False, remainder=remainder, detail=f"remainder {format_poly(remainder)}")
    problems = []
    if minus != plus:
        problems.append("quotients differ")
    if poly_substitute(minus, {Y: -Y}) != (-1) ** (n - s) * minus:
        problems.append(f"quotient is not of parity (-1)^{n - s}")
    reduced = _x_quotient(q_basis(s, n), s)
    if reduced is None:
        problems.append(f"Q_n^({s}) is not divisible by x^{s}")
    else:
        if reduced != poly_substitute(reduced, {D: -D, X: D + X}):
            problems.append("Q_n quotient is not invariant under (d, x) -> (-d, d + x)")
        if q_basis(-s, n) != (X + D) ** s * reduced:
            problems.append(f"Q_n^({-s}) differs from (x+d)^{s} times the quotient")
    return ParityResult(minus, ok=not problems, remainder=RING.zero, detail="; ".join(problems))
