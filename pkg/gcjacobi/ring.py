"""Exact rationals, sparse polynomials over QQ and truncated power series in z."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from gcjacobi.errors import DomainError, SeriesError

logger = logging.getLogger(__name__)

# Canonical variable order. "m" is the second formal parameter (mu) of the Jacobi identity check
# and is not part of the text grammar.
VARIABLE_NAMES = ("d", "x", "y", "l", "s", "a", "b", "z", "m")
RING, D, X, Y, LAM, SIGMA, ALPHA, BETA, Z, MU = ring(",".join(VARIABLE_NAMES), QQ)

MPoly = PolyElement
Rat = QQ.dtype
Scalar = int | Fraction | str | PolyElement

INDEX = {name: i for i, name in enumerate(VARIABLE_NAMES)}


def rat(value: int | Fraction | str) -> Rat:
    """Convert an integer, a Fraction or a "p/q" string to an exact rational."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(value)


def as_poly(value: Scalar) -> MPoly:
    """Lift a scalar into the global polynomial ring; polynomials pass through."""
    if isinstance(value, PolyElement):
        return value
    return RING.ground_new(rat(value))


def poly_substitute(p: MPoly, bindings: Mapping[MPoly, Scalar]) -> MPoly:
    """Replace each bound generator by its image, all at once."""
    if not bindings or not p:
        return p
    return p.compose([(var, as_poly(image)) for var, image in bindings.items()])


def binom_poly(top: MPoly, k: int) -> MPoly:
    """Return top*(top-1)*...*(top-k+1)/k!."""
    if k < 0:
        msg = f"binomial order must be non-negative, got {k}"
        raise DomainError(msg)
    result = RING.one
    for i in range(k):
        result *= top - i
    return result * QQ(1, math.factorial(k))


def rising(top: MPoly, k: int) -> MPoly:
    """Pochhammer symbol (top)_k."""
    result = RING.one
    for i in range(k):
        result *= top + i
    return result


def poly_divide(p: MPoly, divisor: MPoly) -> tuple[MPoly, MPoly]:
    """Divide p by divisor; returns (quotient, remainder)."""
    if not divisor:
        msg = "division by the zero polynomial"
        raise DomainError(msg)
    return p.div(divisor)


def split_by(p: MPoly, var: MPoly) -> dict[int, MPoly]:
    """Group p by powers of var; the keys are exponents, values are free of var."""
    idx = RING.index(var)
    parts: dict[int, dict[tuple[int, ...], Rat]] = {}
    for monom, coeff in p.items():
        rest = (*monom[:idx], 0, *monom[idx + 1 :])
        parts.setdefault(monom[idx], {})[rest] = coeff
    return {k: RING.from_dict(terms) for k, terms in sorted(parts.items())}


def degree_in(p: MPoly, variables: Iterable[MPoly]) -> int:
    """Total degree of p in the given generators; -1 for the zero polynomial."""
    idx = [RING.index(v) for v in variables]
    return max((sum(monom[i] for i in idx) for monom in p), default=-1)


def mentions(p: MPoly, var: MPoly) -> bool:
    """Whether var occurs in some term of p."""
    idx = RING.index(var)
    return any(monom[idx] for monom in p)


def min_exponent(p: MPoly, var: MPoly) -> int | None:
    """Smallest exponent of var over the terms of p, None for zero."""
    idx = RING.index(var)
    return min((monom[idx] for monom in p), default=None)


def ground_value(p: MPoly) -> Rat:
    """Return the rational value of a constant polynomial."""
    if not p.is_ground:
        msg = f"expected a constant, got {format_poly(p)}"
        raise DomainError(msg)
    return p.get(RING.zero_monom, QQ.zero)


def _format_rat(value: Rat) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_poly(p: MPoly) -> str:
    """Print p in the text grammar, graded-lex descending on the canonical order."""
    if not p:
        return "0"
    pieces: list[str] = []
    for monom, coeff in p.terms(order=grlex):
        factors = [
            name if e == 1 else f"{name}^{e}" for name, e in zip(VARIABLE_NAMES, monom, strict=True) if e
        ]
        magnitude = abs(coeff)
        if not factors:
            body = _format_rat(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = _format_rat(magnitude) + "*" + "*".join(factors)
        negative = coeff < 0
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"{'-' if negative else '+'} {body}")
    return " ".join(pieces)


@dataclass(frozen=True)
class Series:
    """Power series in z truncated after z^order; coefficients never mention z."""

    order: int
    coefficients: tuple[MPoly, ...]
    variable: str = "z"

    def __post_init__(self) -> None:
        """Validate the truncation bookkeeping."""
        if self.order < 0 or len(self.coefficients) != self.order + 1:
            msg = f"series of order {self.order} needs {self.order + 1} coefficients, got {len(self.coefficients)}"
            raise SeriesError(msg)

    @classmethod
    def from_poly(cls, p: MPoly, order: int) -> Series:
        """Truncate a polynomial in z."""
        parts = split_by(p, Z)
        return cls(order, tuple(parts.get(k, RING.zero) for k in range(order + 1)))

    @classmethod
    def constant(cls, value: Scalar, order: int) -> Series:
        """The series with a single constant term."""
        return cls(order, (as_poly(value),) + (RING.zero,) * order)

    def coefficient(self, k: int) -> MPoly:
        """Coefficient of z^k; asking beyond the order is an error."""
        if not 0 <= k <= self.order:
            msg = f"coefficient z^{k} is outside order {self.order}"
            raise SeriesError(msg)
        return self.coefficients[k]

    def truncate(self, order: int) -> Series:
        """Drop every term above z^order."""
        if order > self.order:
            msg = f"cannot extend a series of order {self.order} to {order}"
            raise SeriesError(msg)
        return Series(order, self.coefficients[: order + 1])

    def to_poly(self) -> MPoly:
        """Sum of the stored terms as a polynomial in z."""
        return sum((c * Z**k for k, c in enumerate(self.coefficients)), RING.zero)

    def __add__(self, other: Series) -> Series:
        """Termwise sum at the smaller order."""
        order = min(self.order, other.order)
        return Series(order, tuple(self.coefficients[k] + other.coefficients[k] for k in range(order + 1)))

    def __neg__(self) -> Series:
        """Negate every coefficient."""
        return Series(self.order, tuple(-c for c in self.coefficients))

    def __sub__(self, other: Series) -> Series:
        """Termwise difference at the smaller order."""
        return self + (-other)

    def __mul__(self, other: Series | Scalar) -> Series:
        """Cauchy product, or scaling by a coefficient-ring element."""
        if not isinstance(other, Series):
            factor = as_poly(other)
            return Series(self.order, tuple(c * factor for c in self.coefficients))
        order = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return Series(order, tuple(sum((a[i] * b[k - i] for i in range(k + 1)), RING.zero) for k in range(order + 1)))

    __rmul__ = __mul__


def _require_unit_constant(s: Series, operation: str) -> None:
    if s.coefficients[0] != RING.one:
        msg = f"{operation} needs constant term 1, got {format_poly(s.coefficients[0])}"
        raise SeriesError(msg)


def series_inverse(s: Series) -> Series:
    """Multiplicative inverse of a series whose constant term is a nonzero rational."""
    c0 = s.coefficients[0]
    if not c0 or not c0.is_ground:
        msg = f"series inverse needs a nonzero rational constant term, got {format_poly(c0)}"
        raise SeriesError(msg)
    scale = QQ.one / ground_value(c0)
    inv = [as_poly(scale)]
    for n in range(1, s.order + 1):
        acc = sum((s.coefficients[i] * inv[n - i] for i in range(1, n + 1)), RING.zero)
        inv.append(-acc * scale)
    return Series(s.order, tuple(inv))


def series_sqrt(s: Series) -> Series:
    """Square root with constant term 1, by the coefficient recursion."""
    _require_unit_constant(s, "series_sqrt")
    half = QQ(1, 2)
    t = [RING.one]
    for n in range(1, s.order + 1):
        cross = sum((t[i] * t[n - i] for i in range(1, n)), RING.zero)
        t.append((s.coefficients[n] - cross) * half)
    return Series(s.order, tuple(t))


def series_log(s: Series) -> Series:
    """Logarithm of a series with constant term 1, integrating s'/s termwise."""
    _require_unit_constant(s, "series_log")
    if s.order == 0:
        return Series.constant(0, 0)
    derivative = Series(s.order - 1, tuple((k + 1) * s.coefficients[k + 1] for k in range(s.order)))
    quotient = derivative * series_inverse(s.truncate(s.order - 1))
    return Series(s.order, (RING.zero, *(quotient.coefficients[n - 1] * QQ(1, n) for n in range(1, s.order + 1))))


def series_exp(f: Series) -> Series:
    """Exponential of a series without constant term, from E' = f'E."""
    if f.coefficients[0]:
        msg = f"series_exp needs constant term 0, got {format_poly(f.coefficients[0])}"
        raise SeriesError(msg)
    e = [RING.one]
    for n in range(1, f.order + 1):
        acc = sum((k * f.coefficients[k] * e[n - k] for k in range(1, n + 1)), RING.zero)
        e.append(acc * QQ(1, n))
    return Series(f.order, tuple(e))


def series_log_exp_pow(s: Series, exponent: Scalar) -> Series:
    """Raise a series with constant term 1 to a polynomial power."""
    _require_unit_constant(s, "series_log_exp_pow")
    return series_exp(series_log(s) * as_poly(exponent))
