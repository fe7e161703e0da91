"""Elements of gc_N as matrices of symbols A(d, x), with the lambda-bracket and the lambda-action."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from gcjacobi.errors import DomainError, SizeMismatchError
from gcjacobi.ring import (
    LAM,
    MU,
    QQ,
    RING,
    SIGMA,
    VARIABLE_NAMES,
    D,
    MPoly,
    Scalar,
    X,
    Y,
    as_poly,
    degree_in,
    format_poly,
    poly_substitute,
    split_by,
)

logger = logging.getLogger(__name__)

Matrix = tuple[tuple[MPoly, ...], ...]

_GC_VARIABLES = frozenset(RING.index(v) for v in (D, X, SIGMA))
_VECTOR_VARIABLES = frozenset(RING.index(v) for v in (D, LAM, MU, SIGMA))


def _check_variables(p: MPoly, allowed: frozenset[int], what: str) -> None:
    for monom in p:
        for i, e in enumerate(monom):
            if e and i not in allowed:
                msg = f"{what} may not mention {VARIABLE_NAMES[i]}: {format_poly(p)}"
                raise DomainError(msg)


def _require_same_size(n: int, m: int) -> None:
    if n != m:
        msg = f"size mismatch: {n} vs {m}"
        raise SizeMismatchError(msg)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Product of square polynomial matrices, order preserved."""
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), RING.zero) for j in range(n)) for i in range(n))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    """Entrywise sum."""
    return tuple(tuple(p + q for p, q in zip(ra, rb, strict=True)) for ra, rb in zip(a, b, strict=True))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    """Entrywise difference."""
    return tuple(tuple(p - q for p, q in zip(ra, rb, strict=True)) for ra, rb in zip(a, b, strict=True))


def mat_scale(a: Matrix, factor: Scalar) -> Matrix:
    """Multiply every entry by a polynomial."""
    factor = as_poly(factor)
    return tuple(tuple(p * factor for p in row) for row in a)


def mat_substitute(a: Matrix, bindings: Mapping[MPoly, Scalar]) -> Matrix:
    """Simultaneous substitution in every entry."""
    return tuple(tuple(poly_substitute(p, bindings) for p in row) for row in a)


def mat_is_zero(a: Matrix) -> bool:
    """Whether every entry vanishes."""
    return not any(p for row in a for p in row)


@dataclass(frozen=True)
class GcElem:
    """An N x N matrix of polynomials in d, x (and sigma)."""

    n: int
    entries: Matrix

    def __post_init__(self) -> None:
        """Check the shape and that only d, x and sigma occur."""
        if self.n < 1 or len(self.entries) != self.n or any(len(row) != self.n for row in self.entries):
            msg = f"expected a {self.n}x{self.n} matrix"
            raise DomainError(msg)
        for row in self.entries:
            for p in row:
                _check_variables(p, _GC_VARIABLES, "gc_N entries")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]]) -> GcElem:
        """Build from nested rows of polynomials or scalars."""
        entries = tuple(tuple(as_poly(p) for p in row) for row in rows)
        return cls(len(entries), entries)

    @classmethod
    def zero(cls, n: int) -> GcElem:
        """The zero matrix."""
        return cls(n, ((RING.zero,) * n,) * n)

    @classmethod
    def scalar(cls, p: Scalar, n: int) -> GcElem:
        """p times the identity."""
        p = as_poly(p)
        return cls(n, tuple(tuple(p if i == j else RING.zero for j in range(n)) for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> GcElem:
        """The identity matrix Id."""
        return cls.scalar(1, n)

    @classmethod
    def unit(cls, i: int, j: int, n: int, p: Scalar = 1) -> GcElem:
        """p times the matrix unit e_ij (0-based)."""
        p = as_poly(p)
        return cls(n, tuple(tuple(p if (r, c) == (i, j) else RING.zero for c in range(n)) for r in range(n)))

    @property
    def is_zero(self) -> bool:
        """Whether every entry vanishes."""
        return mat_is_zero(self.entries)

    def __add__(self, other: GcElem) -> GcElem:
        """Entrywise sum."""
        _require_same_size(self.n, other.n)
        return GcElem(self.n, mat_add(self.entries, other.entries))

    def __sub__(self, other: GcElem) -> GcElem:
        """Entrywise difference."""
        _require_same_size(self.n, other.n)
        return GcElem(self.n, mat_sub(self.entries, other.entries))

    def __neg__(self) -> GcElem:
        """Negation."""
        return self.scale(-1)

    def __matmul__(self, other: GcElem) -> GcElem:
        """Matrix product."""
        _require_same_size(self.n, other.n)
        return GcElem(self.n, mat_mul(self.entries, other.entries))

    def scale(self, factor: Scalar) -> GcElem:
        """Multiply by a polynomial in d, x, sigma."""
        return GcElem(self.n, mat_scale(self.entries, factor))

    def derivative(self) -> GcElem:
        """The element d*A, i.e. the image under the translation operator."""
        return self.scale(D)

    def transpose(self) -> GcElem:
        """Matrix transpose, symbols untouched."""
        return GcElem(self.n, tuple(zip(*self.entries, strict=True)))

    def substitute(self, bindings: Mapping[MPoly, Scalar]) -> GcElem:
        """Simultaneous substitution in every entry."""
        return GcElem(self.n, mat_substitute(self.entries, bindings))

    def degree(self) -> int:
        """Total degree in (d, x); -1 for zero."""
        return max((degree_in(p, (D, X)) for row in self.entries for p in row), default=-1)

    def homogeneous_parts(self) -> dict[int, GcElem]:
        """Split into parts homogeneous in (d, x)."""
        parts: dict[int, list[list[MPoly]]] = {}
        d_idx, x_idx = RING.index(D), RING.index(X)
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                for monom, coeff in p.items():
                    block = parts.setdefault(monom[d_idx] + monom[x_idx], [[RING.zero] * self.n for _ in range(self.n)])
                    block[i][j] += RING({monom: coeff})
        return {deg: GcElem.from_rows(block) for deg, block in sorted(parts.items())}

    def to_strings(self) -> list[list[str]]:
        """Entries rendered in the text grammar."""
        return [[format_poly(p) for p in row] for row in self.entries]

    def __str__(self) -> str:
        """Nested-list rendering."""
        return "[" + ", ".join("[" + ", ".join(row) + "]" for row in self.to_strings()) + "]"


@dataclass(frozen=True)
class LambdaPoly:
    """A polynomial in lambda with gc_N coefficients; zero coefficients are not stored."""

    n: int
    coefficients: dict[int, GcElem] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Reject zero or mis-sized coefficients."""
        for k, c in self.coefficients.items():
            _require_same_size(self.n, c.n)
            if c.is_zero or k < 0:
                msg = f"LambdaPoly may not store a zero or negative-degree coefficient (degree {k})"
                raise DomainError(msg)

    @classmethod
    def from_matrix(cls, n: int, entries: Matrix, var: MPoly = LAM) -> LambdaPoly:
        """Split a matrix with entries in var into coefficients."""
        blocks: dict[int, list[list[MPoly]]] = {}
        for i, row in enumerate(entries):
            for j, p in enumerate(row):
                for k, part in split_by(p, var).items():
                    blocks.setdefault(k, [[RING.zero] * n for _ in range(n)])[i][j] = part
        coefficients = {k: GcElem.from_rows(rows) for k, rows in sorted(blocks.items())}
        return cls(n, {k: c for k, c in coefficients.items() if not c.is_zero})

    @property
    def is_zero(self) -> bool:
        """No stored coefficient."""
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree in lambda, -1 for zero."""
        return max(self.coefficients, default=-1)

    def coefficient(self, k: int) -> GcElem:
        """The lambda^k coefficient (possibly zero)."""
        return self.coefficients.get(k, GcElem.zero(self.n))

    def product(self, k: int) -> GcElem:
        """The k-th product a_(k)b = k! times the lambda^k coefficient."""
        return self.coefficient(k).scale(math.factorial(k))

    def to_matrix(self, var: MPoly = LAM) -> Matrix:
        """Reassemble the matrix sum of var^k * coefficient_k."""
        total = GcElem.zero(self.n).entries
        for k, c in self.coefficients.items():
            total = mat_add(total, mat_scale(c.entries, var**k))
        return total

    def __str__(self) -> str:
        """Readable form listing the lambda^k coefficients."""
        if not self.coefficients:
            return "0"
        return " + ".join(f"l^{k}*{c}" for k, c in self.coefficients.items())


@dataclass(frozen=True)
class ModVec:
    """A vector of C[d]^N, possibly carrying lambda or mu after an action."""

    n: int
    entries: tuple[MPoly, ...]

    def __post_init__(self) -> None:
        """Check length and variables."""
        if len(self.entries) != self.n:
            msg = f"expected {self.n} components, got {len(self.entries)}"
            raise DomainError(msg)
        for p in self.entries:
            _check_variables(p, _VECTOR_VARIABLES, "C[d]^N vectors")

    @classmethod
    def from_entries(cls, entries: Iterable[Scalar]) -> ModVec:
        """Build from polynomials or scalars."""
        polys = tuple(as_poly(p) for p in entries)
        return cls(len(polys), polys)

    @classmethod
    def unit(cls, i: int, n: int, p: Scalar = 1) -> ModVec:
        """p times the i-th standard basis vector (0-based)."""
        return cls(n, tuple(as_poly(p) if r == i else RING.zero for r in range(n)))

    def coefficients(self, var: MPoly = LAM) -> dict[int, ModVec]:
        """Split by powers of var."""
        blocks: dict[int, list[MPoly]] = {}
        for i, p in enumerate(self.entries):
            for k, part in split_by(p, var).items():
                blocks.setdefault(k, [RING.zero] * self.n)[i] = part
        return {k: ModVec(self.n, tuple(v)) for k, v in sorted(blocks.items())}

    def substitute(self, bindings: Mapping[MPoly, Scalar]) -> ModVec:
        """Simultaneous substitution in every component."""
        return ModVec(self.n, tuple(poly_substitute(p, bindings) for p in self.entries))

    def __sub__(self, other: ModVec) -> ModVec:
        """Componentwise difference."""
        _require_same_size(self.n, other.n)
        return ModVec(self.n, tuple(p - q for p, q in zip(self.entries, other.entries, strict=True)))


def bracket_matrix(a: Matrix, b: Matrix, var: MPoly = LAM) -> Matrix:
    """A(-l, l+d+x) B(l+d, x) - B(l+d, x-l) A(-l, x) with l = var; other variables are inert parameters."""
    a_left = mat_substitute(a, {D: -var, X: var + D + X})
    b_right = mat_substitute(b, {D: var + D})
    b_left = mat_substitute(b, {D: var + D, X: X - var})
    a_right = mat_substitute(a, {D: -var})
    return mat_sub(mat_mul(a_left, b_right), mat_mul(b_left, a_right))


def action_vector(a: Matrix, v: tuple[MPoly, ...], var: MPoly = LAM) -> tuple[MPoly, ...]:
    """A(-l, l+d) v(l+d) with l = var."""
    shifted = mat_substitute(a, {D: -var, X: var + D})
    w = tuple(poly_substitute(p, {D: var + D}) for p in v)
    return tuple(sum((shifted[i][k] * w[k] for k in range(len(w))), RING.zero) for i in range(len(w)))


def lambda_bracket(a: GcElem, b: GcElem) -> LambdaPoly:
    """The lambda-bracket of two elements of gc_N."""
    _require_same_size(a.n, b.n)
    return LambdaPoly.from_matrix(a.n, bracket_matrix(a.entries, b.entries))


def lambda_action(a: GcElem, v: ModVec) -> ModVec:
    """The lambda-action of gc_N on C[d]^N; the result carries lambda."""
    _require_same_size(a.n, v.n)
    return ModVec(v.n, action_vector(a.entries, v.entries))


def nth_product(a: GcElem, b: GcElem, k: int) -> GcElem:
    """a_(k) b."""
    if k < 0:
        msg = f"product index must be non-negative, got {k}"
        raise DomainError(msg)
    return lambda_bracket(a, b).product(k)


_HALF = QQ(1, 2)


def to_y(a: GcElem) -> Matrix:
    """Rewrite the symbols in y = 2x + d."""
    return mat_substitute(a.entries, {X: (Y - D) * _HALF})


def from_y(entries: Matrix) -> GcElem:
    """Inverse of to_y."""
    return GcElem(len(entries), mat_substitute(entries, {Y: 2 * X + D}))


def check_sesquilinearity(a: GcElem, b: GcElem) -> bool:
    """[da l b] = -l[a l b] and [a l db] = (l+d)[a l b]."""
    base = bracket_matrix(a.entries, b.entries)
    left = bracket_matrix(a.derivative().entries, b.entries)
    right = bracket_matrix(a.entries, b.derivative().entries)
    return left == mat_scale(base, -LAM) and right == mat_scale(base, LAM + D)


def check_skewsymmetry(a: GcElem, b: GcElem) -> bool:
    """[b l a] = -[a (-l-d) b]."""
    forward = bracket_matrix(a.entries, b.entries)
    backward = bracket_matrix(b.entries, a.entries)
    return backward == mat_scale(mat_substitute(forward, {LAM: -LAM - D}), -1)


def check_jacobi_identity(a: GcElem, b: GcElem, c: GcElem) -> bool:
    """[a l [b m c]] - [b m [a l c]] = [[a l b] (l+m) c]."""
    inner_bc = bracket_matrix(b.entries, c.entries, MU)
    inner_ac = bracket_matrix(a.entries, c.entries, LAM)
    lhs = mat_sub(bracket_matrix(a.entries, inner_bc, LAM), bracket_matrix(b.entries, inner_ac, MU))
    outer = bracket_matrix(bracket_matrix(a.entries, b.entries, LAM), c.entries, MU)
    return lhs == mat_substitute(outer, {MU: LAM + MU})


def check_module_axiom(a: GcElem, b: GcElem, v: ModVec) -> bool:
    """a_l(b_m v) - b_m(a_l v) = [a l b]_(l+m) v."""
    lhs_first = action_vector(a.entries, action_vector(b.entries, v.entries, MU), LAM)
    lhs_second = action_vector(b.entries, action_vector(a.entries, v.entries, LAM), MU)
    lhs = tuple(p - q for p, q in zip(lhs_first, lhs_second, strict=True))
    rhs = action_vector(bracket_matrix(a.entries, b.entries, LAM), v.entries, MU)
    return lhs == tuple(poly_substitute(p, {MU: LAM + MU}) for p in rhs)
