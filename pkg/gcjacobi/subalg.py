"""Normalized subalgebra families of gc_N: membership, spanning sets and closure verifiers."""

from __future__ import annotations

import enum
import functools
import itertools
import logging
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, TypeVar

from sympy import ImmutableMatrix, Rational, eye, zeros

from gcjacobi.errors import DomainError, SizeMismatchError
from gcjacobi.gc import GcElem, Matrix, ModVec, lambda_action, lambda_bracket, mat_mul, nth_product
from gcjacobi.models import Report
from gcjacobi.reduced import reduced_product
from gcjacobi.ring import (
    LAM,
    QQ,
    RING,
    D,
    MPoly,
    X,
    as_poly,
    format_poly,
    ground_value,
    min_exponent,
    poly_divide,
    poly_substitute,
)
from gcjacobi.virasoro import VirasoroElem, project

logger = logging.getLogger(__name__)

_T = TypeVar("_T")
_R = TypeVar("_R")


def _rational_poly(value: Rational) -> MPoly:
    return RING.ground_new(QQ(int(value.p), int(value.q)))


def _sympy_rational(p: MPoly) -> Rational:
    value = ground_value(p)
    return Rational(int(value.numerator), int(value.denominator))


def _poly_rows(matrix: ImmutableMatrix) -> Matrix:
    return tuple(tuple(_rational_poly(matrix[i, j]) for j in range(matrix.cols)) for i in range(matrix.rows))


@dataclass(frozen=True)
class Antiinvolution:
    """A -> B A^T B^-1 for an invertible rational B with B^T = +-B."""

    matrix: ImmutableMatrix
    name: str = "custom"

    def __post_init__(self) -> None:
        """Check that B is square, invertible and symmetric or antisymmetric."""
        b = self.matrix
        if b.rows != b.cols or b.rows < 1:
            msg = f"antiinvolution matrix must be square, got {b.rows}x{b.cols}"
            raise DomainError(msg)
        if b.det() == 0:
            msg = "antiinvolution matrix is singular"
            raise DomainError(msg)
        if b.T not in (b, -b):
            msg = "antiinvolution matrix must be symmetric or antisymmetric"
            raise DomainError(msg)

    @classmethod
    def transpose(cls, n: int) -> Antiinvolution:
        """B = Id."""
        return cls(ImmutableMatrix(eye(n)), "transpose")

    @classmethod
    def symplectic(cls, n: int) -> Antiinvolution:
        """B = [[0, Id], [-Id, 0]] for even n."""
        if n % 2:
            msg = f"the symplectic antiinvolution needs an even size, got {n}"
            raise DomainError(msg)
        half = n // 2
        b = zeros(n, n)
        b[:half, half:] = eye(half)
        b[half:, :half] = -eye(half)
        return cls(ImmutableMatrix(b), "symplectic")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int | str | Fraction]]) -> Antiinvolution:
        """Build from rational entries such as 1, "1/2" or Fraction(3, 4)."""
        return cls(ImmutableMatrix([[Rational(str(v)) for v in row] for row in rows]))

    @property
    def n(self) -> int:
        """Matrix size."""
        return self.matrix.rows

    @property
    def sign(self) -> int:
        """+1 when B is symmetric, -1 when antisymmetric."""
        return 1 if self.matrix.T == self.matrix else -1

    @functools.cached_property
    def _b(self) -> Matrix:
        return _poly_rows(self.matrix)

    @functools.cached_property
    def _b_inverse(self) -> Matrix:
        return _poly_rows(self.matrix.inv())

    def apply(self, a: GcElem) -> GcElem:
        """A* = B A^T B^-1, entrywise symbols untouched."""
        if a.n != self.n:
            msg = f"size mismatch: {a.n} vs {self.n}"
            raise SizeMismatchError(msg)
        return GcElem(a.n, mat_mul(mat_mul(self._b, a.transpose().entries), self._b_inverse))

    def conjugate_symbol(self, a: GcElem) -> GcElem:
        """P -> P*(d, -d-x)."""
        return self.apply(a.substitute({X: -D - X}))


@dataclass(frozen=True)
class IkN:
    """The diagonal idempotent of rank k in Mat_N."""

    k: int
    n: int

    def __post_init__(self) -> None:
        """Require 0 <= k <= n."""
        if not 0 <= self.k <= self.n:
            msg = f"need 0 <= k <= N, got k={self.k}, N={self.n}"
            raise DomainError(msg)

    @property
    def elem(self) -> GcElem:
        """I_{k,N}."""
        return GcElem.from_rows([[1 if i == j < self.k else 0 for j in range(self.n)] for i in range(self.n)])

    @property
    def complement(self) -> GcElem:
        """Id - I_{k,N}."""
        return GcElem.identity(self.n) - self.elem


class Sign(enum.StrEnum):
    """Which Virasoro element normalizes the family."""

    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class RankIdeal:
    """Columns (sign +) or rows (sign -) from k on carry the factor."""

    k: int


@dataclass(frozen=True)
class Star:
    """The family built from an antiinvolution."""

    antiinvolution: Antiinvolution


Variant = RankIdeal | Star


@dataclass(frozen=True)
class SubalgebraSpec:
    """One family R^(+-)_{S,k} or R^(+-)_{*,S} of gc_N."""

    sign: Sign
    s: int
    variant: Variant
    n: int

    def __post_init__(self) -> None:
        """Validate S, k and the antiinvolution size."""
        if self.s < 0:
            msg = f"S must be non-negative, got {self.s}"
            raise DomainError(msg)
        match self.variant:
            case RankIdeal(k):
                IkN(k, self.n)
            case Star(antiinvolution) if antiinvolution.n != self.n:
                msg = f"antiinvolution has size {antiinvolution.n}, family has N={self.n}"
                raise SizeMismatchError(msg)

    @property
    def sigma(self) -> int:
        """sigma = +-S of the normalizing Virasoro element."""
        return self.s if self.sign is Sign.PLUS else -self.s

    @property
    def epsilon(self) -> int:
        """(-1)^(S+1)."""
        return -1 if self.s % 2 == 0 else 1

    @property
    def factor(self) -> MPoly:
        """x^S for sign +, (x+d)^S for sign -."""
        return (X if self.sign is Sign.PLUS else X + D) ** self.s

    @property
    def label(self) -> str:
        """Readable family name."""
        match self.variant:
            case RankIdeal(k):
                return f"R({self.sign})_{{S={self.s},k={k}}} N={self.n}"
            case Star(antiinvolution):
                return f"R({self.sign})_{{*,S={self.s}}} {antiinvolution.name} N={self.n}"


def virasoro_for(spec: SubalgebraSpec) -> VirasoroElem:
    """L^(+-)_S = (x + (1 -+ S)/2 d) Id."""
    return VirasoroElem.from_sigma(spec.sigma, spec.n)


def _factor_quotient(p: MPoly, spec: SubalgebraSpec) -> MPoly | None:
    """p divided by the family factor, None if it does not divide."""
    if spec.sign is Sign.MINUS:
        p = poly_substitute(p, {X: X - D})
    quotient, remainder = poly_divide(p, X**spec.s)
    if remainder:
        return None
    return poly_substitute(quotient, {X: X + D}) if spec.sign is Sign.MINUS else quotient


def membership(spec: SubalgebraSpec, a: GcElem) -> bool:
    """Whether a lies in the family."""
    if a.n != spec.n:
        msg = f"size mismatch: {a.n} vs {spec.n}"
        raise SizeMismatchError(msg)
    match spec.variant:
        case RankIdeal(k):
            for i, j in itertools.product(range(spec.n), repeat=2):
                constrained = j >= k if spec.sign is Sign.PLUS else i >= k
                if constrained and _factor_quotient(a.entries[i][j], spec) is None:
                    return False
            return True
        case Star(antiinvolution):
            quotients = [[_factor_quotient(p, spec) for p in row] for row in a.entries]
            if any(q is None for row in quotients for q in row):
                return False
            q = GcElem.from_rows(quotients)
            return q == antiinvolution.conjugate_symbol(q).scale(spec.epsilon)


def _monomials(max_degree: int, *, generators_only: bool) -> Iterable[MPoly]:
    for total in range(max_degree + 1):
        for a in range(1 if generators_only else total + 1):
            yield D**a * X ** (total - a)


def spanning_set(spec: SubalgebraSpec, max_degree: int, *, generators_only: bool = False) -> list[GcElem]:
    """Elements of the family of degree at most max_degree that span its truncation.

    With generators_only the d^a prefactors are dropped, leaving a generating set of the C[d]-module.
    """
    if max_degree < 0:
        msg = f"max_degree must be non-negative, got {max_degree}"
        raise DomainError(msg)
    n, factor = spec.n, spec.factor
    seen: set[GcElem] = set()
    result: list[GcElem] = []

    def keep(elem: GcElem) -> None:
        if not elem.is_zero and elem not in seen:
            seen.add(elem)
            result.append(elem)

    match spec.variant:
        case RankIdeal(k):
            for i, j in itertools.product(range(n), repeat=2):
                constrained = j >= k if spec.sign is Sign.PLUS else i >= k
                budget = max_degree - spec.s if constrained else max_degree
                for m in _monomials(budget, generators_only=generators_only):
                    keep(GcElem.unit(i, j, n, m * factor if constrained else m))
        case Star(antiinvolution):
            for i, j in itertools.product(range(n), repeat=2):
                for m in _monomials(max_degree - spec.s, generators_only=generators_only):
                    p = GcElem.unit(i, j, n, m)
                    keep((p + antiinvolution.conjugate_symbol(p).scale(spec.epsilon)).scale(factor))
    return result


def _rational(c: Any) -> Rational:
    return Rational(int(c.numerator), int(c.denominator))


@dataclass(frozen=True)
class TruncatedSpan:
    """The rational span of spanning_set(spec, max_degree), kept in reduced row echelon form.

    Membership here is linear algebra over the coefficients, independent of the division test in membership.
    """

    columns: dict[tuple[int, int, tuple[int, ...]], int]
    rows: tuple[tuple[Rational, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def of(cls, spec: SubalgebraSpec, max_degree: int) -> TruncatedSpan:
        """Row reduce the coefficient vectors of the spanning elements."""
        elems = spanning_set(spec, max_degree)
        keys = sorted(
            {(i, j, monom) for a in elems for i, row in enumerate(a.entries) for j, p in enumerate(row) for monom in p}
        )
        columns = {key: c for c, key in enumerate(keys)}
        if not elems:
            return cls(columns, (), ())
        vectors = [[Rational(0)] * len(keys) for _ in elems]
        for vector, a in zip(vectors, elems, strict=True):
            for i, row in enumerate(a.entries):
                for j, p in enumerate(row):
                    for monom, coeff in p.items():
                        vector[columns[(i, j, monom)]] = _rational(coeff)
        reduced, pivots = ImmutableMatrix(vectors).rref()
        rows = tuple(tuple(reduced.row(r)) for r in range(len(pivots)))
        logger.debug("span of %s up to degree %d has dimension %d", spec.label, max_degree, len(pivots))
        return cls(columns, rows, tuple(pivots))

    @property
    def dimension(self) -> int:
        """Dimension over Q."""
        return len(self.pivots)

    def contains(self, a: GcElem) -> bool:
        """Whether a is a rational combination of the spanning elements."""
        vector = [Rational(0)] * len(self.columns)
        for i, row in enumerate(a.entries):
            for j, p in enumerate(row):
                for monom, coeff in p.items():
                    column = self.columns.get((i, j, monom))
                    if column is None:
                        return False
                    vector[column] = _rational(coeff)
        for row, pivot in zip(self.rows, self.pivots, strict=True):
            if c := vector[pivot]:
                vector = [v - c * b for v, b in zip(vector, row, strict=True)]
        return not any(vector)


def _map_ordered(func: Callable[[_T], _R], items: Sequence[_T], workers: int) -> list[_R]:
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


def verify_closure(
    spec: SubalgebraSpec,
    max_degree: int,
    *,
    full: bool = False,
    extra: Sequence[GcElem] = (),
    workers: int = 1,
) -> Report:
    """Check that every lambda-coefficient of [a l b] stays in the family, for a, b in the spanning set.

    Unordered pairs suffice: the family is a C[d]-module and skewsymmetry only mixes in powers of d.
    """
    elements = [*spanning_set(spec, max_degree, generators_only=not full), *extra]
    pairs = list(itertools.combinations_with_replacement(range(len(elements)), 2))
    logger.debug("%s: %s elements, %s pairs", spec.label, len(elements), len(pairs))

    def check(pair: tuple[int, int]) -> tuple[tuple[int, int], list[int]]:
        result = lambda_bracket(elements[pair[0]], elements[pair[1]])
        return pair, [k for k, c in result.coefficients.items() if not membership(spec, c)]

    report = Report(suite="closure")
    for (i, j), bad in _map_ordered(check, pairs, workers):
        detail = ""
        if bad:
            detail = f"[{elements[i]} l {elements[j]}] leaves the family at l^{bad}"
        report.add({"family": spec.label, "pair": [i, j]}, passed=not bad, detail=detail)
    logger.info("closure %s: %s pairs, %s failed", spec.label, len(pairs), len(report.failures))
    return report


def verify_normalized(spec: SubalgebraSpec, max_degree: int, *, full: bool = False) -> Report:
    """Check L_(i) a in the family for i = 0, 1, 2 and every spanning a."""
    virasoro = virasoro_for(spec)
    report = Report(suite="normalized")
    for index, a in enumerate(spanning_set(spec, max_degree, generators_only=not full)):
        for i in range(3):
            image = nth_product(virasoro.elem, a, i)
            passed = membership(spec, image)
            report.add(
                {"family": spec.label, "element": index, "i": i},
                passed=passed,
                detail="" if passed else f"L_({i}) {a} = {image}",
            )
    logger.info("normalized %s: %s cases, %s failed", spec.label, len(report.cases), len(report.failures))
    return report


def _submodule_spanning(k: int, n: int, s: int, max_degree: int) -> list[ModVec]:
    """(v_k, d^S v_{N-k}) up to the given degree in d."""
    vectors = []
    for i in range(n):
        shift = 0 if i < k else s
        vectors.extend(ModVec.unit(i, n, D ** (shift + a)) for a in range(max_degree + 1))
    return vectors


def _in_submodule(v: ModVec, k: int, s: int) -> bool:
    """Whether the last N-k components are divisible by d^S."""
    return all((e := min_exponent(p, D)) is None or e >= s for p in v.entries[k:])


def verify_submodule(spec: SubalgebraSpec, max_degree: int) -> Report:
    """Check that U = {(v_k, d^S v_{N-k})} is invariant under R^(-)_{S,k}."""
    if spec.sign is not Sign.MINUS or not isinstance(spec.variant, RankIdeal):
        msg = f"the invariant submodule is only defined for R(-)_(S,k), got {spec.label}"
        raise DomainError(msg)
    k = spec.variant.k
    vectors = _submodule_spanning(k, spec.n, spec.s, max_degree)
    report = Report(suite="submodule")
    for a_index, a in enumerate(spanning_set(spec, max_degree, generators_only=True)):
        for u_index, u in enumerate(vectors):
            bad = [
                power
                for power, coefficient in lambda_action(a, u).coefficients(LAM).items()
                if not _in_submodule(coefficient, k, spec.s)
            ]
            report.add(
                {"family": spec.label, "element": a_index, "vector": u_index},
                passed=not bad,
                detail=f"leaves U at l^{bad}" if bad else "",
            )
    proper = any(not _in_submodule(ModVec.unit(i, spec.n), k, spec.s) for i in range(spec.n))
    report.add(
        {"family": spec.label, "proper": proper},
        passed=proper == (k != spec.n and spec.s != 0),
        detail="proper" if proper else "not proper",
    )
    logger.info("submodule %s: %s cases, %s failed", spec.label, len(report.cases), len(report.failures))
    return report


class SpaceKind(enum.StrEnum):
    """Shapes of the matrix spaces V_n."""

    FULL = "full"
    ZERO = "zero"
    RIGHT_IDEAL = "Mat*I_k"
    LEFT_IDEAL = "I_k*Mat"
    EIGEN = "A*=eA"


@dataclass(frozen=True)
class MatrixSpace:
    """A subspace of constant N x N matrices."""

    kind: SpaceKind
    n: int
    k: int = 0
    eigenvalue: int = 1
    antiinvolution: Antiinvolution | None = None

    def contains(self, a: GcElem) -> bool:
        """Membership of a constant matrix."""
        match self.kind:
            case SpaceKind.FULL:
                return True
            case SpaceKind.ZERO:
                return a.is_zero
            case SpaceKind.RIGHT_IDEAL:
                return not any(a.entries[i][j] for i in range(self.n) for j in range(self.k, self.n))
            case SpaceKind.LEFT_IDEAL:
                return not any(a.entries[i][j] for i in range(self.k, self.n) for j in range(self.n))
            case SpaceKind.EIGEN:
                return self.antiinvolution.apply(a) == a.scale(self.eigenvalue)

    def basis(self) -> list[GcElem]:
        """A basis of the space."""
        units = [GcElem.unit(i, j, self.n) for i, j in itertools.product(range(self.n), repeat=2)]
        match self.kind:
            case SpaceKind.ZERO:
                return []
            case SpaceKind.EIGEN:
                candidates = [e + self.antiinvolution.apply(e).scale(self.eigenvalue) for e in units]
                columns = ImmutableMatrix(
                    [
                        [_sympy_rational(c.entries[i][j]) for c in candidates]
                        for i, j in itertools.product(range(self.n), repeat=2)
                    ]
                )
                _, pivots = columns.rref()
                return [candidates[p] for p in pivots]
            case _:
                return [u for u in units if self.contains(u)]

    def __str__(self) -> str:
        """Short description."""
        match self.kind:
            case SpaceKind.RIGHT_IDEAL | SpaceKind.LEFT_IDEAL:
                return self.kind.replace("k", str(self.k))
            case SpaceKind.EIGEN:
                return f"A*={'' if self.eigenvalue == 1 else '-'}A"
            case _:
                return str(self.kind)


@dataclass(frozen=True)
class FamilyLadder:
    """The sequence V_0, V_1, ... of the reduced family."""

    spec: SubalgebraSpec

    def space(self, degree: int) -> MatrixSpace:
        """V_degree."""
        spec, n = self.spec, self.spec.n
        match spec.variant:
            case RankIdeal(k):
                if degree >= spec.s:
                    return MatrixSpace(SpaceKind.FULL, n)
                kind = SpaceKind.RIGHT_IDEAL if spec.sign is Sign.PLUS else SpaceKind.LEFT_IDEAL
                return MatrixSpace(kind, n, k=k)
            case Star(antiinvolution):
                if degree < spec.s:
                    return MatrixSpace(SpaceKind.ZERO, n)
                eigenvalue = 1 if degree % 2 else -1
                return MatrixSpace(SpaceKind.EIGEN, n, eigenvalue=eigenvalue, antiinvolution=antiinvolution)


def reduced_family(spec: SubalgebraSpec) -> FamilyLadder:
    """The ladder of matrix spaces the family projects to."""
    return FamilyLadder(spec)


def verify_reduced_family(spec: SubalgebraSpec, max_degree: int, m_max: int = 5) -> Report:
    """Projected spanning elements lie in the ladder, and the ladder is closed under the reduced products."""
    ladder = reduced_family(spec)
    virasoro = virasoro_for(spec)
    report = Report(suite="reduced-family")
    for index, a in enumerate(spanning_set(spec, max_degree, generators_only=True)):
        projected = project(a, virasoro)
        bad = [m for m, c in projected.components.items() if not ladder.space(m).contains(c)]
        report.add({"family": spec.label, "element": index}, passed=not bad, detail=f"degrees {bad}" if bad else "")
    bases = {m: ladder.space(m).basis() for m in range(m_max + 1)}
    for m, n in itertools.product(range(m_max + 1), repeat=2):
        for k in range(m + n + 1):
            target = ladder.space(m + n - k)
            bad = [
                (i, j)
                for (i, left), (j, right) in itertools.product(enumerate(bases[m]), enumerate(bases[n]))
                if not target.contains(reduced_product((m, left), (n, right), k, spec.sigma).component(m + n - k))
            ]
            report.add(
                {"family": spec.label, "m": m, "n": n, "k": k},
                passed=not bad,
                detail=f"basis pairs {bad} leave {target}" if bad else "",
            )
    logger.info("reduced-family %s: %s cases, %s failed", spec.label, len(report.cases), len(report.failures))
    return report


class ScalarFamily(enum.StrEnum):
    """The four families of normalized subalgebras of gc_1."""

    PLUS = "x^S C[d,x]"
    MINUS = "(x+d)^S C[d,x]"
    PLUS_STAR = "x^S [p(d,x) + (-1)^(S+1) p(d,-d-x)]"
    MINUS_STAR = "(x+d)^S [p(d,x) + (-1)^(S+1) p(d,-d-x)]"


def scalar_family_membership(kind: ScalarFamily, s: int, p: MPoly) -> bool:
    """Membership in a gc_1 family by direct division."""
    p = as_poly(p)
    factor = (X if kind in (ScalarFamily.PLUS, ScalarFamily.PLUS_STAR) else X + D) ** s
    quotient, remainder = poly_divide(p, factor)
    if remainder:
        return False
    if kind in (ScalarFamily.PLUS, ScalarFamily.MINUS):
        return True
    sign = -1 if s % 2 == 0 else 1
    return quotient == sign * poly_substitute(quotient, {X: -D - X})


def describe(spec: SubalgebraSpec, max_degree: int) -> list[str]:
    """Spanning elements as text, for the CLI."""
    return [" ; ".join(format_poly(p) for row in a.entries for p in row) for a in spanning_set(spec, max_degree)]
