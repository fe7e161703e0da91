"""Named verification suites; each returns a Report."""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Callable, Iterator
from fractions import Fraction

from gcjacobi import dcoeff, jacobi, reduced, subalg
from gcjacobi.config import Limits, Settings
from gcjacobi.errors import DomainError, GcError
from gcjacobi.gc import (
    GcElem,
    ModVec,
    check_jacobi_identity,
    check_module_axiom,
    check_sesquilinearity,
    check_skewsymmetry,
    nth_product,
)
from gcjacobi.models import Report
from gcjacobi.ring import QQ, RING, SIGMA, D, MPoly, X, as_poly, format_poly
from gcjacobi.virasoro import (
    QBasis,
    VirasoroElem,
    conformal_weight_holds,
    is_quasi_primary,
    q_basis_symmetry,
    q_coefficient_recursion_holds,
    r_basis_symmetry,
    second_product_monomial,
)

logger = logging.getLogger(__name__)


def random_poly(rng: random.Random, degree: int, terms: int = 3, variables: tuple[MPoly, ...] = (D, X)) -> MPoly:
    """A sparse polynomial with small integer coefficients and total degree at most degree."""
    total = RING.zero
    for _ in range(rng.randint(0, terms)):
        monomial = RING.one
        budget = rng.randint(0, degree)
        for var in variables[:-1]:
            e = rng.randint(0, budget)
            monomial *= var**e
            budget -= e
        total += rng.randint(-3, 3) * monomial * variables[-1] ** budget
    return total


def random_elem(rng: random.Random, n: int, degree: int) -> GcElem:
    """A random N x N element with sparse entries."""
    return GcElem.from_rows([[random_poly(rng, degree) for _ in range(n)] for _ in range(n)])


def random_matrix(rng: random.Random, n: int) -> GcElem:
    """A random constant integer matrix."""
    return GcElem.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])


def axioms_suite(seed: int = 0, count: int = 10, size_max: int = 3, degree: int = 4) -> Report:
    """Sesquilinearity, skewsymmetry, the Jacobi identity and the module axiom on random inputs."""
    rng = random.Random(seed)
    report = Report(suite="axioms")
    for case in range(count):
        n = rng.randint(1, size_max)
        a, b, c = (random_elem(rng, n, degree) for _ in range(3))
        v = ModVec.from_entries(random_poly(rng, degree, variables=(D,)) for _ in range(n))
        params = {"case": case, "N": n}
        report.add({**params, "axiom": "sesquilinearity"}, passed=check_sesquilinearity(a, b))
        report.add({**params, "axiom": "skewsymmetry"}, passed=check_skewsymmetry(a, b))
        report.add({**params, "axiom": "jacobi"}, passed=check_jacobi_identity(a, b, c))
        report.add({**params, "axiom": "module"}, passed=check_module_axiom(a, b, v))
    return report


def virasoro_suite(seed: int = 0, count: int = 10, size_max: int = 2) -> Report:
    """[L l L] = (d + 2l) L for random rational alpha and for symbolic sigma."""
    rng = random.Random(seed)
    report = Report(suite="virasoro")
    alphas = [as_poly(QQ(rng.randint(-9, 9), rng.randint(1, 9))) for _ in range(count)]
    for alpha, n in itertools.product([*alphas, (1 - SIGMA) * QQ(1, 2)], range(1, size_max + 1)):
        params = {"alpha": format_poly(alpha), "N": n}
        try:
            VirasoroElem(alpha, n)
        except DomainError as e:
            report.add(params, passed=False, detail=str(e))
        else:
            report.add(params, passed=True)
    return report


def qbasis_suite(n_max: int = 20) -> Report:
    """Q_n is quasi-primary of weight n+1, obeys its coefficient recursion and both symmetries."""
    report = Report(suite="qbasis")
    virasoro = VirasoroElem.from_sigma(SIGMA)
    basis = QBasis(SIGMA)
    for n in range(n_max + 1):
        q = GcElem.scalar(basis[n], 1)
        report.add({"n": n, "check": "quasi-primary"}, passed=is_quasi_primary(q, virasoro))
        report.add({"n": n, "check": "weight"}, passed=conformal_weight_holds(q, virasoro))
        report.add({"n": n, "check": "recursion"}, passed=q_coefficient_recursion_holds(SIGMA, n))
        report.add({"n": n, "check": "q-symmetry"}, passed=q_basis_symmetry(n))
        report.add({"n": n, "check": "r-symmetry"}, passed=r_basis_symmetry(n))
    for k, m in itertools.product(range(4), repeat=2):
        monomial = GcElem.scalar(D**k * X**m, 1)
        closed = second_product_monomial(virasoro.alpha, k, m)
        direct = nth_product(virasoro.elem, monomial, 2).entries[0][0]
        report.add({"k": k, "m": m, "check": "second-product"}, passed=closed == direct)
    return report


def jacobi_suite(n_max: int = 15, param_n_max: int = 10, order: int = 10) -> Report:
    """ODE, symmetry, leading coefficient, value at 1, the Q_n bridge and the generating function."""
    report = Report(suite="jacobi")
    regimes = [
        ("alpha,beta", jacobi.JacobiParams.symbolic(), param_n_max),
        ("sigma", jacobi.JacobiParams.sigma_pair(), n_max),
    ]
    for name, params, top in regimes:
        checks = {
            "ode": jacobi.check_ode,
            "symmetry": jacobi.check_symmetry,
            "leading": jacobi.leading_coefficient_check,
            "value-at-1": jacobi.value_at_one_check,
        }
        for n in range(top + 1):
            for check, holds in checks.items():
                report.add({"params": name, "n": n, "check": check}, passed=holds(params, n))
    for n in range(n_max + 1):
        report.add({"n": n, "check": "q-bridge"}, passed=jacobi.qn_jacobi_relation(SIGMA, n))
    report.add({"order": order, "check": "generating-function"}, passed=jacobi.generating_check(SIGMA, order))
    return report


def parity_suite(s_max: int = 5, n_max: int = 15) -> Report:
    """Divisibility and parity of P_n^(-S,S)/(y-1)^S and P_n^(S,-S)/(y+1)^S."""
    report = Report(suite="parity")
    for s in range(s_max + 1):
        for n in range(s, n_max + 1):
            result = jacobi.parity_factorization(s, n)
            report.add({"S": s, "n": n}, passed=result.ok, detail=result.detail)
    return report


def reduced_suite(m_max: int = 6, matrix_m_max: int = 4, matrix_pairs: int = 5, seed: int = 0) -> Report:
    """reduced_product against the gc_N oracle: N = 1 with Id, and N = 2 with random integer matrices."""
    rng = random.Random(seed)
    report = Report(suite="reduced")
    inputs = [(1, m_max, GcElem.identity(1), GcElem.identity(1))]
    inputs += [(2, matrix_m_max, random_matrix(rng, 2), random_matrix(rng, 2)) for _ in range(matrix_pairs)]
    for pair, (n_size, top, a, b) in enumerate(inputs):
        for m, n in itertools.product(range(top + 1), repeat=2):
            for k in range(m + n + 1):
                closed = reduced.reduced_product((m, a), (n, b), k)
                oracle = reduced.reduced_bracket_oracle((m, a), (n, b), k)
                report.add({"N": n_size, "pair": pair, "m": m, "n": n, "k": k}, passed=closed == oracle)
    return report


def dlaws_suite(m_max: int = 6, s_max: int = 4, sign_m_max: int = 8) -> Report:
    """Exchange symmetry of d and its sign pattern at sigma = +-S."""
    report = Report(suite="dlaws")
    for m, n in itertools.product(range(m_max + 1), repeat=2):
        passed = all(reduced.d_symmetry_holds(m, n, k) for k in range(m + n + 1))
        report.add({"m": m, "n": n, "check": "symmetry"}, passed=passed)
    for s in range(s_max + 1):
        for m, n in itertools.product(range(s, sign_m_max + 1), repeat=2):
            for sigma in sorted({s, -s}):
                passed = all(reduced.d_sign_holds(m, n, k, sigma) for k in range(m + n + 1))
                report.add({"sigma": sigma, "m": m, "n": n, "check": "sign"}, passed=passed)
    return report


def random_rank_instance(rng: random.Random, d: int) -> tuple[list[Fraction], list[Fraction]]:
    """Distinct positive rational nodes with fewer odd rows than half of d."""
    odd = rng.randint(0, (d - 1) // 2)
    denominator = rng.randint(1, 5)
    values = [Fraction(p, denominator) for p in rng.sample(range(1, 60), d)]
    return values[: d - odd], values[d - odd :]


def dcoeff_suite(m_max: int = 6, facts_max: int = 8, rank_count: int = 20, seed: int = 0) -> Report:
    """Product expansion, the d cross-check, exchange, symmetry and vanishing of D, its factorization and ranks."""
    rng = random.Random(seed)
    report = Report(suite="dcoeff")
    for m, n in itertools.product(range(m_max + 1), repeat=2):
        report.add({"m": m, "n": n, "check": "expansion"}, passed=dcoeff.product_expansion_check(m, n))
        report.add({"m": m, "n": n, "check": "d-cross"}, passed=dcoeff.d_cross_check(m, n))
        report.add({"m": m, "n": n, "check": "exchange"}, passed=dcoeff.degree_and_exchange_check(m, n))
        if m <= n:
            for l in range(m + n + 1):
                result = dcoeff.factorization(m, n, l)
                check = "even" if l >= n - m else "odd"
                report.add({"m": m, "n": n, "l": l, "check": check}, passed=result.ok, detail=result.detail)
    for m in range(facts_max + 1):
        for n in range(m, facts_max + 1):
            report.merge(dcoeff.verify_facts(m, n))
    for case in range(rank_count):
        d = rng.randint(1, 6)
        xs, ys = random_rank_instance(rng, d)
        passed = dcoeff.rank_certificate(xs, ys, len(xs) + len(ys))
        report.add({"case": case, "xs": [str(x) for x in xs], "ys": [str(y) for y in ys]}, passed=passed)
    return report


def antiinvolutions(n: int, settings: Settings | None = None) -> list[subalg.Antiinvolution]:
    """Transpose, symplectic for even N, and the configured matrix when it has size N."""
    result = [subalg.Antiinvolution.transpose(n)]
    if n % 2 == 0:
        result.append(subalg.Antiinvolution.symplectic(n))
    if settings is not None and settings.star_matrix is not None and len(settings.star_matrix) == n:
        result.append(subalg.Antiinvolution.from_matrix(settings.star_matrix))
    return result


def families(limits: Limits, settings: Settings | None = None) -> Iterator[subalg.SubalgebraSpec]:
    """Every classified family with S <= s_max and N <= size_max."""
    for n in range(1, limits.size_max + 1):
        for s in range(limits.s_max + 1):
            for sign in subalg.Sign:
                for k in range(n + 1):
                    yield subalg.SubalgebraSpec(sign, s, subalg.RankIdeal(k), n)
                for star in antiinvolutions(n, settings):
                    yield subalg.SubalgebraSpec(sign, s, subalg.Star(star), n)


def family_sweep(
    check: Callable[[subalg.SubalgebraSpec], Report], specs: Iterator[subalg.SubalgebraSpec], suite: str
) -> Report:
    """Merge one report per family."""
    report = Report(suite=suite)
    for spec in specs:
        report.merge(check(spec))
    return report


def negative_control_suite(degree: int = 4) -> Report:
    """Adjoining 1 to x C[d,x] must break closure."""
    spec = subalg.SubalgebraSpec(subalg.Sign.PLUS, 1, subalg.RankIdeal(0), 1)
    inner = subalg.verify_closure(spec, degree, extra=(GcElem.identity(1),))
    report = Report(suite="negative-control")
    report.add(
        {"family": spec.label, "extra": "1"},
        passed=not inner.ok,
        detail=f"{len(inner.failures)} violating pairs",
    )
    return report


def scalar_suite(s_max: int = 3, degree: int = 4, seed: int = 0, samples: int = 30) -> Report:
    """For N = 1 membership and direct division in gc_1 both agree with the span of the family."""
    rng = random.Random(seed)
    report = Report(suite="scalar")
    kinds = {
        (subalg.Sign.PLUS, False): subalg.ScalarFamily.PLUS,
        (subalg.Sign.MINUS, False): subalg.ScalarFamily.MINUS,
        (subalg.Sign.PLUS, True): subalg.ScalarFamily.PLUS_STAR,
        (subalg.Sign.MINUS, True): subalg.ScalarFamily.MINUS_STAR,
    }
    for s in range(s_max + 1):
        for (sign, star), kind in kinds.items():
            variant = subalg.Star(subalg.Antiinvolution.transpose(1)) if star else subalg.RankIdeal(0)
            spec = subalg.SubalgebraSpec(sign, s, variant, 1)
            members = [a.entries[0][0] for a in subalg.spanning_set(spec, degree)]
            randoms = [random_poly(rng, degree) for _ in range(samples)]
            candidates = [*members, *randoms, *(p * q for p, q in zip(members, randoms, strict=False))]
            span = subalg.TruncatedSpan.of(spec, 2 * degree)
            scalars = [GcElem.scalar(p, 1) for p in candidates]
            mismatches = [
                p
                for p, a in zip(candidates, scalars, strict=True)
                if len({span.contains(a), subalg.membership(spec, a), subalg.scalar_family_membership(kind, s, p)}) > 1
            ]
            report.add({"S": s, "family": str(kind)}, passed=not mismatches, detail=f"{len(mismatches)} mismatches")
    return report


SUITES: dict[str, Callable[[Limits, int], Report]] = {
    "axioms": lambda limits, seed: axioms_suite(seed, count=50, size_max=limits.size_max + 1, degree=limits.degree),
    "virasoro": lambda limits, seed: virasoro_suite(seed, size_max=limits.size_max),
    "qbasis": lambda limits, _: qbasis_suite(),
    "jacobi": lambda limits, _: jacobi_suite(n_max=limits.jacobi_n_max),
    "parity": lambda limits, _: parity_suite(n_max=limits.jacobi_n_max),
    "products": lambda limits, _: reduced.products_suite(),
    "reduced": lambda limits, seed: reduced_suite(m_max=limits.reduced_m_max, seed=seed),
    "dlaws": lambda limits, _: dlaws_suite(),
    "dcoeff": lambda limits, seed: dcoeff_suite(seed=seed),
    "scalar": lambda limits, seed: scalar_suite(limits.s_max, limits.degree, seed),
    "negative-control": lambda limits, _: negative_control_suite(limits.degree),
}


def run_suite(name: str, limits: Limits, seed: int = 0) -> Report:
    """Run one named suite, logging its outcome."""
    if name not in SUITES:
        msg = f"unknown suite {name!r}; choose from {', '.join(SUITES)}"
        raise GcError(msg)
    report = SUITES[name](limits, seed)
    logger.info("%s: %s cases, %s failed", name, len(report.cases), len(report.failures))
    return report


def family_spec(
    sign: str,
    s: int,
    n: int,
    *,
    k: int | None = None,
    star: str | None = None,
    star_matrix: list[list[str]] | None = None,
) -> subalg.SubalgebraSpec:
    """Build a family from flag-like values; star is transpose, symplectic or custom."""
    match star:
        case None:
            variant: subalg.Variant = subalg.RankIdeal(k if k is not None else 0)
        case "transpose":
            variant = subalg.Star(subalg.Antiinvolution.transpose(n))
        case "symplectic":
            variant = subalg.Star(subalg.Antiinvolution.symplectic(n))
        case "custom" if star_matrix is not None:
            variant = subalg.Star(subalg.Antiinvolution.from_matrix(star_matrix))
        case _:
            msg = f"cannot build the {star} antiinvolution"
            raise DomainError(msg)
    return subalg.SubalgebraSpec(subalg.Sign(sign), s, variant, n)


FAMILY_CHECKS = ("closure", "normalized", "submodule", "reduced-family")


def family_check(
    name: str, spec: subalg.SubalgebraSpec, degree: int, *, full: bool = False, workers: int = 1, m_max: int = 5
) -> Report:
    """Run one of the per-family verifiers."""
    match name:
        case "closure":
            return subalg.verify_closure(spec, degree, full=full, workers=workers)
        case "normalized":
            return subalg.verify_normalized(spec, degree, full=full)
        case "submodule":
            return subalg.verify_submodule(spec, degree)
        case "reduced-family":
            return subalg.verify_reduced_family(spec, degree, m_max)
    msg = f"unknown family check {name!r}; choose from {', '.join(FAMILY_CHECKS)}"
    raise GcError(msg)


def submodule_families(specs: Iterator[subalg.SubalgebraSpec]) -> Iterator[subalg.SubalgebraSpec]:
    """The R(-)_{S,k} families with 0 < k < N."""
    for spec in specs:
        variant = spec.variant
        if spec.sign is subalg.Sign.MINUS and isinstance(variant, subalg.RankIdeal) and 0 < variant.k < spec.n:
            yield spec
