import math

import pytest

from gcjacobi.errors import DomainError
from gcjacobi.jacobi import (
    JacobiParams,
    check_ode,
    check_symmetry,
    generating_check,
    generating_function,
    homogenize,
    jacobi_poly,
    leading_coefficient_check,
    legendre,
    parity_factorization,
    qn_jacobi_relation,
    value_at_one_check,
)
from gcjacobi.ring import ALPHA, BETA, QQ, RING, SIGMA, D, Y
from gcjacobi.virasoro import r_basis

SYMBOLIC = JacobiParams.symbolic()
SIGMA_PAIR = JacobiParams.sigma_pair()


def test_legendre():
    assert legendre(0) == RING.one
    assert legendre(1) == Y
    assert legendre(2) == (3 * Y**2 - 1) * QQ(1, 2)


def test_first_jacobi_polynomial():
    assert jacobi_poly(SYMBOLIC, 1) == (ALPHA + 1) + (ALPHA + BETA + 2) * (Y - 1) * QQ(1, 2)


def test_sigma_pair_orientation():
    assert SIGMA_PAIR == JacobiParams(-SIGMA, SIGMA)
    assert SIGMA_PAIR.swapped() == JacobiParams(SIGMA, -SIGMA)


def test_negative_degree_is_rejected():
    with pytest.raises(DomainError):
        jacobi_poly(SYMBOLIC, -1)


@pytest.mark.parametrize("n", range(11))
def test_symbolic_parameters(n):
    assert check_ode(SYMBOLIC, n)
    assert check_symmetry(SYMBOLIC, n)
    assert leading_coefficient_check(SYMBOLIC, n)
    assert value_at_one_check(SYMBOLIC, n)


@pytest.mark.parametrize("n", range(16))
def test_sigma_parameters(n):
    assert check_ode(SIGMA_PAIR, n)
    assert check_symmetry(SIGMA_PAIR, n)
    assert leading_coefficient_check(SIGMA_PAIR, n)
    assert value_at_one_check(SIGMA_PAIR, n)


@pytest.mark.parametrize("n", range(16))
def test_quasi_primaries_are_homogenized_jacobi_polynomials(n):
    assert qn_jacobi_relation(SIGMA, n)


def test_homogenize():
    assert homogenize(Y**2 + 1, 3) == Y**2 * D + D**3
    with pytest.raises(DomainError):
        homogenize(Y**3, 2)


def test_generating_function_low_orders():
    series = generating_function(SIGMA, 2)
    assert series.coefficient(0) == RING.one
    assert series.coefficient(1) == 2 * r_basis(SIGMA, 1)
    assert series.coefficient(1) == Y - SIGMA * D


def test_generating_function_to_order_ten():
    assert generating_check(SIGMA, 10)


def test_generating_function_at_numeric_sigma():
    series = generating_function(2, 5)
    assert all(series.coefficient(n) == math.comb(2 * n, n) * r_basis(2, n) for n in range(6))


def test_generating_function_rejects_negative_order():
    with pytest.raises(DomainError):
        generating_function(SIGMA, -1)


@pytest.mark.parametrize("s", range(6))
def test_parity_factorization(s):
    for n in range(s, 16):
        result = parity_factorization(s, n)
        assert result.ok, result.detail
        assert result.remainder == RING.zero


def test_parity_quotient_examples():
    assert parity_factorization(0, 2).quotient == legendre(2)
    assert parity_factorization(3, 3).quotient.is_ground


def test_parity_factorization_domain():
    with pytest.raises(DomainError):
        parity_factorization(3, 2)
    with pytest.raises(DomainError):
        parity_factorization(-1, 2)
