import pytest
from hypothesis import given

from gcjacobi.errors import DomainError, SizeMismatchError
from gcjacobi.gc import GcElem, nth_product
from gcjacobi.ring import QQ, RING, SIGMA, D, X, Y
from gcjacobi.virasoro import (
    QBasis,
    ReducedElem,
    VirasoroElem,
    alpha_of,
    conformal_weight_holds,
    decompose,
    is_quasi_primary,
    project,
    q_basis,
    q_basis_symmetry,
    q_coefficient,
    q_coefficient_recursion_holds,
    r_basis,
    r_basis_symmetry,
    reconstruct,
    second_product_monomial,
)
from strategies import elems, symbolic_elems

VIRASORO = VirasoroElem.from_sigma(SIGMA)
IDENTITY = GcElem.identity(1)


def test_low_degree_quasi_primaries():
    assert q_basis(SIGMA, 0) == RING.one
    assert q_basis(SIGMA, 1) == X + (1 - SIGMA) * QQ(1, 2) * D
    assert q_basis(SIGMA, 2) == X**2 + (2 - SIGMA) * QQ(1, 2) * D * X + (2 - SIGMA) * (1 - SIGMA) * QQ(1, 12) * D**2
    assert q_basis(3, 3) == X**3


def test_r_basis_in_y():
    assert r_basis(SIGMA, 1) == (Y - SIGMA * D) * QQ(1, 2)


def test_q_coefficients():
    assert q_coefficient(SIGMA, 2, 0) == RING.one
    assert q_coefficient(SIGMA, 2, 2) == (2 - SIGMA) * (1 - SIGMA) * QQ(1, 12)


@pytest.mark.parametrize("n", range(21))
def test_q_basis_is_quasi_primary_of_weight_n_plus_one(n):
    q = GcElem.scalar(q_basis(SIGMA, n), 1)
    assert is_quasi_primary(q, VIRASORO)
    assert conformal_weight_holds(q, VIRASORO)
    assert q_coefficient_recursion_holds(SIGMA, n)
    assert q_basis_symmetry(n)
    assert r_basis_symmetry(n)


def test_derivatives_are_not_quasi_primary():
    assert not is_quasi_primary(GcElem.scalar(D, 1), VIRASORO)
    assert is_quasi_primary(VIRASORO.elem, VIRASORO)


@pytest.mark.parametrize(("k", "n"), [(0, 0), (1, 1), (2, 0), (0, 3), (2, 3)])
def test_second_product_closed_form(k, n):
    monomial = GcElem.scalar(D**k * X**n, 1)
    expected = nth_product(VIRASORO.elem, monomial, 2).entries[0][0]
    assert second_product_monomial(VIRASORO.alpha, k, n) == expected


def test_virasoro_element_properties():
    assert VIRASORO.sigma == SIGMA
    assert alpha_of(3) == -RING.one
    assert VirasoroElem(QQ(1, 3), 2).elem.n == 2


def test_virasoro_element_rejects_symbols_in_alpha():
    with pytest.raises(DomainError):
        VirasoroElem(X)


def test_basis_rejects_negative_degree():
    with pytest.raises(DomainError):
        QBasis(SIGMA)[-1]


def test_decompose_x_identity():
    parts = decompose(GcElem.scalar(X, 1), VIRASORO)
    assert parts == {
        0: ReducedElem.single(1, IDENTITY),
        1: ReducedElem.single(0, IDENTITY.scale((SIGMA - 1) * QQ(1, 2))),
    }


def test_decompose_quasi_primaries_and_derivatives():
    q3 = GcElem.scalar(q_basis(SIGMA, 3), 1)
    assert decompose(q3, VIRASORO) == {0: ReducedElem.single(3, IDENTITY)}
    assert decompose(q3.scale(D**2), VIRASORO) == {2: ReducedElem.single(3, IDENTITY)}
    assert decompose(GcElem.zero(1), VIRASORO) == {}


def test_project():
    assert project(GcElem.scalar(D, 1), VIRASORO).is_zero
    assert project(GcElem.scalar(X, 1), VIRASORO) == ReducedElem.single(1, IDENTITY)
    a = GcElem.from_rows([[X**2 + D * X, 3], [0, 1]])
    projected = project(a, VirasoroElem.from_sigma(SIGMA, 2))
    assert projected.component(2) == GcElem.unit(0, 0, 2)
    assert projected.component(0) == GcElem.from_rows([[0, 3], [0, 1]])


@given(symbolic_elems(2))
def test_project_is_the_derivative_free_part_of_decompose(a):
    virasoro = VirasoroElem.from_sigma(SIGMA, 2)
    assert project(a, virasoro) == decompose(a, virasoro).get(0, ReducedElem(2))


def test_project_rejects_size_mismatch():
    with pytest.raises(SizeMismatchError):
        project(GcElem.identity(2), VIRASORO)


def test_reduced_elem_arithmetic():
    a = ReducedElem.single(1, IDENTITY)
    b = ReducedElem.single(2, IDENTITY.scale(3))
    assert (a + b - a) == b
    assert (a - a).is_zero
    assert a.scale(SIGMA).component(1) == IDENTITY.scale(SIGMA)
    assert str(a) == "X^1*[[1]]"
    assert a.lift(SIGMA) == GcElem.scalar(q_basis(SIGMA, 1), 1)


def test_reduced_elem_rejects_symbolic_matrices():
    with pytest.raises(DomainError):
        ReducedElem(1, {0: GcElem.scalar(X, 1)})


@given(elems(2))
def test_decomposition_reconstructs_for_rational_sigma(a):
    virasoro = VirasoroElem.from_sigma(QQ(1, 3), 2)
    parts = decompose(a, virasoro)
    assert reconstruct(parts, virasoro) == a
    for part in parts.values():
        for m, c in part.components.items():
            assert is_quasi_primary(c.scale(q_basis(virasoro.sigma, m)), virasoro)


@given(symbolic_elems(1))
def test_decomposition_reconstructs_for_symbolic_sigma(a):
    assert reconstruct(decompose(a, VIRASORO), VIRASORO) == a
