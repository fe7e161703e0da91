import pytest
from hypothesis import given

from gcjacobi.errors import DomainError, SizeMismatchError
from gcjacobi.gc import (
    GcElem,
    LambdaPoly,
    ModVec,
    check_jacobi_identity,
    check_module_axiom,
    check_sesquilinearity,
    check_skewsymmetry,
    from_y,
    lambda_action,
    lambda_bracket,
    mat_scale,
    nth_product,
    to_y,
)
from gcjacobi.ring import LAM, QQ, SIGMA, D, X, Y
from strategies import constant_matrices, elems_with_vector, same_size_elems, symbolic_elems

ALPHA = (1 - SIGMA) * QQ(1, 2)
L = GcElem.scalar(X + ALPHA * D, 1)


def test_virasoro_bracket():
    result = lambda_bracket(L, L)
    assert result.to_matrix() == mat_scale(L.entries, D + 2 * LAM)
    assert result.degree == 1


def test_bracket_of_identities_vanishes():
    assert lambda_bracket(GcElem.identity(2), GcElem.identity(2)).is_zero


def test_bracket_of_constant_matrices_is_the_commutator():
    a, b = GcElem.unit(0, 1, 2), GcElem.unit(1, 0, 2)
    result = lambda_bracket(a, b)
    assert result.coefficients == {0: a @ b - b @ a}


def test_action_of_virasoro_element_on_constants():
    v = lambda_action(L, ModVec.unit(0, 1))
    assert v.entries == (D + (1 - ALPHA) * LAM,)


def test_action_of_identity_shifts():
    v = lambda_action(GcElem.identity(1), ModVec.from_entries([D**2]))
    assert v.entries == ((LAM + D) ** 2,)


def test_nth_products_of_the_virasoro_element():
    assert nth_product(L, L, 0) == L.derivative()
    assert nth_product(L, L, 1) == L.scale(2)
    assert nth_product(L, GcElem.scalar(D * X, 1), 2) == GcElem.scalar(4 * X - 2 * ALPHA * D, 1)
    assert nth_product(L, L, 5).is_zero


def test_nth_product_rejects_negative_index():
    with pytest.raises(DomainError):
        nth_product(L, L, -1)


def test_size_mismatch():
    with pytest.raises(SizeMismatchError):
        lambda_bracket(GcElem.identity(1), GcElem.identity(2))
    with pytest.raises(SizeMismatchError):
        lambda_action(GcElem.identity(2), ModVec.unit(0, 1))
    with pytest.raises(SizeMismatchError):
        GcElem.identity(1) + GcElem.identity(2)


def test_entries_reject_foreign_variables():
    with pytest.raises(DomainError):
        GcElem.scalar(LAM, 1)
    with pytest.raises(DomainError):
        GcElem.from_rows([[X, Y]])
    with pytest.raises(DomainError):
        ModVec.from_entries([X])


def test_lambda_poly_rejects_zero_coefficients():
    with pytest.raises(DomainError):
        LambdaPoly(1, {0: GcElem.zero(1)})


def test_y_coordinate_of_the_virasoro_symbol():
    assert to_y(L) == (((Y - SIGMA * D) * QQ(1, 2),),)
    assert from_y(to_y(L)) == L


def test_homogeneous_parts_and_degree():
    a = GcElem.from_rows([[X**2 + D, 1], [0, SIGMA * D * X]])
    parts = a.homogeneous_parts()
    assert sorted(parts) == [0, 1, 2]
    assert parts[2] == GcElem.from_rows([[X**2, 0], [0, SIGMA * D * X]])
    assert a.degree() == 2


def test_str_uses_the_text_grammar():
    assert str(GcElem.from_rows([[X, 0], [QQ(1, 2) * D, 1]])) == "[[x, 0], [1/2*d, 1]]"


@given(same_size_elems(2))
def test_sesquilinearity(pair):
    a, b = pair
    assert check_sesquilinearity(a, b)


@given(same_size_elems(2))
def test_skewsymmetry(pair):
    a, b = pair
    assert check_skewsymmetry(a, b)


@given(symbolic_elems(1), symbolic_elems(1))
def test_skewsymmetry_with_sigma_parameter(a, b):
    assert check_skewsymmetry(a, b)


@given(same_size_elems(3))
def test_jacobi_identity(triple):
    a, b, c = triple
    assert check_jacobi_identity(a, b, c)


@given(elems_with_vector())
def test_module_axiom(case):
    a, b, v = case
    assert check_module_axiom(a, b, v)


@given(constant_matrices(2), constant_matrices(2))
def test_zeroth_product_of_constants_is_commutator(a, b):
    assert nth_product(a, b, 0) == a @ b - b @ a
