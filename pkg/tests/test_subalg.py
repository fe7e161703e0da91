import itertools

import pytest
from hypothesis import given

from gcjacobi import suites
from gcjacobi.config import Limits
from gcjacobi.errors import DomainError, SizeMismatchError
from gcjacobi.gc import GcElem, nth_product
from gcjacobi.ring import RING, D, X
from gcjacobi.subalg import (
    Antiinvolution,
    FamilyLadder,
    IkN,
    MatrixSpace,
    RankIdeal,
    ScalarFamily,
    Sign,
    SpaceKind,
    Star,
    SubalgebraSpec,
    TruncatedSpan,
    describe,
    membership,
    reduced_family,
    scalar_family_membership,
    spanning_set,
    verify_closure,
    verify_normalized,
    verify_reduced_family,
    verify_submodule,
    virasoro_for,
)
from strategies import elems

TRANSPOSE_2 = Antiinvolution.transpose(2)
SYMPLECTIC_2 = Antiinvolution.symplectic(2)
CUSTOM_2 = Antiinvolution.from_matrix([[1, "1/2"], ["1/2", 2]])
SMALL_FAMILIES = list(suites.families(Limits(s_max=3, size_max=2)))


def _label(spec):
    return spec.label


def test_antiinvolution_validation():
    with pytest.raises(DomainError):
        Antiinvolution.from_matrix([[1, 1], [1, 1]])
    with pytest.raises(DomainError):
        Antiinvolution.from_matrix([[1, 2], [0, 1]])
    with pytest.raises(DomainError):
        Antiinvolution.symplectic(3)
    assert TRANSPOSE_2.sign == 1
    assert SYMPLECTIC_2.sign == -1
    assert CUSTOM_2.n == 2


@pytest.mark.parametrize("star", [TRANSPOSE_2, SYMPLECTIC_2, CUSTOM_2], ids=["transpose", "symplectic", "custom"])
@given(a=elems(2), b=elems(2))
def test_antiinvolution_axioms(star, a, b):
    assert star.apply(star.apply(a)) == a
    assert star.apply(a @ b) == star.apply(b) @ star.apply(a)
    assert star.conjugate_symbol(star.conjugate_symbol(a)) == a


def test_symplectic_on_units():
    assert SYMPLECTIC_2.apply(GcElem.unit(0, 1, 2)) == GcElem.unit(0, 1, 2).scale(-1)
    assert SYMPLECTIC_2.apply(GcElem.unit(0, 0, 2)) == GcElem.unit(1, 1, 2)


def test_idempotents():
    idem = IkN(1, 2)
    assert idem.elem == GcElem.unit(0, 0, 2)
    assert idem.complement == GcElem.unit(1, 1, 2)
    assert idem.elem @ idem.elem == idem.elem
    assert (idem.elem @ idem.complement).is_zero
    with pytest.raises(DomainError):
        IkN(3, 2)


def test_spec_validation_and_properties():
    spec = SubalgebraSpec(Sign.MINUS, 2, RankIdeal(1), 2)
    assert spec.sigma == -2
    assert spec.epsilon == -1
    assert spec.factor == (X + D) ** 2
    assert SubalgebraSpec(Sign.PLUS, 1, RankIdeal(0), 1).epsilon == 1
    with pytest.raises(DomainError):
        SubalgebraSpec(Sign.PLUS, -1, RankIdeal(0), 1)
    with pytest.raises(DomainError):
        SubalgebraSpec(Sign.PLUS, 1, RankIdeal(3), 2)
    with pytest.raises(SizeMismatchError):
        SubalgebraSpec(Sign.PLUS, 1, Star(TRANSPOSE_2), 1)


def test_virasoro_for_the_family():
    assert virasoro_for(SubalgebraSpec(Sign.PLUS, 3, RankIdeal(0), 1)).alpha == -RING.one
    assert virasoro_for(SubalgebraSpec(Sign.MINUS, 1, RankIdeal(0), 2)).sigma == -RING.one


def test_rank_ideal_membership():
    plus = SubalgebraSpec(Sign.PLUS, 2, RankIdeal(1), 2)
    assert membership(plus, GcElem.from_rows([[1, X**2 * D], [D, X**3]]))
    assert not membership(plus, GcElem.from_rows([[0, X * D], [0, 0]]))
    minus = SubalgebraSpec(Sign.MINUS, 1, RankIdeal(1), 2)
    assert membership(minus, GcElem.from_rows([[1, X], [X + D, (X + D) * X]]))
    assert not membership(minus, GcElem.from_rows([[0, 0], [X, 0]]))
    assert membership(SubalgebraSpec(Sign.PLUS, 4, RankIdeal(2), 2), GcElem.identity(2))
    with pytest.raises(SizeMismatchError):
        membership(plus, GcElem.identity(1))


def test_star_membership_in_gc1():
    transpose = Antiinvolution.transpose(1)
    odd = SubalgebraSpec(Sign.PLUS, 1, Star(transpose), 1)
    even = SubalgebraSpec(Sign.PLUS, 2, Star(transpose), 1)
    assert membership(odd, GcElem.scalar(2 * X, 1))
    assert not membership(even, GcElem.scalar(X**2, 1))
    assert membership(even, GcElem.scalar(X**2 * (2 * X + D), 1))
    minus = SubalgebraSpec(Sign.MINUS, 1, Star(transpose), 1)
    assert membership(minus, GcElem.scalar(X + D, 1))
    assert not membership(minus, GcElem.scalar(X, 1))


def test_spanning_set_example():
    spec = SubalgebraSpec(Sign.PLUS, 1, RankIdeal(0), 1)
    assert spanning_set(spec, 2) == [GcElem.scalar(p, 1) for p in (X, X**2, D * X)]
    assert spanning_set(spec, 2, generators_only=True) == [GcElem.scalar(p, 1) for p in (X, X**2)]
    assert describe(spec, 2) == ["x", "x^2", "d*x"]
    with pytest.raises(DomainError):
        spanning_set(spec, -1)


def test_star_spanning_set_parity():
    antisymmetric = spanning_set(SubalgebraSpec(Sign.PLUS, 0, Star(TRANSPOSE_2), 2), 0)
    assert antisymmetric
    assert all(a.transpose() == -a for a in antisymmetric)
    symmetric = spanning_set(SubalgebraSpec(Sign.PLUS, 1, Star(TRANSPOSE_2), 2), 1)
    assert all(a.transpose() == a for a in symmetric)
    assert len(symmetric) == 3


@pytest.mark.parametrize("spec", SMALL_FAMILIES, ids=_label)
def test_spanning_elements_are_members(spec):
    assert all(membership(spec, a) for a in spanning_set(spec, 3))


def test_truncated_span_example():
    span = TruncatedSpan.of(SubalgebraSpec(Sign.PLUS, 1, RankIdeal(0), 1), 2)
    assert span.dimension == 3
    assert span.contains(GcElem.scalar(X**2 + 3 * D * X, 1))
    assert span.contains(GcElem.scalar(RING.zero, 1))
    assert not span.contains(GcElem.scalar(D, 1))
    assert not span.contains(GcElem.scalar(X**3, 1))


@pytest.mark.parametrize("spec", SMALL_FAMILIES, ids=_label)
def test_truncated_span_agrees_with_membership(spec):
    span = TruncatedSpan.of(spec, 3)
    monomials = [D**a * X**b for a in range(4) for b in range(4 - a)]
    for i, j in itertools.product(range(spec.n), repeat=2):
        for m in monomials:
            unit = GcElem.unit(i, j, spec.n, m)
            assert span.contains(unit) == membership(spec, unit), (i, j, m)
    for a, b in itertools.pairwise(spanning_set(spec, 3)):
        assert span.contains(a + b.scale(-2))


@pytest.mark.parametrize("spec", SMALL_FAMILIES, ids=_label)
def test_closure(spec):
    report = verify_closure(spec, 4)
    assert report.ok, [case.detail for case in report.failures]


@pytest.mark.parametrize("spec", SMALL_FAMILIES, ids=_label)
def test_normalized_by_the_virasoro_element(spec):
    report = verify_normalized(spec, 4)
    assert report.ok, [case.detail for case in report.failures]


def test_custom_antiinvolution_family_is_closed():
    spec = SubalgebraSpec(Sign.MINUS, 1, Star(CUSTOM_2), 2)
    assert verify_closure(spec, 2).ok


def test_closure_report_is_the_same_with_workers():
    spec = SubalgebraSpec(Sign.PLUS, 1, Star(SYMPLECTIC_2), 2)
    assert verify_closure(spec, 3, workers=3) == verify_closure(spec, 3)


def test_full_closure_sweep():
    spec = SubalgebraSpec(Sign.MINUS, 1, RankIdeal(1), 2)
    report = verify_closure(spec, 2, full=True)
    assert report.ok
    assert len(report.cases) > len(verify_closure(spec, 2).cases)


def test_adjoining_the_identity_breaks_closure():
    spec = SubalgebraSpec(Sign.PLUS, 1, RankIdeal(0), 1)
    report = verify_closure(spec, 3, extra=(GcElem.identity(1),))
    assert not report.ok
    assert suites.negative_control_suite(3).ok


def test_lowering_operator_kills_the_factor():
    spec = SubalgebraSpec(Sign.PLUS, 3, RankIdeal(0), 1)
    virasoro = virasoro_for(spec)
    assert nth_product(virasoro.elem, GcElem.scalar(X**3, 1), 2).is_zero


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize(("k", "n"), [(1, 2), (1, 3), (2, 3)])
def test_invariant_submodule(s, k, n):
    report = verify_submodule(SubalgebraSpec(Sign.MINUS, s, RankIdeal(k), n), 3)
    assert report.ok
    assert report.cases[-1].params["proper"] is True


def test_submodule_needs_minus_rank_family():
    assert verify_submodule(SubalgebraSpec(Sign.MINUS, 0, RankIdeal(1), 2), 2).cases[-1].detail == "not proper"
    whole = verify_submodule(SubalgebraSpec(Sign.MINUS, 1, RankIdeal(2), 2), 2)
    assert whole.ok
    assert whole.cases[-1].params["proper"] is False
    with pytest.raises(DomainError):
        verify_submodule(SubalgebraSpec(Sign.PLUS, 1, RankIdeal(1), 2), 2)


def test_family_ladders():
    plus = reduced_family(SubalgebraSpec(Sign.PLUS, 2, RankIdeal(1), 2))
    assert str(plus.space(1)) == "Mat*I_1"
    assert plus.space(2).kind is SpaceKind.FULL
    minus = FamilyLadder(SubalgebraSpec(Sign.MINUS, 2, RankIdeal(1), 2))
    assert str(minus.space(0)) == "I_1*Mat"
    star = reduced_family(SubalgebraSpec(Sign.PLUS, 2, Star(TRANSPOSE_2), 2))
    assert star.space(1).kind is SpaceKind.ZERO
    assert str(star.space(2)) == "A*=-A"
    assert str(star.space(3)) == "A*=A"


def test_matrix_space_bases():
    assert len(MatrixSpace(SpaceKind.EIGEN, 2, eigenvalue=1, antiinvolution=TRANSPOSE_2).basis()) == 3
    assert len(MatrixSpace(SpaceKind.EIGEN, 2, eigenvalue=-1, antiinvolution=TRANSPOSE_2).basis()) == 1
    assert len(MatrixSpace(SpaceKind.EIGEN, 2, eigenvalue=-1, antiinvolution=SYMPLECTIC_2).basis()) == 3
    assert len(MatrixSpace(SpaceKind.RIGHT_IDEAL, 2, k=1).basis()) == 2
    assert MatrixSpace(SpaceKind.ZERO, 2).basis() == []
    assert not MatrixSpace(SpaceKind.LEFT_IDEAL, 2, k=1).contains(GcElem.unit(1, 0, 2))


@pytest.mark.parametrize(
    "spec",
    [
        SubalgebraSpec(Sign.PLUS, 1, RankIdeal(1), 2),
        SubalgebraSpec(Sign.MINUS, 2, RankIdeal(1), 2),
        SubalgebraSpec(Sign.PLUS, 1, Star(TRANSPOSE_2), 2),
        SubalgebraSpec(Sign.MINUS, 2, Star(TRANSPOSE_2), 2),
        SubalgebraSpec(Sign.PLUS, 0, Star(SYMPLECTIC_2), 2),
    ],
    ids=_label,
)
def test_reduced_family(spec):
    report = verify_reduced_family(spec, 3, m_max=3)
    assert report.ok, [case.detail for case in report.failures]


def test_scalar_families_by_division():
    assert scalar_family_membership(ScalarFamily.PLUS, 2, X**2 * D)
    assert not scalar_family_membership(ScalarFamily.MINUS, 1, X)
    assert scalar_family_membership(ScalarFamily.PLUS_STAR, 1, X * (X**2 + X * D))
    assert not scalar_family_membership(ScalarFamily.PLUS_STAR, 0, X + 1)
    assert suites.scalar_suite(s_max=3, degree=4, samples=10).ok
