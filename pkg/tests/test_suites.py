import json
import random

import pytest
from pydantic import ValidationError

from gcjacobi import suites
from gcjacobi.config import Limits, Settings, load_settings
from gcjacobi.errors import DomainError, GcError
from gcjacobi.models import SCHEMA_VERSION, Report
from gcjacobi.subalg import RankIdeal, Sign, Star, SubalgebraSpec


def test_random_elements_are_reproducible():
    assert suites.random_elem(random.Random(7), 2, 3) == suites.random_elem(random.Random(7), 2, 3)
    assert suites.random_matrix(random.Random(1), 3).degree() <= 0


@pytest.mark.parametrize(
    "report",
    [
        lambda: suites.axioms_suite(seed=1, count=3, size_max=2, degree=2),
        lambda: suites.virasoro_suite(count=3),
        lambda: suites.qbasis_suite(n_max=6),
        lambda: suites.jacobi_suite(n_max=8, param_n_max=4, order=5),
        lambda: suites.parity_suite(3, 8),
        lambda: suites.reduced_suite(m_max=3, matrix_m_max=2, matrix_pairs=2),
        lambda: suites.dlaws_suite(3, 2, 5),
        lambda: suites.dcoeff_suite(m_max=3, facts_max=4, rank_count=5),
        lambda: suites.negative_control_suite(3),
        lambda: suites.scalar_suite(s_max=1, degree=3, samples=5),
    ],
    ids=["axioms", "virasoro", "qbasis", "jacobi", "parity", "reduced", "dlaws", "dcoeff", "negative", "scalar"],
)
def test_suites_pass_on_small_ranges(report):
    result = report()
    assert result.cases
    assert result.ok, result.failures


@pytest.mark.parametrize(
    "report",
    [
        lambda: suites.axioms_suite(seed=3, count=50, size_max=3, degree=4),
        lambda: suites.qbasis_suite(n_max=20),
        lambda: suites.dcoeff_suite(m_max=6, facts_max=8, rank_count=20, seed=5),
    ],
    ids=["axioms", "qbasis", "dcoeff"],
)
def test_suites_pass_on_full_ranges(report):
    result = report()
    assert result.cases
    assert result.ok, result.failures


def test_run_suite_by_name():
    report = suites.run_suite("negative-control", Limits(degree=3))
    assert report.suite == "negative-control"
    assert report.ok
    with pytest.raises(GcError):
        suites.run_suite("nope", Limits())


def test_every_suite_name_is_registered():
    assert set(suites.SUITES) >= {"axioms", "qbasis", "jacobi", "reduced", "dcoeff", "negative-control"}


def test_family_enumeration():
    specs = list(suites.families(Limits(s_max=0, size_max=1)))
    assert len(specs) == 6
    specs = list(suites.families(Limits(s_max=1, size_max=2)))
    assert sum(isinstance(spec.variant, Star) for spec in specs) == 2 * 2 * (1 + 2)
    submodules = list(suites.submodule_families(iter(specs)))
    assert [spec.label for spec in submodules] == [
        "R(-)_{S=0,k=1} N=2",
        "R(-)_{S=1,k=1} N=2",
    ]


def test_configured_antiinvolution_is_swept():
    settings = Settings(star_matrix=[["1", "0"], ["0", "-1"]])
    names = [star.name for star in suites.antiinvolutions(2, settings)]
    assert names == ["transpose", "symplectic", "custom"]
    assert [star.name for star in suites.antiinvolutions(3, settings)] == ["transpose"]


def test_family_spec_from_flags():
    assert suites.family_spec("-", 2, 3, k=1) == SubalgebraSpec(Sign.MINUS, 2, RankIdeal(1), 3)
    assert suites.family_spec("+", 0, 2).variant == RankIdeal(0)
    assert suites.family_spec("+", 1, 2, star="symplectic").variant.antiinvolution.name == "symplectic"
    custom = suites.family_spec("+", 1, 2, star="custom", star_matrix=[["0", "1"], ["-1", "0"]])
    assert custom.variant.antiinvolution.sign == -1
    with pytest.raises(DomainError):
        suites.family_spec("+", 1, 2, star="custom")


def test_family_check_dispatch():
    spec = suites.family_spec("-", 1, 2, k=1)
    for name in suites.FAMILY_CHECKS:
        assert suites.family_check(name, spec, 2, m_max=2).ok
    with pytest.raises(GcError):
        suites.family_check("bogus", spec, 2)


def test_sweep_merges_reports():
    specs = suites.families(Limits(s_max=0, size_max=1))
    report = suites.family_sweep(lambda spec: suites.family_check("normalized", spec, 1), specs, "normalized")
    assert report.suite == "normalized"
    assert report.ok
    assert {case.params["family"] for case in report.cases} >= {"R(+)_{S=0,k=0} N=1"}


def test_report_json_uses_schema_and_pass_keys():
    report = Report(suite="demo")
    report.add({"n": 1}, passed=True)
    report.add({"n": 2}, passed=False, detail="boom")
    data = json.loads(report.to_json())
    assert data["schema"] == SCHEMA_VERSION
    assert data["cases"][1] == {"params": {"n": 2}, "pass": False, "detail": "boom"}
    assert not report.ok
    assert [case.params["n"] for case in report.failures] == [2]


def test_load_settings(tmp_path):
    assert load_settings(None) == Settings()
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"limits": {"s_max": 1, "workers": 2}, "star_matrix": [["1", "1/2"], ["1/2", "2"]]}))
    settings = load_settings(path)
    assert settings.limits.s_max == 1
    assert settings.limits.workers == 2
    assert settings.limits.degree == Limits().degree
    assert settings.star_matrix[0][1] == "1/2"
    path.write_text(json.dumps({"limits": {"s_max": -1}}))
    with pytest.raises(ValidationError):
        load_settings(path)
