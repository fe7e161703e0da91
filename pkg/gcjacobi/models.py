"""Pydantic models for reports and for gc_N elements on the wire."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from gcjacobi.gc import GcElem, LambdaPoly
from gcjacobi.parse import parse_poly

SCHEMA_VERSION = 1


class Case(BaseModel):
    """Outcome of one verification case."""

    model_config = ConfigDict(populate_by_name=True)

    params: dict[str, Any]
    passed: bool = Field(alias="pass")
    detail: str = ""


class Report(BaseModel):
    """A named suite of cases; serialized with the "schema" and "pass" keys."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    suite: str
    cases: list[Case] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True iff every case passed."""
        return all(case.passed for case in self.cases)

    @property
    def failures(self) -> list[Case]:
        """The failing cases, in order."""
        return [case for case in self.cases if not case.passed]

    def add(self, params: dict[str, Any], *, passed: bool, detail: str = "") -> None:
        """Append one case."""
        self.cases.append(Case(params=params, passed=passed, detail=detail))

    def merge(self, other: Report) -> None:
        """Append the cases of another report."""
        self.cases.extend(other.cases)

    def to_json(self) -> str:
        """Deterministic JSON with aliased keys."""
        return self.model_dump_json(by_alias=True, indent=2)


class GcElemModel(BaseModel):
    """An element of gc_N as {"n": N, "entries": [[poly, ...], ...]}."""

    n: int = Field(gt=0)
    entries: list[list[str]]

    def to_elem(self) -> GcElem:
        """Parse the entries."""
        return GcElem(self.n, tuple(tuple(parse_poly(p) for p in row) for row in self.entries))

    @classmethod
    def from_elem(cls, a: GcElem) -> GcElemModel:
        """Render the entries in the text grammar."""
        return cls(n=a.n, entries=a.to_strings())


class BracketRequest(BaseModel):
    """Two elements of the same gc_N."""

    a: GcElemModel
    b: GcElemModel


class BracketResponse(BaseModel):
    """Lambda-bracket by lambda-power, and the n-th products."""

    n: int
    coefficients: dict[str, GcElemModel]
    products: dict[str, GcElemModel]

    @classmethod
    def from_lambda_poly(cls, result: LambdaPoly) -> BracketResponse:
        """Collect the nonzero coefficients and the matching products."""
        return cls(
            n=result.n,
            coefficients={str(k): GcElemModel.from_elem(c) for k, c in result.coefficients.items()},
            products={str(k): GcElemModel.from_elem(result.product(k)) for k in result.coefficients},
        )


class VerifyRequest(BaseModel):
    """Selects one family of normalized subalgebras."""

    sign: str = Field(default="+", pattern=r"^[+-]$")
    S: int = Field(default=0, ge=0)  # noqa: N815
    k: int | None = Field(default=None, ge=0)
    star: str | None = Field(default=None, pattern=r"^(transpose|symplectic)$")
    N: int = Field(default=1, ge=1)  # noqa: N815
    deg: int = Field(default=4, ge=0)
