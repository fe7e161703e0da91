"""FastAPI service mirroring the read-only CLI queries."""

import logging
import sys
from typing import Annotated

import uvicorn
from fastapi import FastAPI, HTTPException, Query

from gcjacobi import suites
from gcjacobi.config import Limits
from gcjacobi.errors import GcError
from gcjacobi.gc import lambda_bracket
from gcjacobi.models import BracketRequest, BracketResponse, Report, VerifyRequest
from gcjacobi.parse import parse_poly
from gcjacobi.reduced import d_coeff
from gcjacobi.ring import format_poly
from gcjacobi.virasoro import q_basis, r_basis

logger = logging.getLogger(__name__)

app = FastAPI()


@app.post("/bracket")
async def bracket(request: BracketRequest) -> BracketResponse:
    """Lambda-bracket of two elements of gc_N."""
    try:
        result = lambda_bracket(request.a.to_elem(), request.b.to_elem())
    except GcError as e:
        raise HTTPException(status_code=400, detail=f"Invalid elements: {e!s}") from e
    return BracketResponse.from_lambda_poly(result)


@app.get("/basis")
async def basis(
    sigma: str = "s",
    n_max: Annotated[int, Query(ge=0, le=30)] = 2,
    kind: Annotated[str, Query(pattern=r"^[qr]$")] = "q",
) -> list[str]:
    """Q_0..Q_n_max (or R_n) as text."""
    build = q_basis if kind == "q" else r_basis
    try:
        value = parse_poly(sigma)
    except GcError as e:
        raise HTTPException(status_code=400, detail=f"Invalid sigma: {e!s}") from e
    return [format_poly(build(value, n)) for n in range(n_max + 1)]


@app.get("/dcoeff")
async def dcoeff(
    m: Annotated[int, Query(ge=0)], n: Annotated[int, Query(ge=0)], k: Annotated[int, Query(ge=0)], sigma: str = "s"
) -> str:
    """d_{m,n,k} as text."""
    try:
        return format_poly(d_coeff(m, n, k, parse_poly(sigma)))
    except GcError as e:
        raise HTTPException(status_code=400, detail=f"Invalid coefficient request: {e!s}") from e


@app.post("/verify/{suite}")
async def verify(suite: str, request: VerifyRequest) -> Report:
    """Run a named suite, or one family check for the family described by the request."""
    try:
        if suite in suites.FAMILY_CHECKS:
            spec = suites.family_spec(request.sign, request.S, request.N, k=request.k, star=request.star)
            report = suites.family_check(suite, spec, request.deg)
        else:
            report = suites.run_suite(suite, Limits(degree=request.deg))
    except GcError as e:
        raise HTTPException(status_code=400, detail=f"Cannot run {suite}: {e!s}") from e
    logger.info("verify %s: %s cases, %s failed", suite, len(report.cases), len(report.failures))
    return report


if __name__ == "__main__":
    package_logger = logging.getLogger("gcjacobi")
    package_logger.setLevel(logging.INFO)
    package_logger.addHandler(logging.StreamHandler(sys.stdout))
    uvicorn.run(app, host="127.0.0.1", port=8000)
