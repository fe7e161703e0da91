"""Text grammar for polynomials: `x^2 + 1/2*d*x - s*d^2`."""

from __future__ import annotations

import pyparsing as pp

from gcjacobi.errors import ParseError
from gcjacobi.ring import INDEX, QQ, RING, MPoly

GRAMMAR_VARIABLES = "dxylsabz"


def _to_rational(s: str, loc: int, toks: pp.ParseResults) -> MPoly:
    numerator = toks[0]
    denominator = toks[1] if len(toks) > 1 else 1
    if denominator == 0:
        raise pp.ParseFatalException(s, loc, "zero denominator")
    return RING.ground_new(QQ(numerator, denominator))


def _to_power(toks: pp.ParseResults) -> MPoly:
    exponent = toks[1] if len(toks) > 1 else 1
    return RING.gens[INDEX[toks[0]]] ** exponent


def _product(toks: pp.ParseResults) -> MPoly:
    result = RING.one
    for factor in toks:
        result *= factor
    return result


def _signed_sum(toks: pp.ParseResults) -> MPoly:
    total = RING.zero
    sign = 1
    for tok in toks:
        if isinstance(tok, str):
            sign = -1 if tok == "-" else 1
        else:
            total += sign * tok
            sign = 1
    return total


def _grammar() -> pp.ParserElement:
    integer = pp.Word(pp.nums).set_parse_action(lambda toks: int(toks[0]))
    rational = (integer + pp.Opt(pp.Suppress("/") - integer)).set_parse_action(_to_rational)
    power = (pp.Char(GRAMMAR_VARIABLES) + pp.Opt(pp.Suppress("^") - integer)).set_parse_action(_to_power)
    monomial = (power + pp.ZeroOrMore(pp.Suppress("*") + power)).set_parse_action(_product)
    term = ((rational + pp.Opt(pp.Suppress("*") - monomial)) | monomial).set_parse_action(_product)
    sign = pp.one_of("+ -")
    return (pp.Opt(sign) + term + pp.ZeroOrMore(sign - term)).set_parse_action(_signed_sum)


_POLY = _grammar()


def parse_poly(text: str) -> MPoly:
    """Parse one polynomial; raises ParseError with a 1-based column."""
    try:
        return _POLY.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ParseError(e.msg, e.col) from e
