"""Superpotential text such as ``2.5*x^-1``, ``1/x`` or ``0.7 x^2``."""

from dataclasses import dataclass
from fractions import Fraction

from lark import Lark, Transformer, UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from ..base.utils import as_fraction
from ..exceptions import GrammarError, NonMonomial
from ..ring import QuasiPoly

superpotential_grammar = r"""
    ?start: monomial

    monomial: NUMBER ("*"? X power?)?         -> scaled
            | NUMBER "/" denominator          -> divided
            | X power?                        -> bare

    denominator: X power?                     -> inverse
               | INT ("*"? X power?)?         -> rational

    power: "^" EXPONENT
         | "^" "(" EXPONENT ")"

    X: "x"
    NUMBER: /[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?/
    INT: /\d+/
    EXPONENT: /[-+]?\d+(\/\d+)?/

    %import common.WS
    %ignore WS
"""


@dataclass(frozen=True)
class SuperpotentialExpr:
    coefficient: Fraction
    power: Fraction

    def format(self) -> str:
        c = self.coefficient
        coefficient = repr(float(c)) if as_fraction(float(c)) == c else f"{c.numerator}/{c.denominator}"
        if self.power == 0:
            return coefficient
        power = "" if self.power == 1 else f"^{self.power}"
        return f"{coefficient}*x{power}"

    def to_quasipoly(self) -> QuasiPoly:
        return QuasiPoly.monomial(float(self.coefficient), s=self.power)


class _MonomialBuilder(Transformer):
    def power(self, items):
        return Fraction(str(items[0]))

    def scaled(self, items):
        coefficient = as_fraction(str(items[0]))
        if len(items) == 1:
            return SuperpotentialExpr(coefficient, Fraction(0))
        return SuperpotentialExpr(coefficient, items[2] if len(items) > 2 else Fraction(1))

    def bare(self, items):
        return SuperpotentialExpr(Fraction(1), items[1] if len(items) > 1 else Fraction(1))

    def divided(self, items):
        numerator, (denominator, power) = as_fraction(str(items[0])), items[1]
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        return SuperpotentialExpr(numerator / denominator, power)

    def inverse(self, items):
        return Fraction(1), -(items[1] if len(items) > 1 else Fraction(1))

    def rational(self, items):
        denominator = Fraction(int(items[0]))
        if len(items) == 1:
            return denominator, Fraction(0)
        return denominator, items[2] if len(items) > 2 else Fraction(1)


_parser = Lark(superpotential_grammar, start="start", parser="lalr")


def _column(error: UnexpectedInput, src: str) -> int:
    if isinstance(error, UnexpectedEOF) or getattr(error, "column", None) in (None, -1):
        return len(src) + 1
    return error.column


def parse_superpotential(src: str) -> SuperpotentialExpr:
    """Parse a single monomial ``c*x^p``; sums are rejected at the operator."""
    try:
        tree = _parser.parse(src)
    except UnexpectedInput as error:
        column = _column(error, src)
        offending = src[column - 1] if 0 < column <= len(src) else ""
        if isinstance(error, UnexpectedToken) and str(error.token):
            offending = str(error.token)[0]
        if isinstance(error, (UnexpectedCharacters, UnexpectedToken)) and offending in "+-" and column > 1:
            raise NonMonomial(f"superpotential must be a single monomial, found {offending!r}", src, column) from None
        raise GrammarError(f"cannot parse superpotential at column {column}", src, column) from None
    try:
        return _MonomialBuilder().transform(tree)
    except Exception as error:
        raise GrammarError(f"invalid superpotential: {error}", src, 1) from None
