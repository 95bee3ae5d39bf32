"""Parser for differential expressions such as ``2*a*b - 1/2*x^2``.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := name | name '^' nat
    coeff  := int | int '/' nat

Multiplication is always written with ``*``; juxtaposition is an error so
that multi-letter names stay unambiguous.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .gca import AlgebraError, Element, GradedAlgebra

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[^\W\d]\w*)|(?P<op>[-+*/^]))")


class ExpressionError(ValueError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.msg = msg
        self.column = column


def _tokenize(text: str, line: int) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ExpressionError(f"unexpected character {text[col - 1]!r}", line, col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, algebra: GradedAlgebra, line: int):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.algebra = algebra
        self.line = line
        self.end_col = len(text.rstrip()) + 1

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg, col=None):
        raise ExpressionError(msg, self.line, self.peek()[2] if col is None else col)

    def expr(self) -> Element:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        total = self.term() * sign
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        if self.peek()[0] is not None:
            self.fail(f"unexpected {self.peek()[1]!r}")
        return total

    def term(self) -> Element:
        kind, val, col = self.peek()
        if kind == "num":
            value = self.coeff()
            result = self.algebra.one() * value
        elif kind == "name":
            result = self.factor()
        else:
            self.fail("expected a coefficient or a generator" if kind else "unexpected end of expression")
        while self.peek()[1] == "*":
            self.take()
            if self.peek()[0] == "num":
                self.fail("coefficients must come first in a term")
            result = result * self.factor()
        if self.peek()[0] in ("name", "num"):
            self.fail("missing '*' between factors")
        return result

    def coeff(self) -> Fraction:
        _, num, _ = self.take()
        value = Fraction(int(num))
        if self.peek()[1] == "/":
            self.take()
            kind, den, col = self.take()
            if kind != "num":
                self.fail("expected a denominator", col)
            if int(den) == 0:
                self.fail("zero denominator", col)
            value /= int(den)
        return value

    def factor(self) -> Element:
        kind, name, col = self.take()
        if kind != "name":
            self.fail("expected a generator", col)
        try:
            base = self.algebra.symbol(name)
        except (AlgebraError, KeyError):
            raise ExpressionError(f"unknown generator {name!r}", self.line, col) from None
        if self.peek()[1] == "^":
            self.take()
            kind, exp, ecol = self.take()
            if kind != "num":
                self.fail("expected an exponent", ecol)
            result = self.algebra.one()
            for _ in range(int(exp)):
                result = result * base
            return result
        return base


def parse_expression(text: str, algebra: GradedAlgebra, line: int = 1) -> Element:
    """Parse ``text`` into an element of ``algebra``."""
    return _Parser(text, algebra, line).expr()
