"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr     := sign? term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' natural)?
    atom     := variable | rational | '(' expr ')'
    rational := integer ('/' positive-integer)?

Whitespace is ignored; juxtaposition is not multiplication. Over a prime
field '/' inside a rational literal is field division.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .polynomial import Polynomial, PolyRing


class ParseError(ValueError):
    """Malformed input; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while j < n and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", j, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def expect_op(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            found = tok[1] or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")
        return self.take()

    def parse(self) -> Polynomial:
        result = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self) -> Polynomial:
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if tok[1] == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.peek()
            if exp[0] != "num":
                raise self.error("expected a natural-number exponent")
            self.take()
            return base ** int(exp[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        kind, value, pos = tok
        if kind == "num":
            self.take()
            num = int(value)
            den = 1
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.peek()
                if d[0] != "num":
                    raise self.error("expected a positive integer denominator")
                self.take()
                den = int(d[1])
                if den == 0:
                    raise self.error("zero denominator", d)
            try:
                return self.ring.constant(Fraction(num, den))
            except ZeroDivisionError:
                raise ParseError(
                    f"division by {den}, which is 0 in {self.ring.field}", pos, self.text) from None
        if kind == "name":
            self.take()
            try:
                return self.ring.var(self.ring.index(value))
            except KeyError:
                raise ParseError(f"unknown variable {value!r}", pos, self.text) from None
        if kind == "op" and value == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return inner
        found = value or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into the canonical expanded polynomial of ``ring``."""
    return _Parser(text, ring).parse()
