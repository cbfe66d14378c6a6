"""Recursive-descent parser for polynomial literals.

Grammar::

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := rational | var | '(' expr ')'
    rational := ('-')? nat ('/' posnat)?

Whitespace is ignored and the first term may carry a leading '-'.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import AlgebraContext, Polynomial


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


class _Parser:
    def __init__(self, text: str, ctx: AlgebraContext):
        self.text = text
        self.ctx = ctx
        self.pos = 0

    def error(self, message: str, at: int | None = None):
        raise PolynomialSyntaxError(message, self.pos if at is None else at, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def expr(self) -> Polynomial:
        negate = False
        if self.peek() == "-" and not self._number_follows():
            self.pos += 1
            negate = True
        result = self.term()
        if negate:
            result = -result
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def _number_follows(self) -> bool:
        j = self.pos + 1
        while j < len(self.text) and self.text[j].isspace():
            j += 1
        return j < len(self.text) and self.text[j].isdigit()

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek() == "*":
            self.pos += 1
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            if self.peek() != "" and not self.text[self.pos].isdigit():
                self.error("exponent must be a natural number")
            base = base ** self.nat()
        return base

    def base(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit() or ch == "-":
            return Polynomial.constant(self.ctx, self.rational())
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and (
                    self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.ctx:
                self.error(f"unknown variable {name!r}", start)
            return Polynomial.variable(self.ctx, name)
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def rational(self) -> Fraction:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        num = self.nat()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            den = self.nat()
            if den == 0:
                self.error("zero denominator", self.pos - 1)
        return Fraction(sign * num, den)


def parse_polynomial(text: str, ctx: AlgebraContext) -> Polynomial:
    """Parse ``text`` into a canonical polynomial over ``ctx``."""
    if not text or not text.strip():
        raise PolynomialSyntaxError("empty polynomial literal", 0, text)
    parser = _Parser(text, ctx)
    result = parser.expr()
    if parser.peek() != "":
        parser.error(f"unexpected trailing input {parser.text[parser.pos]!r}")
    return result


def parse_rational(text: str) -> Fraction:
    parser = _Parser(str(text), AlgebraContext(()))
    value = parser.rational()
    if parser.peek() != "":
        parser.error("unexpected trailing input")
    return value
