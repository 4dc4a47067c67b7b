"""Recursive-descent parser for the polynomial text syntax.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | 'i' | VAR | '(' expr ')'

``VAR`` is ``z1`` .. ``zd``.  Division is only allowed by nonzero constants,
so ``p/q`` rational literals work naturally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coeff import I, GaussianRational
from .poly import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(z\d+)|(i)(?![A-Za-z0-9_])|([-+*/^()]))")


class ParseError(ValueError):
    """Syntax error with a 0-based character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass
class _Tok:
    kind: str  # num, var, i, op, end
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("num", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("var", m.group(2), start))
        elif m.group(3):
            toks.append(_Tok("i", "i", start))
        else:
            toks.append(_Tok("op", m.group(4), start))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.toks = _tokenize(text)
        self.k = 0
        self.nvars = nvars

    def peek(self) -> _Tok:
        return self.toks[self.k]

    def take(self) -> _Tok:
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect_op(self, op: str) -> _Tok:
        t = self.take()
        if t.kind != "op" or t.text != op:
            raise ParseError(f"expected {op!r}", t.pos)
        return t

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            raise ParseError("empty expression", self.peek().pos)
        p = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take()
            q_pos = self.peek().pos
            q = self.unary()
            if op.text == "*":
                p = p * q
            else:
                if not q.is_constant():
                    raise ParseError("division by a non-constant", q_pos)
                c = q.constant_coefficient()
                if not c:
                    raise ParseError("division by zero", q_pos)
                p = p.scale(c.inverse())
        return p

    def unary(self) -> Polynomial:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            p = self.unary()
            return -p if t.text == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        p = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "num" or not t.text.isdigit():
                raise ParseError("exponent must be a non-negative integer", t.pos)
            p = p ** int(t.text)
        return p

    def atom(self) -> Polynomial:
        t = self.take()
        if t.kind == "num":
            return Polynomial.constant(GaussianRational(Fraction(t.text)), self.nvars)
        if t.kind == "i":
            return Polynomial.constant(I, self.nvars)
        if t.kind == "var":
            idx = int(t.text[1:])
            if not 1 <= idx <= self.nvars:
                raise ParseError(f"undeclared variable {t.text}", t.pos)
            return Polynomial.variable(idx - 1, self.nvars)
        if t.kind == "op" and t.text == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse ``text`` as a polynomial in ``z1..z{nvars}``."""
    return _Parser(text, nvars).parse()
