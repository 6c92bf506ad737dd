"""Recursive-descent parser for the element text grammar.

    ratfun := expr ('/' expr)?
    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' int)?
    atom   := uint | varname | '(' expr ')'

Integers are reduced mod p, exponents may be negative, whitespace is
insignificant.  A leading sign on an expression is accepted so that
coefficient strings like "-1" parse.  Parsing the canonical print of any
element returns an equal element.
"""

from __future__ import annotations

from .errors import ElementSyntaxError, UnknownVariable
from .fields import Tower, TowerElement

_OPS = set("+-*/^()")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(("int", src[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("name", src[i:j], i))
            i = j
            continue
        raise ElementSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str, tower: Tower) -> None:
        self.tower = tower
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, text, at = self.take()
        if kind != "op" or text != op:
            raise ElementSyntaxError(f"expected {op!r}", at)

    def ratfun(self) -> TowerElement:
        num = self.expr()
        kind, text, _ = self.peek()
        if kind == "op" and text == "/":
            self.take()
            den = self.expr()
            num = num / den
        kind, text, at = self.peek()
        if kind != "end":
            raise ElementSyntaxError(f"unexpected trailing {text!r}", at)
        return num

    def expr(self) -> TowerElement:
        kind, text, _ = self.peek()
        negate = False
        if kind == "op" and text in "+-":
            self.take()
            negate = text == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                rhs = self.term()
                acc = acc - rhs if text == "-" else acc + rhs
            else:
                return acc

    def term(self) -> TowerElement:
        acc = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> TowerElement:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            return base ** self.int_literal()
        return base

    def int_literal(self) -> int:
        kind, text, at = self.take()
        sign = 1
        if kind == "op" and text in "+-":
            sign = -1 if text == "-" else 1
            kind, text, at = self.take()
        if kind != "int":
            raise ElementSyntaxError("expected an integer exponent", at)
        return sign * int(text)

    def atom(self) -> TowerElement:
        kind, text, at = self.take()
        if kind == "int":
            return self.tower.const(int(text))
        if kind == "name":
            if text not in self.tower.vars:
                raise UnknownVariable(text, at)
            return self.tower.gen(text)
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ElementSyntaxError(f"unexpected {text!r}" if text else "unexpected end of input", at)


def parse_element(src: str, tower: Tower) -> TowerElement:
    """Parse element source text over the given tower."""
    return _Parser(src, tower).ratfun()
