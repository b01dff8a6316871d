"""Recursive-descent parser for polynomial text.

Grammar (a superset of ``term (('+'|'-') term)*``)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ['-'] atom ['^' INT]
    atom   := INT | NAME | '(' expr ')'

``w`` is the primitive cube root of unity; every other name is a variable.
Division is only allowed by nonzero constants.
"""
from __future__ import annotations

import re
from typing import Sequence

from ..exactnum import OMEGA, Cyclotomic
from .poly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\S))")

OMEGA_NAME = "w"


class PolySyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", num))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
        pos = m.end()
    return out


def _collect_names(tokens) -> list[str]:
    seen: list[str] = []
    for kind, val in tokens:
        if kind == "name" and val != OMEGA_NAME and val not in seen:
            seen.append(val)
    return seen


class _Parser:
    def __init__(self, tokens, variables: tuple, text: str):
        self.toks = tokens
        self.i = 0
        self.vars = variables
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise PolySyntaxError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.i != len(self.toks):
            raise PolySyntaxError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> MultiPoly:
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                f = self.factor()
                if val == "*":
                    acc = acc * f
                else:
                    if not f.is_constant() or f.is_zero():
                        raise PolySyntaxError(f"division by a non-constant or zero in {self.text!r}")
                    acc = acc.scale(f.constant_term().inv())
            else:
                return acc

    def factor(self) -> MultiPoly:
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise PolySyntaxError(f"exponent must be an integer in {self.text!r}")
            base = base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val = self.take()
        if kind == "int":
            return MultiPoly.constant(int(val), self.vars)
        if kind == "name":
            if val == OMEGA_NAME:
                return MultiPoly.constant(OMEGA, self.vars)
            if val not in self.vars:
                raise PolySyntaxError(f"unknown variable {val!r} in {self.text!r}")
            return MultiPoly.var(val, self.vars)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise PolySyntaxError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text: str, variables: Sequence[str] | None = None) -> MultiPoly:
    """Parse ``text``; variables default to the names in order of appearance."""
    tokens = _tokenize(str(text))
    if not tokens:
        raise PolySyntaxError("empty polynomial text")
    if variables is None:
        variables = _collect_names(tokens)
    return _Parser(tokens, tuple(variables), text).parse()


def parse_scalar(text) -> Cyclotomic:
    if isinstance(text, (int, Cyclotomic)):
        return Cyclotomic.coerce(text)
    p = parse_poly(str(text), ())
    return p.constant_term()
