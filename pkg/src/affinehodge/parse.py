"""Recursive-descent parser for polynomials with rational coefficients.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Multiplication must be written out; ``2x`` is a syntax error.  Division is
only allowed by a nonzero constant.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .errors import ParseError
from .polyforms import MPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_DEFAULT_VAR = re.compile(r"x([1-9]\d*)$")


def tokenize(src: str) -> list:
    """(kind, text, position) triples; kind is 'int', 'name' or 'op'."""
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


def infer_variables(src: str) -> list:
    """x1..xN where N is the largest index among identifiers of the form x<k>."""
    top = 0
    for kind, text, pos in tokenize(src):
        if kind == "name":
            m = _DEFAULT_VAR.match(text)
            if m is None:
                raise ParseError(f"unknown variable {text!r} (declare variables explicitly)", pos)
            top = max(top, int(m.group(1)))
    return [f"x{i}" for i in range(1, max(top, 1) + 1)]


class _Parser:
    def __init__(self, src: str, names):
        self.toks = tokenize(src)
        self.i = 0
        self.names = list(names)
        self.index = {n: k for k, n in enumerate(self.names)}
        self.n = len(self.names)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        kind, t, pos = self.take()
        if t != text or kind != "op":
            raise ParseError(f"expected {text!r}, found {t or 'end of input'!r}", pos)

    def parse(self) -> MPoly:
        p = self.expr()
        kind, t, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {t!r} (implicit multiplication is not allowed)", pos)
        return p

    def expr(self) -> MPoly:
        acc = self.term()
        while True:
            kind, t, _ = self.peek()
            if kind == "op" and t in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t == "+" else acc - rhs
            else:
                return acc

    def term(self) -> MPoly:
        acc = self.unary()
        while True:
            kind, t, pos = self.peek()
            if kind == "op" and t in "*/":
                self.take()
                rhs = self.unary()
                if t == "*":
                    acc = acc * rhs
                else:
                    if not rhs.is_const() or not rhs:
                        raise ParseError("division only by a nonzero constant", pos)
                    acc = acc.scale(1 / rhs.const_term())
            else:
                return acc

    def unary(self) -> MPoly:
        kind, t, _ = self.peek()
        if kind == "op" and t in "+-":
            self.take()
            p = self.unary()
            return -p if t == "-" else p
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        kind, t, _ = self.peek()
        if kind == "op" and t == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a natural number", pos)
            return base ** int(text)
        return base

    def atom(self) -> MPoly:
        kind, t, pos = self.take()
        if kind == "int":
            return MPoly.const(self.n, mpq(int(t)))
        if kind == "name":
            k = self.index.get(t)
            if k is None:
                raise ParseError(f"unknown variable {t!r}", pos)
            return MPoly.var(self.n, k)
        if kind == "op" and t == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected {t or 'end of input'!r}", pos)


def parse_polynomial(src: str, names=None) -> MPoly:
    """Parse ``src`` into an exact MPoly over the given (or inferred) variables."""
    if names is None:
        names = infer_variables(src)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names")
    return _Parser(src, names).parse()


_FORM = re.compile(r"\s*nabla\s*\^\s*(\d+)\s*\((.*)\)\s*$", re.S)


def parse_form(src: str, names) -> tuple:
    """``P`` -> (0, P) meaning P*eta; ``nabla^k(P)`` -> (k, P)."""
    m = _FORM.match(src)
    if m is not None:
        return int(m.group(1)), parse_polynomial(m.group(2), names)
    return 0, parse_polynomial(src, names)


__all__ = ["parse_polynomial", "parse_form", "tokenize", "infer_variables"]
