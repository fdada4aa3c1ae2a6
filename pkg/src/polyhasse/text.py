"""Text form of polynomials.

Grammar (whitespace ignored)::

    expression := ['+'|'-'] term (('+'|'-') term)*
    term       := coeff ('*' monomial)? | monomial
    coeff      := integer | integer '/' integer
    monomial   := var ('^' natural)? ('*' var ('^' natural)?)*
    var        := [A-Za-z][A-Za-z0-9_]*

Printing lists terms in graded-lex order, highest grade first, suppresses a
unit coefficient and writes a negative coefficient as ``- c``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import multiindex as mi
from .errors import ParseError, UnknownVariable
from .polynomial import Polynomial
from .rings import RingSpec

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([-+*/^]))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        kind = "int" if m.group(1) else "name" if m.group(2) else "op"
        start = m.start(m.lastindex)
        out.append((kind, m.group(m.lastindex), start + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, vars, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)
        self.index = {v: k for k, v in enumerate(self.vars)}
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", tok[2])
        return tok

    def expression(self):
        terms = {}
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        while True:
            coeff, exp = self.term()
            terms[exp] = terms.get(exp, 0) + sign * coeff
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return terms

    def term(self):
        tok = self.peek()
        if tok[0] == "int":
            coeff = self.coeff()
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                return coeff, self.monomial()
            return coeff, mi.zero(len(self.vars))
        if tok[0] == "name":
            return 1, self.monomial()
        raise ParseError(f"expected a term, got {tok[1] or 'end of input'!r}", tok[2])

    def coeff(self):
        num = int(self.take()[1])
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "/":
            self.take()
            den_tok = self.expect("int")
            den = int(den_tok[1])
            if den == 0:
                raise ParseError("zero denominator", den_tok[2])
            return Fraction(num, den)
        return num

    def monomial(self):
        exp = [0] * len(self.vars)
        while True:
            _, name, col = self.expect("name")
            if name not in self.index:
                raise UnknownVariable(f"unknown variable {name!r} at column {col}")
            power = 1
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "^":
                self.take()
                power = int(self.expect("int")[1])
            exp[self.index[name]] += power
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                continue
            return tuple(exp)


def parse_poly(text: str, vars, ring: RingSpec) -> Polynomial:
    """Parse ``text`` into a canonical polynomial over ``vars`` and ``ring``."""
    terms = _Parser(text, vars, ring).expression()
    return Polynomial(ring, vars, terms)


def _monomial_str(vars, exp) -> str:
    parts = []
    for name, e in zip(vars, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for exp in sorted(p.terms, key=mi.print_key):
        c = p.terms[exp]
        neg = c < 0
        mag = -c if neg else c
        mono = _monomial_str(p.vars, exp)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
