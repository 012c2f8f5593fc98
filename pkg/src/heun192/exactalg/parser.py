"""ASCII expression grammar and the deterministic printer.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | SYMBOL | "(" expr ")"

Whitespace is insignificant.  ``^`` takes integer literals only.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .poly import MultiPoly, Registry, UnknownSymbol, _grlex_key

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ExprSyntaxError(SyntaxError):
    """Malformed expression text; ``position`` is the character offset."""

    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("sym", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    def __init__(self, text, registry):
        from .ratexpr import RatExpr

        self.R = RatExpr
        self.text = text
        self.registry = registry
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, self.text, tok[2])

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return e

    def expr(self):
        e = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self):
        e = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                e = e * rhs
            else:
                if rhs.is_zero():
                    from .ratexpr import DivisionByZero

                    raise DivisionByZero(f"division by zero at position {tok[2]} in {self.text!r}")
                e = e / rhs
        return e

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            e = self.unary()
            return -e if t[1] == "-" else e
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            k = self.take()
            if k[0] != "int":
                self.error("exponent must be an integer literal", k)
            base = base ** (sign * k[1])
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return self.R.const(self.registry, t[1])
        if t[0] == "sym":
            if t[1] not in self.registry:
                raise UnknownSymbol(f"unknown symbol {t[1]!r} at position {t[2]} in {self.text!r}")
            return self.R.symbol(self.registry, t[1])
        if t[0] == "op" and t[1] == "(":
            e = self.expr()
            self.expect(")")
            return e
        self.error("unexpected token", t)


def parse(text: str, registry: Registry):
    """Parse ``text`` into a canonical :class:`RatExpr`."""
    return _Parser(text, registry).parse()


def _fmt_mono(names, m):
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _fmt_terms(names, terms):
    """Format integer-coefficient terms, highest graded-lex term first."""
    if not terms:
        return "0"
    out = []
    for idx, (m, c) in enumerate(sorted(terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)):
        mono = _fmt_mono(names, m)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_poly(p: MultiPoly) -> str:
    from math import lcm
    from functools import reduce

    L = reduce(lcm, (Fraction(c).denominator for c in p.terms.values()), 1)
    body = _fmt_terms(p.registry.names, {m: int(c * L) for m, c in p.terms.items()})
    if L == 1:
        return body
    return f"({body})/{L}"


def _needs_parens_den(terms):
    if len(terms) != 1:
        return True
    (m, c), = terms.items()
    if c != 1:
        return any(m)
    return sum(1 for e in m if e) > 1


def format_expr(e) -> str:
    """Deterministic text form; ``parse(format_expr(e)) == e``."""
    from math import lcm
    from functools import reduce

    num, den = e._num, e._den
    L = reduce(lcm, (Fraction(c).denominator for c in num.values()), 1)
    names = e.registry.names
    N = {m: int(c * L) for m, c in num.items()}
    D = {m: int(c * L) for m, c in den.items()}
    ns = _fmt_terms(names, N)
    if len(D) == 1 and not any(next(iter(D))) and next(iter(D.values())) == 1:
        return ns
    ds = _fmt_terms(names, D)
    if len(N) > 1:
        ns = f"({ns})"
    if _needs_parens_den(D):
        ds = f"({ds})"
    return f"{ns}/{ds}"
