"""Exact scalars: rationals and multivariate polynomials over the rationals.

Rationals are plain :class:`fractions.Fraction` (or ``int``) values.  A
:class:`Poly` is only ever non-constant: every arithmetic operation collapses
a constant result back to a ``Fraction``, so a scalar has exactly one
canonical form and ``==`` is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "Poly",
    "Scalar",
    "ParameterContext",
    "ScalarSyntaxError",
    "InexactDivision",
    "parse_scalar",
    "format_scalar",
    "try_divide",
    "is_constant",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ScalarSyntaxError(ValueError):
    """Malformed scalar text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class InexactDivision(ArithmeticError):
    pass


@dataclass(frozen=True)
class ParameterContext:
    """Ordered free parameters available to polynomial scalars."""

    names: tuple[str, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"bad parameter name {n!r}")

    def __len__(self):
        return len(self.names)

    def param(self, name: str) -> "Poly":
        i = self.names.index(name)
        exp = tuple(int(k == i) for k in range(len(self.names)))
        return Poly(self.names, {exp: Fraction(1)})


class Poly:
    """Non-constant polynomial with rational coefficients.

    ``terms`` maps dense exponent vectors (one entry per name in ``params``)
    to nonzero ``Fraction`` coefficients.  Build these through
    :meth:`make`, which returns a ``Fraction`` when the result is constant.
    """

    __slots__ = ("params", "terms", "_hash")

    def __init__(self, params: tuple[str, ...], terms: dict):
        self.params = params
        self.terms = terms
        self._hash = None

    @staticmethod
    def make(params, terms):
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return Fraction(0)
        zero = (0,) * len(params)
        if len(terms) == 1 and zero in terms:
            return Fraction(terms[zero])
        return Poly(params, terms)

    # -- coercion ---------------------------------------------------------

    def _terms_of(self, other):
        if isinstance(other, Poly):
            if other.params != self.params:
                raise ValueError(
                    f"parameter mismatch: {self.params} vs {other.params}")
            return other.terms
        if isinstance(other, Rational):
            return {(0,) * len(self.params): Fraction(other)} if other else {}
        return None

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        ot = self._terms_of(other)
        if ot is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in ot.items():
            out[e] = out.get(e, 0) + c
        return Poly.make(self.params, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        ot = self._terms_of(other)
        if ot is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in ot.items():
            out[e] = out.get(e, 0) - c
        return Poly.make(self.params, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        ot = self._terms_of(other)
        if ot is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in ot.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly.make(self.params, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Fraction(1)
        base = self
        while k:
            if k & 1:
                result = base * result
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        return try_divide(self, other)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.params == other.params and self.terms == other.terms
        if isinstance(other, Rational):
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Poly({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def degree(self) -> int:
        return max(sum(e) for e in self.terms)

    def leading(self):
        """Leading (exponent, coefficient) in lexicographic order."""
        e = max(self.terms)
        return e, self.terms[e]


Scalar = Union[int, Fraction, Poly]


def is_constant(s) -> bool:
    return not isinstance(s, Poly)


# -- exact division --------------------------------------------------------


def try_divide(a, d):
    """Return ``q`` with ``q * d == a`` exactly, or raise.

    Raises ``ZeroDivisionError`` for ``d == 0`` and :class:`InexactDivision`
    when ``d`` is a polynomial that does not divide ``a``.
    """
    if not d:
        raise ZeroDivisionError("division by zero scalar")
    if not isinstance(d, Poly):
        if isinstance(a, Poly):
            inv = 1 / Fraction(d)
            return Poly(a.params, {e: c * inv for e, c in a.terms.items()})
        return Fraction(a) / Fraction(d)
    if not a:
        return Fraction(0)
    if not isinstance(a, Poly):
        raise InexactDivision(f"{format_scalar(d)} does not divide {format_scalar(a)}")
    if a.params != d.params:
        raise ValueError("parameter mismatch")
    # single-divisor division in lex order; exact iff remainder vanishes
    de, dc = d.leading()
    q = Fraction(0)
    r = a
    while r:
        if not isinstance(r, Poly):
            raise InexactDivision(f"{format_scalar(d)} does not divide {format_scalar(a)}")
        re_, rc = r.leading()
        if any(x < y for x, y in zip(re_, de)):
            raise InexactDivision(f"{format_scalar(d)} does not divide {format_scalar(a)}")
        t = Poly.make(a.params, {tuple(x - y for x, y in zip(re_, de)): rc / dc})
        q = q + t
        r = r - t * d
    return q


# -- printing --------------------------------------------------------------


def _fmt_rational(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _term_order(e):
    return (sum(e), e)


def format_scalar(s) -> str:
    """Canonical text: terms by descending total degree, then lex."""
    if not isinstance(s, Poly):
        return _fmt_rational(s)
    parts = []
    for e in sorted(s.terms, key=_term_order, reverse=True):
        c = s.terms[e]
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(s.params, e) if k)
        mag = abs(c)
        if not mono:
            body = _fmt_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_rational(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ScalarSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    """Recursive descent.

    expr   := ['-'|'+'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := ['-'] power
    power  := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'
    """

    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ScalarSyntaxError(f"expected {op!r}", self.text, pos)

    def error(self, msg):
        raise ScalarSyntaxError(msg, self.text, self.peek()[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                v = v + rhs if val == "+" else v - rhs
            else:
                return v

    def term(self):
        v = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            v = v * self.factor()
        return v

    def factor(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            f = self.factor()
            return -f if val == "-" else f
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ScalarSyntaxError("exponent must be a nonnegative integer",
                                        self.text, pos)
            return base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            num = int(val)
            if self.peek()[:2] == ("op", "/"):
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise ScalarSyntaxError("expected integer denominator", self.text, p2)
                if int(v2) == 0:
                    raise ScalarSyntaxError("zero denominator", self.text, p2)
                return Fraction(num, int(v2))
            return Fraction(num)
        if kind == "name":
            if val not in self.ctx.names:
                raise ScalarSyntaxError(f"unknown parameter {val!r}", self.text, pos)
            return self.ctx.param(val)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        if kind == "end":
            raise ScalarSyntaxError("unexpected end of input", self.text, pos)
        raise ScalarSyntaxError(f"unexpected token {val!r}", self.text, pos)


def parse_scalar(text: str, ctx: ParameterContext | None = None):
    """Parse scalar text into its canonical exact value."""
    return _Parser(text, ctx or ParameterContext()).parse()
