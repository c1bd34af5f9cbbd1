"""Tiny expression language for elements and modes on the command line.

Element syntax: sign-separated terms, each a product of scalar factors
(rationals ``p/q``, powers of the derivation symbol ``d``, ``d^k``, or a
parenthesized polynomial in ``d``) followed by a basis or generator name,
e.g. ``(d+1/2)u``, ``3*u1 - d^2 u2``, ``u^th``.  Mode syntax: terms
``[coeff*]name:mode`` with integer modes, e.g. ``L:2``, ``3/2*G:-1 + L:0``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .dpoly import DPoly
from .rational import ONE

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*(?:\^th)?)"
    r"|(?P<sym>[-+*()^:]))"
)


class ExprError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ExprError(f"cannot tokenize {rest!r}")
        tokens.append(m.group("number") or m.group("ident") or m.group("sym"))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, sym: str) -> None:
        tok = self.take()
        if tok != sym:
            raise ExprError(f"expected {sym!r}, found {tok!r}")

    # -- polynomial in d --------------------------------------------------

    def _dpow(self) -> DPoly:
        self.expect("d")
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ExprError(f"expected an integer power, found {tok!r}")
            return DPoly.d(int(tok))
        return DPoly.d()

    def _is_number(self, tok: str | None) -> bool:
        return tok is not None and tok[0].isdigit()

    def _factor(self) -> DPoly:
        tok = self.peek()
        if tok == "(":
            self.take()
            p = self._poly_sum()
            self.expect(")")
            return p
        if tok == "d":
            return self._dpow()
        if self._is_number(tok):
            return DPoly.const(Fraction(self.take()))
        raise ExprError(f"expected a scalar factor, found {tok!r}")

    def _poly_product(self) -> DPoly:
        p = self._factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                p = p * self._factor()
            elif tok == "d" or tok == "(" or self._is_number(tok):
                p = p * self._factor()
            else:
                return p

    def _poly_sum(self) -> DPoly:
        sign = ONE
        if self.peek() in ("+", "-"):
            sign = -ONE if self.take() == "-" else ONE
        acc = self._poly_product().scale(sign)
        while self.peek() in ("+", "-"):
            sign = -ONE if self.take() == "-" else ONE
            acc = acc + self._poly_product().scale(sign)
        return acc

    # -- element terms ----------------------------------------------------

    def _element_term(self) -> tuple[str, DPoly]:
        coeff = DPoly.one()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                continue
            if tok == "(" or tok == "d" or self._is_number(tok):
                coeff = coeff * self._factor()
                continue
            if tok is None:
                raise ExprError("term is missing a basis or generator name")
            name = self.take()
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*(\^th)?", name):
                raise ExprError(f"expected a name, found {name!r}")
            return name, coeff

    def parse_element(self) -> dict[str, DPoly]:
        out: dict[str, DPoly] = {}
        sign = ONE
        if self.peek() in ("+", "-"):
            sign = -ONE if self.take() == "-" else ONE
        name, poly = self._element_term()
        out[name] = poly.scale(sign)
        while self.peek() is not None:
            tok = self.take()
            if tok not in ("+", "-"):
                raise ExprError(f"expected + or -, found {tok!r}")
            sign = -ONE if tok == "-" else ONE
            name, poly = self._element_term()
            cur = out.get(name, DPoly.zero())
            out[name] = cur + poly.scale(sign)
        return out

    # -- mode terms ----------------------------------------------------------

    def _mode_term(self) -> tuple[str, int, Fraction]:
        coeff = ONE
        if self._is_number(self.peek()):
            coeff = Fraction(self.take())
            if self.peek() == "*":
                self.take()
        name = self.take()
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*(\^th)?", name):
            raise ExprError(f"expected a name, found {name!r}")
        self.expect(":")
        neg = False
        if self.peek() == "-":
            self.take()
            neg = True
        tok = self.take()
        if not tok.isdigit():
            raise ExprError(f"expected an integer mode, found {tok!r}")
        mode = -int(tok) if neg else int(tok)
        return name, mode, coeff

    def parse_modes(self) -> list[tuple[str, int, Fraction]]:
        out = []
        sign = ONE
        if self.peek() in ("+", "-"):
            sign = -ONE if self.take() == "-" else ONE
        name, mode, coeff = self._mode_term()
        out.append((name, mode, coeff * sign))
        while self.peek() is not None:
            tok = self.take()
            if tok not in ("+", "-"):
                raise ExprError(f"expected + or -, found {tok!r}")
            sign = -ONE if tok == "-" else ONE
            name, mode, coeff = self._mode_term()
            out.append((name, mode, coeff * sign))
        return out


def parse_element_components(text: str) -> dict[str, DPoly]:
    """Parse an element expression into name -> polynomial components."""
    parser = _Parser(_tokenize(text))
    out = parser.parse_element()
    return {k: v for k, v in out.items() if not v.is_zero()}


def parse_mode_terms(text: str) -> list[tuple[str, int, Fraction]]:
    """Parse a mode expression into (name, mode, coefficient) terms."""
    return _Parser(_tokenize(text)).parse_modes()
