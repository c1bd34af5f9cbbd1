"""Exact rational scalars and generalized binomial coefficients.

The scalar field is Q, realized by :class:`fractions.Fraction` (arbitrary
precision, always in lowest terms with positive denominator).  Scalars
serialize as ``"p/q"`` or ``"p"``; decimal literals are rejected so that no
inexact value can enter the engine.
"""

from __future__ import annotations

import re
from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into an exact rational.

    Raises ``ValueError`` on anything else, in particular on decimal
    literals such as ``"0.5"``.
    """
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not an exact rational literal: {text!r} (use 'p' or 'p/q')")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Fraction(num, den)


def format_scalar(x: Fraction) -> str:
    """Render a rational as ``"p"`` or ``"p/q"`` (lowest terms)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def falling(m: int, k: int) -> int:
    """Falling factorial m(m-1)...(m-k+1); empty product for k = 0."""
    if k < 0:
        raise ValueError("falling factorial needs k >= 0")
    out = 1
    for i in range(k):
        out *= m - i
    return out


def gen_binomial(m: int, k: int) -> Fraction:
    """Generalized binomial coefficient for integer m of either sign.

    Defined as m(m-1)...(m-k+1) / k!, which agrees with the ordinary
    binomial for m >= 0 and extends it to all integers (always an integer
    value, returned as a Scalar).
    """
    if k < 0:
        raise ValueError("gen_binomial needs k >= 0")
    num = falling(m, k)
    den = 1
    for i in range(1, k + 1):
        den *= i
    return Fraction(num, den)
