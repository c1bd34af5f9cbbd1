"""Univariate polynomials in the derivation symbol over exact rationals.

``DPoly`` is the coefficient ring of every carrier in the engine.  Values are
immutable and always canonical: no trailing zero coefficients, the zero
polynomial is the empty coefficient tuple.  The degree of zero is the
distinguished marker ``NEG_INF`` so that ``rem.degree < q.degree`` reads
naturally in division post-conditions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rational import ZERO, ONE, format_scalar, parse_scalar

NEG_INF = float("-inf")


class DPoly:
    """A polynomial sum(c_k * d^k) with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "DPoly":
        return _ZERO_POLY

    @staticmethod
    def one() -> "DPoly":
        return _ONE_POLY

    @staticmethod
    def const(c: Fraction | int) -> "DPoly":
        return DPoly([c])

    @staticmethod
    def d(power: int = 1) -> "DPoly":
        """The monomial d^power."""
        if power < 0:
            raise ValueError("negative power")
        return DPoly([0] * power + [1])

    # -- structure ----------------------------------------------------

    @property
    def degree(self):
        """Degree, or NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def leading(self) -> Fraction:
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "DPoly") -> "DPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return DPoly(out)

    def __sub__(self, other: "DPoly") -> "DPoly":
        return self + (-other)

    def __neg__(self) -> "DPoly":
        return DPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            return self.scale(Fraction(other))
        if not self.coeffs or not other.coeffs:
            return _ZERO_POLY
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (Fraction, int)):
            return self.scale(Fraction(other))
        return NotImplemented

    def scale(self, c: Fraction) -> "DPoly":
        if c == 0:
            return _ZERO_POLY
        return DPoly([c * a for a in self.coeffs])

    def shift(self, k: int) -> "DPoly":
        """Multiply by d^k."""
        if k == 0 or not self.coeffs:
            return self
        return DPoly((ZERO,) * k + self.coeffs)

    def __divmod__(self, q: "DPoly") -> tuple["DPoly", "DPoly"]:
        """Division with remainder: self = q*quot + rem, deg rem < deg q."""
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(q.coeffs) - 1
        lead = q.coeffs[-1]
        quot = [ZERO] * max(0, len(rem) - dq)
        while len(rem) - 1 >= dq and rem:
            c = rem[-1] / lead
            k = len(rem) - 1 - dq
            quot[k] = c
            for i, qc in enumerate(q.coeffs):
                rem[k + i] -= c * qc
            while rem and rem[-1] == 0:
                rem.pop()
        return DPoly(quot), DPoly(rem)

    def __mod__(self, q: "DPoly") -> "DPoly":
        return divmod(self, q)[1]

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, DPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- serialization --------------------------------------------------

    def to_strings(self) -> list[str]:
        """JSON form: coefficient strings ascending in d-degree."""
        return [format_scalar(c) for c in self.coeffs]

    @staticmethod
    def from_strings(items: Sequence[str]) -> "DPoly":
        return DPoly([parse_scalar(s) for s in items])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = format_scalar(abs(c))
            else:
                dd = "d" if k == 1 else f"d^{k}"
                body = dd if abs(c) == 1 else f"{format_scalar(abs(c))}*{dd}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"DPoly({list(self.coeffs)!r})"


_ZERO_POLY = DPoly()
_ONE_POLY = DPoly([ONE])
