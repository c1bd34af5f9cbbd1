"""Finite-dimensional Lie (super)algebra structure constants and validation.

A :class:`LieSuperData` records a basis with Z_2 parities and the bracket on
basis pairs as finitely supported rational combinations.  ``validate`` checks
super skew-symmetry, parity homogeneity, and the super Jacobi identity on all
basis triples; violations are reported, not raised, so broken inputs can be
inspected.
"""

from __future__ import annotations

from fractions import Fraction

from .rational import ZERO
from .reports import Report, Violation

Combo = dict[str, Fraction]


def _combo_add(a: Combo, b: Combo, factor: Fraction = Fraction(1)) -> Combo:
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, ZERO) + factor * v
        if c == 0:
            out.pop(k, None)
        else:
            out[k] = c
    return out


def _combo_scale(a: Combo, factor: Fraction) -> Combo:
    if factor == 0:
        return {}
    return {k: factor * v for k, v in a.items()}


def combo_str(a: Combo) -> str:
    if not a:
        return "0"
    parts = []
    for k in sorted(a):
        v = a[k]
        parts.append(f"{v}*{k}" if v != 1 else k)
    return " + ".join(parts)


class LieSuperData:
    """Basis, parities, and structure constants of a Lie superalgebra."""

    def __init__(
        self,
        basis: list[tuple[str, int]],
        bracket: dict[tuple[str, str], Combo],
    ):
        self.names = [n for n, _ in basis]
        self.parity = {n: p % 2 for n, p in basis}
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        for (x, y), combo in bracket.items():
            if x not in self.parity or y not in self.parity:
                raise ValueError(f"bracket on unknown basis pair ({x}, {y})")
            for z in combo:
                if z not in self.parity:
                    raise ValueError(f"bracket value references unknown element {z}")
        self.bracket = {
            pair: {k: Fraction(v) for k, v in combo.items() if v != 0}
            for pair, combo in bracket.items()
        }

    def bkt(self, x: str, y: str) -> Combo:
        return self.bracket.get((x, y), {})

    def bracket_combo(self, a: Combo, b: Combo) -> Combo:
        out: Combo = {}
        for x, cx in a.items():
            for y, cy in b.items():
                out = _combo_add(out, self.bkt(x, y), cx * cy)
        return out

    def validate(self) -> Report:
        """Check skew-symmetry, parity homogeneity and Jacobi on the basis."""
        report = Report("lie-data")
        for x in self.names:
            for y in self.names:
                sign = -1 if (self.parity[x] and self.parity[y]) else 1
                lhs = self.bkt(x, y)
                rhs = _combo_scale(self.bkt(y, x), Fraction(-sign))
                # super skew: [x,y] = -(-1)^{|x||y|}[y,x]
                diff = _combo_add(lhs, rhs, Fraction(-1))
                if diff:
                    report.violations.append(
                        Violation(f"skew ({x},{y})", combo_str(diff))
                    )
                want = (self.parity[x] + self.parity[y]) % 2
                for z, c in lhs.items():
                    if c != 0 and self.parity[z] != want:
                        report.violations.append(
                            Violation(f"parity ({x},{y})", f"component {z}")
                        )
        for x in self.names:
            for y in self.names:
                for z in self.names:
                    sxy = -1 if (self.parity[x] and self.parity[y]) else 1
                    # [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]]
                    t1 = self.bracket_combo({x: Fraction(1)}, self.bkt(y, z))
                    t2 = self.bracket_combo(self.bkt(x, y), {z: Fraction(1)})
                    t3 = self.bracket_combo({y: Fraction(1)}, self.bkt(x, z))
                    resid = _combo_add(
                        _combo_add(t1, t2, Fraction(-1)), t3, Fraction(-sxy)
                    )
                    if resid:
                        report.violations.append(
                            Violation(f"jacobi ({x},{y},{z})", combo_str(resid))
                        )
        return report


def sl2() -> LieSuperData:
    """sl(2) with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    one = Fraction(1)
    return LieSuperData(
        basis=[("e", 0), ("h", 0), ("f", 0)],
        bracket={
            ("e", "f"): {"h": one},
            ("f", "e"): {"h": -one},
            ("h", "e"): {"e": 2 * one},
            ("e", "h"): {"e": -2 * one},
            ("h", "f"): {"f": -2 * one},
            ("f", "h"): {"f": 2 * one},
        },
    )


def abelian(names: list[str]) -> LieSuperData:
    """Abelian (even) Lie algebra on the given basis names."""
    return LieSuperData(basis=[(n, 0) for n in names], bracket={})


def sl2_fundamental() -> dict[str, list[list[Fraction]]]:
    """Matrices of the 2-dimensional fundamental representation of sl(2)."""
    one = Fraction(1)
    zero = Fraction(0)
    return {
        "e": [[zero, one], [zero, zero]],
        "h": [[one, zero], [zero, -one]],
        "f": [[zero, zero], [one, zero]],
    }
