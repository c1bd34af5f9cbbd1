"""Sparse multivariate polynomials over Q and a small Groebner engine.

The term order is graded reverse lexicographic throughout, with the variable
at position 0 largest; this is fixed so that bases are deterministic and
reproducible.  The Buchberger loop is the plain textbook one (normal
selection by smallest lcm, product criterion, full interreduction at the
end); the systems solved here stay small, so correctness is preferred over
cleverness.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import ZERO, ONE, format_scalar

Expo = tuple[int, ...]


def grevlex_key(e: Expo):
    return (sum(e), tuple(-x for x in reversed(e)))


def _expo_mul(a: Expo, b: Expo) -> Expo:
    return tuple(x + y for x, y in zip(a, b))


def _expo_divides(a: Expo, b: Expo) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _expo_div(a: Expo, b: Expo) -> Expo:
    return tuple(x - y for x, y in zip(a, b))


def _expo_lcm(a: Expo, b: Expo) -> Expo:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """Q[x_1, ..., x_n] with a fixed variable order (position 0 largest)."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.nvars = len(self.names)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(ONE)

    def const(self, c: Fraction | int) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "MultiPoly":
        i = self.index[name]
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return MultiPoly(self, {e: ONE})

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({list(self.names)})"


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[Expo, Fraction]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return MultiPoly(self.ring, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        out: dict[Expo, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _expo_mul(e1, e2)
                v = out.get(e, ZERO) + c1 * c2
                if v == 0:
                    out.pop(e, None)
                else:
                    out[e] = v
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: Fraction) -> "MultiPoly":
        if c == 0:
            return MultiPoly(self.ring, {})
        return MultiPoly(self.ring, {e: c * v for e, v in self.terms.items()})

    def leading(self) -> tuple[Expo, Fraction]:
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        _, c = self.leading()
        return self.scale(ONE / c)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def substitute(self, target: PolyRing, mapping: dict[str, "MultiPoly"]) -> "MultiPoly":
        """Evaluate under name -> polynomial over the target ring; names
        absent from the mapping go to zero."""
        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, power in enumerate(e):
                if power == 0:
                    continue
                val = mapping.get(self.ring.names[i], target.zero())
                for _ in range(power):
                    term = term * val
                if term.is_zero():
                    break
            out = out + term
        return out

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def _monom_str(self, e: Expo) -> str:
        parts = []
        for name, power in zip(self.ring.names, e):
            if power == 1:
                parts.append(name)
            elif power > 1:
                parts.append(f"{name}^{power}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms, key=grevlex_key, reverse=True)
        parts = []
        for e in items:
            c = self.terms[e]
            mono = self._monom_str(e)
            if not mono:
                body = format_scalar(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{format_scalar(abs(c))}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"<MultiPoly {self}>"


def reduce_poly(p: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    """Full normal form of p modulo the basis (every term reduced)."""
    leads = [(g.leading()[0], g.leading()[1], g) for g in basis if not g.is_zero()]
    rem = p.ring.zero()
    work = p
    while not work.is_zero():
        e, c = work.leading()
        hit = next(((le, lc, g) for (le, lc, g) in leads if _expo_divides(le, e)), None)
        if hit is None:
            rem = rem + MultiPoly(work.ring, {e: c})
            work = work - MultiPoly(work.ring, {e: c})
        else:
            le, lc, g = hit
            factor = MultiPoly(work.ring, {_expo_div(e, le): c / lc})
            work = work - factor * g
    return rem


def spoly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    ef, cf = f.leading()
    eg, cg = g.leading()
    l = _expo_lcm(ef, eg)
    mf = MultiPoly(f.ring, {_expo_div(l, ef): ONE / cf})
    mg = MultiPoly(g.ring, {_expo_div(l, eg): ONE / cg})
    return mf * f - mg * g


def buchberger(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    """Reduced Groebner basis (grevlex) of the ideal the inputs generate.

    Degenerate inputs yield [] (zero ideal) or [1] (unit ideal).  Pair
    selection is by smallest lcm in the term order, ties broken by insertion
    order, so runs are reproducible.  The product and chain criteria prune
    pairs whose S-polynomial is known to reduce to zero.
    """
    basis = []
    for p in polys:
        if not p.is_zero():
            basis.append(p.monic())
    if not basis:
        return []
    ring = basis[0].ring
    leads = [g.leading()[0] for g in basis]
    heap: list[tuple] = []
    for j in range(len(basis)):
        for i in range(j):
            heapq.heappush(heap, (grevlex_key(_expo_lcm(leads[i], leads[j])), i, j))
    done: set[tuple[int, int]] = set()
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) in done:
            continue
        done.add((i, j))
        l = _expo_lcm(leads[i], leads[j])
        if l == _expo_mul(leads[i], leads[j]):
            continue  # coprime leading monomials: S-poly reduces to zero
        chained = False
        for k in range(len(basis)):
            if k in (i, j) or not _expo_divides(leads[k], l):
                continue
            pik = (i, k) if i < k else (k, i)
            pjk = (j, k) if j < k else (k, j)
            if pik in done and pjk in done:
                chained = True
                break
        if chained:
            continue
        r = reduce_poly(spoly(basis[i], basis[j]), basis)
        if r.is_zero():
            continue
        basis.append(r.monic())
        leads.append(basis[-1].leading()[0])
        k = len(basis) - 1
        for i2 in range(k):
            heapq.heappush(heap, (grevlex_key(_expo_lcm(leads[i2], leads[k])), i2, k))

    # minimalize: drop elements whose leading monomial another one divides
    keep: list[MultiPoly] = []
    leads = [g.leading()[0] for g in basis]
    for idx, g in enumerate(basis):
        e = leads[idx]
        dominated = any(
            o != idx
            and _expo_divides(leads[o], e)
            and (leads[o] != e or o < idx)
            for o in range(len(basis))
        )
        if not dominated:
            keep.append(g)
    # interreduce to the unique reduced basis
    reduced: list[MultiPoly] = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1 :]
        r = reduce_poly(g, others)
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lambda g: grevlex_key(g.leading()[0]), reverse=True)
    if any(g.total_degree() == 0 for g in reduced):
        return [ring.one()]
    return reduced


def ideal_member(p: MultiPoly, groebner: Sequence[MultiPoly]) -> bool:
    return reduce_poly(p, groebner).is_zero()


def radical_member(
    p: MultiPoly,
    generators: Sequence[MultiPoly],
    groebner: Sequence[MultiPoly] | None = None,
    max_power: int = 8,
) -> tuple[bool, int | None]:
    """Membership of p in the radical of the ideal: p vanishes on the variety.

    Escalating powers p, p^2, p^4, ... are reduced against a Groebner basis
    first; a hit certifies membership with an explicit nilpotency order.
    Otherwise the saturation trick decides: the ideal extended by 1 - t*p in
    a fresh variable is the unit ideal iff p lies in the radical (witness
    power None in that case).
    """
    ring = p.ring
    if groebner is None:
        groebner = buchberger(generators)
    q = p
    k = 1
    while k <= max_power:
        if reduce_poly(q, groebner).is_zero():
            return True, k
        q = q * q
        k *= 2
    fresh = "_t"
    while fresh in ring.names:
        fresh += "_"
    ext = PolyRing(ring.names + (fresh,))
    lift = {n: ext.var(n) for n in ring.names}
    gens = [g.substitute(ext, lift) for g in generators]
    gens.append(ext.one() - ext.var(fresh) * p.substitute(ext, lift))
    gb = buchberger(gens)
    return gb == [ext.one()], None
