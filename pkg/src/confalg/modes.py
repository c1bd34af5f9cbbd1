"""The mode view: Lie superalgebra of formal distributions and its modules.

Each generator a^i of a conformal algebra spreads into modes a^i_(m), m in Z;
polynomial prefactors translate by (d a)_(m) = -m a_(m-1).  The bracket of
modes is

    [a^i_(m), a^j_(n)] = sum_k C(m, k) (a^i_(k) a^j)_(m+n-k)

with generalized binomials (m ranges over all integers), which is a finite
sum by locality.  Module modes v^b_(n) follow the same pattern.  Everything
here is exact; windows only bound which mode pairs get enumerated, and every
windowed conclusion is restricted to the reliable sub-window on which no
truncated entry is consulted.

Half-integer physics indices (L_n, G_r) are a display convention: a mode
a_(m) of a weight-w generator prints as a_{m - (w-1)}.  Internally there is
one uniform integer mode lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgElement, ConformalAlgebra
from .module import ConformalModule, ModElement
from .rational import ONE, falling, gen_binomial, format_scalar
from .reports import Report, Violation

Window = tuple[int, int]


class _ModeSpan:
    """Finitely supported span of (label, mode) pairs over Q."""

    __slots__ = ("terms", "parity")

    def __init__(self, terms: dict[tuple[str, int], Fraction], parity: int | None):
        self.terms = {k: v for k, v in terms.items() if v != 0}
        if not self.terms:
            parity = None
        self.parity = parity

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: "_ModeSpan", factor: Fraction) -> "_ModeSpan":
        if self.is_zero() and other.is_zero():
            return type(self)({}, None)
        if not self.is_zero() and not other.is_zero() and self.parity != other.parity:
            raise ValueError("mixed-parity mode sum rejected")
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k, Fraction(0)) + factor * v
            if c == 0:
                out.pop(k, None)
            else:
                out[k] = c
        parity = self.parity if self.parity is not None else other.parity
        return type(self)(out, parity)

    def __add__(self, other):
        return self._combine(other, ONE)

    def __sub__(self, other):
        return self._combine(other, -ONE)

    def scale(self, c: Fraction):
        if c == 0:
            return type(self)({}, None)
        return type(self)({k: c * v for k, v in self.terms.items()}, self.parity)

    def min_mode(self) -> int | None:
        return min((m for (_, m) in self.terms), default=None)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def render(self, weights: dict[str, Fraction | None] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (name, m) in sorted(self.terms):
            c = self.terms[(name, m)]
            shift = Fraction(0)
            if weights is not None and weights.get(name) is not None:
                shift = weights[name] - 1
            idx = Fraction(m) - shift
            idx_s = format_scalar(idx)
            sym = f"{name}_{idx_s}" if "/" not in idx_s else f"{name}_{{{idx_s}}}"
            if c == 1:
                parts.append(sym)
            elif c == -1:
                parts.append(f"-{sym}")
            else:
                parts.append(f"{format_scalar(c)}*{sym}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


class ModeElement(_ModeSpan):
    """Span of algebra modes a^i_(m)."""


class ModeModuleElement(_ModeSpan):
    """Span of module modes v^b_(n)."""


# -- constructors -----------------------------------------------------------


def gen_mode(A: ConformalAlgebra, name: str, m: int, coeff: Fraction | int = 1) -> ModeElement:
    if name not in A.parity:
        raise KeyError(f"unknown generator {name!r}")
    return ModeElement({(name, m): Fraction(coeff)}, A.parity[name])


def element_modes(x: AlgElement, m: int) -> ModeElement:
    """Modes of p(d) a at index m: sum_r p_r (-1)^r m(m-1)...(m-r+1) a_(m-r)."""
    terms: dict[tuple[str, int], Fraction] = {}
    for name, p in x.components.items():
        for r, c in enumerate(p.coeffs):
            if c == 0:
                continue
            coeff = c * falling(m, r) * (1 if r % 2 == 0 else -1)
            if coeff == 0:
                continue
            key = (name, m - r)
            cur = terms.get(key, Fraction(0)) + coeff
            if cur == 0:
                terms.pop(key, None)
            else:
                terms[key] = cur
    return ModeElement(terms, x.parity)


def basis_mode(V: ConformalModule, name: str, n: int, coeff: Fraction | int = 1) -> ModeModuleElement:
    if name not in V.carrier.parity:
        raise KeyError(f"unknown basis vector {name!r}")
    return ModeModuleElement({(name, n): Fraction(coeff)}, V.carrier.parity[name])


def mod_element_modes(w: ModElement, n: int) -> ModeModuleElement:
    """Modes of a free-carrier module element at index n."""
    if not w.carrier.is_free():
        raise ValueError("module modes are defined for free carriers only")
    terms: dict[tuple[str, int], Fraction] = {}
    for name, p in w.components.items():
        for r, c in enumerate(p.coeffs):
            if c == 0:
                continue
            coeff = c * falling(n, r) * (1 if r % 2 == 0 else -1)
            if coeff == 0:
                continue
            key = (name, n - r)
            cur = terms.get(key, Fraction(0)) + coeff
            if cur == 0:
                terms.pop(key, None)
            else:
                terms[key] = cur
    return ModeModuleElement(terms, w.parity)


# -- brackets and actions ----------------------------------------------------


def mode_bracket(A: ConformalAlgebra, x: ModeElement, y: ModeElement) -> ModeElement:
    """Exact super-bracket of mode spans via the finite product expansion."""
    acc = ModeElement({}, None)
    for (gi, m), ci in x.terms.items():
        if gi not in A.parity:
            raise KeyError(f"unknown generator {gi!r}")
        for (gj, n), cj in y.terms.items():
            if gj not in A.parity:
                raise KeyError(f"unknown generator {gj!r}")
            for k in range(A.bounds[(gi, gj)]):
                entry = A.entry(gi, gj, k)
                if entry is None:
                    continue
                coeff = ci * cj * gen_binomial(m, k)
                if coeff == 0:
                    continue
                acc = acc + element_modes(entry, m + n - k).scale(coeff)
    return acc


def mode_translation(x: _ModeSpan) -> _ModeSpan:
    """The derivation ad(d): a_(m) -> -m a_(m-1), extended linearly."""
    terms: dict[tuple[str, int], Fraction] = {}
    for (name, m), c in x.terms.items():
        if m == 0:
            continue
        key = (name, m - 1)
        cur = terms.get(key, Fraction(0)) - m * c
        if cur == 0:
            terms.pop(key, None)
        else:
            terms[key] = cur
    return type(x)(terms, x.parity)


def expand_module_modes(
    V: ConformalModule, x: ModeElement, v: ModeModuleElement
) -> ModeModuleElement:
    """Exact action of algebra modes on module modes."""
    acc = ModeModuleElement({}, None)
    for (gi, m), ci in x.terms.items():
        if gi not in V.algebra.parity:
            raise KeyError(f"unknown generator {gi!r}")
        for (b, n), cv in v.terms.items():
            if b not in V.carrier.parity:
                raise KeyError(f"unknown basis vector {b!r}")
            for k in range(V.bounds[(gi, b)]):
                entry = V.actions.get((gi, b, k))
                if entry is None:
                    continue
                coeff = ci * cv * gen_binomial(m, k)
                if coeff == 0:
                    continue
                acc = acc + mod_element_modes(entry, m + n - k).scale(coeff)
    return acc


# -- windowed arrays ----------------------------------------------------------


@dataclass
class ModeArray:
    """Windowed table of bracket (or action) values, sealed after build."""

    label: str
    window: Window
    entries: dict[tuple[int, int], _ModeSpan]
    zero: _ModeSpan

    def entry(self, m: int, n: int) -> _ModeSpan:
        return self.entries.get((m, n), self.zero)


def bracket_array(
    A: ConformalAlgebra, x: AlgElement, y: AlgElement, window: Window
) -> ModeArray:
    lo, hi = window
    entries = {}
    for m in range(lo, hi + 1):
        xm = element_modes(x, m)
        for n in range(lo, hi + 1):
            val = mode_bracket(A, xm, element_modes(y, n))
            if not val.is_zero():
                entries[(m, n)] = val
    return ModeArray(f"[{x}, {y}]", window, entries, ModeElement({}, None))


def action_array(
    V: ConformalModule, x: AlgElement, w: ModElement, window: Window
) -> ModeArray:
    lo, hi = window
    entries = {}
    for m in range(lo, hi + 1):
        xm = element_modes(x, m)
        for n in range(lo, hi + 1):
            val = expand_module_modes(V, xm, mod_element_modes(w, n))
            if not val.is_zero():
                entries[(m, n)] = val
    return ModeArray(f"{x} . {w}", window, entries, ModeModuleElement({}, None))


def reliable_region(window: Window, shift: int) -> Window:
    """Sub-window on which a test with shifts up to ``shift`` is conclusive."""
    lo, hi = window
    return (lo, hi - shift)


def locality_order(arr: ModeArray, max_order: int | None = None) -> int | None:
    """Smallest N with sum_k (-1)^k C(N,k) entry(p+N-k, q+k) = 0 on the
    reliable sub-window, or None if no N up to the testable cap works."""
    lo, hi = arr.window
    cap = (hi - lo) // 2 if max_order is None else max_order
    if cap < 0 or hi - lo < 1:
        raise ValueError("window too small for a locality test")
    for N in range(cap + 1):
        rlo, rhi = reliable_region(arr.window, N)
        ok = True
        for p in range(rlo, rhi + 1):
            for q in range(rlo, rhi + 1):
                acc = arr.zero
                for k in range(N + 1):
                    c = gen_binomial(N, k) * (1 if k % 2 == 0 else -1)
                    acc = acc + arr.entry(p + N - k, q + k).scale(c)
                if not acc.is_zero():
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return N
    return None


def ope_extract(arr: ModeArray, j: int) -> dict[int, _ModeSpan]:
    """Modes of the j-th product from the bracket array:
    (a_(j) b)_(n) = sum_k C(j, k) (-1)^k [a_(j-k), b_(n+k)]."""
    lo, hi = arr.window
    if j < 0:
        raise ValueError("product index must be non-negative")
    if lo > 0 or j > hi:
        raise ValueError("window does not cover modes 0..j")
    rlo, rhi = reliable_region(arr.window, j)
    out = {}
    for n in range(rlo, rhi + 1):
        acc = arr.zero
        for k in range(j + 1):
            c = gen_binomial(j, k) * (1 if k % 2 == 0 else -1)
            acc = acc + arr.entry(j - k, n + k).scale(c)
        out[n] = acc
    return out


# -- windowed verification suites ---------------------------------------------


def check_jacobi_window(A: ConformalAlgebra, window: Window) -> Report:
    """Super Jacobi identity for all generator triples and window modes."""
    report = Report(f"mode-jacobi:{A.name}")
    lo, hi = window
    report.annotations["window"] = f"[{lo}, {hi}]"
    for a in A.gen_names:
        for b in A.gen_names:
            sign = -ONE if (A.parity[a] and A.parity[b]) else ONE
            for c in A.gen_names:
                for p in range(lo, hi + 1):
                    xa = gen_mode(A, a, p)
                    for q in range(lo, hi + 1):
                        xb = gen_mode(A, b, q)
                        ab = mode_bracket(A, xa, xb)
                        for r in range(lo, hi + 1):
                            xc = gen_mode(A, c, r)
                            lhs = mode_bracket(A, xa, mode_bracket(A, xb, xc))
                            rhs = mode_bracket(A, ab, xc) + mode_bracket(
                                A, xb, mode_bracket(A, xa, xc)
                            ).scale(sign)
                            resid = lhs - rhs
                            if not resid.is_zero():
                                report.violations.append(
                                    Violation(
                                        f"jacobi ({a}_{p}, {b}_{q}, {c}_{r})",
                                        str(resid),
                                    )
                                )
    return report


def check_mode_compatibility(
    V: ConformalModule, window: Window, basis_modes: list[int] | None = None
) -> Report:
    """Mode form of the commutator identity on basis modes.

    Verifies [a_(m), b_(n)] v = sum_j C(m, j) (a_(j) b)_(m+n-j) v for all
    generator pairs, all basis vectors, all (m, n) in the window and all
    basis mode indices (default: the window).  Exact at every point, so no
    reliable-window restriction applies.
    """
    report = Report(f"mode-compatibility:{V.name}")
    lo, hi = window
    report.annotations["window"] = f"[{lo}, {hi}]"
    A = V.algebra
    smodes = basis_modes if basis_modes is not None else list(range(lo, hi + 1))
    for gi in A.gen_names:
        for gj in A.gen_names:
            sign = -ONE if (A.parity[gi] and A.parity[gj]) else ONE
            for b in V.carrier.names:
                for s in smodes:
                    vb = basis_mode(V, b, s)
                    for m in range(lo, hi + 1):
                        xm = gen_mode(A, gi, m)
                        for n in range(lo, hi + 1):
                            yn = gen_mode(A, gj, n)
                            lhs = expand_module_modes(
                                V, xm, expand_module_modes(V, yn, vb)
                            ) - expand_module_modes(
                                V, yn, expand_module_modes(V, xm, vb)
                            ).scale(sign)
                            rhs = ModeModuleElement({}, None)
                            for k in range(A.bounds[(gi, gj)]):
                                entry = A.entry(gi, gj, k)
                                if entry is None:
                                    continue
                                coeff = gen_binomial(m, k)
                                if coeff == 0:
                                    continue
                                rhs = rhs + expand_module_modes(
                                    V, element_modes(entry, m + n - k), vb
                                ).scale(coeff)
                            resid = lhs - rhs
                            if not resid.is_zero():
                                report.violations.append(
                                    Violation(
                                        f"({gi}_{m}, {gj}_{n}) on {b}_{s}",
                                        str(resid),
                                    )
                                )
    return report


def check_dong(
    V: ConformalModule,
    triples: list[tuple[AlgElement, AlgElement, ModElement]],
    window: Window,
    max_j: int | None = None,
) -> Report:
    """Derived-pair locality: for local (a, b, v), both (a_(j)b, v) and
    (a, b_(j)v) must have finite locality order on the reliable window."""
    report = Report(f"dong:{V.name}")
    lo, hi = window
    report.annotations["window"] = f"[{lo}, {hi}]"
    A = V.algebra
    for idx, (x, y, w) in enumerate(triples):
        jmax = max_j if max_j is not None else A.product_vanishing_bound(x, y)
        for j in range(jmax + 1):
            c = A.nth_product(x, y, j)
            if not c.is_zero():
                order = locality_order(action_array(V, c, w, window))
                if order is None:
                    report.violations.append(
                        Violation(
                            f"triple {idx} pair (x_({j})y, w)",
                            "locality order exceeds window",
                        )
                    )
            bw = V.act(y, j, w)
            if not bw.is_zero():
                order = locality_order(action_array(V, x, bw, window))
                if order is None:
                    report.violations.append(
                        Violation(
                            f"triple {idx} pair (x, y_({j})w)",
                            "locality order exceeds window",
                        )
                    )
    return report
