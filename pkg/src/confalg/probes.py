"""Submodule and irreducibility probes, and singular subspaces.

``cyclic_submodule_closed`` certifies reducibility: if every generator action
on w stays inside C[d]w then C[d]w is a proper invariant subspace (the
extension rules preserve C[d]-spans).  ``generated_submodule_contains`` is the
one-sided converse probe: it closes the span of w under the derivation and
all generator actions inside a degree-truncated slice and asks whether a
target vector appears.  A "no" answer is explicitly inconclusive (degree
truncation cannot prove non-membership); reducibility certificates come only
from the cyclic probe.

``singular_subspace`` solves exactly for the vectors killed by every
generator action at all levels >= N inside a degree slice, and asserts the
freeness of the polynomial span of the result when N >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dpoly import DPoly
from .linear import SpanBasis, nullspace, rref
from .module import ConformalModule, ModElement
from .rational import ZERO, ONE


def _require_free(V: ConformalModule, what: str) -> None:
    if not V.carrier.is_free():
        raise ValueError(f"{what} requires a free carrier")


class _Slice:
    """Coordinates of the degree-truncated slice {v : deg v <= cap}."""

    def __init__(self, V: ConformalModule, cap: int):
        self.V = V
        self.cap = cap
        self.keys = [(name, k) for name in V.carrier.names for k in range(cap + 1)]
        self.pos = {key: i for i, key in enumerate(self.keys)}

    def coords(self, el: ModElement) -> list[Fraction] | None:
        """Coordinate vector, or None if el sticks out of the slice."""
        vec = [ZERO] * len(self.keys)
        for name, poly in el.components.items():
            if poly.degree > self.cap:
                return None
            for k, c in enumerate(poly.coeffs):
                if c != 0:
                    vec[self.pos[(name, k)]] = c
        return vec

    def element(self, vec: list[Fraction]) -> ModElement:
        comps: dict[str, DPoly] = {}
        for (name, k), c in zip(self.keys, vec):
            if c != 0:
                cur = comps.get(name, DPoly.zero())
                comps[name] = cur + DPoly([0] * k + [c])
        return ModElement(self.V.carrier, comps)


@dataclass
class ClosureResult:
    closed: bool
    witness: tuple[str, int, ModElement] | None = None
    quotients: dict[tuple[str, int], DPoly] = field(default_factory=dict)


def cyclic_submodule_closed(V: ConformalModule, w: ModElement) -> ClosureResult:
    """Decide whether C[d]w is invariant under all generator actions.

    For each generator and each level below the vanishing bound the action
    on w must be an exact polynomial multiple of w; since C[d] is a domain
    the candidate multiplier is forced by any one nonzero component of w, so
    a single division plus a cross-check settles each level.  Returns the
    first witness (generator, level, residual) otherwise.
    """
    _require_free(V, "cyclic_submodule_closed")
    if w.is_zero():
        raise ValueError("candidate must be nonzero")
    pivot = next(name for name in V.carrier.names if name in w.components)
    pw = w.components[pivot]
    quotients: dict[tuple[str, int], DPoly] = {}
    for gen in V.algebra.gen_names:
        x = V.algebra.gen(gen)
        for n in range(V.action_vanishing_level(w) + 1):
            aw = V.act(x, n, w)
            if aw.is_zero():
                continue
            target = aw.components.get(pivot, DPoly.zero())
            quot, rem = divmod(target, pw)
            residual = aw - w.dmul(quot)
            if not rem.is_zero() or not residual.is_zero():
                return ClosureResult(False, (gen, n, residual))
            if not quot.is_zero():
                quotients[(gen, n)] = quot
    return ClosureResult(True, None, quotients)


@dataclass
class ContainResult:
    contained: bool
    # chains: (coefficient, [op labels from w to the contributing vector])
    certificate: list[tuple[Fraction, list[str]]] = field(default_factory=list)
    dimension: int = 0
    cap: int = 0


def default_degree_cap(V: ConformalModule, w: ModElement) -> int:
    return w.max_degree() + V.max_action_degree() + 3


def generated_submodule_contains(
    V: ConformalModule,
    w: ModElement,
    target: ModElement,
    degree_cap: int | None = None,
) -> ContainResult:
    """Close span{w} under d and all generator actions inside a degree slice.

    Every vector produced lies in the submodule generated by w, so a "yes"
    answer is a certificate; vectors whose degree exceeds the cap are
    dropped, which can only lose reachability, never fabricate it.
    """
    _require_free(V, "generated_submodule_contains")
    if w.is_zero():
        raise ValueError("generator must be nonzero")
    cap = default_degree_cap(V, w) if degree_cap is None else degree_cap
    if cap < w.max_degree():
        raise ValueError("degree cap below the degree of the generator")
    slc = _Slice(V, cap)
    span = SpanBasis(len(slc.keys))
    generated: list[tuple[list[Fraction], ModElement, list[str]]] = []

    def admit(el: ModElement, path: list[str]) -> bool:
        vec = slc.coords(el)
        if vec is None or el.is_zero():
            return False
        if span.add(vec):
            generated.append((vec, el, path))
            return True
        return False

    admit(w, ["w"])
    queue = 0
    gens = V.algebra.gen_names
    while queue < len(generated):
        _, el, path = generated[queue]
        queue += 1
        admit(el.dmul(DPoly.d()), path + ["d"])
        for gen in gens:
            x = V.algebra.gen(gen)
            for n in range(V.max_bound() + el.max_degree() + 1):
                admit(V.act(x, n, el), path + [f"{gen}_({n})"])

    tvec = slc.coords(target)
    if tvec is None:
        return ContainResult(False, dimension=span.dim, cap=cap)
    # express target over the vectors actually generated
    rows = [[vec[i] for vec, _, _ in generated] + [tvec[i]] for i in range(len(slc.keys))]
    red, pivots = rref(rows)
    ncols = len(generated)
    if ncols in pivots:
        return ContainResult(False, dimension=span.dim, cap=cap)
    coeffs = [ZERO] * ncols
    for row, p in zip(red, pivots):
        coeffs[p] = row[ncols]
    certificate = [
        (c, generated[i][2]) for i, c in enumerate(coeffs) if c != 0
    ]
    return ContainResult(True, certificate, dimension=span.dim, cap=cap)


def singular_subspace(
    V: ConformalModule, level: int, degree_cap: int
) -> list[ModElement]:
    """Basis of {v : deg v <= cap, a_(n) v = 0 for all generators, n >= level}.

    The linear system is finite because actions vanish at high levels; the
    returned vectors are exact.  For level >= 1 the polynomial multiples of
    the result up to the cap are checked to be linearly independent (the
    span C[d]U is free), which is an internal consistency assertion.
    """
    _require_free(V, "singular_subspace")
    if level < 0 or degree_cap < 0:
        raise ValueError("level and degree cap must be non-negative")
    slc = _Slice(V, degree_cap)
    out_cap = degree_cap + V.max_action_degree()
    out = _Slice(V, out_cap)
    n_hi = V.max_bound() + degree_cap + 1
    rows: list[list[Fraction]] = []
    cols = []
    for name, k in slc.keys:
        images = []
        for gen in V.algebra.gen_names:
            x = V.algebra.gen(gen)
            base = ModElement(V.carrier, {name: DPoly.d(k)})
            for n in range(level, n_hi + 1):
                vec = out.coords(V.act(x, n, base))
                assert vec is not None
                images.append(vec)
        cols.append(images)
    neqs = len(cols[0]) if cols else 0
    for block in range(neqs):
        for outpos in range(len(out.keys)):
            row = [cols[c][block][outpos] for c in range(len(slc.keys))]
            if any(x != 0 for x in row):
                rows.append(row)
    basis_vecs = nullspace(rows, len(slc.keys))
    result = [slc.element(v) for v in basis_vecs]
    if level >= 1 and result:
        wide = _Slice(V, degree_cap + 2 * degree_cap + 1)
        span = SpanBasis(len(wide.keys))
        for u in result:
            for j in range(degree_cap + 1):
                vec = wide.coords(u.dmul(DPoly.d(j)))
                assert vec is not None
                if not span.add(vec):
                    raise RuntimeError(
                        "singular vectors are not polynomially independent"
                    )
    return result
