"""Brute-force regeneration of the rank-1 module classification.

The ansatz puts an unknown polynomial action on a cyclic carrier vector,
L_(n) u = p_n(d) u with deg p_n <= d_max and p_n = 0 for n >= N_max, and
expands the commutator identity on all mode pairs in a finite range.  Each
d-degree coefficient of each residual is a polynomial (total degree <= 2) in
the unknown table coefficients c_{n,k}; the solution variety of this system
is exactly the set of valid rank-1 action tables.

``variety_compare`` checks the system against the two-parameter family
p_0 = d + alpha, p_1 = delta (all other p zero) together with the zero
table: substitution with symbolic parameters must kill every constraint, and
Groebner-basis ideal membership must force the two branches (the level-0
leading coefficient is idempotent; on its unit branch every unknown outside
the family vanishes, on its zero branch everything vanishes).

A rank-(1|1) variant for the Neveu-Schwarz algebra is provided behind the
same interface but is experimental: only the substitution direction is
asserted (the family satisfies the generated system); no branch analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ConformalAlgebra, standard_algebra
from .multipoly import (
    MultiPoly,
    PolyRing,
    buchberger,
    ideal_member,
    radical_member,
    reduce_poly,
)
from .rational import ONE, falling, gen_binomial

# a symbolic carrier vector: basis name -> d-degree -> coefficient polynomial
SymVec = dict[str, dict[int, MultiPoly]]
# a symbolic action table: (generator, basis, level) -> SymVec
SymTable = dict[tuple[str, str, int], SymVec]


def _vec_iadd(target: SymVec, other: SymVec, factor: Fraction | MultiPoly | None = None) -> None:
    for name, degs in other.items():
        slot = target.setdefault(name, {})
        for k, poly in degs.items():
            add = poly if factor is None else poly * factor
            cur = slot.get(k)
            new = add if cur is None else cur + add
            if new.is_zero():
                slot.pop(k, None)
            else:
                slot[k] = new
        if not slot:
            target.pop(name, None)


def _vec_shift(vec: SymVec, k: int) -> SymVec:
    if k == 0:
        return {n: dict(d) for n, d in vec.items()}
    return {n: {deg + k: p for deg, p in d.items()} for n, d in vec.items()}


def _sym_act_basis(table: SymTable, gen: str, m: int, basis: str, k: int) -> SymVec:
    """gen_(m) applied to d^k v_basis via the closed extension formula."""
    out: SymVec = {}
    for j in range(min(k, m) + 1):
        entry = table.get((gen, basis, m - j))
        if entry is None:
            continue
        c = gen_binomial(k, j) * falling(m, j)
        if c == 0:
            continue
        _vec_iadd(out, _vec_shift(entry, k - j), c)
    return out


def _sym_act(table: SymTable, gen: str, m: int, vec: SymVec) -> SymVec:
    out: SymVec = {}
    for basis, degs in vec.items():
        for k, poly in degs.items():
            if poly.is_zero():
                continue
            _vec_iadd(out, _sym_act_basis(table, gen, m, basis, k), poly)
    return out


def _sym_element_act(table: SymTable, algebra: ConformalAlgebra, el, s: int, vec: SymVec) -> SymVec:
    """(p(d) c)_(s) applied to vec, translating d-prefactors on the algebra side."""
    out: SymVec = {}
    for gen, poly in el.components.items():
        for r, c in enumerate(poly.coeffs):
            if c == 0 or r > s:
                continue
            coeff = c * falling(s, r) * (1 if r % 2 == 0 else -1)
            if coeff == 0:
                continue
            _vec_iadd(out, _sym_act(table, gen, s - r, vec), coeff)
    return out


@dataclass
class ConstraintSystem:
    ring: PolyRing
    unknowns: tuple[str, ...]
    polys: list[MultiPoly]
    provenance: list[dict]

    def by_pair(self, m: int, n: int) -> list[MultiPoly]:
        return [
            p
            for p, meta in zip(self.polys, self.provenance)
            if meta["m"] == m and meta["n"] == n
        ]


def _generate_constraints(
    algebra: ConformalAlgebra,
    carrier: list[tuple[str, int]],
    table: SymTable,
    ring: PolyRing,
    mode_hi: int,
) -> tuple[list[MultiPoly], list[dict]]:
    polys: list[MultiPoly] = []
    provenance: list[dict] = []
    seen: set = set()
    parity = {name: p for name, p in carrier}
    for gi in algebra.gen_names:
        for gj in algebra.gen_names:
            pi, pj = algebra.parity[gi], algebra.parity[gj]
            sign = -ONE if (pi and pj) else ONE
            for basis, _ in carrier:
                v0: SymVec = {basis: {0: ring.one()}}
                for m in range(mode_hi + 1):
                    for n in range(mode_hi + 1):
                        if gi == gj:
                            # the identity for (m, n) and (n, m) coincide up
                            # to sign; keep one representative per pair
                            if pi == 0 and m <= n:
                                continue
                            if pi == 1 and m < n:
                                continue
                        lhs = _sym_act(table, gi, m, _sym_act(table, gj, n, v0))
                        back = _sym_act(table, gj, n, _sym_act(table, gi, m, v0))
                        _vec_iadd(lhs, back, -sign)
                        for k in range(algebra.bounds[(gi, gj)]):
                            entry = algebra.entry(gi, gj, k)
                            if entry is None or m + n - k < 0:
                                continue
                            coeff = gen_binomial(m, k)
                            if coeff == 0:
                                continue
                            _vec_iadd(
                                lhs,
                                _sym_element_act(table, algebra, entry, m + n - k, v0),
                                -coeff,
                            )
                        for name in sorted(lhs):
                            for deg in sorted(lhs[name]):
                                poly = lhs[name][deg].monic()
                                if poly.is_zero():
                                    continue
                                key = frozenset(poly.terms.items())
                                if key in seen:
                                    continue
                                seen.add(key)
                                polys.append(poly)
                                provenance.append(
                                    {
                                        "pair": (gi, gj),
                                        "basis": basis,
                                        "m": m,
                                        "n": n,
                                        "component": name,
                                        "degree": deg,
                                    }
                                )
    return polys, provenance


def generate_rank1_constraints(
    n_max: int, d_max: int, algebra: ConformalAlgebra | None = None
) -> ConstraintSystem:
    """Constraint system for the rank-1 Virasoro ansatz L_(n)u = p_n(d)u."""
    if n_max < 1 or d_max < 0:
        raise ValueError("need n_max >= 1 and d_max >= 0")
    if algebra is None:
        algebra = standard_algebra("virasoro")
    if algebra.gen_names != ["L"]:
        raise ValueError("rank-1 generation expects the Virasoro algebra")
    names = [f"c{n}_{k}" for n in range(n_max) for k in range(d_max + 1)]
    ring = PolyRing(names)
    table: SymTable = {
        ("L", "u", n): {"u": {k: ring.var(f"c{n}_{k}") for k in range(d_max + 1)}}
        for n in range(n_max)
    }
    polys, provenance = _generate_constraints(
        algebra, [("u", 0)], table, ring, n_max + d_max + 1
    )
    return ConstraintSystem(ring, ring.names, polys, provenance)


def rank1_family(system: ConstraintSystem) -> dict[str, object]:
    """The two-parameter family point inside the rank-1 unknowns."""
    fam: dict[str, object] = {}
    if "c0_0" in system.ring.index:
        fam["c0_0"] = "alpha"
    fam["c0_1"] = 1
    if "c1_0" in system.ring.index:
        fam["c1_0"] = "delta"
    return fam


def generate_ns_rank11_constraints(n_max: int, d_max: int) -> ConstraintSystem:
    """Experimental rank-(1|1) ansatz over the Neveu-Schwarz algebra.

    Unknown tables: L_(n)u = p_n(d)u, L_(n)u' = q_n(d)u', G_(n)u = r_n(d)u',
    G_(n)u' = s_n(d)u with u even and u' odd.
    """
    if n_max < 1 or d_max < 0:
        raise ValueError("need n_max >= 1 and d_max >= 0")
    algebra = standard_algebra("neveu_schwarz")
    groups = ("p", "q", "r", "s")
    names = [
        f"{t}{n}_{k}" for t in groups for n in range(n_max) for k in range(d_max + 1)
    ]
    ring = PolyRing(names)

    def band(t: str, n: int) -> dict[int, MultiPoly]:
        return {k: ring.var(f"{t}{n}_{k}") for k in range(d_max + 1)}

    table: SymTable = {}
    for n in range(n_max):
        table[("L", "u", n)] = {"u": band("p", n)}
        table[("L", "ut", n)] = {"ut": band("q", n)}
        table[("G", "u", n)] = {"ut": band("r", n)}
        table[("G", "ut", n)] = {"u": band("s", n)}
    polys, provenance = _generate_constraints(
        algebra, [("u", 0), ("ut", 1)], table, ring, n_max + d_max + 1
    )
    return ConstraintSystem(ring, ring.names, polys, provenance)


def ns_rank11_family(system: ConstraintSystem) -> dict[str, object]:
    fam: dict[str, object] = {
        "p0_0": "alpha",
        "p0_1": 1,
        "q0_0": "alpha",
        "q0_1": 1,
        "r0_0": 1,
        "s0_0": "alpha",
        "s0_1": 1,
    }
    if "p1_0" in system.ring.index:
        fam["p1_0"] = "delta"
        fam["q1_0"] = ("affine", "delta", Fraction(1, 2))  # delta + 1/2
        fam["s1_0"] = ("scaled", "delta", Fraction(2))  # 2*delta
    return fam


def _family_mapping(
    family: dict[str, object], params: PolyRing
) -> dict[str, MultiPoly]:
    mapping: dict[str, MultiPoly] = {}
    for unknown, value in family.items():
        if isinstance(value, str):
            mapping[unknown] = params.var(value)
        elif isinstance(value, tuple) and value[0] == "affine":
            mapping[unknown] = params.var(value[1]) + params.const(value[2])
        elif isinstance(value, tuple) and value[0] == "scaled":
            mapping[unknown] = params.var(value[1]).scale(Fraction(value[2]))
        else:
            mapping[unknown] = params.const(Fraction(value))
    return mapping


def _family_params(family: dict[str, object]) -> list[str]:
    out = []
    for value in family.values():
        if isinstance(value, str):
            out.append(value)
        elif isinstance(value, tuple):
            out.append(value[1])
    return sorted(set(out))


def check_family_substitution(
    system: ConstraintSystem, family: dict[str, object]
) -> tuple[bool, list[str]]:
    """Every family point (parameters symbolic) must satisfy every constraint."""
    params = PolyRing(_family_params(family) or ["t"])
    mapping = _family_mapping(family, params)
    bad = []
    for poly, meta in zip(system.polys, system.provenance):
        image = poly.substitute(params, {k: mapping.get(k, params.zero()) for k in system.unknowns})
        if not image.is_zero():
            bad.append(f"family violates residual at {meta}: {image}")
    zero_bad = []
    for poly, meta in zip(system.polys, system.provenance):
        image = poly.substitute(params, {})
        if not image.is_zero():
            zero_bad.append(f"zero table violates residual at {meta}: {image}")
    return not bad and not zero_bad, bad + zero_bad


@dataclass
class VarietyVerdict:
    match: bool
    details: list[str] = field(default_factory=list)
    groebner: list[MultiPoly] = field(default_factory=list)
    branch_unit: list[MultiPoly] = field(default_factory=list)
    branch_zero: list[MultiPoly] = field(default_factory=list)


def _specialize(system: ConstraintSystem, pivot: str, value: Fraction) -> list[MultiPoly]:
    """The system restricted to the branch slice pivot = value."""
    ring = system.ring
    mapping = {n: ring.var(n) for n in ring.names}
    mapping[pivot] = ring.const(value)
    out = []
    seen = set()
    for p in system.polys:
        q = p.substitute(ring, mapping)
        if q.is_zero():
            continue
        q = q.monic()
        key = frozenset(q.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(q)
    return out


def variety_compare(
    system: ConstraintSystem,
    family: dict[str, object] | None = None,
    pivot: str = "c0_1",
    branches: bool = True,
    full_groebner: bool = False,
) -> VarietyVerdict:
    """Compare the constraint variety with a parametric family.

    Match requires (a) the family and the zero table satisfy the system
    identically in the parameters, and (b), when branch analysis is on, the
    ideal contains pivot^2 - pivot, while on the branch slices pivot = 1
    (resp. 0) every unknown outside the family support (resp. every unknown)
    vanishes on the solution variety.  Vanishing is certified by radical
    membership: the branch ideals are not radical (several unknowns are
    nilpotent of small order), so plain division would under-report what
    actually holds on every solution point.
    """
    if family is None:
        family = rank1_family(system)
    details: list[str] = []
    ok, bad = check_family_substitution(system, family)
    details.extend(bad)
    if ok:
        details.append("family substitution: all residuals vanish identically")
    verdict = VarietyVerdict(match=ok, details=details)
    if not branches:
        return verdict
    ring = system.ring
    pv = ring.var(pivot)
    idem = pv * pv - pv
    # the idempotency generator normally appears verbatim among the
    # residuals; fall back to an ideal-membership test if it does not
    if any(p == idem for p in system.polys):
        details.append(f"idempotent pivot: {pivot}^2 - {pivot} is a residual")
    else:
        verdict.groebner = buchberger(system.polys)
        if ideal_member(idem, verdict.groebner):
            details.append(f"ideal membership: {pivot}^2 - {pivot} = 0")
        else:
            verdict.match = False
            details.append(f"ideal does not force {pivot}^2 - {pivot} = 0")
    if full_groebner and not verdict.groebner:
        verdict.groebner = buchberger(system.polys)

    unit_polys = _specialize(system, pivot, Fraction(1))
    gb_unit = buchberger(unit_polys)
    verdict.branch_unit = gb_unit
    excluded = [u for u in system.unknowns if u not in family and u != pivot]
    orders = []
    for u in excluded:
        member, power = radical_member(ring.var(u), unit_polys, gb_unit)
        if not member:
            verdict.match = False
            details.append(f"unit branch does not force {u} = 0 on the variety")
        else:
            orders.append(f"{u}^{power}" if power else f"{u} (saturation)")
    if orders:
        details.append(
            f"unit branch ({pivot} = 1): excluded unknowns vanish [{', '.join(orders)}]"
        )

    zero_polys = _specialize(system, pivot, Fraction(0))
    gb_zero = buchberger(zero_polys)
    verdict.branch_zero = gb_zero
    orders = []
    for u in system.unknowns:
        if u == pivot:
            continue
        member, power = radical_member(ring.var(u), zero_polys, gb_zero)
        if not member:
            verdict.match = False
            details.append(f"zero branch does not force {u} = 0 on the variety")
        else:
            orders.append(f"{u}^{power}" if power else f"{u} (saturation)")
    if orders:
        details.append(
            f"zero branch ({pivot} = 0): all unknowns vanish [{', '.join(orders)}]"
        )
    return verdict
