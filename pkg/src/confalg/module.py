"""Conformal modules: carriers, the action calculus, axioms, builtin families.

A module carrier is a finite direct sum of summands C[d]/(q) with q monic or
zero (zero meaning a free summand).  The action of the algebra on the carrier
is presented by a finite table on (generator, basis vector, level) triples and
extended to arbitrary elements by the operator identity

    a_(n) o d = d o a_(n) + n * a_(n-1)

together with the left rule (d a)_(n) = -n a_(n-1) and bilinearity; iterating
gives the closed form

    a_(n) d^k v = sum_j C(k, j) * n(n-1)...(n-j+1) * d^(k-j) (a_(n-j) v).

On torsion summands results are reduced modulo the torsion polynomial; the
axiom checker additionally verifies that the extension annihilates q(d)v for
every torsion summand (well-definedness), which in particular rejects any
nonzero action on a d-eigenvector summand C[d]/(d - c).

Builtin families (all on free carriers):

* ``virasoro_MVD``          rank-dim(U) Virasoro modules: L_(0)u = (d+A)u,
                            L_(j)u = pi_(j-1) u, the (alpha, delta) case when
                            dim U = 1 and pi = {0: [[delta]]},
* ``current_MgLambda``      currents act by a representation at level 0 only,
* ``ns_MND``                Neveu-Schwarz modules on U + U^th,
* ``supercurrent_MgLambda`` currents as above, odd currents act by zero,
* ``vir_current_MVg``       combined Virasoro + current action,
* ``ns_supercurrent_MNg``   combined Neveu-Schwarz + supercurrent action,
* ``trivial``               free carrier, zero action.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgElement, ConformalAlgebra, standard_algebra
from .dpoly import DPoly
from .liedata import LieSuperData, sl2, sl2_fundamental
from .rational import ONE, falling, gen_binomial, format_scalar
from .reports import Report, Violation

Matrix = list[list[Fraction]]
Components = dict[str, DPoly]


class BasisVector:
    __slots__ = ("name", "parity", "torsion")

    def __init__(self, name: str, parity: int, torsion: DPoly | None = None):
        if torsion is not None:
            if torsion.is_zero():
                torsion = None
            elif not torsion.is_monic():
                raise ValueError(f"torsion polynomial for {name!r} must be monic")
        self.name = name
        self.parity = parity % 2
        self.torsion = torsion


class ModuleCarrier:
    """Direct sum of summands C[d]/(q_b), q_b monic or absent (free)."""

    def __init__(self, basis: list[BasisVector]):
        self.basis = list(basis)
        names = [b.name for b in basis]
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        self.names = names
        self.parity = {b.name: b.parity for b in basis}
        self.torsion = {b.name: b.torsion for b in basis}

    def is_free(self) -> bool:
        return all(t is None for t in self.torsion.values())

    def reduce(self, name: str, poly: DPoly) -> DPoly:
        q = self.torsion[name]
        if q is None or poly.is_zero():
            return poly
        return poly % q


class ModElement:
    """A homogeneous element sum_b p_b(d) v^b, reduced on torsion summands."""

    __slots__ = ("carrier", "components", "parity")

    def __init__(self, carrier: ModuleCarrier, components: Components, parity: int | None = None):
        self.carrier = carrier
        comps: Components = {}
        for name, poly in components.items():
            if name not in carrier.parity:
                raise KeyError(f"unknown basis name {name!r}")
            red = carrier.reduce(name, poly)
            if not red.is_zero():
                comps[name] = red
        self.components = comps
        if not comps:
            parity = None
        else:
            seen = {carrier.parity[k] for k in comps}
            if len(seen) > 1:
                raise ValueError("mixed-parity element rejected")
            p = seen.pop()
            if parity is not None and parity != p:
                raise ValueError("declared parity does not match components")
            parity = p
        self.parity = parity

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "ModElement") -> "ModElement":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.parity != other.parity:
            raise ValueError("mixed-parity sum rejected")
        out = dict(self.components)
        for k, v in other.components.items():
            cur = out.get(k)
            new = v if cur is None else cur + v
            if new.is_zero():
                out.pop(k, None)
            else:
                out[k] = new
        return ModElement(self.carrier, out, self.parity)

    def __sub__(self, other: "ModElement") -> "ModElement":
        return self + other.scale(-ONE)

    def __neg__(self) -> "ModElement":
        return self.scale(-ONE)

    def scale(self, c: Fraction) -> "ModElement":
        if c == 0:
            return ModElement(self.carrier, {})
        return ModElement(
            self.carrier, {k: v.scale(c) for k, v in self.components.items()}, self.parity
        )

    def dmul(self, poly: DPoly) -> "ModElement":
        """Action of a polynomial in d (reduced on torsion summands)."""
        if poly.is_zero():
            return ModElement(self.carrier, {})
        return ModElement(
            self.carrier, {k: poly * v for k, v in self.components.items()}, self.parity
        )

    def max_degree(self) -> int:
        return max((len(p.coeffs) - 1 for p in self.components.values()), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModElement) and self.components == other.components

    def __hash__(self):
        return hash(frozenset((k, v.coeffs) for k, v in self.components.items()))

    def __str__(self) -> str:
        if not self.components:
            return "0"
        parts = []
        for name in sorted(self.components):
            p = self.components[name]
            if p.degree == 0:
                c = p[0]
                if c == 1:
                    parts.append(name)
                elif c == -1:
                    parts.append(f"-{name}")
                else:
                    parts.append(f"{format_scalar(c)}*{name}")
            else:
                parts.append(f"({p})*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<ModElement {self}>"


class ConformalModule:
    """A conformal module presented by a finite action table.

    ``actions`` maps (generator, basis name, level) to elements of the
    carrier; absent entries are zero and per-pair bounds are derived from the
    table, so vanishing at high levels is structural.
    """

    def __init__(
        self,
        name: str,
        algebra: ConformalAlgebra,
        carrier: ModuleCarrier,
        actions: dict[tuple[str, str, int], Components],
    ):
        self.name = name
        self.algebra = algebra
        self.carrier = carrier
        self.actions: dict[tuple[str, str, int], ModElement] = {}
        for (gen, basis, n), comps in actions.items():
            if gen not in algebra.parity:
                raise KeyError(f"action references unknown generator {gen!r}")
            if basis not in carrier.parity:
                raise KeyError(f"action references unknown basis vector {basis!r}")
            if n < 0:
                raise ValueError("action level must be non-negative")
            el = ModElement(carrier, dict(comps))
            if el.is_zero():
                continue
            want = (algebra.parity[gen] + carrier.parity[basis]) % 2
            if el.parity != want:
                raise ValueError(f"action entry ({gen},{basis},{n}) violates parity")
            self.actions[(gen, basis, n)] = el
        self.bounds: dict[tuple[str, str], int] = {}
        for gen in algebra.gen_names:
            for basis in carrier.names:
                ns = [n for (g, b, n) in self.actions if g == gen and b == basis]
                self.bounds[(gen, basis)] = max(ns) + 1 if ns else 0

    # -- element constructors -------------------------------------------

    def zero(self) -> ModElement:
        return ModElement(self.carrier, {})

    def basis_vec(self, name: str) -> ModElement:
        return ModElement(self.carrier, {name: DPoly.one()})

    def element(self, components: Components) -> ModElement:
        return ModElement(self.carrier, dict(components))

    def max_action_degree(self) -> int:
        return max((el.max_degree() for el in self.actions.values()), default=0)

    def max_bound(self) -> int:
        return max(self.bounds.values(), default=0)

    # -- the action calculus ----------------------------------------------

    def _act_gen_poly(self, gen: str, m: int, basis: str, poly: DPoly) -> Components:
        """Raw action of gen_(m) on the formal polynomial poly(d) v^basis.

        The input polynomial is deliberately not reduced modulo torsion;
        output components are collected unreduced as well.  This is the
        primitive the torsion well-definedness check needs.
        """
        acc: Components = {}
        for k, pk in enumerate(poly.coeffs):
            if pk == 0:
                continue
            for j in range(min(k, m) + 1):
                base = self.actions.get((gen, basis, m - j))
                if base is None:
                    continue
                c = pk * gen_binomial(k, j) * falling(m, j)
                if c == 0:
                    continue
                for name, bp in base.components.items():
                    cur = acc.get(name)
                    add = bp.shift(k - j).scale(c)
                    new = add if cur is None else cur + add
                    if new.is_zero():
                        acc.pop(name, None)
                    else:
                        acc[name] = new
        return acc

    def act(self, x: AlgElement, n: int, v: ModElement) -> ModElement:
        """Action x_(n) v for homogeneous x and v; exact, torsion-reduced."""
        if n < 0:
            raise ValueError("action level must be non-negative")
        if x.is_zero() or v.is_zero():
            return self.zero()
        acc: Components = {}
        for gen, p in x.components.items():
            if gen not in self.algebra.parity:
                raise KeyError(f"unknown generator {gen!r}")
            for k, pk in enumerate(p.coeffs):
                if pk == 0 or k > n:
                    continue
                left = pk * falling(n, k) * (1 if k % 2 == 0 else -1)
                m = n - k
                for basis, q in v.components.items():
                    part = self._act_gen_poly(gen, m, basis, q)
                    for name, bp in part.items():
                        cur = acc.get(name)
                        add = bp.scale(left)
                        new = add if cur is None else cur + add
                        if new.is_zero():
                            acc.pop(name, None)
                        else:
                            acc[name] = new
        return ModElement(self.carrier, acc, None if not acc else (x.parity + v.parity) % 2)

    def action_vanishing_level(self, v: ModElement) -> int:
        """A level from which every generator action on v is zero."""
        return self.max_bound() + v.max_degree() + 1

    # -- axiom verification -------------------------------------------------

    def check_axioms(self) -> Report:
        """Verify the commutator identity and torsion well-definedness.

        The commutator identity is expanded on all generator pairs and basis
        vectors for levels in [0, B] with B = max bound + max degree + 2
        (bounds and degrees taken across both the action table and the
        algebra's product table), plus a two-value margin on which both
        sides must vanish.  For each torsion summand C[d]/(q) the raw
        extension applied to q(d)v must reduce to zero (otherwise the table
        does not descend to the quotient).
        """
        report = Report(f"module-axioms:{self.name}")
        b = (
            max(self.max_bound(), self.algebra.max_bound())
            + self.max_action_degree()
            + self.algebra.max_table_degree()
            + 2
        )
        report.annotations["commutator bound"] = str(b)
        gens = self.algebra.gen_names
        for gi in gens:
            ei = self.algebra.gen(gi)
            for gj in gens:
                ej = self.algebra.gen(gj)
                sign = (
                    -ONE if (self.algebra.parity[gi] and self.algebra.parity[gj]) else ONE
                )
                nbound = self.algebra.bounds[(gi, gj)]
                for basis in self.carrier.names:
                    v = self.basis_vec(basis)
                    for m in range(b + 3):
                        for n in range(b + 3):
                            lhs = self.act(ei, m, self.act(ej, n, v)) - self.act(
                                ej, n, self.act(ei, m, v)
                            ).scale(sign)
                            rhs = self.zero()
                            for k in range(nbound):
                                entry = self.algebra.entry(gi, gj, k)
                                if entry is None or m + n - k < 0:
                                    continue
                                coeff = gen_binomial(m, k)
                                if coeff == 0:
                                    continue
                                rhs = rhs + self.act(entry, m + n - k, v).scale(coeff)
                            if m <= b and n <= b:
                                resid = lhs - rhs
                                if not resid.is_zero():
                                    report.violations.append(
                                        Violation(
                                            f"commutator ({gi},{gj}) on {basis} m={m} n={n}",
                                            str(resid),
                                        )
                                    )
                            elif not (lhs.is_zero() and rhs.is_zero()):
                                report.violations.append(
                                    Violation(
                                        f"commutator margin ({gi},{gj}) on {basis} m={m} n={n}",
                                        str(lhs - rhs),
                                        "nonvanishing beyond derived bound",
                                    )
                                )
        for basis in self.carrier.names:
            q = self.carrier.torsion[basis]
            if q is None:
                continue
            for gen in gens:
                for n in range(b + 3):
                    raw = self._act_gen_poly(gen, n, basis, q)
                    resid = ModElement(self.carrier, raw)
                    if not resid.is_zero():
                        report.violations.append(
                            Violation(
                                f"torsion ({basis}) gen {gen} n={n}",
                                str(resid),
                                f"extension does not annihilate ({q})*{basis}",
                            )
                        )
        return report

    # -- mutation helper ------------------------------------------------------

    def with_action(
        self, gen: str, basis: str, n: int, components: Components | None
    ) -> "ConformalModule":
        """Copy with one action entry replaced (None removes)."""
        raw = {key: dict(el.components) for key, el in self.actions.items()}
        if components is None:
            raw.pop((gen, basis, n), None)
        else:
            raw[(gen, basis, n)] = dict(components)
        return ConformalModule(self.name + "*", self.algebra, self.carrier, raw)


# -- builtin module families ------------------------------------------------

MODULE_FAMILIES = (
    "virasoro_MVD",
    "current_MgLambda",
    "ns_MND",
    "supercurrent_MgLambda",
    "vir_current_MVg",
    "ns_supercurrent_MNg",
    "trivial",
)


def _as_matrix(value, dim: int) -> Matrix:
    if isinstance(value, list):
        mat = [[Fraction(x) for x in row] for row in value]
        if len(mat) != dim or any(len(r) != dim for r in mat):
            raise ValueError("matrix dimension mismatch")
        return mat
    return [
        [Fraction(value) if i == j else Fraction(0) for j in range(dim)]
        for i in range(dim)
    ]


def _column_combo(mat: Matrix, col: int, names: list[str], extra: DPoly | None = None) -> Components:
    """Components of (extra + M) u_col over the named basis."""
    out: Components = {}
    for row, name in enumerate(names):
        c = mat[row][col]
        poly = DPoly.const(c) if c != 0 else DPoly.zero()
        if extra is not None and row == col:
            poly = poly + extra
        if not poly.is_zero():
            out[name] = poly
    return out


def _u_names(dim: int, suffix: str = "") -> list[str]:
    if dim == 1:
        return [f"u{suffix}"]
    return [f"u{i+1}{suffix}" for i in range(dim)]


def build_module_family(
    kind: str,
    *,
    alpha: Fraction | int | None = None,
    delta: Fraction | int | None = None,
    g: LieSuperData | None = None,
    rep: dict[str, Matrix] | None = None,
    a_matrix: Matrix | None = None,
    pi_matrices: dict[int, Matrix] | None = None,
    rank: int = 1,
    check: bool = True,
) -> ConformalModule:
    """Construct a builtin module family member; verified before return.

    For the Virasoro / Neveu-Schwarz families the scalar parameters
    ``alpha`` and ``delta`` give the rank-1 (resp. rank-(1|1)) case; matrix
    data (``a_matrix``, ``pi_matrices``) may be supplied instead for higher
    rank.  The current families take a Lie (super)algebra ``g`` (default
    sl(2)) and a representation ``rep`` given by matrices (default the
    2-dimensional fundamental representation of sl(2)).
    """
    if kind not in MODULE_FAMILIES:
        raise ValueError(f"unknown module family {kind!r}")

    if kind == "trivial":
        algebra = standard_algebra("virasoro")
        carrier = ModuleCarrier([BasisVector(n, 0) for n in _u_names(rank)])
        mod = ConformalModule("trivial", algebra, carrier, {})
        return mod

    needs_g = kind in ("current_MgLambda", "supercurrent_MgLambda", "vir_current_MVg", "ns_supercurrent_MNg")
    if needs_g:
        if g is None:
            g = sl2()
            if rep is None:
                rep = sl2_fundamental()
        if rep is None:
            raise ValueError("a representation is required with an explicit Lie algebra")
        dim = len(next(iter(rep.values())))
        rep = {k: _as_matrix(m, dim) for k, m in rep.items()}
        for name in g.names:
            if name not in rep:
                raise ValueError(f"representation missing matrix for {name!r}")
    else:
        dim = len(a_matrix) if a_matrix is not None else rank

    needs_vir = kind in ("virasoro_MVD", "ns_MND", "vir_current_MVg", "ns_supercurrent_MNg")
    if needs_vir:
        if a_matrix is None:
            if alpha is None:
                raise ValueError(f"family {kind!r} requires parameter alpha")
            a_matrix = _as_matrix(alpha, dim)
        else:
            a_matrix = _as_matrix(a_matrix, dim)
        if pi_matrices is None:
            if delta is None:
                raise ValueError(f"family {kind!r} requires parameter delta")
            pi_matrices = {0: _as_matrix(delta, dim)}
        else:
            pi_matrices = {j: _as_matrix(m, dim) for j, m in pi_matrices.items()}

    kind_alg = {
        "virasoro_MVD": "virasoro",
        "current_MgLambda": "current",
        "ns_MND": "neveu_schwarz",
        "supercurrent_MgLambda": "supercurrent",
        "vir_current_MVg": "vir_current",
        "ns_supercurrent_MNg": "ns_supercurrent",
    }[kind]
    algebra = standard_algebra(kind_alg, g)

    has_theta_basis = kind in ("ns_MND", "ns_supercurrent_MNg")
    unames = _u_names(dim)
    basis = [BasisVector(n, 0) for n in unames]
    tnames = _u_names(dim, "^th")
    if has_theta_basis:
        basis += [BasisVector(n, 1) for n in tnames]
    carrier = ModuleCarrier(basis)

    d = DPoly.d()
    actions: dict[tuple[str, str, int], Components] = {}

    if needs_vir:
        for col in range(dim):
            actions[("L", unames[col], 0)] = _column_combo(a_matrix, col, unames, extra=d)
            for j, mat in pi_matrices.items():
                combo = _column_combo(mat, col, unames)
                if combo:
                    actions[("L", unames[col], j + 1)] = combo
    if has_theta_basis:
        b_matrix = pi_matrices.get(0) if pi_matrices else None
        if b_matrix is None:
            raise ValueError("Neveu-Schwarz families need the level-0 matrix (delta)")
        if any(j > 0 for j in pi_matrices):
            raise ValueError("Neveu-Schwarz families support the (A, B) case only")
        half = _as_matrix(Fraction(1, 2), dim)
        b_plus_half = [
            [b_matrix[i][j] + half[i][j] for j in range(dim)] for i in range(dim)
        ]
        two_b = [[2 * x for x in row] for row in b_matrix]
        for col in range(dim):
            actions[("L", tnames[col], 0)] = _column_combo(a_matrix, col, tnames, extra=d)
            actions[("L", tnames[col], 1)] = _column_combo(b_plus_half, col, tnames)
            actions[("G", unames[col], 0)] = {tnames[col]: DPoly.one()}
            actions[("G", tnames[col], 0)] = _column_combo(a_matrix, col, unames, extra=d)
            combo = _column_combo(two_b, col, unames)
            if combo:
                actions[("G", tnames[col], 1)] = combo
    if needs_g:
        assert g is not None and rep is not None
        for a in g.names:
            for col in range(dim):
                combo = _column_combo(rep[a], col, unames)
                if combo:
                    actions[(a, unames[col], 0)] = combo
        if has_theta_basis:
            for a in g.names:
                for col in range(dim):
                    combo_t = _column_combo(rep[a], col, tnames)
                    if combo_t:
                        actions[(a, tnames[col], 0)] = combo_t
                    combo = _column_combo(rep[a], col, unames)
                    if combo:
                        actions[(f"{a}^th", tnames[col], 0)] = combo

    label = kind
    if alpha is not None and delta is not None:
        label = f"{kind}({format_scalar(Fraction(alpha))},{format_scalar(Fraction(delta))})"
    mod = ConformalModule(label, algebra, carrier, actions)
    if check:
        rep_report = mod.check_axioms()
        if not rep_report.passed():
            first = rep_report.violations[0]
            raise ValueError(
                f"family table is not a module: {first.location}: {first.residual}"
            )
    return mod
