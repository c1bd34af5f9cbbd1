"""Command-line interface.

Exit codes: 0 when every suite in the invocation passed, 1 when any
violation or finding was reported (including expected findings such as a
reducibility certificate), 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .algebra import standard_algebra, STANDARD_KINDS
from .classify import (
    generate_ns_rank11_constraints,
    generate_rank1_constraints,
    ns_rank11_family,
    variety_compare,
)
from .exprs import ExprError, parse_element_components, parse_mode_terms
from .module import MODULE_FAMILIES, build_module_family
from .modes import (
    ModeElement,
    ModeModuleElement,
    action_array,
    bracket_array,
    expand_module_modes,
    locality_order,
    mode_bracket,
    ope_extract,
    element_modes,
    reliable_region,
)
from .probes import (
    cyclic_submodule_closed,
    default_degree_cap,
    generated_submodule_contains,
    singular_subspace,
)
from .rational import parse_scalar
from .reports import Report, Violation, emit_reports
from .specio import SpecError, load_spec


class CliError(Exception):
    pass


def _parse_window(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError as exc:
        raise CliError(f"bad window {text!r}, expected lo:hi") from exc
    if lo > hi:
        raise CliError(f"bad window {text!r}: lo > hi")
    return lo, hi


def _parse_params(items: list[str]) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for item in items or []:
        if "=" not in item:
            raise CliError(f"bad --param {item!r}, expected name=rational")
        name, _, value = item.partition("=")
        try:
            out[name.strip()] = parse_scalar(value)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    return out


def _load_algebra(args) -> "ConformalAlgebra":
    source = getattr(args, "algebra", None) or getattr(args, "name", None)
    if source is None and getattr(args, "file", None):
        source = args.file
    if source is None:
        raise CliError("an algebra is required (--algebra/--name or --file)")
    spec = load_spec(source)
    if spec.kind != "algebra":
        raise CliError(f"{source!r} is a module spec, expected an algebra")
    return spec.algebra


def _build_module(args):
    if getattr(args, "file", None):
        spec = load_spec(args.file)
        if spec.kind != "module":
            raise CliError(f"{args.file!r} is not a module spec")
        return spec.module
    family = getattr(args, "family", None)
    if family is None:
        raise CliError("a module is required (--family or --file)")
    if family not in MODULE_FAMILIES:
        raise CliError(f"unknown family {family!r}; builtins: {', '.join(MODULE_FAMILIES)}")
    params = _parse_params(getattr(args, "param", None))
    known = {"alpha", "delta", "rank"}
    unknown = set(params) - known
    if unknown:
        raise CliError(f"unknown parameters {sorted(unknown)}; known: {sorted(known)}")
    kwargs: dict = {}
    if "alpha" in params:
        kwargs["alpha"] = params["alpha"]
    if "delta" in params:
        kwargs["delta"] = params["delta"]
    if "rank" in params:
        kwargs["rank"] = int(params["rank"])
    try:
        return build_module_family(family, check=False, **kwargs)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _parse_pair(A, text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise CliError(f"bad --pair {text!r}, expected i,j")
    for p in parts:
        if p not in A.parity:
            raise CliError(f"unknown generator {p!r}")
    return parts[0], parts[1]


def _mode_element(A, text: str) -> ModeElement:
    acc = ModeElement({}, None)
    for name, mode, coeff in parse_mode_terms(text):
        if name not in A.parity:
            raise CliError(f"unknown generator {name!r}")
        acc = acc + ModeElement({(name, mode): coeff}, A.parity[name])
    return acc


def _mode_module_element(V, text: str) -> ModeModuleElement:
    acc = ModeModuleElement({}, None)
    for name, mode, coeff in parse_mode_terms(text):
        if name not in V.carrier.parity:
            raise CliError(f"unknown basis vector {name!r}")
        acc = acc + ModeModuleElement({(name, mode): coeff}, V.carrier.parity[name])
    return acc


def _module_element(V, text: str):
    try:
        comps = parse_element_components(text)
    except ExprError as exc:
        raise CliError(str(exc)) from exc
    for name in comps:
        if name not in V.carrier.parity:
            raise CliError(f"unknown basis vector {name!r}")
    try:
        return V.element(comps)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


# -- subcommands ---------------------------------------------------------------


def _cmd_verify_algebra(args) -> list[Report]:
    A = _load_algebra(args)
    t0 = time.perf_counter()
    report = A.check_axioms()
    report.elapsed = time.perf_counter() - t0
    return [report]


def _cmd_verify_module(args) -> list[Report]:
    V = _build_module(args)
    reports = []
    t0 = time.perf_counter()
    alg_report = V.algebra.check_axioms()
    alg_report.elapsed = time.perf_counter() - t0
    reports.append(alg_report)
    t0 = time.perf_counter()
    mod_report = V.check_axioms()
    mod_report.elapsed = time.perf_counter() - t0
    reports.append(mod_report)
    return reports


def _cmd_locality(args) -> list[Report]:
    A = _load_algebra(args)
    i, j = _parse_pair(A, args.pair)
    window = _parse_window(args.window)
    arr = bracket_array(A, A.gen(i), A.gen(j), window)
    order = locality_order(arr)
    report = Report(f"locality:{A.name}:({i},{j})")
    if order is None:
        raise CliError(
            f"locality order of ({i},{j}) exceeds the window {args.window}"
        )
    rlo, rhi = reliable_region(window, order)
    report.annotations["order"] = str(order)
    report.annotations["reliable window"] = f"[{rlo}, {rhi}]"
    return [report]


def _parse_jrange(text: str) -> list[int]:
    if ".." in text:
        lo_s, hi_s = text.split("..")
        return list(range(int(lo_s), int(hi_s) + 1))
    return [int(text)]


def _cmd_ope(args) -> list[Report]:
    A = _load_algebra(args)
    i, j = _parse_pair(A, args.pair)
    window = _parse_window(args.window)
    arr = bracket_array(A, A.gen(i), A.gen(j), window)
    report = Report(f"ope:{A.name}:({i},{j})")
    for jj in _parse_jrange(args.j):
        try:
            extracted = ope_extract(arr, jj)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        entry = A.entry(i, j, jj)
        sample = []
        mismatch = False
        for n, got in sorted(extracted.items()):
            want = (
                element_modes(entry, n) if entry is not None else ModeElement({}, None)
            )
            if got != want:
                mismatch = True
                report.violations.append(
                    Violation(
                        f"j={jj} mode n={n}",
                        (got - want).render(A.weight),
                        "extracted modes differ from the product table",
                    )
                )
            if not got.is_zero() and len(sample) < 1:
                sample.append(f"n={n}: {got.render(A.weight)}")
        rlo, rhi = reliable_region(window, jj)
        value = str(entry) if entry is not None else "0"
        status = "mismatch" if mismatch else f"{value}"
        report.annotations[f"j={jj}"] = f"{status} (reliable n in [{rlo}, {rhi}])"
    return [report]


def _cmd_modes_bracket(args) -> list[Report]:
    A = _load_algebra(args)
    x = _mode_element(A, args.left)
    y = _mode_element(A, args.right)
    out = mode_bracket(A, x, y)
    report = Report(f"modes-bracket:{A.name}")
    report.annotations["result"] = (
        f"[{x.render(A.weight)}, {y.render(A.weight)}] = {out.render(A.weight)}"
    )
    return [report]


def _cmd_modes_act(args) -> list[Report]:
    V = _build_module(args)
    if not V.carrier.is_free():
        raise CliError("mode actions are defined for free carriers only")
    x = _mode_element(V.algebra, args.left)
    v = _mode_module_element(V, args.right)
    out = expand_module_modes(V, x, v)
    report = Report(f"modes-act:{V.name}")
    report.annotations["result"] = (
        f"{x.render(V.algebra.weight)} . {v.render()} = {out.render()}"
    )
    return [report]


def _cmd_probe_submodule(args) -> list[Report]:
    V = _build_module(args)
    w = _module_element(V, args.candidate)
    if w.is_zero():
        raise CliError("candidate must be nonzero")
    report = Report(f"probe-submodule:{V.name}")
    try:
        result = cyclic_submodule_closed(V, w)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if result.closed:
        quotients = ", ".join(
            f"{g}_({n}) -> {q}" for (g, n), q in sorted(result.quotients.items())
        )
        report.violations.append(
            Violation(
                f"candidate {w}",
                "closed: reducible certificate",
                f"generator actions stay in C[d]w ({quotients})",
            )
        )
    else:
        gen, n, resid = result.witness
        report.annotations["cyclic closure"] = (
            f"not closed: {gen}_({n}) w leaves C[d]w by {resid}"
        )
    if args.target:
        target = _module_element(V, args.target)
        cap = args.degree_cap
        res = generated_submodule_contains(V, w, target, cap)
        if res.contained:
            chains = "; ".join(
                f"{c} * [{' -> '.join(path)}]" for c, path in res.certificate
            )
            report.annotations["generated submodule"] = (
                f"contains {target} (cap {res.cap}): {chains}"
            )
        else:
            report.annotations["generated submodule"] = (
                f"no witness for {target} up to degree cap {res.cap} (inconclusive)"
            )
    return [report]


def _cmd_probe_singular(args) -> list[Report]:
    V = _build_module(args)
    cap = args.degree_cap if args.degree_cap is not None else 3
    basis = singular_subspace(V, args.level, cap)
    report = Report(f"probe-singular:{V.name}")
    report.annotations["level"] = str(args.level)
    report.annotations["degree cap"] = str(cap)
    report.annotations["dimension"] = str(len(basis))
    for idx, vec in enumerate(basis):
        report.annotations[f"vector {idx}"] = str(vec)
    return [report]


def _cmd_classify(args) -> list[Report]:
    report = Report("classify-rank1")
    t0 = time.perf_counter()
    if args.super:
        system = generate_ns_rank11_constraints(args.nmax, args.deg)
        verdict = variety_compare(
            system, ns_rank11_family(system), branches=False
        )
        report.suite = "classify-rank11-ns (experimental)"
    else:
        if args.algebra != "virasoro":
            raise CliError("rank-1 classification runs over the virasoro algebra")
        system = generate_rank1_constraints(args.nmax, args.deg)
        verdict = variety_compare(system, full_groebner=args.branch_report)
    report.elapsed = time.perf_counter() - t0
    report.annotations["unknowns"] = str(len(system.unknowns))
    report.annotations["constraints"] = str(len(system.polys))
    report.annotations["verdict"] = "match" if verdict.match else "no-match"
    if not verdict.match:
        for line in verdict.details:
            report.violations.append(Violation("variety", line))
    if args.branch_report:
        for idx, detail in enumerate(verdict.details):
            report.annotations[f"detail {idx}"] = detail
        if verdict.groebner:
            report.annotations["groebner basis"] = "; ".join(
                str(p) for p in verdict.groebner
            )
        report.annotations["unit branch basis"] = "; ".join(
            str(p) for p in verdict.branch_unit
        )
        report.annotations["zero branch basis"] = "; ".join(
            str(p) for p in verdict.branch_zero
        )
    return [report]


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confalg",
        description="Exact verification engine for conformal (super)algebras and their modules.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="axiom suites")
    vsub = verify.add_subparsers(dest="what", required=True)
    va = vsub.add_parser("algebra", parents=[common])
    va.add_argument("--name", help=f"builtin: {', '.join(STANDARD_KINDS)}")
    va.add_argument("--file", help="algebra spec JSON")
    va.set_defaults(func=_cmd_verify_algebra)
    vm = vsub.add_parser("module", parents=[common])
    vm.add_argument("--family", help=f"builtin: {', '.join(MODULE_FAMILIES)}")
    vm.add_argument("--file", help="module spec JSON")
    vm.add_argument("--param", action="append", metavar="NAME=RATIONAL")
    vm.set_defaults(func=_cmd_verify_module)

    loc = sub.add_parser("locality", parents=[common], help="locality order of a pair")
    loc.add_argument("--algebra", default="virasoro")
    loc.add_argument("--pair", required=True, metavar="I,J")
    loc.add_argument("--window", default="-6:10")
    loc.set_defaults(func=_cmd_locality)

    ope = sub.add_parser("ope", parents=[common], help="extract products from mode brackets")
    ope.add_argument("--algebra", default="virasoro")
    ope.add_argument("--pair", required=True, metavar="I,J")
    ope.add_argument("--j", default="0..2", help="product index or range lo..hi")
    ope.add_argument("--window", default="-6:10")
    ope.set_defaults(func=_cmd_ope)

    modes = sub.add_parser("modes", help="mode brackets and actions")
    msub = modes.add_subparsers(dest="what", required=True)
    mb = msub.add_parser("bracket", parents=[common])
    mb.add_argument("--algebra", default="virasoro")
    mb.add_argument("--left", required=True, metavar="EXPR (e.g. L:2)")
    mb.add_argument("--right", required=True, metavar="EXPR")
    mb.set_defaults(func=_cmd_modes_bracket)
    ma = msub.add_parser("act", parents=[common])
    ma.add_argument("--family")
    ma.add_argument("--file")
    ma.add_argument("--param", action="append", metavar="NAME=RATIONAL")
    ma.add_argument("--left", required=True, metavar="EXPR (e.g. L:2)")
    ma.add_argument("--right", required=True, metavar="EXPR (e.g. u:0)")
    ma.set_defaults(func=_cmd_modes_act)

    probe = sub.add_parser("probe", help="submodule and singular-vector probes")
    psub = probe.add_subparsers(dest="what", required=True)
    ps = psub.add_parser("submodule", parents=[common])
    ps.add_argument("--family")
    ps.add_argument("--file")
    ps.add_argument("--param", action="append", metavar="NAME=RATIONAL")
    ps.add_argument("--candidate", required=True, metavar="ELEMENT")
    ps.add_argument("--target", metavar="ELEMENT")
    ps.add_argument("--degree-cap", type=int, default=None)
    ps.set_defaults(func=_cmd_probe_submodule)
    pg = psub.add_parser("singular", parents=[common])
    pg.add_argument("--family")
    pg.add_argument("--file")
    pg.add_argument("--param", action="append", metavar="NAME=RATIONAL")
    pg.add_argument("--level", type=int, required=True)
    pg.add_argument("--degree-cap", type=int, default=None)
    pg.set_defaults(func=_cmd_probe_singular)

    classify = sub.add_parser("classify", help="constraint classifier")
    csub = classify.add_subparsers(dest="what", required=True)
    cr = csub.add_parser("rank1", parents=[common])
    cr.add_argument("--algebra", default="virasoro")
    cr.add_argument("--nmax", type=int, default=4)
    cr.add_argument("--deg", type=int, default=2)
    cr.add_argument("--branch-report", action="store_true")
    cr.add_argument(
        "--super",
        action="store_true",
        help="experimental Neveu-Schwarz rank-(1|1) substitution check",
    )
    cr.set_defaults(func=_cmd_classify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    # join option values that start with a dash (e.g. --window -6:10)
    joined: list[str] = []
    skip = False
    for i, arg in enumerate(argv):
        if skip:
            skip = False
            continue
        if (
            arg in ("--window", "--left", "--right", "--candidate", "--target")
            and i + 1 < len(argv)
            and argv[i + 1].startswith("-")
        ):
            joined.append(f"{arg}={argv[i + 1]}")
            skip = True
        else:
            joined.append(arg)
    args = parser.parse_args(joined)
    try:
        reports = args.func(args)
    except (CliError, SpecError, ExprError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(emit_reports(reports, args.format))
    return 0 if all(r.passed() for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
