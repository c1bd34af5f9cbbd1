"""JSON spec files for algebras and modules, with strict validation.

Polynomials serialize as arrays of exact rational strings ascending in
d-degree (``["1/2", "1"]`` is ``d + 1/2``); decimal literals are rejected.
Unknown fields are errors.  Emission is canonical (sorted keys, sorted
product/action lists), so emit-load-emit is byte identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import ConformalAlgebra, standard_algebra, STANDARD_KINDS
from .dpoly import DPoly
from .module import BasisVector, ConformalModule, ModuleCarrier
from .rational import format_scalar, parse_scalar


class SpecError(ValueError):
    """Schema violation, unresolved name, or non-rational literal."""


def _check_keys(obj: dict, where: str, required: set[str], optional: set[str] = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise SpecError(f"{where}: expected an object")
    keys = set(obj)
    missing = required - keys
    if missing:
        raise SpecError(f"{where}: missing fields {sorted(missing)}")
    unknown = keys - required - optional
    if unknown:
        raise SpecError(f"{where}: unknown fields {sorted(unknown)}")


def _parse_poly(items, where: str) -> DPoly:
    if not isinstance(items, list) or not all(isinstance(s, str) for s in items):
        raise SpecError(f"{where}: polynomial must be an array of rational strings")
    try:
        return DPoly([parse_scalar(s) for s in items])
    except ValueError as exc:
        raise SpecError(f"{where}: {exc}") from exc


def _parse_parity(value, where: str) -> int:
    if value not in (0, 1):
        raise SpecError(f"{where}: parity must be 0 or 1")
    return value


def _parse_value(items, where: str, key: str) -> dict[str, DPoly]:
    if not isinstance(items, list):
        raise SpecError(f"{where}: value must be an array")
    out: dict[str, DPoly] = {}
    for i, item in enumerate(items):
        _check_keys(item, f"{where}.value[{i}]", {key, "poly"})
        name = item[key]
        if not isinstance(name, str):
            raise SpecError(f"{where}.value[{i}]: {key} must be a string")
        if name in out:
            raise SpecError(f"{where}.value[{i}]: duplicate component {name!r}")
        out[name] = _parse_poly(item["poly"], f"{where}.value[{i}]")
    return out


# -- algebra specs ------------------------------------------------------------


def parse_algebra_spec(doc: dict) -> ConformalAlgebra:
    _check_keys(doc, "algebra spec", {"name", "generators", "products"})
    if not isinstance(doc["name"], str):
        raise SpecError("algebra spec: name must be a string")
    gens: list[tuple[str, int, Fraction | None]] = []
    for i, g in enumerate(doc["generators"]):
        _check_keys(g, f"generators[{i}]", {"name", "parity"}, {"weight"})
        if not isinstance(g["name"], str):
            raise SpecError(f"generators[{i}]: name must be a string")
        parity = _parse_parity(g["parity"], f"generators[{i}]")
        weight = None
        if g.get("weight") is not None:
            if not isinstance(g["weight"], str):
                raise SpecError(f"generators[{i}]: weight must be a rational string")
            try:
                weight = parse_scalar(g["weight"])
            except ValueError as exc:
                raise SpecError(f"generators[{i}]: {exc}") from exc
        gens.append((g["name"], parity, weight))
    names = {g[0] for g in gens}
    table: dict[tuple[str, str, int], dict[str, DPoly]] = {}
    for i, prod in enumerate(doc["products"]):
        where = f"products[{i}]"
        _check_keys(prod, where, {"left", "right", "n", "value"})
        left, right, n = prod["left"], prod["right"], prod["n"]
        if left not in names or right not in names:
            raise SpecError(f"{where}: unresolved generator name")
        if not isinstance(n, int) or n < 0:
            raise SpecError(f"{where}: n must be a non-negative integer")
        if (left, right, n) in table:
            raise SpecError(f"{where}: duplicate product ({left},{right},{n})")
        value = _parse_value(prod["value"], where, "gen")
        for comp in value:
            if comp not in names:
                raise SpecError(f"{where}: unresolved generator name {comp!r}")
        table[(left, right, n)] = value
    try:
        return ConformalAlgebra(doc["name"], gens, table)
    except (ValueError, KeyError) as exc:
        raise SpecError(f"algebra spec: {exc}") from exc


def emit_algebra_spec(A: ConformalAlgebra) -> dict:
    gens = []
    for name in A.gen_names:
        w = A.weight[name]
        gens.append(
            {
                "name": name,
                "parity": A.parity[name],
                "weight": None if w is None else format_scalar(w),
            }
        )
    products = []
    for (i, j, n) in sorted(A.table):
        el = A.table[(i, j, n)]
        products.append(
            {
                "left": i,
                "right": j,
                "n": n,
                "value": [
                    {"gen": g, "poly": el.components[g].to_strings()}
                    for g in sorted(el.components)
                ],
            }
        )
    return {"name": A.name, "generators": gens, "products": products}


# -- module specs ----------------------------------------------------------


def parse_module_spec(doc: dict) -> ConformalModule:
    _check_keys(doc, "module spec", {"algebra", "basis", "actions"})
    alg = doc["algebra"]
    if isinstance(alg, str):
        if alg not in STANDARD_KINDS:
            raise SpecError(f"module spec: unknown builtin algebra {alg!r}")
        algebra = standard_algebra(alg)
    else:
        algebra = parse_algebra_spec(alg)
    basis: list[BasisVector] = []
    for i, b in enumerate(doc["basis"]):
        _check_keys(b, f"basis[{i}]", {"name", "parity"}, {"torsion"})
        if not isinstance(b["name"], str):
            raise SpecError(f"basis[{i}]: name must be a string")
        parity = _parse_parity(b["parity"], f"basis[{i}]")
        torsion = None
        if b.get("torsion"):
            torsion = _parse_poly(b["torsion"], f"basis[{i}]")
        try:
            basis.append(BasisVector(b["name"], parity, torsion))
        except ValueError as exc:
            raise SpecError(f"basis[{i}]: {exc}") from exc
    carrier = ModuleCarrier(basis)
    actions: dict[tuple[str, str, int], dict[str, DPoly]] = {}
    for i, act in enumerate(doc["actions"]):
        where = f"actions[{i}]"
        _check_keys(act, where, {"gen", "n", "basis", "value"})
        gen, n, b = act["gen"], act["n"], act["basis"]
        if gen not in algebra.parity:
            raise SpecError(f"{where}: unresolved generator name {gen!r}")
        if b not in carrier.parity:
            raise SpecError(f"{where}: unresolved basis name {b!r}")
        if not isinstance(n, int) or n < 0:
            raise SpecError(f"{where}: n must be a non-negative integer")
        if (gen, b, n) in actions:
            raise SpecError(f"{where}: duplicate action ({gen},{b},{n})")
        value = _parse_value(act["value"], where, "basis")
        for comp in value:
            if comp not in carrier.parity:
                raise SpecError(f"{where}: unresolved basis name {comp!r}")
        actions[(gen, b, n)] = value
    try:
        return ConformalModule("module-spec", algebra, carrier, actions)
    except (ValueError, KeyError) as exc:
        raise SpecError(f"module spec: {exc}") from exc


def emit_module_spec(V: ConformalModule, builtin_algebra: str | None = None) -> dict:
    if builtin_algebra is not None:
        alg: object = builtin_algebra
    else:
        alg = emit_algebra_spec(V.algebra)
    basis = []
    for b in V.carrier.basis:
        entry = {"name": b.name, "parity": b.parity}
        if b.torsion is not None:
            entry["torsion"] = b.torsion.to_strings()
        basis.append(entry)
    actions = []
    for (gen, b, n) in sorted(V.actions):
        el = V.actions[(gen, b, n)]
        actions.append(
            {
                "gen": gen,
                "n": n,
                "basis": b,
                "value": [
                    {"basis": c, "poly": el.components[c].to_strings()}
                    for c in sorted(el.components)
                ],
            }
        )
    return {"algebra": alg, "basis": basis, "actions": actions}


# -- spec files ---------------------------------------------------------------


@dataclass
class SpecFile:
    kind: str  # "algebra" | "module"
    body: dict
    algebra: ConformalAlgebra | None = None
    module: ConformalModule | None = None


def load_spec(source: str) -> SpecFile:
    """Load a builtin algebra by name, or an algebra/module spec file."""
    if source in STANDARD_KINDS:
        A = standard_algebra(source)
        return SpecFile("algebra", emit_algebra_spec(A), algebra=A)
    path = Path(source)
    if not path.exists():
        raise SpecError(f"no builtin named {source!r} and no such file")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{source}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecError(f"{source}: expected a JSON object")
    if "basis" in doc:
        V = parse_module_spec(doc)
        return SpecFile("module", doc, algebra=V.algebra, module=V)
    A = parse_algebra_spec(doc)
    return SpecFile("algebra", doc, algebra=A)


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
