"""Exact symbolic engine for conformal (super)algebras and conformal modules.

Everything is computed over arbitrary-precision rational arithmetic; there is
no floating-point mode.  The package provides:

* ``dpoly``      -- the coefficient ring Q[d] (polynomials in the formal
                    derivation symbol, written ``d`` in rendered output),
* ``algebra``    -- conformal (super)algebras, their n-th product calculus and
                    axiom verification, with the standard families (Virasoro,
                    currents, Neveu-Schwarz, supercurrents and semidirect sums)
                    available as builtins,
* ``module``     -- conformal modules, the action calculus, axiom checks and
                    the builtin module families,
* ``probes``     -- submodule / irreducibility probes and singular subspaces,
* ``modes``      -- the mode (formal-distribution) view: brackets, locality
                    orders, OPE extraction and Dong-type locality checks,
* ``classify``   -- brute-force regeneration of the rank-1 classification by
                    polynomial constraint solving over a small Groebner engine,
* ``cli``        -- the ``confalg`` command-line interface.
"""

from .rational import Scalar, gen_binomial, parse_scalar, format_scalar
from .dpoly import DPoly
from .liedata import LieSuperData, sl2, abelian
from .algebra import AlgElement, ConformalAlgebra, standard_algebra, STANDARD_KINDS
from .module import (
    BasisVector,
    ModuleCarrier,
    ModElement,
    ConformalModule,
    build_module_family,
    MODULE_FAMILIES,
)
from .probes import (
    cyclic_submodule_closed,
    generated_submodule_contains,
    singular_subspace,
)
from .reports import Report, Violation

__all__ = [
    "Scalar",
    "gen_binomial",
    "parse_scalar",
    "format_scalar",
    "DPoly",
    "LieSuperData",
    "sl2",
    "abelian",
    "AlgElement",
    "ConformalAlgebra",
    "standard_algebra",
    "STANDARD_KINDS",
    "BasisVector",
    "ModuleCarrier",
    "ModElement",
    "ConformalModule",
    "build_module_family",
    "MODULE_FAMILIES",
    "cyclic_submodule_closed",
    "generated_submodule_contains",
    "singular_subspace",
    "Report",
    "Violation",
]
