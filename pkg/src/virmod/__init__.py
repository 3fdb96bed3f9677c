"""Exact computations with tensor product Virasoro modules.

The modules are tensor products of Omega(lam, alpha, h) factors on C[D, t],
Omega(mu, beta) factors on C[D] and an optional Verma or induced factor.
Every coefficient is an exact rational.
"""

from .core import *
from .core import __all__ as _core_all
from .enveloping import HIGHEST, Induced, PBWMonomial, PBWVector, ShiftModule, TableModule, Verma
from .grammar import ElementSyntaxError, format_element, parse_element
from .omega import OmegaD, OmegaDT, act_omega_d, act_omega_dt
from .relations import BracketFailure, bracket_defect, first_bracket_failure
from .specfile import SpecError, load_spec, spec_from_dict, spec_to_dict
from .submodules import NotInFiltrationError, PairModule, quotient_phi, wm_element, wm_member
from .tensor import (Component, TensorElement, TensorMonomial, TensorSpec, act, extract_components, move,
                     omega_op, reconstruct)

__all__ = list(_core_all) + [
    "BracketFailure",
    "Component",
    "ElementSyntaxError",
    "HIGHEST",
    "Induced",
    "NotInFiltrationError",
    "OmegaD",
    "OmegaDT",
    "PBWMonomial",
    "PBWVector",
    "PairModule",
    "ShiftModule",
    "SpecError",
    "TableModule",
    "TensorElement",
    "TensorMonomial",
    "TensorSpec",
    "Verma",
    "act",
    "act_omega_d",
    "act_omega_dt",
    "bracket_defect",
    "extract_components",
    "first_bracket_failure",
    "format_element",
    "load_spec",
    "move",
    "omega_op",
    "parse_element",
    "quotient_phi",
    "reconstruct",
    "spec_from_dict",
    "spec_to_dict",
    "wm_element",
    "wm_member",
]
