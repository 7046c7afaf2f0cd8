"""
Group constructions: expression language, builders and the GL(3,2) models.
"""

from .built import BuiltGroup, SymbolicProduct
from .builders import build, build_symbolic, direct_product, expected_order, extend_automorphism, semidirect_by_aut
from .expr import (
    Atom,
    AutSpec,
    DirectProduct,
    FromFile,
    GroupExpr,
    SemidirectByAut,
    ShiftProduct,
    format_group_expr,
    parse_group_expr,
    parse_group_file,
    parse_group_text,
)
from .gl32 import gl32_group, gl32_with_duality, psl2_group

__all__ = [
    "Atom",
    "AutSpec",
    "BuiltGroup",
    "DirectProduct",
    "FromFile",
    "GroupExpr",
    "SemidirectByAut",
    "ShiftProduct",
    "SymbolicProduct",
    "build",
    "build_symbolic",
    "direct_product",
    "expected_order",
    "extend_automorphism",
    "format_group_expr",
    "gl32_group",
    "gl32_with_duality",
    "parse_group_expr",
    "parse_group_file",
    "parse_group_text",
    "psl2_group",
    "semidirect_by_aut",
]
