"""
Result type shared by all builders.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from sympy.combinatorics import Permutation

from ..errors import PreconditionError
from ..perm_core import PermGroup, Subgroup
from .expr import GroupExpr, format_group_expr


@dataclass
class BuiltGroup:
    """
    A built group with labelled subgroups and the expression it came from.

    ``factors`` are the direct factors of ``named_subgroups["base"]``;
    ``base_elements`` lists the points of a regular semidirect realization.
    """
    group: PermGroup
    named_subgroups: Dict[str, Subgroup] = field(default_factory=dict)
    provenance: Optional[GroupExpr] = None
    factors: List[Subgroup] = field(default_factory=list)
    base_elements: List[Permutation] = field(default_factory=list)

    def __post_init__(self):
        for label, sub in self.named_subgroups.items():
            if not sub.group.is_subgroup_of(self.group):
                raise PreconditionError(f"named subgroup {label!r} is not inside the group")

    @property
    def name(self) -> str:
        return format_group_expr(self.provenance) if self.provenance is not None else "<group>"

    def decode(self, rho: Permutation) -> Permutation:
        """Element of the regular base group represented by a translation."""
        return self.base_elements[rho.array_form[0]]


@dataclass
class SymbolicProduct:
    """
    A direct product, or a direct power extended by the block shift, too large to build.

    ``factors`` holds one built group per block; a shifted power repeats the
    same factor ``len(factors)`` times.
    """
    factors: List[BuiltGroup]
    shifted: bool
    order: int
    provenance: Optional[GroupExpr] = None

    @property
    def copies(self) -> int:
        return len(self.factors)

    @property
    def name(self) -> str:
        return format_group_expr(self.provenance) if self.provenance is not None else "<product>"
