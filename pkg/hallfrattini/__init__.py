"""
Hall subgroups and the Frattini argument
Exact computation on finite permutation groups: Hall subgroup classes,
G-stable Hall subgroups of normal subgroups, and their certificates.
"""

__version__ = "1.0.0"

from .frattini import FrattiniWitness, frattini_constructive, frattini_oracle
from .hall import HallStatus, PrimeSet, hall_classes
from .perm_core import PermGroup, Subgroup

__all__ = [
    "FrattiniWitness",
    "HallStatus",
    "PermGroup",
    "PrimeSet",
    "Subgroup",
    "frattini_constructive",
    "frattini_oracle",
    "hall_classes",
]
