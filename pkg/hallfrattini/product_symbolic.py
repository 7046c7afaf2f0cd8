"""
Symbolic Hall-class calculus for a direct power S^k extended by a cyclic shift of the blocks.

A pi-Hall subgroup of S^k is the product of pi-Hall subgroups of the factors,
and two of them are conjugate in S^k exactly when they are factor-wise
conjugate. A class is therefore a vector of factor-class indices, and the
block shift acts on vectors by rotating entries.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from .constructions import Atom, ShiftProduct, SymbolicProduct, build, gl32_group
from .constructions.expr import GroupExpr
from .errors import HypothesisViolation, NotEPiError, PreconditionError
from .frattini import class_is_stable
from .hall import HallStatus, PrimeSet, hall_classes, pi_part
from .perm_core import (
    GroupLike,
    PermGroup,
    SubgroupClass,
    conjugacy_witness,
    conjugate_subgroup,
    join,
    orbit_signature,
)
from .reports import HallReport, Remark2Report, SubgroupRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassVector:
    """
    A class of pi-Hall subgroups of S^k.

    ``entries`` are 1-based indices into ``factor_classes``; ``twist`` is the
    permutation of class indices applied together with the block shift
    (identity by default).
    """
    entries: Tuple[int, ...]
    factor_classes: Tuple[SubgroupClass, ...] = field(default=(), compare=False, repr=False)
    twist: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        c = len(self.factor_classes)
        if c and any(not 1 <= e <= c for e in self.entries):
            raise ValueError(f"class index out of range in {self.entries}")

    @property
    def k(self) -> int:
        return len(self.entries)

    def shifted(self) -> "ClassVector":
        """(x_1, ..., x_k) -> (x_k, x_1, ..., x_{k-1}), entries moved through the twist."""
        moved = (self.entries[-1],) + self.entries[:-1]
        if self.twist is not None:
            moved = tuple(self.twist[e - 1] for e in moved)
        return ClassVector(moved, self.factor_classes, self.twist)

    def is_constant(self) -> bool:
        return len(set(self.entries)) <= 1

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"


def factor_hall_classes(S: GroupLike, pi: PrimeSet) -> List[SubgroupClass]:
    """Hall classes of S, ordered by orbit signature and then enumeration order."""
    classes = hall_classes(S, pi).classes
    if not classes:
        raise NotEPiError(f"factor group has no {pi}-Hall subgroup")
    return sorted(classes, key=lambda c: orbit_signature(c.representative))


def enumerate_class_vectors(
    S: GroupLike,
    pi: PrimeSet,
    k: int,
    twist: Optional[Sequence[int]] = None,
) -> List[ClassVector]:
    """
    All c^k class vectors of S^k in lexicographic order.

    Args:
        S: Factor group in E_pi
        pi: Prime set
        k: Number of copies
        twist: Optional permutation of the 1-based class indices carried by the shift
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    classes = tuple(factor_hall_classes(S, pi))
    c = len(classes)
    tw = tuple(twist) if twist is not None else None
    vectors = [ClassVector(entries, classes, tw) for entries in product(range(1, c + 1), repeat=k)]
    logger.info(f"{len(vectors)} class vectors for {c} factor classes and {k} copies")
    return vectors


def burnside_count(c: int, k: int) -> int:
    """Number of orbits of the cyclic shift on c^k vectors."""
    return sum(c ** gcd(j, k) for j in range(k)) // k


def shift_orbits(vectors: Sequence[ClassVector], k: int) -> Tuple[List[List[ClassVector]], List[ClassVector]]:
    """
    Orbits of the block shift on class vectors, and the shift-fixed vectors.

    Without a twist the orbit count is checked against Burnside's count.
    """
    known = {v.entries: v for v in vectors}
    done = set()
    orbits: List[List[ClassVector]] = []
    for v in sorted(vectors, key=lambda v: v.entries):
        if v.entries in done:
            continue
        orbit = []
        w = v
        while w.entries not in done:
            done.add(w.entries)
            orbit.append(known.get(w.entries, w))
            w = w.shifted()
        orbits.append(sorted(orbit, key=lambda x: x.entries))
    fixed = [v for v in sorted(vectors, key=lambda v: v.entries) if v.shifted().entries == v.entries]

    untwisted = all(v.twist is None for v in vectors)
    if vectors and untwisted and len(vectors) == len(vectors[0].factor_classes) ** k:
        expected = burnside_count(len(vectors[0].factor_classes), k)
        if len(orbits) != expected:
            raise HypothesisViolation(f"{len(orbits)} shift orbits, Burnside count {expected}")
    return orbits, fixed


def remark2_report(copies: int = 5) -> Remark2Report:
    """
    Hall classes of GL(3,2)^k under the block shift, for pi = {2,3}.

    Only the constant vectors are shift-stable; (1,...,1,2) and (2,1,...,1)
    are fused by the shift but are distinct classes of the base.
    """
    S = gl32_group()
    pi = PrimeSet.of([2, 3])
    vectors = enumerate_class_vectors(S, pi, copies)
    orbits, fixed = shift_orbits(vectors, copies)
    c = len(vectors[0].factor_classes)

    k1 = ClassVector((1,) * (copies - 1) + (2,))
    k2 = ClassVector((2,) + (1,) * (copies - 1))
    orbit_of = {v.entries: i for i, orbit in enumerate(orbits) for v in orbit}
    fixed_entries = {v.entries for v in fixed}
    verdicts = {
        str(v): ("G = A·N_G(H)" if v.entries in fixed_entries else "G ≠ A·N_G(K)")
        for v in vectors
    }
    report = Remark2Report(
        factor_group="GL(3,2)",
        pi=str(pi),
        copies=copies,
        factor_class_orders=[cls.order for cls in vectors[0].factor_classes],
        a_class_count=len(vectors),
        orbit_count=len(orbits),
        burnside_count=burnside_count(c, copies),
        orbit_sizes=[len(o) for o in orbits],
        stable_classes=[list(v.entries) for v in fixed],
        k1=list(k1.entries),
        k2=list(k2.entries),
        k1_k2_fused=orbit_of[k1.entries] == orbit_of[k2.entries],
        k1_k2_a_conjugate=k1.entries == k2.entries,
        verdicts=verdicts,
        stable_class_exists=bool(fixed),
    )
    logger.info(f"Shift report: {report.a_class_count} classes, {report.orbit_count} orbits, {len(fixed)} stable")
    return report


def symbolic_hall_report(handle: SymbolicProduct, pi: PrimeSet) -> HallReport:
    """
    Hall classes of a product too large to build, assembled from its factors.

    Without the shift the classes are the vectors of factor classes. With the
    shift, a pi'-number of blocks keeps every pi-Hall subgroup inside the base,
    so the classes are the shift orbits of vectors.

    Args:
        handle: Symbolic product from build_symbolic
        pi: Prime set

    Returns:
        HallReport with one record per class, labelled by its smallest vector
    """
    target = pi_part(handle.order, pi)
    report = HallReport(
        group=handle.name, group_order=handle.order, pi=str(pi),
        status=HallStatus.NOT_E.value, target_order=target, symbolic=True, base_class_count=0,
    )
    if handle.shifted and pi_part(handle.copies, pi) != 1:
        raise PreconditionError(
            f"symbolic Hall classes of {handle.name} need the number of blocks to be a {pi}'-number"
        )

    computed: Dict[int, List[SubgroupClass]] = {}
    try:
        for f in handle.factors:
            if id(f) not in computed:
                computed[id(f)] = factor_hall_classes(f.group, pi)
    except NotEPiError as e:
        logger.info(f"Symbolic Hall analysis of {handle.name}: {e}")
        return report
    blocks = [computed[id(f)] for f in handle.factors]
    vectors = list(product(*(range(1, len(b) + 1) for b in blocks)))

    if handle.shifted:
        orbits, _ = shift_orbits([ClassVector(v, tuple(blocks[0])) for v in vectors], handle.copies)
        groups = [[v.entries for v in orbit] for orbit in orbits]
    else:
        groups = [[v] for v in vectors]

    def base_class_size(entries: Tuple[int, ...]) -> int:
        return prod(blocks[i][e - 1].class_size for i, e in enumerate(entries))

    report.base_class_count = len(vectors)
    report.classes = [
        SubgroupRecord(
            order=target,
            class_size=len(group) * base_class_size(group[0]),
            label="(" + ",".join(str(e) for e in group[0]) + ")",
        )
        for group in groups
    ]
    report.status = (HallStatus.C if len(groups) == 1 else HallStatus.E_ONLY).value
    logger.info(
        f"Symbolic Hall analysis of {handle.name} for pi={pi}: {report.status}, "
        f"{len(groups)} classes from {len(vectors)} base classes"
    )
    return report


@dataclass
class CrossCheck:
    """Symbolic counts against explicit computation on a built S^k."""
    symbolic_classes: int
    explicit_classes: int
    symbolic_orbits: int
    explicit_orbits: int
    symbolic_fixed: int
    explicit_stable: int
    vectors_pairwise_distinct: bool

    @property
    def matches(self) -> bool:
        return (
            self.symbolic_classes == self.explicit_classes
            and self.symbolic_orbits == self.explicit_orbits
            and self.symbolic_fixed == self.explicit_stable
            and self.vectors_pairwise_distinct
        )


def realize(vector: ClassVector, first_factor_reps: Sequence[PermGroup], shift: Permutation, G: PermGroup) -> PermGroup:
    """The subgroup of S^k for a vector; block i carries the first-block class rep moved by shift^(i-1)."""
    parts = []
    for i, e in enumerate(vector.entries):
        part = first_factor_reps[e - 1]
        for _ in range(i):
            part = conjugate_subgroup(part, shift)
        parts.append(part)
    return join(G, *parts).group


def explicit_cross_check(factor: GroupExpr = Atom("Sym", (3,)), pi: PrimeSet = PrimeSet.of([2]), k: int = 2) -> CrossCheck:
    """
    Compare the vector calculus with explicit enumeration on ShiftProduct(factor, k).
    """
    built = build(ShiftProduct(factor, k))
    G = built.group
    A = built.named_subgroups["base"].group
    first = built.factors[0].group
    shift = built.named_subgroups["shift"].generators[0]

    vectors = enumerate_class_vectors(first, pi, k)
    orbits, fixed = shift_orbits(vectors, k)
    reps = [cls.representative.group for cls in vectors[0].factor_classes]

    explicit = hall_classes(A, pi).classes
    realized = [realize(v, reps, shift, G) for v in vectors]
    distinct = all(
        conjugacy_witness(A, realized[i], realized[j]) is None
        for i in range(len(realized))
        for j in range(i + 1, len(realized))
    )

    fused: List[List[PermGroup]] = []
    for cls in explicit:
        R = cls.representative.group
        for bucket in fused:
            if conjugacy_witness(G, R, bucket[0]) is not None:
                bucket.append(R)
                break
        else:
            fused.append([R])
    stable = sum(1 for H in realized if class_is_stable(G, A, H))

    return CrossCheck(
        symbolic_classes=len(vectors),
        explicit_classes=len(explicit),
        symbolic_orbits=len(orbits),
        explicit_orbits=len(fused),
        symbolic_fixed=len(fixed),
        explicit_stable=stable,
        vectors_pairwise_distinct=distinct,
    )
