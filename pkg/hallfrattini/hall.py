"""
pi-arithmetic, Hall subgroup search, E_pi/C_pi classification and class fusion.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import factorint, isprime

from .errors import HypothesisViolation, NotEPiError, PreconditionError
from .perm_core import (
    CosetAction,
    GroupLike,
    PermGroup,
    Subgroup,
    SubgroupClass,
    as_group,
    conjugacy_witness,
    conjugate_subgroup,
    conjugates,
    induced_aut_group,
    intersection,
    is_normal,
    is_solvable,
    is_subnormal,
    join,
    minimal_normal_subgroups,
    normalizer,
    quotient_action,
)
from .subgroup_enum import subgroup_classes, subgroups_of_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeSet:
    """
    A set of primes pi, or its complement pi' when ``complement`` is set.
    """
    primes: FrozenSet[int] = frozenset()
    complement: bool = False

    def __post_init__(self):
        for p in self.primes:
            if not isprime(p):
                raise PreconditionError(f"{p} is not a prime")

    @classmethod
    def of(cls, primes: Iterable[int]) -> "PrimeSet":
        return cls(frozenset(int(p) for p in primes))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """
        Parse ``"2,3"``; an empty string is the empty set, a trailing ``'`` the complement.
        """
        text = text.strip()
        complement = text.endswith("'")
        if complement:
            text = text[:-1]
        items = [t.strip() for t in text.strip("{}").split(",") if t.strip()]
        try:
            primes = frozenset(int(t) for t in items)
        except ValueError:
            raise PreconditionError(f"invalid prime list {text!r}")
        return cls(primes, complement)

    def __contains__(self, p: int) -> bool:
        return (p in self.primes) != self.complement

    def complementary(self) -> "PrimeSet":
        return PrimeSet(self.primes, not self.complement)

    def sorted_primes(self) -> Tuple[int, ...]:
        return tuple(sorted(self.primes))

    def __str__(self) -> str:
        body = "{" + ",".join(str(p) for p in self.sorted_primes()) + "}"
        return body + ("'" if self.complement else "")


class HallStatus(str, Enum):
    NOT_E = "NOT_E"
    E_ONLY = "E_ONLY"
    C = "C"


@dataclass
class HallAnalysis:
    """Hall classes of a group for one prime set."""
    group: PermGroup
    pi: PrimeSet
    status: HallStatus
    classes: List[SubgroupClass]
    target_order: int
    factorwise: bool = False

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def representatives(self) -> List[Subgroup]:
        return [c.representative for c in self.classes]


def pi_part(n: int, pi: PrimeSet) -> int:
    """Largest divisor of n whose prime factors all lie in pi."""
    result = 1
    for p, e in factorint(n).items():
        if p in pi:
            result *= p ** e
    return result


def is_pi_number(n: int, pi: PrimeSet) -> bool:
    return pi_part(n, pi) == n


def primes_of(n: int) -> List[int]:
    return sorted(factorint(n))


def _status(classes: Sequence[SubgroupClass]) -> HallStatus:
    if not classes:
        return HallStatus.NOT_E
    return HallStatus.C if len(classes) == 1 else HallStatus.E_ONLY


def is_hall(G: GroupLike, H: GroupLike, pi: PrimeSet) -> bool:
    Gg, Hg = as_group(G), as_group(H)
    return Hg.is_subgroup_of(Gg) and Hg.order == pi_part(Gg.order, pi)


def _factorwise(G: PermGroup, factors: Sequence[Subgroup], pi: PrimeSet) -> List[SubgroupClass]:
    per_factor = [hall_classes(f.group, pi).classes for f in factors]
    classes = []
    for combo in product(*per_factor):
        rep = join(G, *[c.representative for c in combo])
        size = 1
        for c in combo:
            size *= c.class_size
        classes.append(SubgroupClass(rep, size))
    return classes


def hall_classes(G: GroupLike, pi: PrimeSet, factors: Optional[Sequence[Subgroup]] = None) -> HallAnalysis:
    """
    Classify G for pi: the conjugacy classes of pi-Hall subgroups and the E/C status.

    Args:
        G: The group
        pi: Prime set
        factors: Direct factors of G; when given, classes are assembled factor-wise

    Returns:
        HallAnalysis
    """
    Gg = as_group(G)
    target = pi_part(Gg.order, pi)

    if target == 1:
        classes = [SubgroupClass(Subgroup(Gg, PermGroup(Gg.degree)), 1)]
    elif target == Gg.order:
        classes = [SubgroupClass(Subgroup(Gg, Gg), 1)]
    elif factors:
        total = 1
        for f in factors:
            total *= f.order
        if total != Gg.order or not all(is_normal(Gg, f) for f in factors):
            raise PreconditionError("factors do not form a direct decomposition of the group")
        classes = _factorwise(Gg, factors, pi)
        analysis = HallAnalysis(Gg, pi, _status(classes), classes, target, factorwise=True)
        logger.info(f"Hall analysis (factor-wise) for pi={pi}: {analysis.status.value}, {len(classes)} classes")
        return analysis
    else:
        classes = subgroups_of_order(Gg, target)

    analysis = HallAnalysis(Gg, pi, _status(classes), classes, target)
    logger.info(f"Hall analysis of order {Gg.order} for pi={pi}: {analysis.status.value}, {len(classes)} classes")
    return analysis


def require_e_pi(G: GroupLike, pi: PrimeSet) -> HallAnalysis:
    analysis = hall_classes(G, pi)
    if analysis.status == HallStatus.NOT_E:
        raise NotEPiError(f"group of order {as_group(G).order} has no {pi}-Hall subgroup")
    return analysis


def hall_intersection_check(G: GroupLike, A: GroupLike, H: GroupLike, pi: PrimeSet) -> Tuple[Subgroup, Subgroup]:
    """
    Intersect a Hall subgroup with a normal subgroup and project it to the quotient.

    Returns:
        (H ∩ A as a subgroup of A, image of HA in the quotient G/A)
    """
    Gg, Ag, Hg = as_group(G), as_group(A), as_group(H)
    if not is_normal(Gg, Ag):
        raise PreconditionError("A is not normal in G")
    if not is_hall(Gg, Hg, pi):
        raise PreconditionError("H is not a pi-Hall subgroup of G")
    meet = Subgroup(Ag, intersection(Gg, Hg, Ag).group)
    action = quotient_action(Gg, Ag)
    image = action.image_of(Hg)
    if meet.order != pi_part(Ag.order, pi):
        raise HypothesisViolation(f"H ∩ A has order {meet.order}, expected {pi_part(Ag.order, pi)}")
    if image.order != pi_part(action.image.order, pi):
        raise HypothesisViolation(f"HA/A has order {image.order}, expected {pi_part(action.image.order, pi)}")
    return meet, image


def is_pi_separable(G: GroupLike, pi: PrimeSet) -> bool:
    """
    Whether G has a normal series with pi- and pi'-factors.

    A minimal normal subgroup is a chief factor and chief factors are unique up
    to order, so G is pi-separable exactly when its first minimal normal M is a
    pi- or pi'-group and G/M is pi-separable.
    """
    Gg = as_group(G)
    if Gg.is_trivial or is_solvable(Gg):
        return True
    if is_pi_number(Gg.order, pi) or is_pi_number(Gg.order, pi.complementary()):
        return True
    M = minimal_normal_subgroups(Gg)[0]
    if not (is_pi_number(M.order, pi) or is_pi_number(M.order, pi.complementary())):
        return False
    return is_pi_separable(quotient_action(Gg, M).image, pi)


def c_pi_check_separable(G: GroupLike, pi: PrimeSet) -> bool:
    """Check that a pi-separable group has a single class of pi-Hall subgroups."""
    if not is_pi_separable(G, pi):
        raise PreconditionError("group is not pi-separable")
    status = hall_classes(G, pi).status
    if status != HallStatus.C:
        logger.error(f"pi-separable group with Hall status {status.value} for pi={pi}")
    return status == HallStatus.C


def _dedupe_classes(A: PermGroup, subgroups: Iterable[PermGroup]) -> List[SubgroupClass]:
    reps: List[PermGroup] = []
    for K in subgroups:
        if any(conjugacy_witness(A, K, R) is not None for R in reps):
            continue
        reps.append(K)
    return [SubgroupClass(Subgroup(A, R), normalizer(A, R).index) for R in reps]


def k_pi(G: GroupLike, A: GroupLike, pi: PrimeSet) -> Tuple[int, List[SubgroupClass]]:
    """
    The A-classes of intersections H ∩ A over all pi-Hall subgroups H of G.

    Returns:
        (k, classes), k being the number of classes
    """
    Gg, Ag = as_group(G), as_group(A)
    if not is_subnormal(Gg, Ag):
        raise PreconditionError("A is not subnormal in G")
    analysis = require_e_pi(Gg, pi)
    meets: List[PermGroup] = []
    for rep in analysis.representatives():
        for H in conjugates(Gg, rep):
            meet = intersection(Gg, H, Ag).group
            if meet not in meets:
                meets.append(meet)
    classes = _dedupe_classes(Ag, meets)
    logger.debug(f"k_pi = {len(classes)} for pi={pi}")
    return len(classes), classes


def extend_hall_over_pi_quotient(G: GroupLike, A: GroupLike, U: GroupLike, pi: PrimeSet) -> Optional[Subgroup]:
    """
    A pi-Hall subgroup H of G with H ∩ A = U, or None when U^G != U^A.

    Every pi-Hall subgroup of N_G(U) contains the normal pi-subgroup U and
    meets A in U, so H is searched inside N_G(U).
    """
    Gg, Ag, Ug = as_group(G), as_group(A), as_group(U)
    if not is_normal(Gg, Ag):
        raise PreconditionError("A is not normal in G")
    if not is_pi_number(Gg.order // Ag.order, pi):
        raise PreconditionError("G/A is not a pi-group")
    if not is_hall(Ag, Ug, pi):
        raise PreconditionError("U is not a pi-Hall subgroup of A")

    for g in Gg.generators:
        if conjugacy_witness(Ag, conjugate_subgroup(Ug, g), Ug) is None:
            logger.debug("U^G differs from U^A; no extension exists")
            return None

    N = normalizer(Gg, Ug)
    found = hall_classes(N.group, pi).classes
    if not found:
        raise HypothesisViolation("N_G(U) has no pi-Hall subgroup although U^G = U^A")
    H = Subgroup(Gg, found[0].representative.group)
    if H.order != pi_part(Gg.order, pi) or intersection(Gg, H, Ag).group != Ug:
        raise HypothesisViolation("extension of U is not a pi-Hall subgroup meeting A in U")
    return H


def lift_hall_from_quotient(
    G: GroupLike,
    A: GroupLike,
    Kbar: GroupLike,
    pi: PrimeSet,
    action: Optional[CosetAction] = None,
) -> Subgroup:
    """
    A pi-Hall subgroup H of G with HA equal to the preimage of Kbar.

    Args:
        G: Group in E_pi
        A: Normal subgroup
        Kbar: pi-Hall subgroup of the quotient image
        pi: Prime set
        action: The quotient action of G on A's cosets, if already computed
    """
    Gg, Ag = as_group(G), as_group(A)
    action = action or quotient_action(Gg, Ag)
    if not is_hall(action.image, Kbar, pi):
        raise PreconditionError("Kbar is not a pi-Hall subgroup of G/A")
    K = action.preimage(Kbar)
    found = hall_classes(K.group, pi).classes
    if not found:
        raise NotEPiError("preimage of a Hall subgroup of G/A has no pi-Hall subgroup")
    H = Subgroup(Gg, found[0].representative.group)
    if H.order != pi_part(Gg.order, pi) or join(Gg, H, Ag).group != K.group:
        raise HypothesisViolation("lifted Hall subgroup does not cover the preimage")
    return H


def socle_hall_orbits(
    G: GroupLike,
    S: GroupLike,
    pi: PrimeSet,
    T: Optional[GroupLike] = None,
    classes: Optional[List[SubgroupClass]] = None,
) -> List[int]:
    """
    Orbit lengths of T (default G) acting by conjugation on the S-classes of H ∩ S.

    ``classes`` may carry the result of k_pi(G, S, pi) to avoid recomputing it.
    """
    Gg, Sg = as_group(G), as_group(S)
    Tg = as_group(T) if T is not None else Gg
    if classes is None:
        _, classes = k_pi(Gg, Sg, pi)
    reps = [c.representative.group for c in classes]

    def locate(K: PermGroup) -> int:
        for i, R in enumerate(reps):
            if conjugacy_witness(Sg, K, R) is not None:
                return i
        raise HypothesisViolation("conjugate of an intersection class left the class set")

    images: Dict[int, List[int]] = {
        i: [locate(conjugate_subgroup(R, t)) for t in Tg.generators] for i, R in enumerate(reps)
    }
    lengths = []
    done = set()
    for start in range(len(reps)):
        if start in done:
            continue
        orbit = [start]
        done.add(start)
        for i in orbit:
            for j in images[i]:
                if j not in done:
                    done.add(j)
                    orbit.append(j)
        lengths.append(len(orbit))
    return sorted(lengths)


def induced_aut_hall(G: GroupLike, S: GroupLike, pi: PrimeSet) -> HallAnalysis:
    """Hall analysis of Aut_G(S) realized on the nonidentity elements of S."""
    return hall_classes(induced_aut_group(G, S).image, pi)


@dataclass
class AlmostSimpleCheck:
    """Desk checks for an almost simple E_pi-group and its socle."""
    k: int
    pi: PrimeSet
    allowed: Tuple[int, ...]
    k_ok: bool
    k_is_pi_number: bool
    orbit_lengths: List[Tuple[int, List[int]]] = field(default_factory=list)
    orbits_ok: bool = True
    stable_class_exists: bool = True

    @property
    def passed(self) -> bool:
        return self.k_ok and self.k_is_pi_number and self.orbits_ok and self.stable_class_exists


def almost_simple_socle(G: GroupLike) -> Subgroup:
    """The socle of an almost simple group (a unique nonabelian minimal normal subgroup)."""
    Gg = as_group(G)
    minimal = minimal_normal_subgroups(Gg)
    if len(minimal) != 1 or minimal[0].group.is_abelian:
        raise PreconditionError("group is not almost simple")
    S = minimal[0]
    if len(minimal_normal_subgroups(S.group)) != 1:
        raise PreconditionError("socle is not simple")
    return S


def almost_simple_check(G: GroupLike, pi: PrimeSet) -> AlmostSimpleCheck:
    """
    Compute k_pi^G(S) for the socle S and check it against the known case list.

    Case list: 2 not in pi gives k = 1; 3 not in pi gives k in {1, 2};
    otherwise k in {1, 2, 3, 4, 9}. Every subgroup class T of G is also
    checked to act on the socle classes with pi-number orbit lengths (only
    one such orbit is required when k = 9), and G itself must fix a class.
    """
    Gg = as_group(G)
    S = almost_simple_socle(Gg)
    k, classes = k_pi(Gg, S, pi)
    if 2 not in pi:
        allowed: Tuple[int, ...] = (1,)
    elif 3 not in pi:
        allowed = (1, 2)
    else:
        allowed = (1, 2, 3, 4, 9)
    check = AlmostSimpleCheck(k, pi, allowed, k in allowed, is_pi_number(k, pi))

    for cls in subgroup_classes(Gg):
        T = cls.representative
        lengths = socle_hall_orbits(Gg, S, pi, T, classes)
        check.orbit_lengths.append((T.order, lengths))
        good = [is_pi_number(n, pi) for n in lengths]
        if (k != 9 and not all(good)) or (k == 9 and not any(good)):
            check.orbits_ok = False
    check.stable_class_exists = 1 in socle_hall_orbits(Gg, S, pi, classes=classes)
    logger.info(f"Almost simple check for pi={pi}: k={k}, passed={check.passed}")
    return check
