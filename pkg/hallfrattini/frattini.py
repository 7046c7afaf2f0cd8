"""
Frattini argument for Hall subgroups: a brute-force oracle, the constructive
recursion through minimal normal subgroups, and the corollary checks.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from .callbacks import StepCallbackHandler
from .constructions import extend_automorphism, semidirect_by_aut
from .errors import HypothesisViolation, NotEPiError, PreconditionError, StepAssertionError
from .hall import (
    HallStatus,
    PrimeSet,
    hall_classes,
    is_hall,
    is_pi_number,
    pi_part,
    require_e_pi,
)
from .perm_core import (
    GroupLike,
    PermGroup,
    Subgroup,
    SubgroupClass,
    as_group,
    conjugacy_witness,
    conjugate_subgroup,
    induced_aut_group,
    intersection,
    is_normal,
    is_simple,
    is_subnormal,
    join,
    minimal_normal_subgroups,
    normalizer,
    quotient_action,
    right_transversal,
    socle_components,
)
from .subgroup_enum import subgroups_of_order

logger = logging.getLogger(__name__)


class Method(str, Enum):
    ORACLE = "ORACLE"
    CONSTRUCTIVE = "CONSTRUCTIVE"


class StepKind(str, Enum):
    TRIVIAL = "TRIVIAL"
    WHOLE_GROUP = "WHOLE_GROUP"
    MINIMAL_NORMAL = "MINIMAL_NORMAL"
    RECURSE_IN_K = "RECURSE_IN_K"
    QUOTIENT_LIFT = "QUOTIENT_LIFT"
    SCHUR_ZASSENHAUS = "SCHUR_ZASSENHAUS"


@dataclass
class TraceStep:
    kind: StepKind
    depth: int
    detail: str
    orders: Dict[str, int] = field(default_factory=dict)


@dataclass
class WitnessChecks:
    product_covers_G: bool
    normalizer_in_E_pi: bool
    normalizer_hall_is_G_hall: bool

    @property
    def all_passed(self) -> bool:
        return self.product_covers_G and self.normalizer_in_E_pi and self.normalizer_hall_is_G_hall


@dataclass
class FrattiniWitness:
    """A pi-Hall subgroup H of A with G = A N_G(H), and the certificate for it."""
    group: PermGroup
    A: Subgroup
    H: Subgroup
    normalizer: Subgroup
    pi: PrimeSet
    checks: WitnessChecks
    method: Method
    trace: List[TraceStep] = field(default_factory=list)
    stable_classes: List[SubgroupClass] = field(default_factory=list)


def class_is_stable(G: GroupLike, A: GroupLike, H: GroupLike) -> bool:
    """H^g is A-conjugate to H for every generator g of G, i.e. H^G = H^A."""
    Gg, Ag, Hg = as_group(G), as_group(A), as_group(H)
    return all(conjugacy_witness(Ag, conjugate_subgroup(Hg, g), Hg) is not None for g in Gg.generators)


def certify_witness(G: GroupLike, A: GroupLike, H: GroupLike, pi: PrimeSet) -> Tuple[Subgroup, WitnessChecks]:
    """
    Compute N_G(H) and the three witness flags.

    Raises HypothesisViolation when |A N_G(H)| = |G| disagrees with class stability.
    """
    Gg, Ag, Hg = as_group(G), as_group(A), as_group(H)
    N = normalizer(Gg, Hg)
    meet = intersection(Gg, Ag, N)
    covers = Ag.order * N.order // meet.order == Gg.order
    if covers != class_is_stable(Gg, Ag, Hg):
        raise HypothesisViolation("G = A N_G(H) disagrees with H^G = H^A")

    target = pi_part(Gg.order, pi)
    analysis = hall_classes(N.group, pi)
    in_e_pi = analysis.status != HallStatus.NOT_E
    hall_is_g_hall = pi_part(N.order, pi) == target and all(c.order == target for c in analysis.classes)
    return N, WitnessChecks(covers, in_e_pi, hall_is_g_hall)


def _check_inputs(G: PermGroup, A: PermGroup, pi: PrimeSet) -> None:
    if not is_normal(G, A):
        raise PreconditionError("A is not normal in G")
    require_e_pi(G, pi)


def frattini_oracle(G: GroupLike, A: GroupLike, pi: PrimeSet) -> FrattiniWitness:
    """
    Find a pi-Hall subgroup of A whose A-class is G-stable by enumeration.

    Args:
        G: Group in E_pi
        A: Normal subgroup of G
        pi: Prime set

    Returns:
        Witness for the canonically first stable class; all stable classes are listed
    """
    Gg, Ag = as_group(G), as_group(A)
    _check_inputs(Gg, Ag, pi)
    classes = hall_classes(Ag, pi).classes
    stable = [c for c in classes if class_is_stable(Gg, Ag, c.representative)]
    if not stable:
        raise HypothesisViolation(f"no G-stable class of {pi}-Hall subgroups of A")
    H = Subgroup(Gg, stable[0].representative.group, "H")
    N, checks = certify_witness(Gg, Ag, H, pi)
    logger.info(f"Oracle witness: |A|={Ag.order}, |H|={H.order}, |N_G(H)|={N.order}, {len(stable)} stable classes")
    return FrattiniWitness(Gg, Subgroup(Gg, Ag, "A"), H, N, pi, checks, Method.ORACLE, stable_classes=stable)


def find_fusion_stable_hall(G: GroupLike, S: GroupLike, pi: PrimeSet) -> Subgroup:
    """
    A pi-Hall subgroup U of S whose S-class is stable under Aut_G(S).

    Raises NotEPiError when Aut_G(S) has no pi-Hall subgroup.
    """
    Gg, Sg = as_group(G), as_group(S)
    if not is_subnormal(Gg, Sg) or not is_simple(Sg):
        raise PreconditionError("S is not a simple subnormal subgroup")
    auts = induced_aut_group(Gg, Sg)
    if hall_classes(auts.image, pi).status == HallStatus.NOT_E:
        raise NotEPiError(f"Aut_G(S) has no {pi}-Hall subgroup")
    for cls in hall_classes(Sg, pi).classes:
        U = cls.representative
        if class_is_stable(auts.normalizer, Sg, U):
            return Subgroup(Sg, U.group, "U")
    raise HypothesisViolation("no Aut_G(S)-stable class of Hall subgroups in S")


def build_invariant_product_hall(
    G: GroupLike,
    S: GroupLike,
    U: GroupLike,
    pi: Optional[PrimeSet] = None,
) -> Subgroup:
    """
    V = <U^g_1, ..., U^g_n> for a right transversal g_i of N_G(S) in G.

    Args:
        G: Ambient group
        S: Simple subnormal subgroup
        U: Subgroup of S with U^{Aut_G(S)} = U^S
        pi: When given and U is pi-Hall in S, V is checked to be pi-Hall in <S^G>

    Returns:
        V as a subgroup of G; V^G = V^A is verified for A = <S^G>
    """
    Gg, Sg, Ug = as_group(G), as_group(S), as_group(U)
    if not Ug.is_subgroup_of(Sg):
        raise PreconditionError("U is not contained in S")
    transversal = right_transversal(Gg, normalizer(Gg, Sg))
    A = join(Gg, *[conjugate_subgroup(Sg, t) for t in transversal])
    V = join(Gg, *[conjugate_subgroup(Ug, t) for t in transversal])
    if not is_normal(Gg, A):
        raise StepAssertionError(StepKind.MINIMAL_NORMAL.value, "<S^G> is not normal")
    if not Sg.is_abelian and V.order != Ug.order ** len(transversal):
        raise StepAssertionError(StepKind.MINIMAL_NORMAL.value, "V is not the direct product of the U^g_i")
    if pi is not None and is_hall(Sg, Ug, pi) and not is_hall(A, V, pi):
        raise StepAssertionError(StepKind.MINIMAL_NORMAL.value, "V is not pi-Hall in <S^G>")
    if not class_is_stable(Gg, A, V):
        raise StepAssertionError(StepKind.MINIMAL_NORMAL.value, "V^G differs from V^A")
    return Subgroup(Gg, V.group, "V")


def schur_zassenhaus_complement(X: GroupLike, M: GroupLike, pi: PrimeSet) -> Subgroup:
    """
    A complement H of the normal pi'-subgroup M in X, X/M a pi-group.
    """
    Xg, Mg = as_group(X), as_group(M)
    if not is_normal(Xg, Mg):
        raise PreconditionError("M is not normal in X")
    if not is_pi_number(Mg.order, pi.complementary()) or not is_pi_number(Xg.order // Mg.order, pi):
        raise PreconditionError("M must be a pi'-group with pi-quotient")
    target = Xg.order // Mg.order
    found = subgroups_of_order(Xg, target)
    if not found:
        raise HypothesisViolation("no complement found for a normal Hall subgroup")
    H = Subgroup(Xg, found[0].representative.group, "H")
    if join(Xg, H, Mg).order != Xg.order:
        raise HypothesisViolation("complement does not cover X")
    return H


def conjugate_complements(X: GroupLike, M: GroupLike, H1: GroupLike, H2: GroupLike) -> Permutation:
    """An element of X conjugating the complement H1 of M onto the complement H2."""
    Xg, Mg = as_group(X), as_group(M)
    for H in (H1, H2):
        Hg = as_group(H)
        if Hg.order * Mg.order != Xg.order or not Hg.is_subgroup_of(Xg):
            raise PreconditionError("argument is not a complement of M in X")
    x = conjugacy_witness(Xg, H1, H2)
    if x is None:
        raise HypothesisViolation("complements of a normal Hall subgroup are not conjugate")
    return x


class _ConstructiveSolver:
    """Recursion through minimal normal subgroups with step-local checks."""

    def __init__(self, pi: PrimeSet, callbacks: Optional[Sequence[StepCallbackHandler]] = None):
        self.pi = pi
        self.callbacks = list(callbacks or [])
        self.trace: List[TraceStep] = []

    def _start(self, kind: StepKind, depth: int, detail: str) -> None:
        for cb in self.callbacks:
            cb.on_step_start(kind.value, depth, detail)

    def _end(self, kind: StepKind, depth: int, detail: str, **orders: int) -> None:
        self.trace.append(TraceStep(kind, depth, detail, dict(orders)))
        for cb in self.callbacks:
            cb.on_step_end(kind.value, depth, detail)

    def _fail(self, kind: StepKind, depth: int, message: str) -> StepAssertionError:
        error = StepAssertionError(kind.value, message)
        for cb in self.callbacks:
            cb.on_assertion_failed(kind.value, depth, error)
        return error

    def _finish(self, kind: StepKind, depth: int, G: PermGroup, A: PermGroup, H: PermGroup) -> PermGroup:
        if H.order != pi_part(A.order, self.pi) or not H.is_subgroup_of(A):
            raise self._fail(kind, depth, f"result of order {H.order} is not pi-Hall in A")
        if not class_is_stable(G, A, H):
            raise self._fail(kind, depth, "class of the result is not G-stable")
        return H

    def solve(self, G: PermGroup, A: PermGroup, depth: int = 0) -> PermGroup:
        target = pi_part(A.order, self.pi)
        if target == 1:
            self._start(StepKind.TRIVIAL, depth, f"|A|={A.order} is a pi'-number")
            self._end(StepKind.TRIVIAL, depth, "H = 1", G=G.order, A=A.order)
            return PermGroup(G.degree)
        if target == A.order:
            self._start(StepKind.WHOLE_GROUP, depth, f"|A|={A.order} is a pi-number")
            self._end(StepKind.WHOLE_GROUP, depth, "H = A", G=G.order, A=A.order)
            return A

        inside = [M for M in minimal_normal_subgroups(G) if M.group.is_subgroup_of(A)]
        proper = [M.group for M in inside if M.order < A.order]
        if not proper:
            return self._minimal_normal(G, A, depth)

        M = proper[0]
        V = self.solve(G, M, depth + 1)
        K = normalizer(G, V).group
        if K.order < G.order:
            return self._recurse_in_k(G, A, K, M, depth)
        return self._quotient_lift(G, A, M, V, depth)

    def _minimal_normal(self, G: PermGroup, A: PermGroup, depth: int) -> PermGroup:
        kind = StepKind.MINIMAL_NORMAL
        self._start(kind, depth, f"A of order {A.order} is minimal normal")
        S = socle_components(G, A).components[0]
        try:
            U = find_fusion_stable_hall(G, S, self.pi)
            V = build_invariant_product_hall(G, S, U, self.pi).group
        except (StepAssertionError, HypothesisViolation, NotEPiError) as e:
            raise self._fail(kind, depth, str(e))
        H = self._finish(kind, depth, G, A, V)
        self._end(kind, depth, f"|S|={S.order}, |U|={U.order}, |H|={H.order}", G=G.order, A=A.order, S=S.order)
        return H

    def _recurse_in_k(self, G: PermGroup, A: PermGroup, K: PermGroup, M: PermGroup, depth: int) -> PermGroup:
        kind = StepKind.RECURSE_IN_K
        self._start(kind, depth, f"|M|={M.order}, N_G(V) of order {K.order} < |G|")
        KA = intersection(G, K, A).group
        if not is_pi_number(A.order // KA.order, self.pi.complementary()):
            raise self._fail(kind, depth, "|A : K ∩ A| is not a pi'-number")
        H = self.solve(K, KA, depth + 1)
        H = self._finish(kind, depth, G, A, H)
        self._end(kind, depth, f"|K|={K.order}, |K∩A|={KA.order}, |H|={H.order}", G=G.order, A=A.order, K=K.order)
        return H

    def _quotient_lift(self, G: PermGroup, A: PermGroup, M: PermGroup, V: PermGroup, depth: int) -> PermGroup:
        kind = StepKind.QUOTIENT_LIFT
        self._start(kind, depth, f"V normal in G, passing to G/M with |M|={M.order}")
        action = quotient_action(G, M)
        Abar = action.image_of(A).group
        Xbar = self.solve(action.image, Abar, depth + 1)
        X = action.preimage(Xbar).group
        self._end(kind, depth, f"|G/M|={action.image.order}, |X|={X.order}", G=G.order, A=A.order, M=M.order)

        if not V.is_trivial:
            if V != M:
                raise self._fail(kind, depth, "V is nontrivial but differs from M")
            return self._finish(kind, depth, G, A, X)

        sz = StepKind.SCHUR_ZASSENHAUS
        self._start(sz, depth, f"M of order {M.order} is a pi'-group")
        try:
            H = schur_zassenhaus_complement(X, M, self.pi).group
        except (HypothesisViolation, PreconditionError) as e:
            raise self._fail(sz, depth, str(e))
        if H.order * M.order != X.order:
            raise self._fail(sz, depth, "complement order mismatch")
        H = self._finish(sz, depth, G, A, H)
        self._end(sz, depth, f"|X|={X.order}, |H|={H.order}", G=G.order, A=A.order, X=X.order)
        return H


def frattini_constructive(
    G: GroupLike,
    A: GroupLike,
    pi: PrimeSet,
    callbacks: Optional[Sequence[StepCallbackHandler]] = None,
) -> FrattiniWitness:
    """
    Build a G-stable pi-Hall subgroup of A by induction on the order of G.

    Args:
        G: Group in E_pi
        A: Normal subgroup
        pi: Prime set
        callbacks: Step handlers notified of every recursion step

    Returns:
        Witness with the recorded trace
    """
    Gg, Ag = as_group(G), as_group(A)
    _check_inputs(Gg, Ag, pi)
    solver = _ConstructiveSolver(pi, callbacks)
    H = Subgroup(Gg, solver.solve(Gg, Ag), "H")
    N, checks = certify_witness(Gg, Ag, H, pi)
    logger.info(f"Constructive witness: |H|={H.order}, {len(solver.trace)} steps")
    return FrattiniWitness(Gg, Subgroup(Gg, Ag, "A"), H, N, pi, checks, Method.CONSTRUCTIVE, solver.trace)


def verify_c_pi_closure(G: GroupLike, A: GroupLike, H: GroupLike, pi: PrimeSet) -> bool:
    """For G in C_pi, A normal and H pi-Hall in G: whether HA is in C_pi."""
    Gg, Ag, Hg = as_group(G), as_group(A), as_group(H)
    if not is_normal(Gg, Ag):
        raise PreconditionError("A is not normal in G")
    if hall_classes(Gg, pi).status != HallStatus.C:
        raise PreconditionError("G does not satisfy C_pi")
    if not is_hall(Gg, Hg, pi):
        raise PreconditionError("H is not a pi-Hall subgroup of G")
    return hall_classes(join(Gg, Hg, Ag).group, pi).status == HallStatus.C


def e_pi_criterion(G: GroupLike, A: GroupLike, pi: PrimeSet) -> Tuple[bool, Optional[Subgroup]]:
    """
    Evaluate: A in E_pi, G/A in E_pi, and some pi-Hall H of A with H^A = H^G.

    Returns:
        (verdict, the first stable H when one exists)
    """
    Gg, Ag = as_group(G), as_group(A)
    if not is_normal(Gg, Ag):
        raise PreconditionError("A is not normal in G")
    a_classes = hall_classes(Ag, pi).classes
    if not a_classes:
        return False, None
    if hall_classes(quotient_action(Gg, Ag).image, pi).status == HallStatus.NOT_E:
        return False, None
    for cls in a_classes:
        if class_is_stable(Gg, Ag, cls.representative):
            return True, Subgroup(Gg, cls.representative.group, "H")
    return False, None


def invariant_hall_under_coprime(
    G: GroupLike,
    aut_images: Sequence[Sequence[Permutation]],
    pi: PrimeSet,
) -> Subgroup:
    """
    A pi-Hall subgroup of G invariant under a coprime group of automorphisms.

    Args:
        G: Group in E_pi
        aut_images: For each automorphism, the images of G's generators
        pi: Prime set

    Returns:
        The invariant pi-Hall subgroup, as a subgroup of G
    """
    Gg = as_group(G)
    require_e_pi(Gg, pi)
    maps = [extend_automorphism(Gg, images) for images in aut_images]
    built = semidirect_by_aut(Gg, maps)
    Gstar = built.group
    base = built.named_subgroups["base"]
    complement = built.named_subgroups["complement"]
    if gcd(Gg.order, complement.order) != 1:
        raise PreconditionError(f"automorphism group of order {complement.order} is not coprime to |G|")

    witness = frattini_oracle(Gstar, base, pi)
    N = witness.normalizer
    shift = None
    for x in base.group.sorted_elements:
        if all((c ^ (~x)) in N for c in complement.generators):
            shift = x
            break
    if shift is None:
        raise HypothesisViolation("no conjugate of the automorphism complement normalizes H")
    invariant = conjugate_subgroup(witness.H, shift)

    Hg = PermGroup(Gg.degree, [built.decode(rho) for rho in invariant.generators])
    if Hg.order != pi_part(Gg.order, pi):
        raise HypothesisViolation("decoded subgroup is not pi-Hall")
    for phi in maps:
        if not all(phi[h] in Hg for h in Hg.generators):
            raise HypothesisViolation("decoded Hall subgroup is not invariant")
    logger.info(f"Invariant {pi}-Hall subgroup of order {Hg.order} under automorphisms of order {complement.order}")
    return Subgroup(Gg, Hg, "H")
