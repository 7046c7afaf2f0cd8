"""
Exact permutation-group arithmetic on top of sympy's stabilizer chains.

Points are 0-indexed internally and 1-indexed in every printed or parsed
cycle. Groups are immutable after construction; element sets and chains are
computed lazily and cached.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation, PermutationGroup

from .config import limits
from .errors import BoundExceededError, ContainmentError, ParseError, PreconditionError

logger = logging.getLogger(__name__)

Perm = Permutation

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity_perm(degree: int) -> Permutation:
    """Identity permutation on 0..degree-1."""
    return Permutation(list(range(degree)))


def perm_from_images(images: Sequence[int]) -> Permutation:
    """Build a permutation from its image list, checking bijectivity."""
    if sorted(images) != list(range(len(images))):
        raise PreconditionError(f"not a permutation: {list(images)}")
    return Permutation(list(images))


def parse_cycles(text: str, degree: int) -> Permutation:
    """
    Parse 1-indexed disjoint cycle notation such as ``(1 2 3)(4 5)``.

    Args:
        text: Cycle string; ``()`` or an empty string is the identity
        degree: Number of points

    Returns:
        The permutation on 0..degree-1
    """
    images = list(range(degree))
    stripped = text.strip()
    touched = set()
    pos = 0
    for match in _CYCLE_RE.finditer(stripped):
        if stripped[pos:match.start()].strip():
            raise ParseError(f"unexpected text {stripped[pos:match.start()].strip()!r}", 1, pos + 1)
        pos = match.end()
        body = match.group(1).replace(",", " ").split()
        if not body:
            continue
        try:
            points = [int(tok) for tok in body]
        except ValueError:
            raise ParseError(f"non-integer point in cycle {match.group(0)!r}", 1, match.start() + 1)
        for pt in points:
            if pt < 1 or pt > degree:
                raise ParseError(f"point {pt} outside 1..{degree}", 1, match.start() + 1)
            if pt in touched:
                raise ParseError(f"cycles are not disjoint at point {pt}", 1, match.start() + 1)
            touched.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1
    if stripped[pos:].strip():
        raise ParseError(f"unexpected text {stripped[pos:].strip()!r}", 1, pos + 1)
    return Permutation(images)


def format_perm(p: Permutation) -> str:
    """1-indexed cycle notation, cycles ordered by smallest moved point."""
    images = p.array_form
    seen = set()
    out = []
    for start in range(len(images)):
        if start in seen or images[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        j = images[start]
        while j != start:
            seen.add(j)
            cycle.append(j)
            j = images[j]
        out.append("(" + " ".join(str(x + 1) for x in cycle) + ")")
    return "".join(out) if out else "()"


def perm_key(p: Permutation) -> Tuple[int, ...]:
    return tuple(p.array_form)


class PermGroup:
    """
    A finitely generated permutation group with a cached stabilizer chain.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        """
        Initialize the group.

        Args:
            degree: Number of points
            generators: Generating permutations, all of size ``degree``
        """
        if degree <= 0:
            raise PreconditionError("degree must be positive")
        gens: List[Permutation] = []
        seen = set()
        for g in generators:
            if g.size != degree:
                raise PreconditionError(f"generator of degree {g.size} in a group of degree {degree}")
            if g.is_Identity or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(gens)
        self.sympy_group = PermutationGroup(list(gens) or [identity_perm(degree)])

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order}, gens={len(self.generators)})"

    @cached_property
    def order(self) -> int:
        return int(self.sympy_group.order())

    @cached_property
    def identity(self) -> Permutation:
        return identity_perm(self.degree)

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    @cached_property
    def chain(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Base points and basic orbit lengths of the Schreier–Sims chain."""
        if self.is_trivial:
            return (), ()
        self.sympy_group.schreier_sims()
        base = tuple(int(b) for b in self.sympy_group.base)
        lengths = tuple(len(orb) for orb in self.sympy_group.basic_orbits)
        return base, lengths

    @property
    def base(self) -> Tuple[int, ...]:
        return self.chain[0]

    def chain_order(self) -> int:
        """Product of basic orbit lengths."""
        result = 1
        for length in self.chain[1]:
            result *= length
        return result

    @cached_property
    def sorted_elements(self) -> List[Permutation]:
        """All elements in lexicographic order of image lists (identity first)."""
        if self.order > limits().brute_normalizer_bound * 10:
            raise BoundExceededError(
                f"refusing to list {self.order} elements",
                "element_listing", self.order, limits().brute_normalizer_bound * 10,
            )
        return sorted(self.sympy_group.generate(af=False), key=perm_key)

    @cached_property
    def elements(self) -> FrozenSet[Permutation]:
        return frozenset(self.sorted_elements)

    def __contains__(self, g: Permutation) -> bool:
        if g.size != self.degree:
            return False
        if "elements" in self.__dict__:
            return g in self.__dict__["elements"]
        return bool(self.sympy_group.contains(g))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order == other.order
            and self.is_subgroup_of(other)
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.order))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(self.sympy_group.is_abelian)

    def orbits(self) -> List[FrozenSet[int]]:
        return [frozenset(o) for o in self.sympy_group.orbits()]


GroupLike = Union[PermGroup, "Subgroup"]


def as_group(x: GroupLike) -> PermGroup:
    return x.group if isinstance(x, Subgroup) else x


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by generators on the same points."""
    parent: PermGroup
    group: PermGroup
    label: Optional[str] = None

    def __post_init__(self):
        if self.group.degree != self.parent.degree or not self.group.is_subgroup_of(self.parent):
            raise ContainmentError(f"subgroup {self.label or ''} not contained in its parent")
        if self.parent.order % self.group.order:
            raise ContainmentError("subgroup order does not divide parent order")

    @classmethod
    def of(cls, parent: PermGroup, generators: Iterable[Permutation], label: Optional[str] = None) -> "Subgroup":
        return cls(parent, PermGroup(parent.degree, generators), label)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        return self.group.generators

    @property
    def elements(self) -> FrozenSet[Permutation]:
        return self.group.elements

    @property
    def index(self) -> int:
        return self.parent.order // self.group.order

    def __contains__(self, g: Permutation) -> bool:
        return g in self.group

    def __repr__(self) -> str:
        name = f" {self.label}" if self.label else ""
        return f"Subgroup{name}(order={self.order}, index={self.index})"


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups with a canonical representative."""
    representative: Subgroup
    class_size: int

    @property
    def order(self) -> int:
        return self.representative.order


@dataclass(frozen=True)
class SocleDecomposition:
    """Components of a minimal normal subgroup."""
    components: List[Subgroup]
    abelian: bool
    prime: Optional[int] = None
    rank: int = 0


def _require_subgroup(G: PermGroup, H: PermGroup, what: str = "subgroup") -> None:
    if not H.is_subgroup_of(G):
        raise ContainmentError(f"{what} is not contained in the ambient group")


def _brute_bound(G: PermGroup, operation: str) -> None:
    bound = limits().brute_normalizer_bound
    if G.order > bound:
        raise BoundExceededError(f"{operation}: |G| = {G.order} exceeds {bound}", "brute_normalizer_bound", G.order, bound)


def build_group(degree: int, gens: Sequence[Permutation]) -> PermGroup:
    """
    Build a permutation group and verify its stabilizer chain.

    Args:
        degree: Number of points
        gens: Generators (identity and repeats are dropped)

    Returns:
        The group, with every generator sifted through the chain
    """
    for g in gens:
        if g.size != degree:
            raise PreconditionError(f"generator {g} has degree {g.size}, expected {degree}")
    G = PermGroup(degree, gens)
    if G.chain_order() != G.order and not G.is_trivial:
        raise PreconditionError("stabilizer chain order mismatch")
    for g in G.generators:
        if not G.sympy_group.contains(g):
            raise PreconditionError(f"generator {format_perm(g)} failed to sift")
    logger.debug(f"Built group of degree {degree} and order {G.order}")
    return G


def naive_closure_order(degree: int, gens: Sequence[Permutation]) -> int:
    """Order of the group generated by ``gens`` via plain breadth-first closure."""
    forms = [tuple(g.array_form) for g in gens]
    start = tuple(range(degree))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in forms:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def conjugate_subgroup(H: GroupLike, g: Permutation) -> PermGroup:
    """H^g = g^-1 H g."""
    Hg = as_group(H)
    return PermGroup(Hg.degree, [h ^ g for h in Hg.generators])


def normalizes(g: Permutation, H: GroupLike) -> bool:
    Hg = as_group(H)
    return all((h ^ g) in Hg for h in Hg.generators)


def same_subgroup(H: GroupLike, K: GroupLike) -> bool:
    return as_group(H) == as_group(K)


def is_normal(G: GroupLike, N: GroupLike) -> bool:
    """Whether N is normalized by every generator of G (N assumed inside G)."""
    Gg, Ng = as_group(G), as_group(N)
    return Ng.is_subgroup_of(Gg) and all(normalizes(g, Ng) for g in Gg.generators)


def subgroup_from_elements(degree: int, elems: Iterable[Permutation]) -> PermGroup:
    """A group generated greedily by a set of elements that is closed under products."""
    gens: List[Permutation] = []
    covered = {identity_perm(degree)}
    for e in sorted(elems, key=perm_key):
        if e in covered:
            continue
        gens.append(e)
        covered = set(PermGroup(degree, gens).elements)
    return PermGroup(degree, gens)


def intersection(G: GroupLike, H: GroupLike, K: GroupLike) -> Subgroup:
    """H ∩ K as a subgroup of G."""
    Gg = as_group(G)
    common = as_group(H).elements & as_group(K).elements
    return Subgroup(Gg, subgroup_from_elements(Gg.degree, common))


def join(G: GroupLike, *parts: Union[GroupLike, Permutation]) -> Subgroup:
    """Subgroup of G generated by the given subgroups and elements."""
    Gg = as_group(G)
    gens: List[Permutation] = []
    for part in parts:
        if isinstance(part, Permutation):
            gens.append(part)
        else:
            gens.extend(as_group(part).generators)
    return Subgroup.of(Gg, gens)


def orbit_signature(H: GroupLike) -> Tuple[int, ...]:
    return tuple(sorted(len(o) for o in as_group(H).orbits()))


def element_order_signature(H: GroupLike) -> Tuple[Tuple[int, int], ...]:
    counts = Counter(int(p.order()) for p in as_group(H).elements)
    return tuple(sorted(counts.items()))


def conjugation_orbit(H: GroupLike, gens: Sequence[Permutation]) -> List[FrozenSet[Permutation]]:
    """Orbit of the element set of H under conjugation by ``gens``."""
    start = as_group(H).elements
    orbit = [start]
    seen = {start}
    for current in orbit:
        for g in gens:
            image = frozenset(x ^ g for x in current)
            if image not in seen:
                seen.add(image)
                orbit.append(image)
    return orbit


def right_transversal(G: GroupLike, H: GroupLike) -> List[Permutation]:
    """
    One representative per right coset Hg, identity first.

    Args:
        G: Ambient group
        H: Subgroup of G

    Returns:
        |G:H| representatives in lexicographic order of first appearance
    """
    Gg, Hg = as_group(G), as_group(H)
    _require_subgroup(Gg, Hg)
    _brute_bound(Gg, "right_transversal")
    seen = set()
    reps: List[Permutation] = []
    h_elems = Hg.elements
    for g in Gg.sorted_elements:
        if g in seen:
            continue
        reps.append(g)
        seen.update(h * g for h in h_elems)
    return reps


def normalizer(G: GroupLike, H: GroupLike) -> Subgroup:
    """N_G(H) by conjugation tests over the elements of G."""
    Gg, Hg = as_group(G), as_group(H)
    _require_subgroup(Gg, Hg)
    if Hg == Gg or Hg.is_trivial:
        return Subgroup(Gg, Gg)
    _brute_bound(Gg, "normalizer")
    gens = list(Hg.generators)
    covered = set(Hg.elements)
    for g in Gg.sorted_elements:
        if g in covered:
            continue
        if normalizes(g, Hg):
            gens.append(g)
            covered = set(PermGroup(Gg.degree, gens).elements)
            if len(covered) == Gg.order:
                break
    return Subgroup.of(Gg, gens)


def centralizer(G: GroupLike, H: GroupLike) -> Subgroup:
    """C_G(H) via sympy's centralizer."""
    Gg, Hg = as_group(G), as_group(H)
    _require_subgroup(Gg, Hg)
    result = Gg.sympy_group.centralizer(Hg.sympy_group)
    return Subgroup.of(Gg, list(result.generators))


def conjugates(G: GroupLike, H: GroupLike) -> List[PermGroup]:
    """All G-conjugates of H, one per right coset of N_G(H)."""
    N = normalizer(G, H)
    return [conjugate_subgroup(H, t) for t in right_transversal(G, N)]


def conjugacy_witness(G: GroupLike, H: GroupLike, K: GroupLike) -> Optional[Permutation]:
    """
    Find g in G with H^g = K.

    Args:
        G: Ambient group
        H: Subgroup of G
        K: Subgroup of G

    Returns:
        A conjugating element, or None when H and K are not G-conjugate
    """
    Gg, Hg, Kg = as_group(G), as_group(H), as_group(K)
    _require_subgroup(Gg, Hg)
    _require_subgroup(Gg, Kg)
    if Hg.order != Kg.order:
        return None
    if Hg == Kg:
        return Gg.identity
    if orbit_signature(Hg) != orbit_signature(Kg):
        return None
    if element_order_signature(Hg) != element_order_signature(Kg):
        return None
    N = normalizer(Gg, Hg)
    for t in right_transversal(Gg, N):
        if all((h ^ t) in Kg for h in Hg.generators):
            return t
    return None


def normal_closure(G: GroupLike, S: GroupLike) -> Subgroup:
    """Smallest normal subgroup of G containing S."""
    Gg, Sg = as_group(G), as_group(S)
    _require_subgroup(Gg, Sg)
    if Sg.is_trivial:
        return Subgroup(Gg, Sg)
    closure = Subgroup.of(Gg, list(Gg.sympy_group.normal_closure(Sg.sympy_group).generators))
    if not is_normal(Gg, closure) or not Sg.is_subgroup_of(closure.group):
        raise PreconditionError("normal closure failed verification")
    return closure


def class_representatives(G: GroupLike) -> List[Permutation]:
    """Lexicographically least element of each conjugacy class of elements."""
    Gg = as_group(G)
    reps = [min(cls, key=perm_key) for cls in Gg.sympy_group.conjugacy_classes()]
    return sorted(reps, key=perm_key)


def minimal_normal_subgroups(G: GroupLike) -> List[Subgroup]:
    """All minimal normal subgroups, as minimal normal closures of single elements."""
    Gg = as_group(G)
    if Gg.is_trivial:
        raise PreconditionError("the trivial group has no minimal normal subgroups")
    closures: List[Subgroup] = []
    for rep in class_representatives(Gg):
        if rep.is_Identity:
            continue
        C = normal_closure(Gg, PermGroup(Gg.degree, [rep]))
        if not any(C.group == D.group for D in closures):
            closures.append(C)
    minimal = [
        C for C in closures
        if not any(D.order < C.order and D.group.is_subgroup_of(C.group) for D in closures)
    ]
    return sorted(minimal, key=lambda s: s.order)


def socle_components(G: GroupLike, A: GroupLike) -> SocleDecomposition:
    """
    Split a minimal normal subgroup A of G into its simple components.

    Nonabelian A is the direct product of its own minimal normal subgroups;
    abelian A is elementary abelian and reported as one component.
    """
    Gg, Ag = as_group(G), as_group(A)
    if not any(M.group == Ag for M in minimal_normal_subgroups(Gg)):
        raise PreconditionError("subgroup is not minimal normal in its parent")
    if Ag.is_abelian:
        p = int(min(int(x.order()) for x in Ag.generators))
        rank = 0
        n = Ag.order
        while n > 1:
            n //= p
            rank += 1
        return SocleDecomposition([Subgroup(Gg, Ag)], abelian=True, prime=p, rank=rank)
    comps = [Subgroup(Gg, M.group) for M in minimal_normal_subgroups(Ag)]
    return SocleDecomposition(comps, abelian=False, rank=len(comps))


class CosetAction:
    """
    Action of G on the right cosets of a normal subgroup N.
    """

    def __init__(self, G: PermGroup, N: PermGroup):
        self.group = G
        self.kernel = N
        self.transversal = right_transversal(G, N)
        self._coset_of: Dict[Permutation, int] = {}
        for i, t in enumerate(self.transversal):
            for n in N.elements:
                self._coset_of[n * t] = i
        degree = len(self.transversal)
        self.image = PermGroup(degree, [self(g) for g in G.generators])
        self._lifts: Optional[Dict[Permutation, Permutation]] = None

    def __call__(self, g: Permutation) -> Permutation:
        return Permutation([self._coset_of[t * g] for t in self.transversal])

    def image_of(self, H: GroupLike) -> Subgroup:
        """Image of a subgroup of G."""
        return Subgroup.of(self.image, [self(h) for h in as_group(H).generators])

    def lift(self, x: Permutation) -> Permutation:
        """A transversal element mapping to x."""
        if self._lifts is None:
            self._lifts = {self(t): t for t in self.transversal}
        return self._lifts[x]

    def preimage(self, K: GroupLike) -> Subgroup:
        """Full preimage in G of a subgroup of the image."""
        gens = list(self.kernel.generators) + [self.lift(x) for x in as_group(K).generators]
        return Subgroup.of(self.group, gens)


def quotient_action(G: GroupLike, N: GroupLike) -> CosetAction:
    """
    Faithful permutation image of G/N on the right cosets of N.

    Returns:
        CosetAction with ``image`` (order |G|/|N|) and the epimorphism as ``__call__``
    """
    Gg, Ng = as_group(G), as_group(N)
    if not is_normal(Gg, Ng):
        raise PreconditionError("quotient by a subgroup that is not normal")
    action = CosetAction(Gg, Ng)
    if action.image.order * Ng.order != Gg.order:
        raise PreconditionError("coset action image has the wrong order")
    return action


@dataclass
class InducedAutomorphisms:
    """Aut_G(S) acting on the nonidentity elements of S."""
    image: PermGroup
    normalizer: Subgroup
    points: List[Permutation] = field(default_factory=list)
    _position: Dict[Permutation, int] = field(default_factory=dict, repr=False)

    def __call__(self, n: Permutation) -> Permutation:
        if not self.points:
            return identity_perm(1)
        return Permutation([self._position[s ^ n] for s in self.points])


def induced_aut_group(G: GroupLike, S: GroupLike) -> InducedAutomorphisms:
    """Automorphisms of S induced by conjugation with N_G(S)."""
    Gg, Sg = as_group(G), as_group(S)
    _require_subgroup(Gg, Sg)
    N = normalizer(Gg, Sg)
    points = [s for s in Sg.sorted_elements if not s.is_Identity]
    auts = InducedAutomorphisms(PermGroup(1), N, points, {s: i for i, s in enumerate(points)})
    if points:
        auts.image = PermGroup(len(points), [auts(n) for n in N.generators])
    return auts


def is_solvable(G: GroupLike) -> bool:
    """Derived series reaches the trivial group."""
    return bool(as_group(G).sympy_group.is_solvable)


def is_simple(G: GroupLike) -> bool:
    """No proper nontrivial normal subgroup among normal closures of class representatives."""
    Gg = as_group(G)
    if Gg.is_trivial:
        return False
    for rep in class_representatives(Gg):
        if rep.is_Identity:
            continue
        if normal_closure(Gg, PermGroup(Gg.degree, [rep])).order != Gg.order:
            return False
    return True


def is_subnormal(G: GroupLike, S: GroupLike) -> bool:
    """Whether the chain of successive normal closures of S descends to S."""
    Gg, Sg = as_group(G), as_group(S)
    _require_subgroup(Gg, Sg)
    current = Gg
    while current != Sg:
        closure = normal_closure(current, Sg).group
        if closure == current:
            return False
        current = closure
    return True
