"""
Exhaustive enumeration of subgroup conjugacy classes for small groups.

Every subgroup is generated by the cyclic subgroups of prime-power order it
contains, so extending each known class representative by one such cyclic
subgroup at a time reaches every class. Conjugacy is decided by orbits of
element sets under the generators of G.
"""

import logging
from typing import Dict, FrozenSet, List, Optional, Tuple

from sympy import factorint

from .config import limits
from .errors import BoundExceededError, PreconditionError
from .perm_core import (
    GroupLike,
    PermGroup,
    Subgroup,
    SubgroupClass,
    as_group,
    class_representatives,
    join,
    normal_closure,
)

logger = logging.getLogger(__name__)

IndexSet = FrozenSet[int]


class _ElementTable:
    """Elements of G indexed in sorted order, with cached action maps."""

    def __init__(self, G: PermGroup):
        self.group = G
        self.elements = G.sorted_elements
        self.index = {x: i for i, x in enumerate(self.elements)}
        self._right: Dict[int, List[int]] = {}
        self._conj: Dict[int, List[int]] = {}

    def right_map(self, g: int) -> List[int]:
        m = self._right.get(g)
        if m is None:
            x = self.elements[g]
            m = [self.index[e * x] for e in self.elements]
            self._right[g] = m
        return m

    def conj_map(self, g: int) -> List[int]:
        m = self._conj.get(g)
        if m is None:
            x = self.elements[g]
            m = [self.index[e ^ x] for e in self.elements]
            self._conj[g] = m
        return m

    def closure(self, start: IndexSet, gens: List[int], cap: Optional[int] = None) -> Optional[IndexSet]:
        """
        Subgroup generated by a subgroup ``start`` and extra generators.

        Returns None as soon as the closure exceeds ``cap`` elements.
        """
        maps = [self.right_map(g) for g in gens]
        seen = set(start)
        frontier = list(start)
        while frontier:
            nxt = []
            for x in frontier:
                for m in maps:
                    y = m[x]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if cap is not None and len(seen) > cap:
                return None
            frontier = nxt
        return frozenset(seen)

    def conjugacy_orbit(self, members: IndexSet) -> List[IndexSet]:
        maps = [self.conj_map(self.index[g]) for g in self.group.generators]
        orbit = [members]
        known = {members}
        for current in orbit:
            for m in maps:
                image = frozenset(m[x] for x in current)
                if image not in known:
                    known.add(image)
                    orbit.append(image)
        return orbit


def _check_bound(G: PermGroup) -> None:
    bound = limits().enumeration_bound
    if G.order > bound:
        raise BoundExceededError(
            f"subgroup enumeration: |G| = {G.order} exceeds {bound}",
            "enumeration_bound", G.order, bound,
        )


def _prime_power_cyclics(table: _ElementTable) -> List[Tuple[int, IndexSet]]:
    """One generator per cyclic subgroup of prime-power order > 1."""
    result = []
    seen = set()
    for i, x in enumerate(table.elements):
        order = int(x.order())
        if order == 1 or len(factorint(order)) != 1:
            continue
        powers = frozenset(table.index[x ** k] for k in range(order))
        if powers in seen:
            continue
        seen.add(powers)
        result.append((i, powers))
    return result


def subgroup_classes(G: GroupLike, order_filter: Optional[int] = None) -> List[SubgroupClass]:
    """
    Every conjugacy class of subgroups of G, exactly once.

    Args:
        G: Group with order within the enumeration bound
        order_filter: If given, only classes whose order divides it

    Returns:
        Classes sorted by (order, class size, sorted element indices of the representative)
    """
    Gg = as_group(G)
    _check_bound(Gg)
    table = _ElementTable(Gg)
    cyclics = _prime_power_cyclics(table)
    if order_filter is not None:
        cyclics = [(g, c) for g, c in cyclics if order_filter % len(c) == 0]

    trivial = frozenset([0])
    # members -> class id; reps hold (element indices, generator indices, class size)
    seen: Dict[IndexSet, int] = {trivial: 0}
    reps: List[Tuple[IndexSet, List[int], int]] = [(trivial, [], 1)]

    for members, gens, _ in reps:
        for g, cyc in cyclics:
            if g in members:
                continue
            cap = order_filter if order_filter is not None else Gg.order
            new = table.closure(members, gens + [g], cap)
            if new is None or new in seen:
                continue
            if order_filter is not None and order_filter % len(new):
                continue
            orbit = table.conjugacy_orbit(new)
            cid = len(reps)
            for conj in orbit:
                seen[conj] = cid
            reps.append((new, gens + [g], len(orbit)))

    classes = []
    for members, gens, size in sorted(reps, key=lambda r: (len(r[0]), r[2], sorted(r[0]))):
        rep = Subgroup.of(Gg, [table.elements[i] for i in gens])
        if rep.order != len(members):
            raise PreconditionError("enumerated subgroup has inconsistent order")
        classes.append(SubgroupClass(rep, size))
    logger.debug(f"Enumerated {len(classes)} subgroup classes of a group of order {Gg.order}")
    return classes


def subgroups_of_order(G: GroupLike, m: int) -> List[SubgroupClass]:
    """All classes whose representative has order exactly m."""
    Gg = as_group(G)
    if m <= 0 or Gg.order % m:
        return []
    return [c for c in subgroup_classes(Gg, order_filter=m) if c.order == m]


def subgroup_count(classes: List[SubgroupClass]) -> int:
    return sum(c.class_size for c in classes)


def sylow(G: GroupLike, p: int) -> Subgroup:
    """
    A Sylow p-subgroup of G (trivial when p does not divide |G|).
    """
    Gg = as_group(G)
    p_part = 1
    n = Gg.order
    while n % p == 0:
        n //= p
        p_part *= p
    if p_part == 1:
        return Subgroup(Gg, PermGroup(Gg.degree))
    P = Subgroup.of(Gg, list(Gg.sympy_group.sylow_subgroup(p).generators))
    if P.order != p_part:
        raise PreconditionError(f"Sylow {p}-subgroup has order {P.order}, expected {p_part}")
    return P


def normal_subgroups(G: GroupLike) -> List[Subgroup]:
    """
    All normal subgroups, sorted by order.

    Every normal subgroup is a join of normal closures of single elements,
    so closing the set of those closures under joins is exhaustive.
    """
    Gg = as_group(G)
    closures: List[PermGroup] = []
    for rep in class_representatives(Gg):
        if rep.is_Identity:
            continue
        C = normal_closure(Gg, PermGroup(Gg.degree, [rep])).group
        if C not in closures:
            closures.append(C)

    found: List[PermGroup] = [PermGroup(Gg.degree)]
    for N in found:
        for C in closures:
            if C.is_subgroup_of(N):
                continue
            J = join(Gg, N, C).group
            if J not in found:
                found.append(J)
    return [Subgroup(Gg, N) for N in sorted(found, key=lambda N: N.order)]
