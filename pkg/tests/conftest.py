"""
Shared fixtures: default settings for every test and module-scoped group builds.
"""

from typing import FrozenSet, Iterable, Set

import pytest
from sympy.combinatorics import Permutation

from hallfrattini.config import BOUNDS_ENV_VAR, EngineSettings, set_settings
from hallfrattini.constructions import build, gl32_with_duality, parse_group_expr
from hallfrattini.perm_core import PermGroup, normal_closure, parse_cycles


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    """Built-in defaults, independent of config files and the environment."""
    monkeypatch.delenv(BOUNDS_ENV_VAR, raising=False)
    set_settings(EngineSettings())
    yield
    set_settings(None)


def group(expr: str) -> PermGroup:
    return build(parse_group_expr(expr)).group


def cyclic(degree: int, *cycles: str) -> PermGroup:
    return PermGroup(degree, [parse_cycles(c, degree) for c in cycles])


def naive_closure(gens: Iterable[Permutation], degree: int) -> FrozenSet[Permutation]:
    """Element set of <gens> by repeated multiplication."""
    identity = Permutation(list(range(degree)))
    gens = list(gens)
    seen: Set[Permutation] = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def naive_two_generated(G: PermGroup) -> Set[FrozenSet[Permutation]]:
    """All subgroups <x, y>; exhaustive for groups whose subgroups are 2-generated."""
    elems = G.sorted_elements
    found: Set[FrozenSet[Permutation]] = set()
    for i, x in enumerate(elems):
        for y in elems[i:]:
            found.add(naive_closure([x, y], G.degree))
    return found


def naive_normalizer(G: PermGroup, H: PermGroup) -> FrozenSet[Permutation]:
    return frozenset(g for g in G.elements if all((h ^ g) in H for h in H.generators))


@pytest.fixture(scope="module")
def sym3():
    return group("Sym(3)")


@pytest.fixture(scope="module")
def sym4():
    return group("Sym(4)")


@pytest.fixture(scope="module")
def alt4():
    return group("Alt(4)")


@pytest.fixture(scope="module")
def alt5():
    return group("Alt(5)")


@pytest.fixture(scope="module")
def sym5():
    return group("Sym(5)")


@pytest.fixture(scope="module")
def klein(sym4):
    return normal_closure(sym4, cyclic(4, "(1 2)(3 4)")).group


@pytest.fixture(scope="module")
def gl32():
    return group("GL(3,2)")


@pytest.fixture(scope="module")
def duality():
    """(A, G, iota) for GL(3,2) on points and planes with the inverse-transpose involution."""
    return gl32_with_duality()
