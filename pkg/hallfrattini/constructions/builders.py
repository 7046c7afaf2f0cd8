"""
Builders turning group expressions into permutation groups.
"""

import logging
from math import prod
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import AlternatingGroup, CyclicGroup, DihedralGroup, SymmetricGroup

from ..config import limits
from ..errors import BoundExceededError, InvalidAutomorphismError, PreconditionError, UnsupportedAtomError
from ..perm_core import PermGroup, Subgroup, build_group, identity_perm, is_normal, parse_cycles
from .built import BuiltGroup, SymbolicProduct
from .expr import Atom, AutSpec, DirectProduct, FromFile, GroupExpr, SemidirectByAut, ShiftProduct, format_group_expr
from .gl32 import gl32_group, gl32_with_duality, psl2_group

logger = logging.getLogger(__name__)

PSL_PRIMES = (5, 7, 11)


def _atom_order(atom: Atom) -> int:
    name, params = atom.name, atom.params
    if name == "Sym" and len(params) == 1:
        return prod(range(1, params[0] + 1))
    if name == "Alt" and len(params) == 1:
        return max(1, prod(range(1, params[0] + 1)) // 2)
    if name == "Cyclic" and len(params) == 1:
        return params[0]
    if name == "Dihedral" and len(params) == 1:
        return 2 * params[0]
    if name == "GL" and params == (3, 2):
        return 168
    if name == "PSL" and len(params) == 2 and params[0] == 2:
        p = params[1]
        return p * (p * p - 1) // 2
    if name == "GL32Duality" and not params:
        return 336
    raise UnsupportedAtomError(f"unsupported atom {format_group_expr(atom)}")


def expected_order(expr: GroupExpr) -> int:
    """Order of the expression's group, computed without building large products."""
    if isinstance(expr, Atom):
        return _atom_order(expr)
    if isinstance(expr, DirectProduct):
        return prod(expected_order(f) for f in expr.factors)
    if isinstance(expr, ShiftProduct):
        return expected_order(expr.factor) ** expr.copies * expr.copies
    return build(expr).group.order


def _check_limits(degree: int, order: int, what: str) -> None:
    lim = limits()
    if degree > lim.max_degree:
        raise BoundExceededError(f"{what}: degree {degree} exceeds {lim.max_degree}", "max_degree", degree, lim.max_degree)
    if order > lim.max_order:
        raise BoundExceededError(
            f"{what}: order {order} exceeds {lim.max_order}; use the symbolic product calculus",
            "max_order", order, lim.max_order,
        )


def _build_atom(atom: Atom) -> BuiltGroup:
    name, params = atom.name, atom.params
    if name in ("Sym", "Alt") and len(params) == 1 and 1 <= params[0] <= 12:
        n = params[0]
        named = SymmetricGroup(n) if name == "Sym" else AlternatingGroup(n)
        return BuiltGroup(build_group(n, [g for g in named.generators if g.size == n]), provenance=atom)
    if name in ("Cyclic", "Dihedral") and len(params) == 1 and 1 <= params[0] <= 100:
        named = CyclicGroup(params[0]) if name == "Cyclic" else DihedralGroup(params[0])
        degree = max(g.size for g in named.generators)
        gens = [Permutation(list(g.array_form) + list(range(g.size, degree))) for g in named.generators]
        return BuiltGroup(build_group(degree, gens), provenance=atom)
    if name == "GL" and params == (3, 2):
        return BuiltGroup(gl32_group(), provenance=atom)
    if name == "PSL" and len(params) == 2 and params[0] == 2 and params[1] in PSL_PRIMES:
        return BuiltGroup(psl2_group(params[1]), provenance=atom)
    if name == "GL32Duality" and not params:
        _, built, _ = gl32_with_duality()
        built.provenance = atom
        return built
    raise UnsupportedAtomError(f"unsupported atom {format_group_expr(atom)}")


def _shift(g: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(degree))
    for i, x in enumerate(g.array_form):
        images[offset + i] = offset + x
    return Permutation(images)


def direct_product(parts: Sequence[PermGroup]) -> Tuple[PermGroup, List[Subgroup]]:
    """Direct product on the disjoint union of the factor domains."""
    degree = sum(p.degree for p in parts)
    offsets = [sum(p.degree for p in parts[:i]) for i in range(len(parts))]
    factor_gens = [[_shift(g, off, degree) for g in p.generators] for p, off in zip(parts, offsets)]
    G = build_group(degree, [g for gens in factor_gens for g in gens])
    factors = [Subgroup.of(G, gens, f"factor_{i + 1}") for i, gens in enumerate(factor_gens)]
    return G, factors


def evaluate_word(G: PermGroup, word: Sequence[Tuple[int, int]]) -> Permutation:
    result = G.identity
    for gen, exp in word:
        if gen > len(G.generators):
            raise InvalidAutomorphismError(f"generator g{gen} does not exist (group has {len(G.generators)})")
        result = result * G.generators[gen - 1] ** exp
    return result


def extend_automorphism(G: PermGroup, images: Sequence[Permutation]) -> Dict[Permutation, Permutation]:
    """
    Extend generator images to a full automorphism of G.

    Args:
        G: The group
        images: Image of each generator of G, in generator order

    Returns:
        Element-wise map, verified homomorphic and bijective
    """
    if len(images) != len(G.generators):
        raise InvalidAutomorphismError("one image per generator is required")
    for img in images:
        if img not in G:
            raise InvalidAutomorphismError("generator image outside the group")
    phi: Dict[Permutation, Permutation] = {G.identity: G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, img in zip(G.generators, images):
                y, value = x * g, phi[x] * img
                known = phi.get(y)
                if known is None:
                    phi[y] = value
                    nxt.append(y)
                elif known != value:
                    raise InvalidAutomorphismError("generator images do not define a homomorphism")
        frontier = nxt
    if len(set(phi.values())) != len(phi):
        raise InvalidAutomorphismError("automorphism is not bijective")
    return phi


def aut_images(G: PermGroup, spec: AutSpec) -> List[Permutation]:
    """Generator images from a parsed automorphism spec; unspecified generators are fixed."""
    images = list(G.generators)
    for gen, word in spec.images:
        if gen > len(images):
            raise InvalidAutomorphismError(f"generator g{gen} does not exist")
        images[gen - 1] = evaluate_word(G, word)
    return images


def semidirect_by_aut(base: PermGroup, automorphisms: Sequence[Mapping[Permutation, Permutation]]) -> BuiltGroup:
    """
    N:<auts> on the |N| elements of N: N by right translation, the automorphisms by their action.
    """
    _check_limits(base.order, base.order, "SemidirectByAut")
    elems = base.sorted_elements
    index = {x: i for i, x in enumerate(elems)}
    degree = len(elems)

    def translation(n: Permutation) -> Permutation:
        return Permutation([index[x * n] for x in elems])

    translations = [translation(n) for n in base.generators] or [identity_perm(degree)]
    alphas = [Permutation([index[phi[x]] for x in elems]) for phi in automorphisms]
    G = build_group(degree, translations + alphas)
    regular = Subgroup.of(G, translations, "base")
    complement = Subgroup.of(G, alphas, "complement")
    if not is_normal(G, regular) or G.order != regular.order * complement.order:
        raise InvalidAutomorphismError("semidirect product has the wrong structure")
    logger.info(f"Semidirect product built: |N|={base.order}, |A|={complement.order}, degree={degree}")
    return BuiltGroup(G, {"base": regular, "complement": complement}, base_elements=list(elems))


def build_symbolic(expr: GroupExpr) -> SymbolicProduct:
    """
    Symbolic handle for a product expression; only its factors are built.

    Args:
        expr: DirectProduct or ShiftProduct expression

    Returns:
        SymbolicProduct carrying the built factors and the expected order
    """
    if isinstance(expr, ShiftProduct):
        if expr.copies < 1:
            raise PreconditionError("ShiftProduct needs at least one copy")
        factor = build(expr.factor)
        handle = SymbolicProduct([factor] * expr.copies, True, expected_order(expr), expr)
    elif isinstance(expr, DirectProduct):
        handle = SymbolicProduct([build(f) for f in expr.factors], False, expected_order(expr), expr)
    else:
        raise PreconditionError(f"{format_group_expr(expr)} has no symbolic form")
    logger.info(f"Symbolic handle for {handle.name}: order {handle.order}, {handle.copies} blocks")
    return handle


def build(expr: GroupExpr, allow_symbolic: bool = False) -> Union[BuiltGroup, SymbolicProduct]:
    """
    Build the permutation group of an expression.

    Args:
        expr: Parsed group expression
        allow_symbolic: Return a SymbolicProduct instead of refusing a product over max_order

    Returns:
        BuiltGroup with named subgroups recorded per construction
    """
    if allow_symbolic and isinstance(expr, (DirectProduct, ShiftProduct)) and expected_order(expr) > limits().max_order:
        return build_symbolic(expr)

    if isinstance(expr, Atom):
        _check_limits(0, _atom_order(expr), format_group_expr(expr))
        return _build_atom(expr)

    if isinstance(expr, DirectProduct):
        _check_limits(0, expected_order(expr), "DirectProduct")
        parts = [build(f).group for f in expr.factors]
        _check_limits(sum(p.degree for p in parts), prod(p.order for p in parts), "DirectProduct")
        G, factors = direct_product(parts)
        named = {f.label: f for f in factors}
        named["base"] = Subgroup(G, G, "base")
        return BuiltGroup(G, named, expr, factors)

    if isinstance(expr, ShiftProduct):
        if expr.copies < 1:
            raise PreconditionError("ShiftProduct needs at least one copy")
        factor = build(expr.factor).group
        _check_limits(factor.degree * expr.copies, factor.order ** expr.copies * expr.copies, "ShiftProduct")
        degree = factor.degree * expr.copies
        _, factors = direct_product([factor] * expr.copies)
        d = factor.degree
        tau = Permutation([(i + d) % degree for i in range(degree)])
        base_gens = [g for f in factors for g in f.generators]
        G = build_group(degree, base_gens + [tau])
        factors = [Subgroup.of(G, f.generators, f.label) for f in factors]
        named = {f.label: f for f in factors}
        named["base"] = Subgroup.of(G, base_gens, "base")
        named["shift"] = Subgroup.of(G, [tau], "shift")
        return BuiltGroup(G, named, expr, factors)

    if isinstance(expr, SemidirectByAut):
        base = build(expr.base).group
        autos = [extend_automorphism(base, aut_images(base, spec)) for spec in expr.auts]
        built = semidirect_by_aut(base, autos)
        built.provenance = expr
        return built

    if isinstance(expr, FromFile):
        gens = [parse_cycles(text, expr.degree) for text in expr.generators]
        G = build_group(expr.degree, gens)
        _check_limits(expr.degree, G.order, expr.path)
        return BuiltGroup(G, provenance=expr)

    raise TypeError(f"not a group expression: {expr!r}")
