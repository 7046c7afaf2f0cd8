"""
GL(3,2) on the Fano plane, its duality extension, and PSL(2,p) on the projective line.
"""

import logging
from itertools import product
from typing import List, Tuple

from sympy import Matrix
from sympy.combinatorics import Permutation

from ..errors import PreconditionError
from ..perm_core import PermGroup, Subgroup, build_group
from .built import BuiltGroup
from .expr import Atom

logger = logging.getLogger(__name__)

# Nonzero vectors of GF(2)^3; point i is VECTORS[i], plane 7+i has covector VECTORS[i].
VECTORS: List[Tuple[int, int, int]] = [v for v in product((0, 1), repeat=3) if any(v)]
_INDEX = {v: i for i, v in enumerate(VECTORS)}


def _transvections() -> List[Matrix]:
    """Elementary transvections I + E_ij; they generate SL(3,2) = GL(3,2)."""
    mats = []
    for i in range(3):
        for j in range(3):
            if i != j:
                m = Matrix.eye(3)
                m[i, j] = 1
                mats.append(m)
    return mats


def _row_image(v: Tuple[int, ...], m: Matrix) -> Tuple[int, int, int]:
    w = Matrix([list(v)]) * m
    return tuple(int(x) % 2 for x in w)


def _column_image(f: Tuple[int, ...], m: Matrix) -> Tuple[int, int, int]:
    w = m * Matrix(list(f))
    return tuple(int(x) % 2 for x in w)


def point_action(m: Matrix) -> Permutation:
    """v -> vM on the 7 projective points."""
    return Permutation([_INDEX[_row_image(v, m)] for v in VECTORS])


def point_plane_action(m: Matrix) -> Permutation:
    """v -> vM on points 0..6 and f -> M^-1 f on planes 7..13 (incidence v.f = 0 is preserved)."""
    inv = m.inv_mod(2)
    points = [_INDEX[_row_image(v, m)] for v in VECTORS]
    planes = [7 + _INDEX[_column_image(f, inv)] for f in VECTORS]
    return Permutation(points + planes)


def duality_involution() -> Permutation:
    """The standard correlation: point v <-> plane with covector v^t."""
    return Permutation([7 + i for i in range(7)] + list(range(7)))


def gl32_group() -> PermGroup:
    G = build_group(7, [point_action(m) for m in _transvections()])
    if G.order != 168:
        raise PreconditionError(f"GL(3,2) built with order {G.order}")
    return G


def psl2_group(p: int) -> PermGroup:
    """PSL(2,p) on the p+1 points of the projective line (point p is infinity)."""
    inf = p
    translate = Permutation([(z + 1) % p for z in range(p)] + [inf])
    invert = Permutation([inf] + [(-pow(z, -1, p)) % p for z in range(1, p)] + [0])
    G = build_group(p + 1, [translate, invert])
    if G.order != p * (p * p - 1) // 2:
        raise PreconditionError(f"PSL(2,{p}) built with order {G.order}")
    return G


def gl32_with_duality() -> Tuple[BuiltGroup, BuiltGroup, Permutation]:
    """
    GL(3,2) on 7 points + 7 planes, the inverse-transpose involution, and A:<iota>.

    Returns:
        (A, G, iota) with H1 (point stabilizer) and H2 (plane stabilizer) named in both
    """
    a_gens = [point_plane_action(m) for m in _transvections()]
    A = build_group(14, a_gens)
    iota = duality_involution()
    G = build_group(14, a_gens + [iota])
    if A.order != 168 or G.order != 336:
        raise PreconditionError(f"duality extension built with orders {A.order}/{G.order}")

    h1 = PermGroup(14, A.sympy_group.stabilizer(0).generators)
    h2 = PermGroup(14, A.sympy_group.stabilizer(7).generators)
    a_named = {
        "H1": Subgroup(A, h1, "H1"),
        "H2": Subgroup(A, h2, "H2"),
    }
    g_named = {
        "socle": Subgroup(G, A, "socle"),
        "H1": Subgroup(G, h1, "H1"),
        "H2": Subgroup(G, h2, "H2"),
        "iota": Subgroup.of(G, [iota], "iota"),
    }
    logger.info(f"GL(3,2) duality extension: |A|={A.order}, |G|={G.order}")
    return (
        BuiltGroup(A, a_named, Atom("GL", (3, 2))),
        BuiltGroup(G, g_named, Atom("GL32Duality")),
        iota,
    )
