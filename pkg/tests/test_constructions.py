"""
Tests for the group expression language, builders and the GL(3,2) models.
"""

import pytest
from sympy.combinatorics import Permutation

from hallfrattini.constructions import (
    Atom,
    DirectProduct,
    ShiftProduct,
    SymbolicProduct,
    build,
    expected_order,
    extend_automorphism,
    format_group_expr,
    gl32_group,
    parse_group_expr,
    parse_group_file,
    parse_group_text,
    psl2_group,
    semidirect_by_aut,
)
from hallfrattini.errors import BoundExceededError, InvalidAutomorphismError, ParseError, UnsupportedAtomError
from hallfrattini.perm_core import PermGroup, intersection, is_normal

from .conftest import group


class TestParser:

    def test_atoms(self):
        assert parse_group_expr("Sym(4)") == Atom("Sym", (4,))
        assert parse_group_expr("GL(3, 2)") == Atom("GL", (3, 2))
        assert parse_group_expr("GL32Duality()") == Atom("GL32Duality", ())

    def test_nested(self):
        expr = parse_group_expr("DirectProduct(Sym(3), ShiftProduct(Cyclic(2), 3))")
        assert expr == DirectProduct((Atom("Sym", (3,)), ShiftProduct(Atom("Cyclic", (2,)), 3)))

    def test_automorphism_words(self):
        expr = parse_group_expr("SemidirectByAut(Dihedral(7), [g1 -> g1^2, g2 -> g2])")
        assert expr.auts[0].images == ((1, ((1, 2),)), (2, ((2, 1),)))

    def test_format_round_trip(self):
        text = "SemidirectByAut(Cyclic(7), [g -> g^3])"
        printed = format_group_expr(parse_group_expr(text))
        assert printed == "SemidirectByAut(Cyclic(7), [g1 -> g1^3])"
        assert parse_group_expr(printed) == parse_group_expr(text)

    @pytest.mark.parametrize("text", ["Sym(4", "Sym 4", "DirectProduct()", "Sym(4) extra", "SemidirectByAut(Cyclic(7))"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse_group_expr(text)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_group_expr("DirectProduct(Sym(3),\n  Sym(3) Sym(2))")
        assert info.value.line == 2


class TestGroupFiles:

    def test_parse_and_build(self, tmp_path):
        path = tmp_path / "sym4.grp"
        path.write_text("# symmetric group\nname sym4\ndegree 4\ngen (1 2)\ngen (1 2 3 4)\n", encoding="utf-8")
        expr = parse_group_file(path)
        assert expr.degree == 4
        assert build(expr).group.order == 24

    def test_file_atom_in_expression(self, tmp_path):
        path = tmp_path / "c3.grp"
        path.write_text("degree 3\ngen (1 2 3)\n", encoding="utf-8")
        assert build(parse_group_expr(f'DirectProduct(File("{path}"), Cyclic(2))')).group.order == 6

    @pytest.mark.parametrize("text, line", [
        ("gen (1 2)\ndegree 3\n", 1),
        ("degree 3\ngen (1 2)\nfoo bar\n", 3),
        ("degree 3\ngen (1 5)\n", 2),
        ("degree x\n", 1),
    ])
    def test_file_errors(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_group_text(text)
        assert info.value.line == line

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            parse_group_file(tmp_path / "absent.grp")


class TestBuild:

    def test_gl32(self):
        assert group("GL(3,2)").order == 168

    def test_direct_product(self):
        built = build(parse_group_expr("DirectProduct(Sym(3), Sym(3))"))
        assert built.group.order == 36
        assert built.group.degree == 6
        assert [f.order for f in built.factors] == [6, 6]
        assert all(is_normal(built.group, f) for f in built.factors)

    def test_direct_factors_commute_and_meet_trivially(self):
        built = build(parse_group_expr("DirectProduct(Sym(3), Alt(4))"))
        first, second = built.factors
        assert all(x * y == y * x for x in first.group.elements for y in second.group.elements)
        assert intersection(built.group, first, second).order == 1
        assert built.group.order == first.order * second.order

    def test_shift_product(self):
        built = build(parse_group_expr("ShiftProduct(Sym(3), 2)"))
        assert built.group.order == 72
        assert built.named_subgroups["base"].order == 36
        assert is_normal(built.group, built.named_subgroups["base"])
        assert built.named_subgroups["shift"].order == 2

    def test_remark2_group_is_refused(self):
        expr = parse_group_expr("ShiftProduct(GL(3,2), 5)")
        assert expected_order(expr) == 168 ** 5 * 5
        with pytest.raises(BoundExceededError) as info:
            build(expr)
        assert info.value.bound_name == "max_order"

    def test_remark2_group_symbolic_handle(self):
        handle = build(parse_group_expr("ShiftProduct(GL(3,2), 5)"), allow_symbolic=True)
        assert isinstance(handle, SymbolicProduct)
        assert handle.order == 168 ** 5 * 5
        assert handle.copies == 5
        assert handle.shifted
        assert handle.factors[0].group.order == 168
        assert handle.name == "ShiftProduct(GL(3,2), 5)"

    def test_small_product_is_built_even_when_symbolic_allowed(self):
        built = build(parse_group_expr("ShiftProduct(Sym(3), 2)"), allow_symbolic=True)
        assert not isinstance(built, SymbolicProduct)
        assert built.group.order == 72

    def test_frobenius_21(self):
        built = build(parse_group_expr("SemidirectByAut(Cyclic(7), [g -> g^2])"))
        assert built.group.order == 21
        assert built.named_subgroups["complement"].order == 3
        assert is_normal(built.group, built.named_subgroups["base"])

    @pytest.mark.parametrize("exponent, aut_order", [(2, 3), (3, 6), (6, 2)])
    def test_semidirect_order_is_base_times_automorphism_order(self, exponent, aut_order):
        built = build(parse_group_expr(f"SemidirectByAut(Cyclic(7), [g -> g^{exponent}])"))
        assert built.named_subgroups["complement"].order == aut_order
        assert built.group.order == 7 * aut_order
        assert built.group.degree == 7

    def test_decode_regular_base(self):
        built = build(parse_group_expr("SemidirectByAut(Cyclic(7), [g -> g^2])"))
        base = group("Cyclic(7)")
        rho = built.named_subgroups["base"].generators[0]
        assert built.decode(rho) == base.generators[0]

    def test_psl2(self):
        assert psl2_group(5).order == 60
        assert psl2_group(7).order == 168
        assert psl2_group(11).order == 660

    @pytest.mark.parametrize("text", ["Foo(3)", "GL(3,3)", "PSL(2,13)"])
    def test_unsupported_atoms(self, text):
        with pytest.raises(UnsupportedAtomError):
            build(parse_group_expr(text))

    def test_order_limit(self):
        with pytest.raises(BoundExceededError):
            build(parse_group_expr("Sym(13)"))


class TestAutomorphisms:

    def test_not_bijective(self):
        with pytest.raises(InvalidAutomorphismError):
            build(parse_group_expr("SemidirectByAut(Cyclic(6), [g -> g^2])"))

    def test_not_a_homomorphism(self):
        with pytest.raises(InvalidAutomorphismError):
            build(parse_group_expr("SemidirectByAut(Sym(3), [g1 -> g2])"))

    def test_unknown_generator(self):
        with pytest.raises(InvalidAutomorphismError):
            build(parse_group_expr("SemidirectByAut(Cyclic(7), [g3 -> g1])"))

    def test_extend_dihedral(self):
        D = group("Dihedral(7)")
        images = [g ** 2 if g.order() == 7 else g for g in D.generators]
        phi = extend_automorphism(D, images)
        assert len(phi) == 14
        for x in D.elements:
            for y in D.generators:
                assert phi[x * y] == phi[x] * phi[y]

    def test_semidirect_with_two_automorphisms(self):
        C7 = group("Cyclic(7)")
        g = C7.generators[0]
        built = semidirect_by_aut(C7, [extend_automorphism(C7, [g ** 2]), extend_automorphism(C7, [g ** 6])])
        assert built.group.order == 42
        assert built.named_subgroups["complement"].order == 6


class TestDuality:

    def test_orders_and_involution(self, duality):
        A_built, G_built, iota = duality
        assert A_built.group.order == 168
        assert G_built.group.order == 336
        assert (iota * iota).is_Identity
        assert iota not in A_built.group

    def test_named_hall_subgroups(self, duality):
        A_built, G_built, _ = duality
        assert A_built.named_subgroups["H1"].order == 24
        assert A_built.named_subgroups["H2"].order == 24
        assert is_normal(G_built.group, G_built.named_subgroups["socle"])

    def test_points_and_planes_are_blocks(self, duality):
        A_built, G_built, iota = duality
        points, planes = frozenset(range(7)), frozenset(range(7, 14))
        assert G_built.group.degree == 14
        assert set(A_built.group.orbits()) == {points, planes}
        assert G_built.group.orbits() == [frozenset(range(14))]
        for g in G_built.group.generators:
            image = frozenset(g.array_form[x] for x in points)
            assert image in (points, planes)
        assert frozenset(iota.array_form[x] for x in points) == planes

    def test_socle_faithful_on_each_block(self, duality):
        A_built, _, _ = duality
        gens = A_built.group.generators
        on_points = PermGroup(7, [Permutation(g.array_form[:7]) for g in gens])
        on_planes = PermGroup(7, [Permutation([x - 7 for x in g.array_form[7:]]) for g in gens])
        for block in (on_points, on_planes):
            assert block.order == 168
            assert len(block.orbits()) == 1

    def test_seven_point_model(self):
        assert gl32_group().degree == 7

    def test_atom(self):
        built = build(parse_group_expr("GL32Duality()"))
        assert built.group.order == 336
        assert built.name == "GL32Duality()"
