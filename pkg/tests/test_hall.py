"""
Tests for pi-arithmetic, Hall classification and the Hall lemmas.
"""

import pytest

from hallfrattini.constructions import build, parse_group_expr
from hallfrattini.errors import NotEPiError, PreconditionError
from hallfrattini.hall import (
    HallStatus,
    PrimeSet,
    almost_simple_check,
    c_pi_check_separable,
    extend_hall_over_pi_quotient,
    hall_classes,
    hall_intersection_check,
    induced_aut_hall,
    is_pi_number,
    is_pi_separable,
    k_pi,
    lift_hall_from_quotient,
    pi_part,
    primes_of,
    require_e_pi,
    socle_hall_orbits,
)
from hallfrattini.perm_core import PermGroup, Subgroup, intersection, quotient_action
from hallfrattini.subgroup_enum import sylow

from .conftest import cyclic, group

PI_23 = PrimeSet.of([2, 3])


class TestPrimeSet:

    def test_parse(self):
        assert PrimeSet.parse("2,3") == PI_23
        assert PrimeSet.parse("{3, 2}") == PI_23
        assert PrimeSet.parse("").primes == frozenset()

    def test_complement(self):
        pi = PrimeSet.parse("2'")
        assert pi.complement
        assert 3 in pi
        assert 2 not in pi
        assert str(pi) == "{2}'"
        assert pi.complementary() == PrimeSet.of([2])

    def test_str(self):
        assert str(PrimeSet.of([5, 2, 3])) == "{2,3,5}"

    @pytest.mark.parametrize("text", ["4", "2,x"])
    def test_invalid(self, text):
        with pytest.raises(PreconditionError):
            PrimeSet.parse(text)


class TestArithmetic:

    def test_pi_part(self):
        assert pi_part(168, PI_23) == 24
        assert pi_part(336, PI_23) == 48
        assert pi_part(168, PrimeSet()) == 1
        assert pi_part(168, PrimeSet.parse("2'")) == 21

    def test_pi_number(self):
        assert is_pi_number(12, PI_23)
        assert not is_pi_number(60, PI_23)
        assert is_pi_number(1, PrimeSet())

    def test_primes_of(self):
        assert primes_of(168) == [2, 3, 7]
        assert primes_of(1) == []


class TestHallClasses:

    def test_gl32(self, gl32):
        analysis = hall_classes(gl32, PI_23)
        assert analysis.status == HallStatus.E_ONLY
        assert analysis.class_count == 2
        assert all(c.order == 24 for c in analysis.classes)

    def test_alt5_has_no_order_20(self, alt5):
        analysis = hall_classes(alt5, PrimeSet.of([2, 5]))
        assert analysis.status == HallStatus.NOT_E
        assert analysis.classes == []

    @pytest.mark.parametrize("primes", [(), (2,), (3,), (2, 3)])
    def test_sym4_always_c(self, sym4, primes):
        assert hall_classes(sym4, PrimeSet.of(primes)).status == HallStatus.C

    def test_empty_pi(self, gl32):
        analysis = hall_classes(gl32, PrimeSet())
        assert analysis.status == HallStatus.C
        assert analysis.classes[0].order == 1

    def test_factorwise(self):
        built = build(parse_group_expr("DirectProduct(Sym(3), Alt(4))"))
        pi = PrimeSet.of([3])
        factorwise = hall_classes(built.group, pi, built.factors)
        direct = hall_classes(built.group, pi)
        assert factorwise.factorwise
        assert factorwise.class_count == direct.class_count == 1
        assert factorwise.classes[0].order == 9
        assert factorwise.classes[0].class_size == direct.classes[0].class_size == 4

    def test_factorwise_needs_decomposition(self, sym4, klein):
        with pytest.raises(PreconditionError):
            hall_classes(sym4, PrimeSet.of([2]), [Subgroup(sym4, klein)])

    def test_require_e_pi(self, alt5):
        with pytest.raises(NotEPiError):
            require_e_pi(alt5, PrimeSet.of([2, 5]))


class TestIntersectionLemma:

    def test_sym5_over_alt5(self, sym5, alt5):
        H = PermGroup(5, sym5.sympy_group.stabilizer(0).generators)
        meet, image = hall_intersection_check(sym5, alt5, H, PI_23)
        assert meet.order == 12
        assert image.order == 2

    def test_whole_group(self, sym4):
        H = sylow(sym4, 2)
        meet, image = hall_intersection_check(sym4, sym4, H, PrimeSet.of([2]))
        assert meet.group == H.group
        assert image.order == 1

    def test_trivial_normal_subgroup(self, sym4):
        H = sylow(sym4, 3)
        meet, image = hall_intersection_check(sym4, PermGroup(4), H, PrimeSet.of([3]))
        assert meet.order == 1
        assert image.order == 3

    def test_requires_hall(self, sym4, klein):
        with pytest.raises(PreconditionError):
            hall_intersection_check(sym4, klein, klein, PrimeSet.of([2]))


class TestSeparability:

    @pytest.mark.parametrize("primes", [(2,), (3,), (2, 3)])
    def test_solvable(self, sym4, primes):
        assert is_pi_separable(sym4, PrimeSet.of(primes))

    def test_alt5(self, alt5):
        assert not is_pi_separable(alt5, PI_23)
        assert is_pi_separable(alt5, PrimeSet.of([2, 3, 5]))

    def test_sym5(self, sym5):
        assert not is_pi_separable(sym5, PI_23)
        assert is_pi_separable(sym5, PrimeSet.of([2, 3, 5]))

    def test_separable_implies_single_class(self, sym4):
        assert c_pi_check_separable(sym4, PrimeSet.of([2]))

    def test_frobenius_21(self):
        G = group("SemidirectByAut(Cyclic(7), [g -> g^2])")
        assert c_pi_check_separable(G, PrimeSet.of([3]))
        analysis = hall_classes(G, PrimeSet.of([3]))
        assert analysis.classes[0].class_size == 7

    def test_dihedral_15(self):
        G = group("Dihedral(15)")
        analysis = hall_classes(G, PrimeSet.of([3, 5]))
        assert analysis.status == HallStatus.C
        assert analysis.classes[0].order == 15
        assert analysis.classes[0].class_size == 1

    def test_not_separable(self, alt5):
        with pytest.raises(PreconditionError):
            c_pi_check_separable(alt5, PI_23)


class TestKPi:

    def test_sym5_alt5(self, sym5, alt5):
        k, classes = k_pi(sym5, alt5, PI_23)
        assert k == 1
        assert classes[0].order == 12

    def test_whole_group(self, gl32):
        k, _ = k_pi(gl32, gl32, PI_23)
        assert k == hall_classes(gl32, PI_23).class_count == 2

    def test_klein(self, sym4, klein):
        k, classes = k_pi(sym4, klein, PrimeSet.of([2]))
        assert k == 1
        assert classes[0].order == 4

    def test_requires_subnormal(self, sym4):
        with pytest.raises(PreconditionError):
            k_pi(sym4, cyclic(4, "(1 2)"), PrimeSet.of([2]))


class TestExtensionLemma:

    def test_sym4_over_alt4(self, sym4, alt4):
        H = extend_hall_over_pi_quotient(sym4, alt4, alt4, PI_23)
        assert H is not None
        assert H.group == sym4

    def test_sym5_over_alt5(self, sym5, alt5):
        H = extend_hall_over_pi_quotient(sym5, alt5, alt5, PrimeSet.of([2, 3, 5]))
        assert H.order == 120

    def test_duality_has_no_extension(self, duality):
        A_built, G_built, _ = duality
        H1 = A_built.named_subgroups["H1"]
        assert extend_hall_over_pi_quotient(G_built.group, A_built.group, H1, PI_23) is None

    def test_extension_meets_in_u(self, sym4, alt4, klein):
        H = extend_hall_over_pi_quotient(sym4, alt4, sylow(alt4, 2), PrimeSet.of([2]))
        assert H.order == 8
        assert intersection(sym4, H, alt4).group == klein

    def test_quotient_must_be_pi_group(self, sym5, alt5):
        with pytest.raises(PreconditionError):
            extend_hall_over_pi_quotient(sym5, alt5, sylow(alt5, 5), PrimeSet.of([5]))


class TestLiftLemma:

    def test_sym5_whole_quotient(self, sym5, alt5):
        action = quotient_action(sym5, alt5)
        H = lift_hall_from_quotient(sym5, alt5, action.image, PI_23, action)
        assert H.order == 24

    def test_sym4_over_klein(self, sym4, klein):
        action = quotient_action(sym4, klein)
        Kbar = sylow(action.image, 3)
        H = lift_hall_from_quotient(sym4, klein, Kbar, PrimeSet.of([3]))
        assert H.order == 3

    def test_trivial_kernel(self, sym3):
        action = quotient_action(sym3, PermGroup(3))
        Kbar = sylow(action.image, 2)
        H = lift_hall_from_quotient(sym3, PermGroup(3), Kbar, PrimeSet.of([2]), action)
        assert action.image_of(H).group == Kbar.group

    def test_requires_hall(self, sym4, klein):
        action = quotient_action(sym4, klein)
        with pytest.raises(PreconditionError):
            lift_hall_from_quotient(sym4, klein, action.image, PrimeSet.of([3]), action)


class TestAlmostSimple:

    def test_sym5(self, sym5):
        check = almost_simple_check(sym5, PI_23)
        assert check.k == 1
        assert check.passed

    def test_psl27_two_classes(self):
        check = almost_simple_check(group("PSL(2,7)"), PI_23)
        assert check.k == 2
        assert check.k in check.allowed
        assert check.passed

    def test_sylow_case(self, alt5):
        check = almost_simple_check(alt5, PrimeSet.of([5]))
        assert check.allowed == (1,)
        assert check.k == 1

    def test_two_not_in_pi(self, sym5):
        check = almost_simple_check(sym5, PrimeSet.of([3]))
        assert check.allowed == (1,)
        assert check.passed

    def test_three_not_in_pi(self, alt5):
        check = almost_simple_check(alt5, PrimeSet.of([2]))
        assert check.allowed == (1, 2)
        assert check.k == 1

    def test_not_almost_simple(self, sym4):
        with pytest.raises(PreconditionError):
            almost_simple_check(sym4, PI_23)

    def test_orbits_on_classes(self, gl32):
        assert socle_hall_orbits(gl32, gl32, PI_23) == [1, 1]

    def test_induced_automorphisms_in_e_pi(self, sym5, alt5):
        assert induced_aut_hall(sym5, alt5, PI_23).status != HallStatus.NOT_E
