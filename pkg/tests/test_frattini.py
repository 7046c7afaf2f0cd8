"""
Tests for the Frattini argument: oracle, constructive path and corollaries.
"""

import pytest

from hallfrattini.callbacks import LoggingStepHandler, TraceCollector
from hallfrattini.constructions import build, extend_automorphism, parse_group_expr
from hallfrattini.errors import NotEPiError, PreconditionError
from hallfrattini.frattini import (
    Method,
    StepKind,
    build_invariant_product_hall,
    certify_witness,
    class_is_stable,
    conjugate_complements,
    e_pi_criterion,
    find_fusion_stable_hall,
    frattini_constructive,
    frattini_oracle,
    invariant_hall_under_coprime,
    schur_zassenhaus_complement,
    verify_c_pi_closure,
)
from hallfrattini.hall import PrimeSet, hall_classes
from hallfrattini.perm_core import PermGroup, is_normal, normal_closure
from hallfrattini.subgroup_enum import normal_subgroups, subgroups_of_order, sylow

from .conftest import cyclic, group

PI_23 = PrimeSet.of([2, 3])


class TestOracle:

    def test_sym5_over_alt5(self, sym5, alt5):
        w = frattini_oracle(sym5, alt5, PI_23)
        assert w.method == Method.ORACLE
        assert w.H.order == 12
        assert w.normalizer.order == 24
        assert w.checks.all_passed

    def test_sym4_over_alt4(self, sym4, alt4, klein):
        w = frattini_oracle(sym4, alt4, PrimeSet.of([2]))
        assert w.H.group == klein
        assert is_normal(sym4, w.H)
        assert w.checks.all_passed

    def test_duality_not_e_pi(self, duality):
        A_built, G_built, _ = duality
        with pytest.raises(NotEPiError):
            frattini_oracle(G_built.group, A_built.group, PI_23)

    def test_requires_normal(self, sym4):
        with pytest.raises(PreconditionError):
            frattini_oracle(sym4, cyclic(4, "(1 2)"), PrimeSet.of([2]))

    def test_stable_classes_listed(self, gl32):
        w = frattini_oracle(gl32, gl32, PI_23)
        assert len(w.stable_classes) == 2


class TestConstructive:

    def test_schur_zassenhaus_route(self, sym4):
        collector = TraceCollector()
        w = frattini_constructive(sym4, sym4, PrimeSet.of([3]), callbacks=[collector, LoggingStepHandler()])
        assert w.method == Method.CONSTRUCTIVE
        assert w.H.order == 3
        kinds = [step.kind for step in w.trace]
        assert StepKind.SCHUR_ZASSENHAUS in kinds
        assert StepKind.QUOTIENT_LIFT in kinds
        assert StepKind.SCHUR_ZASSENHAUS.value in collector.kinds()
        assert collector.failures == []

    def test_minimal_normal_route(self, sym5, alt5):
        w = frattini_constructive(sym5, alt5, PI_23)
        assert w.H.order == 12
        assert [step.kind for step in w.trace] == [StepKind.MINIMAL_NORMAL]
        assert w.checks.all_passed

    def test_whole_group(self, sym4):
        w = frattini_constructive(sym4, sym4, PrimeSet.of([2]))
        assert w.H.order == 8
        assert w.checks.product_covers_G

    def test_trivial_pi(self, sym4):
        w = frattini_constructive(sym4, sym4, PrimeSet())
        assert w.H.order == 1
        assert [step.kind for step in w.trace] == [StepKind.TRIVIAL]

    @pytest.mark.parametrize("primes", [(), (2,), (3,), (2, 3)])
    def test_agrees_with_oracle_on_sym4(self, sym4, primes):
        pi = PrimeSet.of(primes)
        for A in normal_subgroups(sym4):
            oracle = frattini_oracle(sym4, A, pi)
            built = frattini_constructive(sym4, A, pi)
            assert oracle.checks == built.checks
            assert built.checks.all_passed
            assert class_is_stable(sym4, A, built.H)

    @pytest.mark.slow
    def test_agrees_with_oracle_on_sym5(self, sym5):
        for primes in [(2,), (3,), (5,), (2, 3), (2, 3, 5)]:
            pi = PrimeSet.of(primes)
            for A in normal_subgroups(sym5):
                built = frattini_constructive(sym5, A, pi)
                assert built.checks == frattini_oracle(sym5, A, pi).checks
                assert built.checks.all_passed


class TestWitnessChecks:

    def test_certify(self, sym5, alt5):
        H = sylow(alt5, 5)
        N, checks = certify_witness(sym5, alt5, H, PrimeSet.of([5]))
        assert N.order == 20
        assert checks.all_passed

    def test_unstable_class(self, duality):
        A_built, G_built, _ = duality
        assert not class_is_stable(G_built.group, A_built.group, A_built.named_subgroups["H1"])

    def test_stable_class(self, sym5, alt5):
        H = PermGroup(5, alt5.sympy_group.stabilizer(0).generators)
        assert class_is_stable(sym5, alt5, H)


class TestSocleRoute:

    def test_fusion_stable_hall(self, sym5, alt5):
        U = find_fusion_stable_hall(sym5, alt5, PI_23)
        assert U.order == 12

    def test_sylow_case(self, sym5, alt5):
        assert find_fusion_stable_hall(sym5, alt5, PrimeSet.of([2])).order == 4

    def test_requires_simple(self, sym4, klein):
        with pytest.raises(PreconditionError):
            find_fusion_stable_hall(sym4, klein, PrimeSet.of([2]))

    @pytest.mark.slow
    def test_duality_refused(self, duality):
        A_built, G_built, _ = duality
        with pytest.raises(NotEPiError):
            find_fusion_stable_hall(G_built.group, A_built.group, PI_23)

    def test_normal_component(self, sym5, alt5):
        U = PermGroup(5, alt5.sympy_group.stabilizer(0).generators)
        V = build_invariant_product_hall(sym5, alt5, U, PI_23)
        assert V.group == U

    @pytest.mark.slow
    def test_product_over_swap(self):
        built = build(parse_group_expr("ShiftProduct(Alt(5), 2)"))
        G = built.group
        S = built.named_subgroups["factor_1"]
        U = PermGroup(G.degree, S.group.sympy_group.stabilizer(0).generators)
        assert U.order == 12
        V = build_invariant_product_hall(G, S, U, PI_23)
        assert V.order == 144
        assert class_is_stable(G, normal_closure(G, S), V)


class TestSchurZassenhaus:

    def test_alt4_over_klein(self, alt4):
        M = normal_closure(alt4, cyclic(4, "(1 2)(3 4)")).group
        H = schur_zassenhaus_complement(alt4, M, PrimeSet.of([3]))
        assert H.order == 3
        classes = subgroups_of_order(alt4, 3)
        assert len(classes) == 1
        assert classes[0].class_size == 4
        K = cyclic(4, "(1 2 4)")
        x = conjugate_complements(alt4, M, H, K)
        assert x in alt4

    def test_cyclic6(self):
        X = group("Cyclic(6)")
        g = X.generators[0]
        M = PermGroup(X.degree, [g ** 3])
        H = schur_zassenhaus_complement(X, M, PrimeSet.of([3]))
        assert H.order == 3
        assert len(subgroups_of_order(X, 3)) == 1

    def test_sym3(self, sym3):
        M = cyclic(3, "(1 2 3)")
        H = schur_zassenhaus_complement(sym3, M, PrimeSet.of([2]))
        assert H.order == 2
        assert subgroups_of_order(sym3, 2)[0].class_size == 3

    def test_requires_coprime_split(self, sym3):
        with pytest.raises(PreconditionError):
            schur_zassenhaus_complement(sym3, cyclic(3, "(1 2 3)"), PrimeSet.of([3]))


class TestCorollaries:

    def test_c_pi_closure(self, sym5, alt5):
        H = PermGroup(5, sym5.sympy_group.stabilizer(0).generators)
        assert verify_c_pi_closure(sym5, alt5, H, PI_23)

    def test_c_pi_closure_solvable(self, sym4):
        pi = PrimeSet.of([2])
        H = sylow(sym4, 2)
        for A in normal_subgroups(sym4):
            assert verify_c_pi_closure(sym4, A, H, pi)

    def test_c_pi_closure_trivial_normal(self, sym4):
        assert verify_c_pi_closure(sym4, PermGroup(4), sylow(sym4, 3), PrimeSet.of([3]))

    def test_c_pi_closure_requires_c_pi(self, gl32):
        H = hall_classes(gl32, PI_23).classes[0].representative
        with pytest.raises(PreconditionError):
            verify_c_pi_closure(gl32, gl32, H, PI_23)

    def test_e_pi_criterion_duality(self, duality):
        A_built, G_built, _ = duality
        assert e_pi_criterion(G_built.group, A_built.group, PI_23) == (False, None)

    def test_e_pi_criterion_sym5(self, sym5, alt5):
        verdict, H = e_pi_criterion(sym5, alt5, PI_23)
        assert verdict
        assert H.order == 12

    def test_e_pi_criterion_whole_group(self, sym4):
        verdict, H = e_pi_criterion(sym4, sym4, PrimeSet.of([2]))
        assert verdict
        assert H.order == 8


class TestCoprimeAction:

    def test_dihedral_with_order_three_automorphism(self):
        D = group("Dihedral(7)")
        images = [g ** 2 if g.order() == 7 else g for g in D.generators]
        H = invariant_hall_under_coprime(D, [images], PrimeSet.of([2]))
        assert H.order == 2
        phi = extend_automorphism(D, images)
        assert all(phi[h] in H.group for h in H.group.elements)

    def test_cyclic_characteristic(self):
        C = group("Cyclic(7)")
        H = invariant_hall_under_coprime(C, [[C.generators[0] ** 2]], PrimeSet.of([7]))
        assert H.group == C

    def test_klein_with_three_cycle(self):
        V = group("DirectProduct(Cyclic(2), Cyclic(2))")
        a, b = V.generators
        H = invariant_hall_under_coprime(V, [[b, a * b]], PrimeSet.of([2]))
        assert H.group == V

    def test_requires_coprime(self):
        V = group("DirectProduct(Cyclic(2), Cyclic(2))")
        a, b = V.generators
        with pytest.raises(PreconditionError):
            invariant_hall_under_coprime(V, [[b, a]], PrimeSet.of([2]))
