"""
Corpus registry and property suites run over every (group, pi) query.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Tuple

from .config import CorpusSettings, EngineSettings, get_settings, limits, set_settings
from .constructions import build, expected_order, parse_group_expr
from .errors import BoundExceededError, GroupEngineError, HypothesisViolation, PreconditionError
from .frattini import (
    class_is_stable,
    e_pi_criterion,
    frattini_constructive,
    frattini_oracle,
    verify_c_pi_closure,
)
from .hall import (
    HallStatus,
    PrimeSet,
    almost_simple_check,
    almost_simple_socle,
    extend_hall_over_pi_quotient,
    hall_classes,
    hall_intersection_check,
    induced_aut_hall,
    is_pi_number,
    is_pi_separable,
    lift_hall_from_quotient,
    primes_of,
)
from .perm_core import (
    PermGroup,
    conjugacy_witness,
    conjugate_subgroup,
    conjugates,
    intersection,
    is_simple,
    minimal_normal_subgroups,
    naive_closure_order,
    quotient_action,
    socle_components,
)
from .reports import CorpusRecord
from .subgroup_enum import normal_subgroups, sylow

logger = logging.getLogger(__name__)

Query = Tuple[str, Tuple[int, ...]]


class _Suite:
    """Collects named boolean checks and violation messages for one query."""

    def __init__(self):
        self.checks: Dict[str, bool] = {}
        self.violations: List[str] = []

    def record(self, name: str, ok: bool, where: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            self.violations.append(f"{name}{': ' + where if where else ''}")

    def guard(self, name: str, where: str, fn: Callable[[], bool]) -> None:
        try:
            self.record(name, bool(fn()), where)
        except HypothesisViolation as e:
            self.record(name, False, f"{where}: {e}")


def _hall_exist_iff(G: PermGroup, A: PermGroup, pi: PrimeSet, all_hall: List[PermGroup]) -> bool:
    """Extension exists, U^G = U^A, and a brute-force Hall H with H ∩ A = U exists: all agree."""
    for cls in hall_classes(A, pi).classes:
        U = cls.representative.group
        extended = extend_hall_over_pi_quotient(G, A, U, pi) is not None
        fused = all(conjugacy_witness(A, conjugate_subgroup(U, g), U) is not None for g in G.generators)
        brute = any(intersection(G, H, A).group == U for H in all_hall)
        if not (extended == fused == brute):
            return False
    return True


def _group_suite(suite: _Suite, G: PermGroup, pi: PrimeSet, k_values: List[int]) -> HallStatus:
    if G.order <= limits().closure_oracle_bound:
        suite.record("chain_matches_closure", naive_closure_order(G.degree, G.generators) == G.order)

    analysis = hall_classes(G, pi)
    suite.record("hall_orders", all(c.order == analysis.target_order for c in analysis.classes))
    if is_pi_separable(G, pi):
        suite.record("separable_implies_c_pi", analysis.status == HallStatus.C)
    if analysis.status == HallStatus.NOT_E:
        return analysis.status

    for M in minimal_normal_subgroups(G):
        if M.group.is_abelian:
            continue
        for S in socle_components(G, M).components:
            if is_simple(S.group):
                suite.record("aut_of_simple_subnormal_in_e_pi", induced_aut_hall(G, S, pi).status != HallStatus.NOT_E)

    try:
        almost_simple_socle(G)
    except PreconditionError:
        return analysis.status
    check = almost_simple_check(G, pi)
    k_values.append(check.k)
    suite.record("k_pi_allowed", check.k_ok and check.k_is_pi_number, f"k={check.k}")
    suite.record("socle_orbits_pi_numbers", check.orbits_ok)
    suite.record("socle_class_stable", check.stable_class_exists)
    return analysis.status


def _normal_suite(suite: _Suite, G: PermGroup, A: PermGroup, pi: PrimeSet, status: HallStatus, all_hall: List[PermGroup]) -> None:
    where = f"|A|={A.order}"
    verdict, _ = e_pi_criterion(G, A, pi)
    suite.record("e_pi_criterion", verdict == (status != HallStatus.NOT_E), where)
    if status == HallStatus.NOT_E:
        return

    def oracle() -> bool:
        w = frattini_oracle(G, A, pi)
        if len(pi.primes) == 1 and not pi.complement:
            (p,) = pi.primes
            suite.record("classical_frattini", conjugacy_witness(A, w.H, sylow(A, p)) is not None, where)
        return w.checks.all_passed

    def constructive() -> bool:
        w = frattini_constructive(G, A, pi)
        return w.checks.all_passed and class_is_stable(G, A, w.H)

    suite.guard("theorem_oracle", where, oracle)
    suite.guard("theorem_constructive", where, constructive)

    def intersections() -> bool:
        for H in hall_classes(G, pi).representatives():
            hall_intersection_check(G, A, H, pi)
        return True

    def lift() -> bool:
        action = quotient_action(G, A)
        classes = hall_classes(action.image, pi).classes
        return all(
            lift_hall_from_quotient(G, A, c.representative, pi, action).order == all_hall[0].order
            for c in classes
        )

    suite.guard("lemma_intersection", where, intersections)
    suite.guard("lemma_lift", where, lift)
    if is_pi_number(G.order // A.order, pi):
        suite.guard("lemma_extension_iff", where, lambda: _hall_exist_iff(G, A, pi, all_hall))
    if status == HallStatus.C:
        suite.guard("corollary_c_pi_closure", where, lambda: all(verify_c_pi_closure(G, A, H, pi) for H in all_hall[:1]))


def run_query(expr_text: str, primes: Tuple[int, ...], settings: Optional[Dict[str, Any]] = None) -> Tuple[CorpusRecord, float]:
    """
    Run every property suite for one group and one prime set.

    Args:
        expr_text: Group expression
        primes: The prime set pi
        settings: Dumped EngineSettings for worker processes

    Returns:
        (record, elapsed seconds)
    """
    if settings is not None:
        set_settings(EngineSettings.model_validate(settings))
    start = time.perf_counter()
    pi = PrimeSet.of(primes)
    suite = _Suite()
    k_values: List[int] = []
    record = CorpusRecord(group=expr_text, order=0, pi=str(pi), status="")
    try:
        G = build(parse_group_expr(expr_text)).group
        record.order = G.order
        status = _group_suite(suite, G, pi, k_values)
        record.status = status.value
        all_hall: List[PermGroup] = []
        for rep in hall_classes(G, pi).representatives():
            all_hall.extend(conjugates(G, rep))
        normals = normal_subgroups(G)
        record.normal_subgroups = len(normals)
        for A in normals:
            _normal_suite(suite, G, A.group, pi, status, all_hall)
    except HypothesisViolation as e:
        suite.record("hypothesis", False, str(e))
    except GroupEngineError as e:
        record.error = f"{type(e).__name__}: {e}"
    record.checks = dict(sorted(suite.checks.items()))
    record.violations = suite.violations
    record.k_values = k_values
    return record, time.perf_counter() - start


class CorpusManager:
    """
    Registry of corpus group expressions and the runner over them.
    """

    def __init__(self, settings: Optional[CorpusSettings] = None):
        self.logger = logging.getLogger(__name__)
        self.settings = settings or get_settings().corpus
        self._entries: Dict[str, str] = {}
        for expr in self.settings.groups:
            self.add_entry(expr)

    def add_entry(self, expr_text: str, name: Optional[str] = None) -> str:
        """
        Register a group expression.

        Args:
            expr_text: Group expression, validated by parsing
            name: Registry key (default: the expression text)

        Returns:
            The key under which the entry is stored
        """
        parse_group_expr(expr_text)
        key = name or expr_text
        self._entries[key] = expr_text
        self.logger.debug(f"Corpus entry added: {key}")
        return key

    def remove_entry(self, name: str) -> None:
        if name in self._entries:
            del self._entries[name]
            self.logger.info(f"Corpus entry removed: {name}")
        else:
            self.logger.warning(f"Corpus entry not found: {name}")

    def list_entries(self) -> List[str]:
        return list(self._entries.keys())

    def entry_exists(self, name: str) -> bool:
        return name in self._entries

    def queries(self, max_order: Optional[int] = None, pi_policy: Optional[str] = None) -> List[Query]:
        """All (expression, pi) pairs in registry order, pi in size-then-lexicographic order."""
        max_order = max_order if max_order is not None else self.settings.max_order
        pi_policy = pi_policy or self.settings.pi_policy
        result: List[Query] = []
        for expr_text in self._entries.values():
            try:
                order = expected_order(parse_group_expr(expr_text))
            except BoundExceededError:
                continue
            if order > max_order:
                continue
            primes = primes_of(order)
            if pi_policy == "singletons":
                subsets = [(p,) for p in primes]
            else:
                subsets = [c for r in range(len(primes) + 1) for c in combinations(primes, r)]
            result.extend((expr_text, s) for s in subsets)
        return result

    def run(
        self,
        max_order: Optional[int] = None,
        pi_policy: Optional[str] = None,
        workers: Optional[int] = None,
    ) -> List[Tuple[CorpusRecord, float]]:
        """
        Run the property suites over all queries.

        Returns:
            (record, seconds) pairs in query order, independent of completion order
        """
        queries = self.queries(max_order, pi_policy)
        workers = workers if workers is not None else self.settings.workers
        self.logger.info(f"Running {len(queries)} corpus queries with {workers} workers")
        if workers <= 1 or len(queries) <= 1:
            return [run_query(expr, primes) for expr, primes in queries]
        dumped = get_settings().model_dump()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_query, expr, primes, dumped) for expr, primes in queries]
            return [f.result() for f in futures]
