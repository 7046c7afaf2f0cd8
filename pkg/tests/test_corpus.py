"""
Tests for the corpus registry and the property suites.
"""

import pytest

from hallfrattini.config import CorpusSettings
from hallfrattini.corpus import CorpusManager, run_query
from hallfrattini.errors import ParseError


@pytest.fixture
def manager():
    return CorpusManager(CorpusSettings(groups=["Cyclic(6)", "Sym(3)"], workers=1))


class TestRegistry:

    def test_entries(self, manager):
        assert manager.list_entries() == ["Cyclic(6)", "Sym(3)"]
        key = manager.add_entry("Alt(4)", name="a4")
        assert key == "a4"
        assert manager.entry_exists("a4")
        manager.remove_entry("a4")
        assert not manager.entry_exists("a4")

    def test_remove_missing(self, manager):
        manager.remove_entry("absent")
        assert len(manager.list_entries()) == 2

    def test_invalid_expression(self, manager):
        with pytest.raises(ParseError):
            manager.add_entry("Sym(4")


class TestQueries:

    def test_all_subsets(self, manager):
        queries = manager.queries(max_order=10)
        assert len(queries) == 8
        assert queries[:4] == [("Cyclic(6)", ()), ("Cyclic(6)", (2,)), ("Cyclic(6)", (3,)), ("Cyclic(6)", (2, 3))]

    def test_singletons(self, manager):
        assert manager.queries(max_order=10, pi_policy="singletons") == [
            ("Cyclic(6)", (2,)),
            ("Cyclic(6)", (3,)),
            ("Sym(3)", (2,)),
            ("Sym(3)", (3,)),
        ]

    def test_order_cutoff(self, manager):
        assert manager.queries(max_order=5) == []

    def test_large_group_excluded_by_default(self):
        manager = CorpusManager(CorpusSettings(groups=["ShiftProduct(GL(3,2), 5)"]))
        assert manager.queries() == []


class TestRunQuery:

    def test_sym4(self):
        record, seconds = run_query("Sym(4)", (2, 3))
        assert record.error is None
        assert record.violations == []
        assert record.status == "C"
        assert record.normal_subgroups == 4
        assert record.checks["theorem_oracle"]
        assert record.checks["theorem_constructive"]
        assert seconds >= 0

    def test_classical_frattini(self):
        record, _ = run_query("Sym(4)", (3,))
        assert record.checks["classical_frattini"]
        assert record.violations == []

    def test_not_e_pi(self):
        record, _ = run_query("Alt(5)", (2, 5))
        assert record.status == "NOT_E"
        assert record.violations == []

    @pytest.mark.slow
    def test_sym5(self):
        record, _ = run_query("Sym(5)", (2, 3))
        assert record.violations == []
        assert record.k_values == [1]

    @pytest.mark.slow
    def test_psl27(self):
        record, _ = run_query("PSL(2,7)", (2, 3))
        assert record.status == "E_ONLY"
        assert record.k_values == [2]
        assert record.violations == []

    def test_unknown_atom(self):
        record, _ = run_query("Foo(1)", (2,))
        assert record.error is not None
        assert record.error.startswith("UnsupportedAtomError")


class TestRun:

    def test_sequential(self, manager):
        results = manager.run(max_order=10, pi_policy="singletons", workers=1)
        assert [r.group for r, _ in results] == ["Cyclic(6)", "Cyclic(6)", "Sym(3)", "Sym(3)"]
        assert all(not r.violations and r.error is None for r, _ in results)

    @pytest.mark.slow
    def test_process_pool_keeps_order(self, manager):
        sequential = [r for r, _ in manager.run(max_order=10, workers=1)]
        parallel = [r for r, _ in manager.run(max_order=10, workers=2)]
        assert parallel == sequential
