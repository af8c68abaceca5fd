from typing import List

import pytest

from config import Config
from models import CheckResult, FamilyParams, ParameterDomainError, UnknownSuiteError
from suites import TABLE_SUITES, VERIFY_SUITES, BaseSuite, get_suite, get_table_suite
from suites.automorphism_suites import (
    DistinguisherSuite,
    expected_aut_order,
    head_type_pairs,
    tail_type_pairs,
)
from suites.metric_suites import ParamsSuite, QuotientSuite


class EchoSuite(BaseSuite):
    """Reports n back, and fails with a domain error when n is odd"""

    def __init__(self):
        super().__init__("echo")

    def get_description(self) -> str:
        return "echo"

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        p.require(p.n % 2 == 0, "n must be even")
        return [self.check(f"n {p}", p.n, p.n)]


class TestBaseSuite:
    """Test BaseSuite"""

    def test_check_records_match(self):
        """Test BaseSuite.check"""
        suite = EchoSuite()
        assert suite.check("same", 3, 3).match
        result = suite.check("different", 3, 4, detail="off by one")
        assert not result.match
        assert result.detail == "off by one"
        assert not suite.check("inexact", 1, 1, exact=False).exact

    def test_default_instances_follow_grid(self):
        """Test the default grid"""
        instances = EchoSuite().default_instances()
        assert len(instances) == len(Config.METRIC_GRID)
        assert instances[0] == FamilyParams(n=5, r=2)

    def test_select_instances_filters_by_n(self):
        """Test filtering instances by n"""
        chosen = EchoSuite().select_instances(n_max=6)
        assert chosen == [FamilyParams(n=5, r=2), FamilyParams(n=6, r=2)]

    def test_run_collects_results(self, test_config):
        """Test collecting results into a report"""
        report = EchoSuite().run([FamilyParams(n=4, r=2), FamilyParams(n=6, r=2)])
        assert report.command == "verify echo"
        assert report.passed
        assert report.params["instances"] == ["4:2", "6:2"]
        assert report.params["seed"] == 12345
        assert report.params["budget"] == 120.0
        assert [r.name for r in report.results] == ["n H(4:2)", "n H(6:2)"]

    def test_library_errors_become_failed_checks(self, test_config):
        """Test that library errors become failed checks"""
        report = EchoSuite().run([FamilyParams(n=5, r=2)], command="custom")
        assert report.command == "custom"
        assert not report.passed
        assert report.results[0].value == ParameterDomainError.__name__
        assert "n must be even" in report.results[0].detail

    def test_pool_used_with_threads(self, test_config, mocker):
        """Test the process pool"""
        test_config.THREADS = 4
        pool_class = mocker.patch("suites.base_suite.mp.Pool")
        pool = pool_class.return_value.__enter__.return_value
        pool.starmap.return_value = [
            ([CheckResult(name="n H(4:2)", value=4, expected=4, match=True)], None),
            ([CheckResult(name="n H(6:2)", value=6, expected=6, match=True)], None),
        ]
        report = EchoSuite().run([FamilyParams(n=4, r=2), FamilyParams(n=6, r=2)])
        pool_class.assert_called_once_with(2)
        assert len(report.results) == 2
        assert report.passed


class TestRegistry:
    """Test suite lookup"""

    def test_names_match_config(self):
        """Test registry names"""
        assert list(VERIFY_SUITES) == Config.VERIFY_SUITES
        assert sorted(TABLE_SUITES) == [1, 2, 3]

    def test_get_suite(self):
        """Test suite lookup"""
        assert isinstance(get_suite("quotient"), QuotientSuite)
        assert get_suite("aut").get_description()
        with pytest.raises(UnknownSuiteError):
            get_suite("nonsense")

    def test_get_table_suite(self):
        """Test table suite lookup"""
        assert get_table_suite(1).suite_name == "table1"
        with pytest.raises(UnknownSuiteError):
            get_table_suite(4)


class TestSmallSuites:
    """Run the cheap suites on small instances"""

    def test_quotient(self, test_config):
        """Test the quotient suite"""
        report = QuotientSuite().run([FamilyParams(n=5, r=2), FamilyParams(n=7, r=3)])
        assert report.passed

    def test_params_witness(self, test_config):
        """Test the params suite witness"""
        report = ParamsSuite().run([FamilyParams(n=7, r=3)], command="params")
        assert report.passed
        assert [r.name for r in report.results] == [
            "vertices",
            "edges",
            "valency",
            "diameter",
            "girth",
            "odd girth",
            "components",
        ]
        assert report.witnesses["H(7:3)"]["vertex_count"] == 140

    @pytest.mark.parametrize("name", ["hhog", "bestindybd", "subgraphs", "frachom", "aut"])
    def test_suite_on_h52(self, name, test_config):
        """Test a suite on H(5:2)"""
        assert get_suite(name).run([FamilyParams(n=5, r=2)]).passed

    def test_distinguisher_uses_all_pairs_when_small(self, p52):
        """Test exhaustive pairs on small graphs"""
        assert len(DistinguisherSuite().pairs(p52)) == 435

    def test_pair_generators(self, p52):
        """Test tail-type and head-type pair generators"""
        tail_pairs = list(tail_type_pairs(p52))
        head_pairs = list(head_type_pairs(p52))
        assert len(tail_pairs) == 10 * 3
        assert len(head_pairs) == 5 * 4 * 3
        assert len(set(head_pairs)) == len(head_pairs)

    def test_expected_aut_order(self):
        """Test expected group orders"""
        assert expected_aut_order(FamilyParams(n=5, r=2)) == 120
        assert expected_aut_order(FamilyParams(n=4, r=2)) == 3072
