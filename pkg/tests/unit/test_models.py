from fractions import Fraction

import pytest
from pydantic import ValidationError

from graphs.families import closed_form
from models import (
    INFINITE,
    CheckResult,
    Coloring,
    FamilyParams,
    FractionalColoring,
    HHVertex,
    KneserVertex,
    Metric,
    ParameterDomainError,
    Permutation,
    Report,
    VertexMap,
    VertexSet,
    WeightedSet,
    format_fraction,
)


class TestFamilyParams:
    """Test FamilyParams model"""

    def test_params_are_frozen_and_hashable(self):
        """Test that FamilyParams is frozen"""
        p = FamilyParams(n=5, r=2)
        assert str(p) == "H(5:2)"
        assert p.k == 1
        assert {p: 1}[FamilyParams(n=5, r=2)] == 1
        with pytest.raises(ValidationError):
            p.n = 6

    def test_params_reject_nonpositive_values(self):
        """Test FamilyParams validation"""
        with pytest.raises(ValidationError):
            FamilyParams(n=0, r=1)
        with pytest.raises(ValidationError):
            FamilyParams(n=5, r=0)

    def test_require_raises_domain_error(self):
        """Test FamilyParams.require"""
        p = FamilyParams(n=3, r=2)
        p.require(True, "fine")
        with pytest.raises(ParameterDomainError, match=r"\(n=3, r=2\)"):
            p.require(p.n >= 2 * p.r, "needs n >= 2r")


class TestVertices:
    """Test HHVertex and KneserVertex"""

    def test_tail_is_sorted(self):
        """Test tail normalisation"""
        v = HHVertex(head=1, tail=(5, 3))
        assert v.tail == (3, 5)
        assert v.label == "1;3,5"
        assert v.tail_mask == 0b10100
        assert str(v) == "(1,{3,5})"

    def test_head_inside_tail_rejected(self):
        """Test a head inside the tail"""
        with pytest.raises(ValidationError):
            HHVertex(head=3, tail=(3, 4))

    def test_repeated_tail_element_rejected(self):
        """Test a repeated tail element"""
        with pytest.raises(ValidationError):
            HHVertex(head=1, tail=(2, 2))

    def test_kneser_vertex(self):
        """Test KneserVertex"""
        v = KneserVertex(subset=(4, 1))
        assert v.subset == (1, 4)
        assert v.mask == 0b1001
        assert v.label == "1,4"


class TestMetric:
    """Test Metric ordering and rendering"""

    def test_infinite_sorts_last(self):
        """Test ordering of metric values"""
        assert Metric.finite(4) < INFINITE
        assert not INFINITE < Metric.finite(4)
        assert Metric.finite(2) < Metric.finite(3)
        assert str(INFINITE) == "INFINITE"
        assert str(Metric.finite(5)) == "5"

    def test_negative_rejected(self):
        """Test a negative metric value"""
        with pytest.raises(ValidationError):
            Metric(value=-1)


class TestFractions:
    """Test exact rational formatting"""

    def test_format_fraction(self):
        """Test fraction formatting"""
        assert format_fraction(Fraction(5, 2)) == "5/2"
        assert format_fraction(Fraction(4, 2)) == "2"
        assert format_fraction(Fraction(30, 11)) == "30/11"

    def test_fractions_serialise_as_strings(self):
        """Test fraction serialisation"""
        report = closed_form(FamilyParams(n=5, r=2))
        dumped = report.model_dump(mode="json")
        assert dumped["fractional_upper_bound"] == "5/2"

    def test_weighted_set_weight_serialises(self):
        """Test weighted set serialisation"""
        cover = FractionalColoring(
            weighted_sets=[
                WeightedSet(members=VertexSet(members=frozenset({0})), weight=Fraction(1, 2)),
                WeightedSet(members=VertexSet(members=frozenset({1})), weight=Fraction(1, 2)),
            ]
        )
        assert cover.total_weight == 1
        assert cover.coverage(3) == [Fraction(1, 2), Fraction(1, 2), 0]
        assert cover.model_dump(mode="json")["total_weight"] == "1"


class TestVertexSet:
    """Test VertexSet masks"""

    def test_mask_round_trip(self):
        """Test VertexSet masks"""
        s = VertexSet.from_mask(0b101001)
        assert s.sorted_members() == [0, 3, 5]
        assert s.size == 3
        assert s.mask == 0b101001

    def test_empty_set(self):
        """Test the empty VertexSet"""
        assert VertexSet().size == 0
        assert VertexSet.from_mask(0).members == frozenset()


class TestPermutation:
    """Test Permutation model"""

    def test_non_bijection_rejected(self):
        """Test Permutation validation"""
        with pytest.raises(ValidationError):
            Permutation(images=(1, 1, 3))
        with pytest.raises(ValidationError):
            Permutation(images=(2, 3, 4))

    def test_compose_and_inverse(self):
        """Test composing and inverting permutations"""
        c = Permutation.cycle(3)
        assert c.images == (2, 3, 1)
        assert c.compose(c).images == (3, 1, 2)
        assert c.inverse().images == (3, 1, 2)
        assert c.compose(c.inverse()) == Permutation.identity(3)

    def test_named_permutations(self):
        """Test identity, transposition and cycle"""
        assert Permutation.reversal(4).images == (4, 3, 2, 1)
        assert Permutation.transposition(4, 1, 3).images == (3, 2, 1, 4)

    def test_map_mask(self):
        """Test permuting a subset mask"""
        sigma = Permutation.cycle(4)
        assert sigma.map_mask(0b0011) == 0b0110
        assert sigma.map_mask(0b1000) == 0b0001


class TestResults:
    """Test result containers"""

    def test_coloring_classes(self):
        """Test colour classes"""
        c = Coloring(assignment=[0, 1, 0, 2])
        assert c.color_count == 3
        assert c.classes() == {0: [0, 2], 1: [1], 2: [3]}

    def test_vertex_map_injective(self):
        """Test VertexMap injectivity"""
        assert VertexMap(source="a", target="b", mapping=[0, 2, 1]).injective
        assert not VertexMap(source="a", target="b", mapping=[0, 0]).injective

    def test_report_passes_only_when_exact_and_matching(self, sample_report):
        """Test Report.passed"""
        assert sample_report.passed
        assert sample_report.exact

        inexact = sample_report.model_copy(
            update={
                "results": [
                    CheckResult(name="alpha", value=58, expected=58, match=True, exact=False)
                ]
            }
        )
        assert not inexact.passed
        assert not inexact.exact

        failing = Report(
            command="table 1",
            results=[CheckResult(name="alpha", value=57, expected=58, match=False)],
        )
        assert not failing.passed
        assert failing.exact

    def test_report_json_round_trip(self, sample_report):
        """Test Report JSON round trip"""
        restored = Report.model_validate_json(sample_report.model_dump_json())
        assert restored.command == sample_report.command
        assert restored.results == sample_report.results
