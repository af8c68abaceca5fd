from math import factorial

import pytest

from graphs.families import hh_graph, sn_vertex_generators
from graphs.structure import (
    enumerate_group,
    expected_quotient_matrix,
    is_vertex_transitive,
    orbit_count,
    quotient_matrix,
    three_cell_partition,
    vertex_orbits,
)
from models import (
    CellPartition,
    FamilyParams,
    GroupCapExceededError,
    NotAutomorphismError,
    NotEquitableError,
    ParameterDomainError,
)


class TestQuotient:
    """Test the three-cell partition and its quotient matrix"""

    def test_cell_sizes(self, p52):
        """Test three-cell partition sizes"""
        assert three_cell_partition(p52).sizes == (12, 12, 6)

    def test_h52_matrix(self, p52, h52):
        """Test the quotient matrix of H(5:2)"""
        computed = quotient_matrix(h52, three_cell_partition(p52))
        assert computed.entries == [[2, 2, 0], [2, 0, 2], [0, 4, 0]]
        assert computed.row_sums() == [4, 4, 4]
        assert computed == expected_quotient_matrix(p52)

    def test_h73_matrix(self, p73):
        """Test the quotient matrix of H(7:3)"""
        computed = quotient_matrix(hh_graph(p73), three_cell_partition(p73))
        assert computed.entries == [[3, 6, 0], [6, 0, 3], [0, 9, 0]]
        assert computed == expected_quotient_matrix(p73)

    def test_not_equitable(self, h52):
        """Test a partition that is not equitable"""
        part = CellPartition(cells=[[0], list(range(1, 30))])
        with pytest.raises(NotEquitableError) as excinfo:
            quotient_matrix(h52, part)
        assert excinfo.value.witness[0] == 1

    def test_partition_must_cover(self, h52):
        """Test a partition missing vertices"""
        with pytest.raises(ParameterDomainError):
            quotient_matrix(h52, CellPartition(cells=[[0, 1], [2]]))
        with pytest.raises(ParameterDomainError):
            quotient_matrix(h52, CellPartition(cells=[list(range(30)), [0]]))

    def test_small_instance_rejected(self):
        """Test the partition outside its range"""
        with pytest.raises(ParameterDomainError):
            three_cell_partition(FamilyParams(n=3, r=2))


class TestOrbits:
    """Test orbit computations under the S_n action"""

    def test_transitive_on_vertices_and_arcs(self, p52, h52):
        """Test orbits under S_n"""
        generators = sn_vertex_generators(p52)
        assert is_vertex_transitive(h52, generators)
        assert vertex_orbits(h52, generators) == [list(range(30))]
        assert orbit_count(h52, generators) == (1, 1)

    def test_trivial_group_has_singleton_orbits(self, five_cycle):
        """Test orbits of the trivial group"""
        assert orbit_count(five_cycle, []) == (5, 10)
        assert not is_vertex_transitive(five_cycle, [])

    def test_rejects_non_automorphism(self, five_cycle):
        """Test generators that are not automorphisms"""
        with pytest.raises(NotAutomorphismError):
            vertex_orbits(five_cycle, [[1, 0, 2, 3, 4]])

    def test_enumerate_group(self, p42):
        """Test group enumeration"""
        generators = sn_vertex_generators(p42)
        group = enumerate_group(generators, 12, cap=1000)
        assert len(group) == factorial(4)
        assert group[0] == tuple(range(12))
        assert group == sorted(group)

    def test_enumerate_group_cap(self, p52):
        """Test the group order cap"""
        with pytest.raises(GroupCapExceededError):
            enumerate_group(sn_vertex_generators(p52), 30, cap=50)
