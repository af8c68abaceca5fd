from fractions import Fraction
from itertools import combinations

import pytest

from graphs.coloring import constructive_coloring
from graphs.core_graph import distance
from graphs.families import (
    hh_graph,
    kneser_graph,
    kneser_interval_cycle,
    kneser_maximum_matching,
    shift_graph,
    sn_vertex_generators,
)
from graphs.homomorphism import (
    corollary_orbit_parameters,
    head_hom,
    kneser_path,
    lift_kneser_path,
    lift_kneser_subgraph,
    orbit_hom,
    shift_embed,
    tail_growth_embed,
    tail_hom,
    tail_type_path,
    verify_hom,
)
from graphs.independence import best_constructed_set
from models import (
    Coloring,
    DegreeConditionError,
    FamilyParams,
    HHVertex,
    ImproperColoringError,
    ParameterDomainError,
    VertexMap,
)


class TestVerifyHom:
    """Test the homomorphism checker"""

    def test_identity(self, petersen):
        """Test the identity map"""
        m = VertexMap(source="K(5:2)", target="K(5:2)", mapping=list(range(10)))
        assert verify_hom(petersen, petersen, m).valid

    def test_reports_first_broken_edge(self, petersen):
        """Test that the first broken edge is reported"""
        m = VertexMap(source="K(5:2)", target="K(5:2)", mapping=[0] * 10)
        check = verify_hom(petersen, petersen, m)
        assert not check.valid
        assert check.violation == next(petersen.edges())

    def test_wrong_length(self, petersen):
        """Test a map of the wrong length"""
        m = VertexMap(source="K(5:2)", target="K(5:2)", mapping=[0, 1])
        with pytest.raises(ParameterDomainError):
            verify_hom(petersen, petersen, m)


class TestNaturalMaps:
    """Test the head and tail projections"""

    def test_head_map(self, p52):
        """Test the head map into K_n"""
        m = head_hom(p52)
        assert m.target == "K_5"
        assert m.mapping[0] == 2

    def test_tail_map_is_onto(self, p52):
        """Test the tail map onto K(n:r)"""
        m = tail_hom(p52)
        assert sorted(set(m.mapping)) == list(range(10))
        assert m.mapping[:3] == [0, 0, 0]


class TestEmbeddings:
    """Test embeddings into larger Haggkvist-Hell graphs"""

    def test_tail_growth(self, p42):
        """Test growing tails by a colouring"""
        target, m = tail_growth_embed(p42, constructive_coloring(p42))
        assert target == FamilyParams(n=6, r=3)
        assert m.injective
        assert verify_hom(hh_graph(p42), hh_graph(target), m).valid

    def test_tail_growth_palette(self, p42):
        """Test tail growth with an explicit palette"""
        target, m = tail_growth_embed(p42, constructive_coloring(p42), palette=[7, 9])
        assert target == FamilyParams(n=9, r=3)
        assert m.injective

    def test_tail_growth_rejects_bad_input(self, p42):
        """Test tail growth with bad colourings and palettes"""
        with pytest.raises(ImproperColoringError):
            tail_growth_embed(p42, Coloring(assignment=[0] * 12))
        with pytest.raises(ParameterDomainError):
            tail_growth_embed(p42, constructive_coloring(p42), palette=[3, 5])
        with pytest.raises(ParameterDomainError):
            tail_growth_embed(p42, constructive_coloring(p42), palette=[5])

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_shift_embed(self, n):
        """Test the induced shift graph"""
        m = shift_embed(n)
        assert m.injective
        assert len(m.mapping) == shift_graph(n).vertex_count
        assert verify_hom(shift_graph(n), hh_graph(FamilyParams(n=n, r=2)), m).valid


class TestKneserPaths:
    """Test explicit shortest paths in Kneser graphs"""

    def test_short_example(self):
        """Test a Kneser path through a disjoint subset"""
        assert kneser_path(7, 3, (1, 2, 3), (1, 2, 4)) == [(1, 2, 3), (5, 6, 7), (1, 2, 4)]

    def test_disjoint_endpoints(self):
        """Test a path between disjoint subsets"""
        assert kneser_path(7, 3, (1, 2, 3), (4, 5, 6)) == [(1, 2, 3), (4, 5, 6)]

    @pytest.mark.parametrize("n,r", [(5, 2), (7, 3), (8, 3)])
    def test_lengths_match_bfs(self, n, r):
        """Test path lengths against BFS"""
        p = FamilyParams(n=n, r=r)
        g = kneser_graph(p)
        subsets = [tuple(int(e) for e in g.label(v).split(",")) for v in range(g.vertex_count)]
        for u, v in combinations(range(g.vertex_count), 2):
            path = kneser_path(n, r, subsets[u], subsets[v])
            assert path[0] == subsets[u]
            assert path[-1] == subsets[v]
            assert len(path) - 1 == distance(g, u, v).value
            for a, b in zip(path, path[1:]):
                assert len(a) == r
                assert not set(a) & set(b)

    def test_domain(self):
        """Test Kneser paths outside their range"""
        with pytest.raises(ParameterDomainError):
            kneser_path(6, 3, (1, 2, 3), (4, 5, 6))
        with pytest.raises(ParameterDomainError):
            kneser_path(7, 3, (1, 2, 3), (1, 2, 3))
        with pytest.raises(ParameterDomainError):
            kneser_path(7, 3, (1, 2), (3, 4, 5))
        with pytest.raises(ParameterDomainError):
            kneser_path(7, 3, (1, 2, 8), (3, 4, 5))

    def test_tail_type_path(self, p52, h52):
        """Test the path between same-tail vertices"""
        x = HHVertex(head=3, tail=(1, 2))
        y = HHVertex(head=4, tail=(1, 2))
        path = tail_type_path(p52, x, y)
        assert path[1] == HHVertex(head=1, tail=(3, 4))
        ids = [h52.index_of(v.label) for v in path]
        assert h52.adjacent(ids[0], ids[1])
        assert h52.adjacent(ids[1], ids[2])
        with pytest.raises(ParameterDomainError):
            tail_type_path(p52, x, HHVertex(head=4, tail=(1, 3)))

    def test_lift_path(self, p73):
        """Test lifting a Kneser path"""
        walk = lift_kneser_path(p73, [(1, 2, 3), (5, 6, 7), (1, 2, 4)])
        assert walk == [
            HHVertex(head=5, tail=(1, 2, 3)),
            HHVertex(head=1, tail=(5, 6, 7)),
            HHVertex(head=5, tail=(1, 2, 4)),
        ]

    def test_lift_path_rejects_bad_paths(self, p73):
        """Test lifting invalid paths"""
        with pytest.raises(ParameterDomainError):
            lift_kneser_path(p73, [(1, 2, 3)])
        with pytest.raises(ParameterDomainError):
            lift_kneser_path(p73, [(1, 2, 3), (3, 4, 5)])
        with pytest.raises(ParameterDomainError):
            lift_kneser_path(FamilyParams(n=9, r=3), [(1, 2, 3), (4, 5, 6), (7, 8, 9)])


class TestLiftSubgraphs:
    """Test lifting low-degree Kneser subgraphs"""

    def test_matching(self, p52, h52):
        """Test that the perfect matching of K(5:2) lifts with all ten subsets"""
        m = lift_kneser_subgraph(p52, kneser_maximum_matching(p52))
        assert m.injective
        assert len(m.mapping) == 10
        tails = {h52.label(v).partition(";")[2] for v in m.mapping}
        assert len(tails) == 10

    @pytest.mark.parametrize("n,r", [(5, 2), (7, 3)])
    def test_interval_cycle(self, n, r):
        """Test lifting the interval cycle"""
        p = FamilyParams(n=n, r=r)
        cycle = kneser_interval_cycle(p)
        m = lift_kneser_subgraph(p, cycle)
        assert m.injective
        assert verify_hom(cycle, hh_graph(p), m).valid

    def test_full_kneser_graph_refused(self, p73):
        """Test the degree condition"""
        with pytest.raises(DegreeConditionError):
            lift_kneser_subgraph(p73, kneser_graph(p73))


class TestOrbitHom:
    """Test the orbit map into a Kneser graph on the group"""

    def test_h52(self, p52, h52):
        """Test the orbit homomorphism of H(5:2)"""
        phi = orbit_hom(h52, sn_vertex_generators(p52), best_constructed_set(p52))
        assert phi.ground_size == 120
        assert phi.image_size == 48
        assert phi.ratio == Fraction(5, 2)
        for u, v in h52.edges():
            assert not phi.images[u] & phi.images[v]
        assert (phi.ground_size, phi.image_size) == corollary_orbit_parameters(p52)

    def test_corollary_parameters(self, p62):
        """Test orbit homomorphism parameters"""
        assert corollary_orbit_parameters(p62) == (720, 264)
        with pytest.raises(ParameterDomainError):
            corollary_orbit_parameters(FamilyParams(n=8, r=3))
