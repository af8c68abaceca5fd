from math import comb

import pytest

from subset_utils import (
    UnionFind,
    colex_rank,
    colex_unrank,
    elements_of,
    iter_bits,
    lowest_element,
    mask_of,
    popcount,
    r_subsets,
)


class TestMasks:
    """Test bitmask subset helpers"""

    def test_mask_of_and_elements_of(self):
        """Test mask conversion"""
        assert mask_of((1, 3)) == 0b101
        assert elements_of(0b101) == (1, 3)
        assert list(iter_bits(0b101)) == [0, 2]
        assert popcount(0b1011) == 3

    def test_lowest_element(self):
        """Test the lowest element of a mask"""
        assert lowest_element(0b100) == 3
        with pytest.raises(ValueError):
            lowest_element(0)

    def test_r_subsets_order(self):
        """Test r-subset order"""
        subsets = r_subsets(4, 2)
        assert len(subsets) == comb(4, 2)
        assert [elements_of(m) for m in subsets] == [
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 4),
        ]

    def test_colex_rank_matches_mask_order(self):
        """Test colex ranking and unranking"""
        ordered = sorted(r_subsets(6, 3))
        assert [colex_rank(m) for m in ordered] == list(range(comb(6, 3)))
        assert [colex_unrank(i, 3) for i in range(comb(6, 3))] == ordered


class TestUnionFind:
    """Test UnionFind"""

    def test_union_and_sizes(self):
        """Test unions and class sizes"""
        uf = UnionFind(range(6))
        assert len(uf) == 6
        assert uf.union(0, 1)
        assert uf.union(1, 2)
        assert not uf.union(0, 2)
        assert uf.same(0, 2)
        assert not uf.same(0, 3)
        assert uf.class_size(2) == 3
        assert len(uf) == 4
        assert sorted(sorted(c) for c in uf.classes()) == [[0, 1, 2], [3], [4], [5]]

    def test_hashable_items(self):
        """Test tuple items"""
        uf = UnionFind([(0, 1), (1, 0), (2, 3)])
        uf.union((0, 1), (1, 0))
        assert len(uf) == 2
