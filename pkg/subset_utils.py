"""Bitmask helpers for subsets of [n].

Element e of [n] is stored at bit e - 1. Ranking follows colex order, which is
also increasing numeric order of the masks.
"""

import logging
from itertools import combinations
from math import comb
from typing import Dict, Hashable, Iterable, Iterator, List, Set, Tuple

logger = logging.getLogger(__name__)


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> Tuple[int, ...]:
    """1-based elements of a mask, ascending"""
    return tuple(i + 1 for i in iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    """0-based positions of the set bits, ascending"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest_element(mask: int) -> int:
    if not mask:
        raise ValueError("empty subset has no lowest element")
    return (mask & -mask).bit_length()


def r_subsets(n: int, r: int) -> List[int]:
    """All r-subsets of [n] as masks, ordered by their ascending element tuples"""
    return [mask_of(c) for c in combinations(range(1, n + 1), r)]


def colex_rank(mask: int) -> int:
    return sum(comb(c, i + 1) for i, c in enumerate(iter_bits(mask)))


def colex_unrank(rank: int, r: int) -> int:
    """Inverse of colex_rank for r-subsets"""
    mask = 0
    for i in range(r, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        mask |= 1 << c
        rank -= comb(c, i)
    return mask


class UnionFind:
    def __init__(self, items: Iterable[Hashable]):
        self.parent: Dict[Hashable, Hashable] = {x: x for x in items}
        self.rank: Dict[Hashable, int] = {x: 0 for x in self.parent}
        self.size: Dict[Hashable, int] = {x: 1 for x in self.parent}

    def find(self, x: Hashable) -> Hashable:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Hashable, y: Hashable) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True

    def same(self, x: Hashable, y: Hashable) -> bool:
        return self.find(x) == self.find(y)

    def class_size(self, x: Hashable) -> int:
        return self.size[self.find(x)]

    def classes(self) -> List[Set[Hashable]]:
        groups: Dict[Hashable, Set[Hashable]] = {}
        for x in self.parent:
            groups.setdefault(self.find(x), set()).add(x)
        return list(groups.values())

    def __len__(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)
