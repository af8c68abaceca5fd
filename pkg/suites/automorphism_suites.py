import logging
from itertools import combinations
from math import comb, factorial
from typing import Dict, Iterator, List, Tuple

from config import Config
from graphs.automorphism import (
    aut_order,
    recover_point_permutation,
    sample_other_pairs,
    structural_same_tail,
    tail_preservation_check,
)
from graphs.core_graph import is_automorphism
from graphs.families import hh_graph, hh_index, hh_vertex_table, sn_vertex_generators
from graphs.structure import enumerate_group, orbit_count
from models import CheckResult, FamilyParams, HHKitError
from subset_utils import elements_of, iter_bits, mask_of
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)

FULL_GROUP_CHECK_LIMIT = 720


def expected_aut_order(p: FamilyParams) -> int:
    """n! above n = 2r; at n = 2r the components K(r,r) are permuted freely"""
    if p.n > 2 * p.r:
        return factorial(p.n)
    components = comb(2 * p.r, p.r) // 2
    return (2 * factorial(p.r) ** 2) ** components * factorial(components)


class AutSuite(BaseSuite):
    def __init__(self):
        super().__init__("aut")

    def get_description(self) -> str:
        return "Automorphism group order of H(n:r) and recovery of the underlying S_n"

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=n, r=r) for n, r in ((5, 2), (6, 2), (7, 2), (7, 3))]

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        p.require(p.n >= 2 * p.r, "automorphism checks need n >= 2r")
        g = hh_graph(p)
        found = aut_order(g, budget=budget)
        results = [
            self.check(f"|Aut {p}|", found.order, expected_aut_order(p), exact=found.exact)
        ]
        symmetric = sn_vertex_generators(p)
        results.append(
            self.check(
                f"S_{p.n} acts by automorphisms on {p}",
                all(is_automorphism(g, images) for images in symmetric),
                True,
            )
        )
        results.append(self.check(f"vertex and arc orbits {p}", orbit_count(g, symmetric), (1, 1)))
        if p.n == 2 * p.r:
            return results

        results.append(
            self.check(
                f"S_{p.n} acts faithfully on {p}",
                len(enumerate_group(symmetric, g.vertex_count, Config.GROUP_CAP)),
                factorial(p.n),
            )
        )
        autos = found.generators
        if found.exact and found.order <= FULL_GROUP_CHECK_LIMIT:
            autos = enumerate_group(found.generators, g.vertex_count, Config.GROUP_CAP)
        results.append(
            self.check(f"tails preserved {p}", tail_preservation_check(g, autos, p), True)
        )
        recovered = 0
        for images in found.generators:
            try:
                recover_point_permutation(p, images)
                recovered += 1
            except HHKitError as e:
                logger.error(f"no point permutation behind an automorphism of {p}: {e}")
        results.append(
            self.check(f"point permutations recovered {p}", recovered, len(found.generators))
        )
        return results


def tail_type_pairs(p: FamilyParams) -> Iterator[Tuple[int, int]]:
    by_tail: Dict[int, List[int]] = {}
    for v, (_, tail) in enumerate(hh_vertex_table(p)):
        by_tail.setdefault(tail, []).append(v)
    for members in by_tail.values():
        yield from combinations(members, 2)


def head_type_pairs(p: FamilyParams) -> Iterator[Tuple[int, int]]:
    index = hh_index(p)
    full = (1 << p.n) - 1
    for head in range(1, p.n + 1):
        others = elements_of(full & ~(1 << (head - 1)))
        for core in combinations(others, p.r - 1):
            core_mask = mask_of(core)
            spare = full & ~core_mask & ~(1 << (head - 1))
            for a, b in combinations(iter_bits(spare), 2):
                u = index[(head, core_mask | 1 << a)]
                v = index[(head, core_mask | 1 << b)]
                yield min(u, v), max(u, v)


class DistinguisherSuite(BaseSuite):
    def __init__(self):
        super().__init__("distinguisher")

    def get_description(self) -> str:
        return "Adjacency-only same-tail test against the vertex labels"

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=n, r=r) for n, r in ((5, 2), (6, 2), (7, 2), (9, 3))]

    def pairs(self, p: FamilyParams) -> List[Tuple[int, int]]:
        size = len(hh_vertex_table(p))
        if comb(size, 2) <= Config.ALL_PAIRS_LIMIT:
            return list(combinations(range(size), 2))
        pairs = list(tail_type_pairs(p)) + list(head_type_pairs(p))
        pairs.extend(sample_other_pairs(p, Config.OTHER_PAIR_SAMPLES))
        return pairs

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        g = hh_graph(p)
        table = hh_vertex_table(p)
        pairs = self.pairs(p)
        disagreements = 0
        for u, v in pairs:
            truth = table[u][1] == table[v][1]
            if structural_same_tail(g, u, v, p) != truth:
                disagreements += 1
                if disagreements <= 5:
                    logger.error(f"distinguisher wrong on {g.label(u)} / {g.label(v)}")
        return [
            self.check(
                f"distinguisher disagreements {p}",
                disagreements,
                0,
                detail=f"{len(pairs)} pairs tested",
            )
        ]
