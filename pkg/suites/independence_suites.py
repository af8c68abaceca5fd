import logging
from math import comb
from typing import List

from graphs.families import best_constructed_size, hh_graph, hybrid_size
from graphs.independence import (
    alpha_prime,
    best_constructed_set,
    disjoint_pair,
    hybrid_set,
    is_independent,
    is_maximal_independent,
    kneser_type_set,
    recursive_type_set,
)
from models import CheckResult, FamilyParams
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)


class BestIndependentSuite(BaseSuite):
    def __init__(self):
        super().__init__("bestindybd")

    def get_description(self) -> str:
        return "Sizes, independence and maximality of the constructed independent sets"

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        g = hh_graph(p)
        n, r = p.n, p.r
        best = best_constructed_set(p)
        kneser_type = kneser_type_set(p, 1)
        up = recursive_type_set(p, "up")
        down = recursive_type_set(p, "down")

        results = [
            self.check(f"|best| {p}", best.size, best_constructed_size(p)),
            self.check(f"alpha' {p}", alpha_prime(p), best.size),
            self.check(f"best independent {p}", is_independent(g, best), True),
            self.check(f"best maximal {p}", is_maximal_independent(g, best), True),
            self.check(f"|kneser-type| {p}", kneser_type.size, r * comb(n - 1, r)),
            self.check(f"kneser-type independent {p}", is_independent(g, kneser_type), True),
            self.check(f"|recursive up| {p}", up.size, comb(n, r + 1)),
            self.check(f"|recursive down| {p}", down.size, comb(n, r + 1)),
            self.check(
                f"recursive sets independent {p}",
                is_independent(g, up) and is_independent(g, down),
                True,
            ),
            self.check(f"recursive sets disjoint {p}", not up.members & down.members, True),
        ]
        if n >= r * r:
            hybrid = hybrid_set(p)
            results.append(self.check(f"|hybrid| {p}", hybrid.size, hybrid_size(p)))
            results.append(
                self.check(f"hybrid maximal {p}", is_maximal_independent(g, hybrid), True)
            )
        if n == r * r + 1:
            results.append(
                self.check(f"regimes agree {p}", hybrid_size(p), r * comb(n - 1, r))
            )
        return results


class TwoBigSetsSuite(BaseSuite):
    def __init__(self):
        super().__init__("twobigsets")

    def get_description(self) -> str:
        return "Two disjoint large independent sets for n >= r^2 + 1"

    def default_instances(self) -> List[FamilyParams]:
        return [p for p in super().default_instances() if p.n >= p.r * p.r + 1]

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        g = hh_graph(p)
        plus, minus = disjoint_pair(p)
        return [
            self.check(
                f"pair independent {p}",
                is_independent(g, plus) and is_independent(g, minus),
                True,
            ),
            self.check(f"pair disjoint {p}", not plus.members & minus.members, True),
            self.check(f"pair sizes {p}", [plus.size, minus.size], [hybrid_size(p)] * 2),
        ]
