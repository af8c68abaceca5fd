import logging
from fractions import Fraction
from math import comb, factorial
from typing import List

from graphs.coloring import fractional_coloring_is_valid, orbit_fractional_coloring
from graphs.families import (
    hh_graph,
    kneser_graph,
    kneser_interval_cycle,
    kneser_maximum_matching,
    sn_vertex_generators,
)
from graphs.homomorphism import (
    corollary_orbit_parameters,
    head_hom,
    lift_kneser_subgraph,
    orbit_hom,
    tail_hom,
)
from graphs.independence import best_constructed_set
from models import CheckResult, DegreeConditionError, FamilyParams, format_fraction
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)


class SubgraphsSuite(BaseSuite):
    def __init__(self):
        super().__init__("subgraphs")

    def get_description(self) -> str:
        return "Head and tail maps, and lifts of low-degree Kneser subgraphs into H(n:r)"

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        results = [
            self.check(f"head map {p}", len(head_hom(p).mapping), hh_graph(p).vertex_count),
            self.check(
                f"tail map onto K({p.n}:{p.r})",
                len(set(tail_hom(p).mapping)),
                kneser_graph(p).vertex_count,
            ),
        ]
        if p.n < 2 * p.r + 1:
            return results

        matching = kneser_maximum_matching(p)
        results.append(
            self.check(
                f"matched subsets of K({p.n}:{p.r})",
                matching.vertex_count,
                comb(p.n, p.r) // 2 * 2,
            )
        )
        lifted = lift_kneser_subgraph(p, matching)
        results.append(self.check(f"matching lifted into {p}", lifted.injective, True))

        if 2 * (p.n - 2 * p.r) < p.n - p.r:
            cycle = kneser_interval_cycle(p)
            lifted = lift_kneser_subgraph(p, cycle)
            results.append(self.check(f"{cycle.name} lifted into {p}", lifted.injective, True))

        try:
            lift_kneser_subgraph(p, kneser_graph(p))
            refused = False
        except DegreeConditionError:
            refused = True
        results.append(self.check(f"full K({p.n}:{p.r}) refused", refused, True))
        return results


class FracHomSuite(BaseSuite):
    def __init__(self):
        super().__init__("frachom")

    def get_description(self) -> str:
        return "Orbit homomorphism of H(n:r) into a Kneser graph on S_n"

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=4, r=2), FamilyParams(n=5, r=2), FamilyParams(n=6, r=2)]

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        g = hh_graph(p)
        s = best_constructed_set(p)
        generators = sn_vertex_generators(p)
        phi = orbit_hom(g, generators, s)
        ratio = Fraction(g.vertex_count, s.size)
        results = [
            self.check(f"n' {p}", phi.ground_size, factorial(p.n)),
            self.check(f"r' {p}", phi.image_size, phi.ground_size * s.size // g.vertex_count),
            self.check(f"n'/r' {p}", format_fraction(phi.ratio), format_fraction(ratio)),
        ]
        if p.n >= p.r * p.r:
            results.append(
                self.check(
                    f"corollary parameters {p}",
                    [phi.ground_size, phi.image_size],
                    list(corollary_orbit_parameters(p)),
                )
            )
        cover = orbit_fractional_coloring(g, generators, s)
        results.append(
            self.check(
                f"fractional colouring {p}",
                fractional_coloring_is_valid(g, cover)
                and all(total == 1 for total in cover.coverage(g.vertex_count)),
                True,
            )
        )
        results.append(
            self.check(
                f"fractional weight {p}",
                format_fraction(cover.total_weight),
                format_fraction(ratio),
            )
        )
        return results
