import logging
from itertools import combinations
from typing import List

from graphs.core_graph import (
    connected_components,
    diameter,
    distance,
    girth,
    has_triangle,
    odd_girth,
)
from graphs.families import (
    closed_form,
    diameter_formula,
    hh_graph,
    kneser_closed_form,
    kneser_graph,
    odd_girth_formula,
)
from graphs.homomorphism import kneser_path, lift_kneser_path
from graphs.structure import expected_quotient_matrix, quotient_matrix, three_cell_partition
from models import CheckResult, FamilyParams, HHKitError
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)

KNESER_PATH_VERTEX_LIMIT = 126


class DiameterSuite(BaseSuite):
    def __init__(self):
        super().__init__("diameter")

    def get_description(self) -> str:
        return "BFS diameter of H(n:r) and K(n:r) against the closed forms"

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        results = [
            self.check(
                f"diam {p}", str(diameter(hh_graph(p))), str(diameter_formula(p))
            )
        ]
        if p.n >= 2 * p.r + 1:
            kneser = kneser_closed_form(p)
            results.append(
                self.check(
                    f"diam K({p.n}:{p.r})",
                    str(diameter(kneser_graph(p))),
                    str(kneser.diameter),
                )
            )
            results.extend(self.check_kneser_paths(p))
        return results

    def check_kneser_paths(self, p: FamilyParams) -> List[CheckResult]:
        """Explicit Kneser paths against BFS distance, lifted into H(n:r) when 2n < 5r"""
        g = kneser_graph(p)
        if g.vertex_count > KNESER_PATH_VERTEX_LIMIT:
            return []
        subsets = [tuple(int(e) for e in g.label(v).split(",")) for v in range(g.vertex_count)]
        wrong_length = 0
        failed_lifts = 0
        lift = 2 * p.n < 5 * p.r
        for u, v in combinations(range(g.vertex_count), 2):
            path = kneser_path(p.n, p.r, subsets[u], subsets[v])
            if len(path) - 1 != distance(g, u, v).value:
                wrong_length += 1
            if lift and len(path) > 2:
                try:
                    lift_kneser_path(p, path)
                except HHKitError as e:
                    logger.debug(f"lift of {path} failed: {e}")
                    failed_lifts += 1
        results = [self.check(f"Kneser path lengths K({p.n}:{p.r})", wrong_length, 0)]
        if lift:
            results.append(self.check(f"Kneser path lifts into {p}", failed_lifts, 0))
        return results


class OddGirthSuite(BaseSuite):
    def __init__(self):
        super().__init__("hhog")

    def get_description(self) -> str:
        return "Odd girth and girth of H(n:r), plus triangle-freeness"

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        g = hh_graph(p)
        results = [
            self.check(f"odd girth {p}", str(odd_girth(g)), str(odd_girth_formula(p))),
            self.check(f"girth {p}", str(girth(g)), "4"),
            self.check(f"triangle-free {p}", not has_triangle(g), True),
        ]
        if p.n >= 2 * p.r + 1:
            results.append(
                self.check(
                    f"odd girth K({p.n}:{p.r})",
                    str(odd_girth(kneser_graph(p))),
                    str(kneser_closed_form(p).odd_girth),
                )
            )
        return results


class QuotientSuite(BaseSuite):
    def __init__(self):
        super().__init__("quotient")

    def get_description(self) -> str:
        return "Equitable three-cell partition of H(n:r) by the position of n"

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        g = hh_graph(p)
        computed = quotient_matrix(g, three_cell_partition(p))
        return [
            self.check(
                f"quotient {p}", computed.entries, expected_quotient_matrix(p).entries
            ),
            self.check(
                f"row sums {p}", computed.row_sums(), [g.valency()] * len(computed.entries)
            ),
        ]


class ParamsSuite(BaseSuite):
    """Closed forms of one instance next to the values computed on the graph"""

    def __init__(self):
        super().__init__("params")

    def get_description(self) -> str:
        return "Counts and metrics of H(n:r): formula, computed and match"

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        report = closed_form(p)
        g = hh_graph(p)
        return [
            self.check("vertices", g.vertex_count, report.vertex_count),
            self.check("edges", g.edge_count, report.edge_count),
            self.check("valency", g.valency(), report.valency),
            self.check("diameter", str(diameter(g)), str(report.diameter_formula)),
            self.check("girth", str(girth(g)), str(report.girth_formula)),
            self.check("odd girth", str(odd_girth(g)), str(report.odd_girth_formula)),
            self.check("components", len(connected_components(g)), report.component_count),
        ]

    def witness(self, p: FamilyParams):
        return closed_form(p).model_dump(mode="json")
