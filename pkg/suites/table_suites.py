import logging
from fractions import Fraction
from typing import List

from config import Config
from graphs.coloring import chi_exact, fractional_chromatic, fractional_upper_bound
from graphs.families import hh_graph
from graphs.independence import alpha_exact, best_constructed_set
from models import AlphaResult, CheckResult, FamilyParams, format_fraction
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)


def certified_alpha(p: FamilyParams, budget: float) -> AlphaResult:
    """alpha(H(n:r)) seeded with the best constructed set.

    Graphs above the configured size go to CP-SAT whatever the default engine is.
    """
    g = hh_graph(p)
    method = Config.ALPHA_SOLVER
    if g.vertex_count > Config.ALPHA_BNB_VERTEX_LIMIT:
        method = "cp_sat"
    return alpha_exact(
        g, budget=budget, method=method, hint=best_constructed_set(p), transitive=True
    )


class AlphaTableSuite(BaseSuite):
    def __init__(self):
        super().__init__("table1")

    def get_description(self) -> str:
        return "Independence numbers of H(n:r)"

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=n, r=r) for r, n in Config.TABLE_ALPHA]

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        found = certified_alpha(p, budget)
        return [
            self.check(
                f"alpha {p}",
                found.alpha,
                Config.TABLE_ALPHA.get((p.r, p.n)),
                exact=found.optimality_certified,
                detail=f"{found.method}, {found.nodes} nodes",
            )
        ]


class ChiTableSuite(BaseSuite):
    def __init__(self):
        super().__init__("table2")

    def get_description(self) -> str:
        return "Chromatic numbers of H(n:r)"

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=n, r=r) for r, n in Config.TABLE_CHI]

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        found = chi_exact(hh_graph(p), budget=budget)
        return [
            self.check(
                f"chi {p}",
                found.chi if found.exact else found.upper,
                Config.TABLE_CHI.get((p.r, p.n)),
                exact=found.exact,
                detail=f"bounds [{found.lower}, {found.upper}] via {found.method}",
            )
        ]


class FractionalTableSuite(BaseSuite):
    def __init__(self):
        super().__init__("table3")

    def get_description(self) -> str:
        return "Fractional chromatic numbers of H(n:r) from certified independence numbers"

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=n, r=r) for r, n in Config.TABLE_FRACTIONAL]

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        found = certified_alpha(p, budget)
        value = fractional_chromatic(p, found.alpha)
        expected = Config.TABLE_FRACTIONAL.get((p.r, p.n))
        results = [
            self.check(
                f"chi* {p}",
                format_fraction(value),
                expected,
                exact=found.optimality_certified,
            )
        ]
        if p.n >= 2 * p.r:
            bound = fractional_upper_bound(p)
            results.append(
                self.check(
                    f"chi* <= constructed bound {p}",
                    value <= bound,
                    True,
                    detail=f"bound {format_fraction(bound)}",
                )
            )
        if p.n >= p.r * p.r + 2:
            results.append(
                self.check(f"chi* < r + 1 {p}", value < Fraction(p.r + 1), True)
            )
        return results
