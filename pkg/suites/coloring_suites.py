import logging
from typing import Dict, List

from config import Config
from graphs.coloring import chi_exact, constructive_coloring, is_proper
from graphs.families import hh_graph, shift_graph
from graphs.homomorphism import shift_embed, tail_growth_embed, verify_hom
from graphs.independence import recursive_type_set
from models import ChiResult, CheckResult, FamilyParams
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)


class _ChromaticSuite(BaseSuite):
    """Shares chromatic numbers between instances of one run"""

    def __init__(self, suite_name: str):
        super().__init__(suite_name)
        self._chi: Dict[str, ChiResult] = {}

    def chromatic(self, p: FamilyParams, budget: float) -> ChiResult:
        key = str(p)
        if key not in self._chi:
            self._chi[key] = chi_exact(hh_graph(p), budget=budget)
        return self._chi[key]

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=n, r=r) for r, n in Config.TABLE_CHI]


class RecursiveBoundSuite(_ChromaticSuite):
    def __init__(self):
        super().__init__("recursivebd")

    def get_description(self) -> str:
        return "chi(H(n:r)) grows by at most one per step and stays below n - 2r + 2"

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        bound = p.n - 2 * p.r + 2
        chi = self.chromatic(p, budget)
        coloring = constructive_coloring(p)
        results = [
            self.check(
                f"constructive colouring {p}",
                is_proper(hh_graph(p), coloring) and coloring.color_count <= bound,
                True,
            ),
            self.check(f"chi <= n - 2r + 2 {p}", chi.upper <= bound, True),
        ]
        if p.n - 1 >= 2 * p.r:
            previous = self.chromatic(FamilyParams(n=p.n - 1, r=p.r), budget)
            exact = chi.exact and previous.exact
            step = chi.upper - previous.upper if exact else None
            results.append(
                self.check(f"chi step {p}", step in (0, 1), True, exact=exact)
            )
        return results


class TailChiSuite(_ChromaticSuite):
    def __init__(self):
        super().__init__("tailchi")

    def get_description(self) -> str:
        return "Colour-into-tail embedding of H(n:r) into H(n + chi : r + 1)"

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=4, r=2), FamilyParams(n=5, r=2)]

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        chi = self.chromatic(p, budget)
        results = []
        for label, coloring in (
            ("optimal", chi.coloring),
            ("constructive", constructive_coloring(p)),
        ):
            target, m = tail_growth_embed(p, coloring)
            check = verify_hom(hh_graph(p), hh_graph(target), m)
            results.append(
                self.check(
                    f"{label} embedding {p} -> {target}",
                    check.valid and m.injective,
                    True,
                )
            )
            results.append(
                self.check(
                    f"{label} target of {p}",
                    str(target),
                    str(FamilyParams(n=p.n + coloring.color_count, r=p.r + 1)),
                    exact=chi.exact or label == "constructive",
                )
            )
        return results


class ShiftEmbedSuite(BaseSuite):
    def __init__(self):
        super().__init__("s_n_embed")

    def get_description(self) -> str:
        return "Induced shift graph in H(n:2) and the chi sandwich it implies"

    def default_instances(self) -> List[FamilyParams]:
        return [FamilyParams(n=n, r=2) for n in range(4, 8)]

    def check_instance(self, p: FamilyParams, budget: float) -> List[CheckResult]:
        p.require(p.r == 2, "the shift graph lives in H(n:2)")
        source = shift_graph(p.n)
        m = shift_embed(p.n)
        image = set(m.mapping)
        rest = recursive_type_set(p, "up").members | recursive_type_set(p, "down").members
        shift_chi = chi_exact(source, budget=budget)
        hh_chi = chi_exact(hh_graph(p), budget=budget)
        exact = shift_chi.exact and hh_chi.exact
        return [
            self.check(f"S_{p.n} induced in {p}", m.injective, True),
            self.check(
                f"complement covered {p}",
                sorted(image | rest) == list(range(hh_graph(p).vertex_count))
                and not image & rest,
                True,
            ),
            self.check(
                f"chi sandwich {p}",
                shift_chi.upper <= hh_chi.upper <= shift_chi.upper + 2,
                True,
                exact=exact,
                detail=f"chi(S_{p.n})={shift_chi.upper}, chi({p})={hh_chi.upper}",
            ),
        ]
