import logging
import time
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence

from ortools.sat.python import cp_model

from config import Config
from graphs.core_graph import Graph, has_triangle, is_bipartite
from graphs.families import hh_graph, hh_vertex_table, sn_vertex_generators
from graphs.structure import enumerate_group, is_vertex_transitive
from models import (
    ChiResult,
    Coloring,
    FamilyParams,
    FractionalColoring,
    NotIndependentError,
    TransitivityError,
    VertexSet,
    WeightedSet,
)
from subset_utils import iter_bits, popcount

logger = logging.getLogger(__name__)


def is_proper(g: Graph, coloring: Coloring) -> bool:
    colors = coloring.assignment
    if len(colors) != g.vertex_count:
        return False
    return all(colors[u] != colors[v] for u, v in g.edges())


def chi_upper_greedy(g: Graph) -> Coloring:
    """DSATUR: colour the most saturated vertex next, ties by degree then index"""
    n = g.vertex_count
    color = [-1] * n
    seen_colors = [0] * n
    degree = g.degrees()
    for _ in range(n):
        v = max(
            (u for u in range(n) if color[u] < 0),
            key=lambda u: (popcount(seen_colors[u]), degree[u], -u),
        )
        c = 0
        while seen_colors[v] >> c & 1:
            c += 1
        color[v] = c
        for w in iter_bits(g.row(v)):
            seen_colors[w] |= 1 << c
    return Coloring(assignment=color)


class _BudgetExhausted(Exception):
    pass


class _KColoringSearch:
    """DSATUR backtracking for a k-colouring.

    A new colour is only ever the next unused one, which fixes the first vertex
    to colour 0.
    """

    def __init__(self, g: Graph, k: int, deadline: float):
        self.g = g
        self.k = k
        self.deadline = deadline
        n = g.vertex_count
        self.color = [-1] * n
        self.conflicts = [[0] * k for _ in range(n)]
        self.saturation = [0] * n
        self.degree = g.degrees()
        self.nodes = 0

    def _assign(self, v: int, c: int) -> None:
        self.color[v] = c
        for w in iter_bits(self.g.row(v)):
            self.conflicts[w][c] += 1
            if self.conflicts[w][c] == 1:
                self.saturation[w] |= 1 << c

    def _unassign(self, v: int, c: int) -> None:
        self.color[v] = -1
        for w in iter_bits(self.g.row(v)):
            self.conflicts[w][c] -= 1
            if self.conflicts[w][c] == 0:
                self.saturation[w] &= ~(1 << c)

    def _pick(self) -> int:
        best, best_key = -1, None
        for v, c in enumerate(self.color):
            if c >= 0:
                continue
            key = (popcount(self.saturation[v]), self.degree[v])
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve(self, colored: int = 0, used: int = 0) -> bool:
        self.nodes += 1
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted()
        if colored == len(self.color):
            return True
        v = self._pick()
        for c in range(min(self.k, used + 1)):
            if self.saturation[v] >> c & 1:
                continue
            self._assign(v, c)
            if self.solve(colored + 1, max(used, c + 1)):
                return True
            self._unassign(v, c)
        return False


def find_k_coloring(
    g: Graph, k: int, deadline: Optional[float] = None
) -> Optional[Coloring]:
    """A proper k-colouring, or None if none exists"""
    if k <= 0:
        return Coloring(assignment=[]) if g.vertex_count == 0 else None
    if k == 2:
        bipartite, side = is_bipartite(g)
        return Coloring(assignment=side) if bipartite else None
    search = _KColoringSearch(g, k, deadline or time.monotonic() + Config.BUDGET_SECONDS)
    if search.solve():
        return Coloring(assignment=list(search.color))
    logger.debug(f"no {k}-colouring of {g.name} ({search.nodes} nodes)")
    return None


def _chi_lower_bound(g: Graph) -> int:
    if g.vertex_count == 0:
        return 0
    if g.edge_count == 0:
        return 1
    if has_triangle(g) or not is_bipartite(g)[0]:
        return 3
    return 2


def _chi_dsatur(g: Graph, budget: float) -> ChiResult:
    deadline = time.monotonic() + budget
    best = chi_upper_greedy(g)
    upper = best.color_count
    lower = _chi_lower_bound(g)
    try:
        k = upper - 1
        while k >= lower:
            found = find_k_coloring(g, k, deadline)
            if found is None:
                break
            best, upper = found, found.color_count
            k = upper - 1
        lower = upper
    except _BudgetExhausted:
        logger.warning(
            f"chromatic search on {g.name} ran out of budget; bounds [{lower}, {upper}]"
        )
        return ChiResult(
            chi=None, lower=lower, upper=upper, coloring=best, exact=False
        )
    return ChiResult(chi=upper, lower=lower, upper=upper, coloring=best, exact=True)


def _chi_cp_sat(g: Graph, budget: float) -> ChiResult:
    greedy = chi_upper_greedy(g)
    upper = greedy.color_count
    lower = _chi_lower_bound(g)
    if upper <= lower:
        return ChiResult(
            chi=upper, lower=upper, upper=upper, coloring=greedy, exact=True, method="cp_sat"
        )

    model = cp_model.CpModel()
    n = g.vertex_count
    x = [[model.NewBoolVar(f"x_{v}_{c}") for c in range(upper)] for v in range(n)]
    used = [model.NewBoolVar(f"used_{c}") for c in range(upper)]
    for v in range(n):
        model.AddExactlyOne(x[v])
        for c in range(upper):
            model.AddImplication(x[v][c], used[c])
    for u, v in g.edges():
        for c in range(upper):
            model.AddBoolOr([x[u][c].Not(), x[v][c].Not()])
    for c in range(upper - 1):
        model.AddImplication(used[c + 1], used[c])
    model.Add(x[0][0] == 1)
    model.Add(sum(used) >= lower)
    model.Minimize(sum(used))

    solver = cp_model.CpSolver()
    solver.parameters.max_time_in_seconds = budget
    solver.parameters.num_workers = max(1, Config.THREADS)
    status = solver.Solve(model)
    if status not in (cp_model.OPTIMAL, cp_model.FEASIBLE):
        return ChiResult(
            chi=None, lower=lower, upper=upper, coloring=greedy, exact=False, method="cp_sat"
        )
    assignment = [next(c for c in range(upper) if solver.Value(x[v][c])) for v in range(n)]
    coloring = Coloring(assignment=assignment)
    exact = status == cp_model.OPTIMAL
    bound = max(lower, int(round(solver.BestObjectiveBound())))
    return ChiResult(
        chi=coloring.color_count if exact else None,
        lower=coloring.color_count if exact else bound,
        upper=coloring.color_count,
        coloring=coloring,
        exact=exact,
        method="cp_sat",
    )


def chi_exact(
    g: Graph, budget: Optional[float] = None, method: Optional[str] = None
) -> ChiResult:
    budget = Config.BUDGET_SECONDS if budget is None else budget
    method = method or Config.CHI_SOLVER
    started = time.monotonic()
    if method == "dsatur":
        result = _chi_dsatur(g, budget)
    elif method == "cp_sat":
        result = _chi_cp_sat(g, budget)
    else:
        raise ValueError(f"unknown colouring solver {method!r}")
    logger.info(
        f"chi({g.name}) = {result.chi} via {result.method}"
        f" (bounds [{result.lower}, {result.upper}], {time.monotonic() - started:.2f}s)"
    )
    return result


def constructive_coloring(p: FamilyParams) -> Coloring:
    """The n - 2r + 2 colouring grown one ground element at a time from H(2r:r).

    H(2r:r) is coloured by whether the tail holds 1. Stepping to m, vertices with
    m in the tail take a fresh colour and vertices with head m take colour 0.
    """
    p.require(p.r >= 2, "the constructive colouring needs r >= 2")
    p.require(p.n >= 2 * p.r, "the constructive colouring needs n >= 2r")
    base = 2 * p.r
    assignment = []
    for head, tail in hh_vertex_table(p):
        top = max(head, tail.bit_length())
        if top <= base:
            assignment.append(0 if tail & 1 else 1)
        elif top == head:
            assignment.append(0)
        else:
            assignment.append(top - base + 1)
    return Coloring(assignment=assignment)


def fractional_chromatic(p: FamilyParams, alpha: int) -> Fraction:
    """|V| / alpha for the vertex-transitive H(n:r); alpha must be certified"""
    g = hh_graph(p)
    if not is_vertex_transitive(g, sn_vertex_generators(p)):
        raise TransitivityError(f"S_{p.n} is not transitive on {p}")
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return Fraction(g.vertex_count, alpha)


def fractional_upper_bound(p: FamilyParams) -> Fraction:
    """Fractional chromatic bound implied by the constructed independent sets"""
    p.require(p.r >= 2, "the bound needs r >= 2")
    p.require(p.n >= 2 * p.r, "the bound needs n >= 2r")
    n, r = p.n, p.r
    if n < r * r:
        return Fraction(n, r)
    spare = (r - 1) * comb(r * r, r)
    return (r + 1) * (1 - Fraction(spare, (r + 1) * comb(n, r + 1) + spare))


def group_images(
    g: Graph, generators: Sequence[Sequence[int]], s: VertexSet, cap: Optional[int] = None
) -> List[int]:
    """Image masks g(s) for every group element, in canonical group order.

    Checks that s is independent and that the group is transitive.
    """
    if not g.induced_mask_is_independent(s.mask):
        raise NotIndependentError(f"set of size {s.size} is not independent in {g.name}")
    if not is_vertex_transitive(g, generators):
        raise TransitivityError(f"generators are not transitive on {g.name}")
    group = enumerate_group(generators, g.vertex_count, cap or Config.GROUP_CAP)
    members = s.sorted_members()
    images = []
    for element in group:
        mask = 0
        for v in members:
            mask |= 1 << element[v]
        images.append(mask)
    return images


def orbit_fractional_coloring(
    g: Graph, generators: Sequence[Sequence[int]], s: VertexSet, cap: Optional[int] = None
) -> FractionalColoring:
    """Weight each distinct image g(s) by its multiplicity over |G||s|/|V|"""
    images = group_images(g, generators, s, cap)
    multiplicity: Dict[int, int] = {}
    for mask in images:
        multiplicity[mask] = multiplicity.get(mask, 0) + 1
    per_vertex = Fraction(len(images) * s.size, g.vertex_count)
    weighted = [
        WeightedSet(members=VertexSet.from_mask(mask), weight=count / per_vertex)
        for mask, count in sorted(multiplicity.items())
    ]
    result = FractionalColoring(weighted_sets=weighted)
    logger.info(
        f"orbit fractional colouring of {g.name}: {len(weighted)} sets,"
        f" total weight {result.total_weight}"
    )
    return result


def fractional_coloring_is_valid(g: Graph, f: FractionalColoring) -> bool:
    if any(ws.weight < 0 for ws in f.weighted_sets):
        return False
    if not all(g.induced_mask_is_independent(ws.members.mask) for ws in f.weighted_sets):
        return False
    return all(total >= 1 for total in f.coverage(g.vertex_count))
