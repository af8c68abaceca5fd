import logging
import time
from math import comb
from typing import List, Optional, Tuple

from ortools.sat.python import cp_model

from config import Config
from graphs.core_graph import Graph
from graphs.families import hh_vertex_table, induced_vertex_permutation
from models import AlphaResult, FamilyParams, Permutation, VertexSet
from subset_utils import iter_bits, popcount

logger = logging.getLogger(__name__)


def is_independent(g: Graph, s: VertexSet) -> bool:
    for v in s.members:
        g.check_vertex(v)
    return g.induced_mask_is_independent(s.mask)


def is_maximal_independent(g: Graph, s: VertexSet) -> bool:
    if not is_independent(g, s):
        return False
    mask = s.mask
    outside = g.all_mask & ~mask
    return all(g.row(v) & mask for v in iter_bits(outside))


def _select(p: FamilyParams, predicate) -> VertexSet:
    return VertexSet(
        members=frozenset(
            v
            for v, (head, tail) in enumerate(hh_vertex_table(p))
            if predicate(head, tail)
        )
    )


def kneser_type_set(p: FamilyParams, t: int) -> VertexSet:
    """Vertices whose tail contains t"""
    p.require(1 <= t <= p.n, f"element {t} is outside [n]")
    bit = 1 << (t - 1)
    return _select(p, lambda head, tail: tail & bit)


def recursive_type_set(p: FamilyParams, direction: str = "up") -> VertexSet:
    """Vertices whose head exceeds every tail element ("up") or is below all of them ("down")"""
    p.require(p.n >= p.r + 1, "H(n:r) has no vertices when n < r + 1")
    if direction == "up":
        return _select(p, lambda head, tail: tail >> (head - 1) == 0)
    if direction == "down":
        return _select(p, lambda head, tail: tail & ((1 << head) - 1) == 0)
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def hybrid_set(p: FamilyParams) -> VertexSet:
    """Heads-on-top layers above r^2 joined with the Kneser-type set of H(r^2:r) on 1"""
    p.require(p.n >= p.r * p.r, "the hybrid set needs n >= r^2")
    base = p.r * p.r
    low = (1 << base) - 1

    def keep(head: int, tail: int) -> bool:
        if head > base:
            return tail >> (head - 1) == 0
        return bool(tail & 1) and not tail & ~low

    return _select(p, keep)


def best_constructed_set(p: FamilyParams) -> VertexSet:
    p.require(p.r >= 2, "the constructed sets need r >= 2")
    p.require(p.n >= 2 * p.r, "the constructed sets need n >= 2r")
    if p.n <= p.r * p.r + 1:
        return kneser_type_set(p, 1)
    return hybrid_set(p)


def alpha_prime(p: FamilyParams) -> int:
    """The recursion max(|T_n(n)|, |H_n(n)| + alpha'(H(n-1:r))) from H(2r:r)"""
    p.require(p.r >= 2, "alpha' needs r >= 2")
    p.require(p.n >= 2 * p.r, "alpha' needs n >= 2r")
    r = p.r
    value = r * comb(2 * r, r) // 2
    for m in range(2 * r + 1, p.n + 1):
        value = max(r * comb(m - 1, r), comb(m - 1, r) + value)
    return value


def disjoint_pair(p: FamilyParams) -> Tuple[VertexSet, VertexSet]:
    """The hybrid set and its image under i -> n + 1 - i"""
    p.require(p.r >= 2, "the disjoint pair needs r >= 2")
    p.require(p.n >= p.r * p.r + 1, "the disjoint pair needs n >= r^2 + 1")
    plus = hybrid_set(p)
    images = induced_vertex_permutation(p, Permutation.reversal(p.n))
    minus = VertexSet(members=frozenset(images[v] for v in plus.members))
    return plus, minus


def greedy_independent_set(g: Graph) -> VertexSet:
    """Repeatedly take a minimum-degree vertex of what is left"""
    remaining = g.all_mask
    chosen = 0
    while remaining:
        v = min(iter_bits(remaining), key=lambda u: (popcount(g.row(u) & remaining), u))
        chosen |= 1 << v
        remaining &= ~(g.row(v) | 1 << v)
    return VertexSet.from_mask(chosen)


class _BudgetExhausted(Exception):
    pass


class _MaxIndependentSetSearch:
    """Bitset branch and bound for a maximum independent set.

    Candidates are greedily partitioned into cliques; a clique holds at most one
    member of an independent set, so the number of cliques bounds the gain.
    Branching follows the clique-cover order, last clique first, rather than
    maximum degree.
    """

    def __init__(self, g: Graph, deadline: float):
        self.g = g
        self.rows = g.rows
        self.deadline = deadline
        self.best = 0
        self.best_size = 0
        self.nodes = 0

    def _clique_cover(self, candidates: int) -> List[Tuple[int, int]]:
        """(vertex, bound) pairs in branching order, bound ascending"""
        order = []
        remaining = candidates
        cover = 0
        while remaining:
            cover += 1
            pool = remaining
            while pool:
                v = (pool & -pool).bit_length() - 1
                remaining &= ~(1 << v)
                pool &= self.rows[v] & ~(1 << v)
                order.append((v, cover))
        return order

    def expand(self, candidates: int, chosen: int, size: int) -> None:
        self.nodes += 1
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted()
        if size > self.best_size:
            self.best, self.best_size = chosen, size
        if not candidates:
            return
        for v, bound in reversed(self._clique_cover(candidates)):
            if size + bound <= self.best_size:
                return
            bit = 1 << v
            self.expand(candidates & ~self.rows[v] & ~bit, chosen | bit, size + 1)
            candidates &= ~bit


def _alpha_branch_and_bound(
    g: Graph, budget: float, hint: Optional[VertexSet], transitive: bool
) -> AlphaResult:
    search = _MaxIndependentSetSearch(g, time.monotonic() + budget)
    seed = hint if hint is not None else greedy_independent_set(g)
    if not g.induced_mask_is_independent(seed.mask):
        raise ValueError("hint is not an independent set")
    search.best, search.best_size = seed.mask, seed.size

    certified = True
    try:
        if transitive and g.vertex_count:
            # some maximum independent set contains vertex 0
            search.expand(g.all_mask & ~g.row(0) & ~1, 1, 1)
        else:
            search.expand(g.all_mask, 0, 0)
    except _BudgetExhausted:
        certified = False
        logger.warning(
            f"alpha search on {g.name} ran out of budget after {search.nodes} nodes"
        )
    return AlphaResult(
        alpha=search.best_size,
        witness=VertexSet.from_mask(search.best),
        optimality_certified=certified,
        method="branch_and_bound",
        nodes=search.nodes,
    )


def _alpha_cp_sat(
    g: Graph, budget: float, hint: Optional[VertexSet], transitive: bool
) -> AlphaResult:
    model = cp_model.CpModel()
    x = [model.NewBoolVar(f"x_{v}") for v in range(g.vertex_count)]
    if transitive and g.vertex_count:
        model.Add(x[0] == 1)
    for u, v in g.edges():
        model.AddBoolOr([x[u].Not(), x[v].Not()])
    model.Maximize(sum(x))
    if hint is not None:
        for v in range(g.vertex_count):
            model.AddHint(x[v], v in hint.members)

    solver = cp_model.CpSolver()
    solver.parameters.max_time_in_seconds = budget
    solver.parameters.num_workers = max(1, Config.THREADS)
    status = solver.Solve(model)

    if status not in (cp_model.OPTIMAL, cp_model.FEASIBLE):
        logger.warning(f"CP-SAT found no independent set for {g.name} in budget")
        witness = hint if hint is not None else greedy_independent_set(g)
        return AlphaResult(
            alpha=witness.size,
            witness=witness,
            optimality_certified=False,
            method="cp_sat",
        )
    members = frozenset(v for v in range(g.vertex_count) if solver.Value(x[v]))
    return AlphaResult(
        alpha=len(members),
        witness=VertexSet(members=members),
        optimality_certified=status == cp_model.OPTIMAL,
        method="cp_sat",
        nodes=int(solver.NumBranches()),
    )


def alpha_exact(
    g: Graph,
    budget: Optional[float] = None,
    method: Optional[str] = None,
    hint: Optional[VertexSet] = None,
    transitive: bool = False,
) -> AlphaResult:
    """Maximum independent set with an optimality flag.

    ``transitive`` may only be set for vertex-transitive graphs.
    """
    budget = Config.BUDGET_SECONDS if budget is None else budget
    method = method or Config.ALPHA_SOLVER
    started = time.monotonic()
    if method == "branch_and_bound":
        result = _alpha_branch_and_bound(g, budget, hint, transitive)
    elif method == "cp_sat":
        result = _alpha_cp_sat(g, budget, hint, transitive)
    else:
        raise ValueError(f"unknown independence solver {method!r}")
    logger.info(
        f"alpha({g.name}) = {result.alpha} via {result.method}"
        f" (certified={result.optimality_certified},"
        f" {time.monotonic() - started:.2f}s)"
    )
    return result

