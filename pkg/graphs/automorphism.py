import logging
import time
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import Config
from graphs.core_graph import Graph, is_automorphism
from graphs.families import (
    hh_graph,
    hh_index_of,
    hh_vertex,
    hh_vertex_table,
    induced_vertex_permutation,
)
from models import (
    AutResult,
    FamilyParams,
    HHVertex,
    NotAutomorphismError,
    PairClass,
    ParameterDomainError,
    Permutation,
)
from subset_utils import UnionFind, elements_of, iter_bits, popcount

logger = logging.getLogger(__name__)

Cells = List[List[int]]


def apply_perm(p: FamilyParams, sigma: Permutation, v: HHVertex) -> HHVertex:
    if sigma.n != p.n:
        raise ParameterDomainError(f"permutation of [{sigma.n}] cannot act on {p}")
    hh_index_of(p, v)
    return HHVertex(head=sigma(v.head), tail=tuple(sorted(sigma(t) for t in v.tail)))


class _BudgetExhausted(Exception):
    pass


class _AutomorphismSearch:
    """Individualisation-refinement search for the automorphism group order.

    The first path always individualises the lowest vertex of the first smallest
    nontrivial cell. Levels are revisited bottom-up: for every other vertex w of
    the target cell not yet known to share an orbit with the base point, the
    subtree rooted at w is searched for a leaf equivalent to the first leaf.
    """

    def __init__(self, g: Graph, deadline: float):
        self.g = g
        self.rows = g.rows
        self.deadline = deadline
        self.leaves_tested = 0
        self.generators: List[Tuple[int, ...]] = []

    def refine(self, cells: Cells) -> Cells:
        while True:
            masks = [sum(1 << v for v in cell) for cell in cells]
            refined: Cells = []
            for cell in cells:
                if len(cell) == 1:
                    refined.append(cell)
                    continue
                groups: Dict[Tuple[int, ...], List[int]] = {}
                for v in cell:
                    row = self.rows[v]
                    signature = tuple(popcount(row & m) for m in masks)
                    groups.setdefault(signature, []).append(v)
                refined.extend(groups[key] for key in sorted(groups))
            if len(refined) == len(cells):
                return refined
            cells = refined

    @staticmethod
    def individualise(cells: Cells, v: int) -> Cells:
        for i, cell in enumerate(cells):
            if v in cell:
                rest = [u for u in cell if u != v]
                return cells[:i] + [[v], rest] + cells[i + 1 :]
        raise ValueError(f"vertex {v} is in no cell")

    @staticmethod
    def target_cell(cells: Cells) -> Optional[int]:
        best = None
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (best is None or len(cell) < len(cells[best])):
                best = i
        return best

    @staticmethod
    def shape(cells: Cells) -> Tuple[int, ...]:
        return tuple(len(cell) for cell in cells)

    def _tick(self) -> None:
        if time.monotonic() > self.deadline:
            raise _BudgetExhausted()

    def first_path(self) -> Tuple[List[Cells], List[int], List[int]]:
        """Partitions along the first path, the target cell index and base point at each level"""
        cells = self.refine([list(range(self.g.vertex_count))])
        partitions, targets, base = [cells], [], []
        while True:
            target = self.target_cell(cells)
            if target is None:
                return partitions, targets, base
            b = min(cells[target])
            targets.append(target)
            base.append(b)
            cells = self.refine(self.individualise(cells, b))
            partitions.append(cells)

    def find_equivalent_leaf(
        self, cells: Cells, depth: int, shapes: List[Tuple[int, ...]], leaf: List[int]
    ) -> Optional[Tuple[int, ...]]:
        """An automorphism mapping the first leaf into this subtree, or None"""
        self._tick()
        if self.shape(cells) != shapes[depth]:
            return None
        target = self.target_cell(cells)
        if target is None:
            self.leaves_tested += 1
            images = [0] * len(leaf)
            for source, cell in zip(leaf, cells):
                images[source] = cell[0]
            return tuple(images) if is_automorphism(self.g, images) else None
        for w in sorted(cells[target]):
            found = self.find_equivalent_leaf(
                self.refine(self.individualise(cells, w)), depth + 1, shapes, leaf
            )
            if found is not None:
                return found
        return None

    def run(self) -> Tuple[int, bool]:
        n = self.g.vertex_count
        if n == 0:
            return 1, True
        partitions, targets, base = self.first_path()
        shapes = [self.shape(cells) for cells in partitions]
        leaf = [cell[0] for cell in partitions[-1]]
        orbits = UnionFind(range(n))
        order = 1
        try:
            for level in reversed(range(len(base))):
                cells = partitions[level]
                b = base[level]
                for w in sorted(cells[targets[level]]):
                    if orbits.same(b, w):
                        continue
                    gamma = self.find_equivalent_leaf(
                        self.refine(self.individualise(cells, w)), level + 1, shapes, leaf
                    )
                    if gamma is None:
                        continue
                    self.generators.append(gamma)
                    for v, image in enumerate(gamma):
                        orbits.union(v, image)
                order *= orbits.class_size(b)
        except _BudgetExhausted:
            order *= orbits.class_size(b)
            logger.warning(
                f"automorphism search on {self.g.name} ran out of budget;"
                f" order >= {order}"
            )
            return order, False
        return order, True


def aut_order(g: Graph, budget: Optional[float] = None) -> AutResult:
    budget = Config.BUDGET_SECONDS if budget is None else budget
    started = time.monotonic()
    search = _AutomorphismSearch(g, started + budget)
    order, exact = search.run()
    logger.info(
        f"|Aut({g.name})| = {order} (exact={exact}, {len(search.generators)} generators,"
        f" {search.leaves_tested} leaves, {time.monotonic() - started:.2f}s)"
    )
    return AutResult(
        order=order, exact=exact, generators=search.generators, tests=search.leaves_tested
    )


def pair_classify(p: FamilyParams, u: HHVertex, v: HHVertex) -> PairClass:
    hh_index_of(p, u)
    hh_index_of(p, v)
    if u == v:
        raise ParameterDomainError(f"cannot classify {u} against itself")
    if u.tail == v.tail:
        return PairClass.TAIL_TYPE
    if u.head == v.head and popcount(u.tail_mask & v.tail_mask) == p.r - 1:
        return PairClass.HEAD_TYPE
    return PairClass.OTHER


def common_count_formulas(p: FamilyParams) -> Tuple[int, int]:
    """Common-neighbour counts of a tail-type pair and of a head-type pair"""
    p.require(p.n >= 2 * p.r + 1, "common-neighbour counts need n >= 2r + 1")
    n, r = p.n, p.r
    rest = n - r - 2
    tail_type = r * comb(rest, r - 2) if r >= 2 else 0
    return tail_type, (r - 1) * comb(rest, r - 1)


def _has_dominator(g: Graph, u: int, v: int, common: int) -> bool:
    everyone = g.all_mask
    for w in iter_bits(common):
        everyone &= g.row(w)
    return bool(everyone & ~(1 << u | 1 << v))


def structural_same_tail(g: Graph, u: int, v: int, p: FamilyParams) -> bool:
    """Decide whether u and v share a tail from adjacency alone.

    ``p`` only supplies n and r; vertex labels are never read.
    """
    p.require(p.n >= 2 * p.r + 1, "tails are only recoverable when n >= 2r + 1")
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise ParameterDomainError("the pair must consist of distinct vertices")

    row_u, row_v = g.row(u), g.row(v)
    common = row_u & row_v
    if not common:
        return False
    if _has_dominator(g, u, v, common):
        return False
    if p.n != 3 * p.r:
        return popcount(common) == common_count_formulas(p)[0]

    near_common = g.neighborhood_of_set(common)
    if p.r >= 3:
        reach = g.neighborhood_of_set(row_u) & g.neighborhood_of_set(row_v)
        return reach & ~near_common == 0
    reach = g.neighborhood_of_set(row_u & ~row_v) & g.neighborhood_of_set(row_v & ~row_u)
    return reach & near_common == 0


def dominator(p: FamilyParams, u: HHVertex, v: HHVertex) -> HHVertex:
    """A vertex outside {u, v} adjacent to every common neighbour of u and v"""
    kind = pair_classify(p, u, v)
    if kind is not PairClass.OTHER:
        raise ParameterDomainError(f"{u} and {v} form a {kind.value} pair")
    if u.head != v.head:
        s = HHVertex(head=u.head, tail=v.tail)
    else:
        shared = u.tail_mask & v.tail_mask
        if not shared:
            raise ParameterDomainError(f"{u} and {v} have no common neighbours")
        t_u = min(set(u.tail) - set(v.tail))
        t_v = min(set(v.tail) - set(u.tail))
        s = HHVertex(head=u.head, tail=tuple(sorted(set(u.tail) - {t_u} | {t_v})))

    g = hh_graph(p)
    iu, iv, i_s = hh_index_of(p, u), hh_index_of(p, v), hh_index_of(p, s)
    common = g.row(iu) & g.row(iv)
    if common & ~g.row(i_s):
        raise ArithmeticError(f"{s} misses a common neighbour of {u} and {v}")
    return s


def tail_preservation_check(
    g: Graph, autos: Sequence[Sequence[int]], p: FamilyParams
) -> bool:
    """True iff every listed automorphism sends same-tail pairs to same-tail pairs"""
    table = hh_vertex_table(p)
    if len(table) != g.vertex_count:
        raise ParameterDomainError(f"{g.name} is not {p}")
    by_tail: Dict[int, List[int]] = {}
    for v, (_, tail) in enumerate(table):
        by_tail.setdefault(tail, []).append(v)
    for i, images in enumerate(autos):
        if not is_automorphism(g, images):
            raise NotAutomorphismError(f"permutation {i} is not an automorphism of {g.name}")
        for members in by_tail.values():
            if len({table[images[v]][1] for v in members}) != 1:
                logger.info(f"automorphism {i} of {g.name} splits the tail class of {members[0]}")
                return False
    return True


def induced_tail_permutation(p: FamilyParams, images: Sequence[int]) -> Dict[int, int]:
    """The bijection on tail masks induced by a tail-preserving vertex permutation"""
    table = hh_vertex_table(p)
    mapping: Dict[int, int] = {}
    for v, (_, tail) in enumerate(table):
        image_tail = table[images[v]][1]
        if mapping.setdefault(tail, image_tail) != image_tail:
            raise NotAutomorphismError(
                f"vertices with tail {elements_of(tail)} land on different tails"
            )
    if len(set(mapping.values())) != len(mapping):
        raise NotAutomorphismError("tail map is not injective")
    return mapping


def recover_point_permutation(p: FamilyParams, images: Sequence[int]) -> Permutation:
    """The sigma in S_n inducing a tail-preserving automorphism.

    sigma(e) is the one element shared by the images of every tail holding e.
    """
    tail_map = induced_tail_permutation(p, images)
    full = (1 << p.n) - 1
    sigma = []
    for e in range(1, p.n + 1):
        bit = 1 << (e - 1)
        shared = full
        for tail, image in tail_map.items():
            if tail & bit:
                shared &= image
        if popcount(shared) != 1:
            raise NotAutomorphismError(f"no single image for element {e}")
        sigma.append(shared.bit_length())
    try:
        permutation = Permutation(images=tuple(sigma))
    except ValueError as e:
        raise NotAutomorphismError(f"recovered map is not a permutation: {e}")
    if induced_vertex_permutation(p, permutation) != tuple(images):
        raise NotAutomorphismError(f"{permutation.images} does not induce the automorphism")
    return permutation


def sample_other_pairs(
    p: FamilyParams, count: int, seed: Optional[int] = None
) -> List[Tuple[int, int]]:
    """Deterministic sample of distinct OTHER pairs (u < v)"""
    rng = np.random.default_rng(Config.SAMPLE_SEED if seed is None else seed)
    table = hh_vertex_table(p)
    size = len(table)
    total_other = comb(size, 2) - _tail_type_pairs(p) - _head_type_pairs(p)
    if count > total_other:
        raise ParameterDomainError(f"{p} has only {total_other} other-type pairs")
    chosen: List[Tuple[int, int]] = []
    seen = set()
    while len(chosen) < count:
        for u, v in rng.integers(0, size, size=(2 * count, 2)).tolist():
            if u == v:
                continue
            pair = (min(u, v), max(u, v))
            if pair in seen:
                continue
            kind = pair_classify(p, hh_vertex(p, pair[0]), hh_vertex(p, pair[1]))
            if kind is not PairClass.OTHER:
                continue
            seen.add(pair)
            chosen.append(pair)
            if len(chosen) == count:
                break
    return chosen


def _tail_type_pairs(p: FamilyParams) -> int:
    return comb(p.n, p.r) * comb(p.n - p.r, 2)


def _head_type_pairs(p: FamilyParams) -> int:
    # head h, shared core C of size r - 1, two distinct extra elements
    return p.n * comb(p.n - 1, p.r - 1) * comb(p.n - p.r, 2)
