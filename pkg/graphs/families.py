import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Tuple

import networkx as nx

from graphs.core_graph import Graph, build_graph
from models import (
    INFINITE,
    ClosedFormReport,
    FamilyParams,
    HHVertex,
    KneserClosedForm,
    KneserVertex,
    Metric,
    ParameterDomainError,
    Permutation,
)
from subset_utils import elements_of, iter_bits, mask_of, r_subsets

logger = logging.getLogger(__name__)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@lru_cache(maxsize=64)
def hh_vertex_table(p: FamilyParams) -> Tuple[Tuple[int, int], ...]:
    """(head, tail mask) for every vertex of H(n:r), in canonical order.

    Canonical order sorts by the tail's ascending element tuple, then by head.
    """
    p.require(p.n >= p.r + 1, "H(n:r) has no vertices when n < r + 1")
    table = []
    for tail in r_subsets(p.n, p.r):
        for head in range(1, p.n + 1):
            if not tail >> (head - 1) & 1:
                table.append((head, tail))
    return tuple(table)


@lru_cache(maxsize=64)
def hh_index(p: FamilyParams) -> Dict[Tuple[int, int], int]:
    return {vertex: i for i, vertex in enumerate(hh_vertex_table(p))}


def hh_vertex(p: FamilyParams, index: int) -> HHVertex:
    head, tail = hh_vertex_table(p)[index]
    return HHVertex(head=head, tail=elements_of(tail))


def hh_index_of(p: FamilyParams, vertex: HHVertex) -> int:
    try:
        return hh_index(p)[(vertex.head, vertex.tail_mask)]
    except KeyError:
        raise ParameterDomainError(f"{vertex} is not a vertex of {p}")


@lru_cache(maxsize=32)
def hh_graph(p: FamilyParams) -> Graph:
    """H(n:r): (hx, Tx) ~ (hy, Ty) iff hx in Ty, hy in Tx and Tx, Ty are disjoint"""
    table = hh_vertex_table(p)
    index = hh_index(p)
    full = (1 << p.n) - 1
    edges = []
    for tx in r_subsets(p.n, p.r):
        rest = full & ~tx
        for ty_elements in combinations(elements_of(rest), p.r):
            ty = mask_of(ty_elements)
            if ty < tx:
                continue
            for hx in ty_elements:
                u = index[(hx, tx)]
                for hy in iter_bits(tx):
                    edges.append((u, index[(hy + 1, ty)]))
    labels = [HHVertex(head=h, tail=elements_of(t)).label for h, t in table]
    graph = build_graph(len(table), edges, labels=labels, name=str(p))
    logger.info(
        f"Built {p} with {graph.vertex_count} vertices and {graph.edge_count} edges"
    )
    return graph


@lru_cache(maxsize=32)
def kneser_graph(p: FamilyParams) -> Graph:
    """K(n:r) on r-subsets, adjacent when disjoint.

    Vertex i is the r-subset of colex rank i.
    """
    p.require(p.n >= p.r, "K(n:r) needs n >= r")
    subsets = sorted(r_subsets(p.n, p.r))
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if not subsets[i] & subsets[j]
    ]
    labels = [KneserVertex(subset=elements_of(s)).label for s in subsets]
    return build_graph(len(subsets), edges, labels=labels, name=f"K({p.n}:{p.r})")


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ParameterDomainError(f"K_n needs n >= 1, got {n}")
    return build_graph(
        n,
        combinations(range(n), 2),
        labels=[str(i) for i in range(1, n + 1)],
        name=f"K_{n}",
    )


def shift_triples(n: int) -> List[Tuple[int, int, int]]:
    return list(combinations(range(1, n + 1), 3))


def shift_graph(n: int) -> Graph:
    """Shift graph on triples: {a<b<c} ~ {b<c<d}"""
    if n < 3:
        raise ParameterDomainError(f"the shift graph needs n >= 3, got {n}")
    triples = shift_triples(n)
    index = {t: i for i, t in enumerate(triples)}
    edges = [
        (index[(a, b, c)], index[(b, c, d)])
        for a, b, c, d in combinations(range(1, n + 1), 4)
    ]
    labels = [",".join(str(e) for e in t) for t in triples]
    return build_graph(len(triples), edges, labels=labels, name=f"S_{n}")


def hh_vertex_count(p: FamilyParams) -> int:
    return (p.n - p.r) * comb(p.n, p.r) if p.n > p.r else 0


def hh_valency(p: FamilyParams) -> int:
    return p.r * comb(p.n - p.r - 1, p.r - 1) if p.n > p.r else 0


def diameter_formula(p: FamilyParams) -> Metric:
    k = p.k
    if k < 1:
        return INFINITE
    if 2 * p.n >= 5 * p.r:
        return Metric.finite(4)
    return Metric.finite(max(5, _ceil_div(p.r - 1, k) + 1))


def odd_girth_formula(p: FamilyParams) -> Metric:
    k = p.k
    if k < 1:
        return INFINITE
    return Metric.finite(max(5, 2 * _ceil_div(p.r, k) + 1))


def hybrid_size(p: FamilyParams) -> int:
    """C(n, r+1) + (r-1)/(r+1) C(r^2, r), the second-regime constructed set size"""
    extra = (p.r - 1) * comb(p.r * p.r, p.r)
    if extra % (p.r + 1):
        raise ArithmeticError(f"(r-1) C(r^2, r) not divisible by r+1 at r={p.r}")
    return comb(p.n, p.r + 1) + extra // (p.r + 1)


def best_constructed_size(p: FamilyParams) -> int:
    if p.n <= p.r * p.r + 1:
        return p.r * comb(p.n - 1, p.r)
    return hybrid_size(p)


def closed_form(p: FamilyParams) -> ClosedFormReport:
    p.require(p.r >= 2, "closed forms need r >= 2")
    p.require(p.n >= 2 * p.r, "closed forms need n >= 2r")
    vertex_count = hh_vertex_count(p)
    valency = hh_valency(p)
    alpha_lower = best_constructed_size(p)

    flags = []
    if p.k < 1:
        flags.append("n = 2r: graph is a disjoint union of K(r,r); metric formulas vacuous")
    if p.n > p.r * p.r + 1:
        flags.append("n > r^2 + 1: independence bound uses the recursive hybrid set")

    report = ClosedFormReport(
        n=p.n,
        r=p.r,
        vertex_count=vertex_count,
        valency=valency,
        edge_count=vertex_count * valency // 2,
        diameter_formula=diameter_formula(p),
        odd_girth_formula=odd_girth_formula(p),
        girth_formula=Metric.finite(4),
        alpha_lower=alpha_lower,
        chi_upper=p.n - 2 * p.r + 2,
        component_count=1 if p.k >= 1 else comb(2 * p.r, p.r) // 2,
        kneser_edge_ratio=p.r * p.r,
        fractional_upper_bound=Fraction(vertex_count, alpha_lower),
        flags=flags,
    )
    logger.debug(f"Closed forms for {p}: {report.model_dump()}")
    return report


def kneser_closed_form(p: FamilyParams) -> KneserClosedForm:
    p.require(p.r >= 1, "K(n:r) closed forms need r >= 1")
    p.require(p.n >= 2 * p.r + 1, "K(n:r) closed forms need n >= 2r + 1")
    vertices = comb(p.n, p.r)
    return KneserClosedForm(
        n=p.n,
        r=p.r,
        vertex_count=vertices,
        edge_count=vertices * comb(p.n - p.r, p.r) // 2,
        diameter=Metric.finite(_ceil_div(p.r - 1, p.k) + 1),
        odd_girth=Metric.finite(2 * _ceil_div(p.r, p.k) + 1),
        chromatic_number=p.n - 2 * p.r + 2,
        independence_number=comb(p.n - 1, p.r - 1),
    )


def induced_vertex_permutation(p: FamilyParams, sigma: Permutation) -> Tuple[int, ...]:
    """Vertex images of the action (h, T) -> (sigma(h), sigma(T)) on H(n:r)"""
    if sigma.n != p.n:
        raise ParameterDomainError(f"permutation of [{sigma.n}] cannot act on {p}")
    index = hh_index(p)
    return tuple(
        index[(sigma(head), sigma.map_mask(tail))] for head, tail in hh_vertex_table(p)
    )


def sn_vertex_generators(p: FamilyParams) -> List[Tuple[int, ...]]:
    """Vertex permutations of H(n:r) induced by the transposition (1 2) and the n-cycle"""
    generators = [Permutation.cycle(p.n)]
    if p.n >= 2:
        generators.insert(0, Permutation.transposition(p.n, 1, 2))
    return [induced_vertex_permutation(p, sigma) for sigma in generators]


def kneser_interval_cycle(p: FamilyParams) -> Graph:
    """Cycle of cyclic r-intervals {jr+1, ..., jr+r} (mod n) in K(n:r)"""
    p.require(p.n >= 2 * p.r + 1, "interval cycles need n >= 2r + 1")
    starts = []
    start = 0
    while start not in starts:
        starts.append(start)
        start = (start + p.r) % p.n
    subsets = [tuple(sorted((s + i) % p.n + 1 for i in range(p.r))) for s in starts]
    length = len(subsets)
    labels = [",".join(str(e) for e in s) for s in subsets]
    edges = [(i, (i + 1) % length) for i in range(length)]
    return build_graph(length, edges, labels=labels, name=f"C_{length} in K({p.n}:{p.r})")


def kneser_maximum_matching(p: FamilyParams) -> Graph:
    """Maximum matching of K(n:r) as a subgraph on the matched subsets.

    Perfect whenever C(n, r) is even; otherwise one subset is left out.
    """
    p.require(p.n >= 2 * p.r, "K(n:r) has no edges when n < 2r")
    k = kneser_graph(p)
    pairs = nx.max_weight_matching(k.to_networkx(), maxcardinality=True)
    order = sorted(v for pair in pairs for v in pair)
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u, v in pairs]
    labels = [k.label(v) for v in order]
    logger.debug(f"matched {len(order)} of {k.vertex_count} subsets in {k.name}")
    return build_graph(len(order), edges, labels=labels, name=f"M in K({p.n}:{p.r})")
