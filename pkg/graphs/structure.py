import logging
from math import comb
from typing import List, Sequence, Tuple

import numpy as np

from graphs.core_graph import Graph, is_automorphism
from graphs.families import hh_vertex_table
from models import (
    CellPartition,
    FamilyParams,
    GroupCapExceededError,
    NotAutomorphismError,
    NotEquitableError,
    ParameterDomainError,
    QuotientMatrix,
)
from subset_utils import UnionFind, iter_bits, popcount

logger = logging.getLogger(__name__)

VertexPermutation = Tuple[int, ...]


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def three_cell_partition(p: FamilyParams) -> CellPartition:
    """Split H(n:r) by where n occurs: nowhere, in the tail, or as the head"""
    p.require(p.n >= p.r + 2, "all three cells are nonempty only when n >= r + 2")
    top = 1 << (p.n - 1)
    cells: List[List[int]] = [[], [], []]
    for v, (head, tail) in enumerate(hh_vertex_table(p)):
        if head == p.n:
            cells[2].append(v)
        elif tail & top:
            cells[1].append(v)
        else:
            cells[0].append(v)
    return CellPartition(cells=cells)


def quotient_matrix(g: Graph, part: CellPartition) -> QuotientMatrix:
    """Neighbour counts between cells; raises NotEquitableError if they vary in a cell"""
    masks = []
    covered = 0
    for cell in part.cells:
        mask = 0
        for v in cell:
            g.check_vertex(v)
            mask |= 1 << v
        if mask & covered:
            raise ParameterDomainError("partition cells overlap")
        covered |= mask
        masks.append(mask)
    if covered != g.all_mask:
        raise ParameterDomainError("partition does not cover every vertex")

    counts = np.array(
        [[popcount(g.row(v) & mask) for mask in masks] for v in range(g.vertex_count)],
        dtype=np.int64,
    )
    entries = []
    for cell in part.cells:
        if not cell:
            entries.append([0] * len(masks))
            continue
        members = sorted(cell)
        block = counts[members]
        bad = np.nonzero(np.any(block != block[0], axis=1))[0]
        if bad.size:
            witness = (members[0], members[int(bad[0])])
            raise NotEquitableError(
                f"vertices {witness[0]} and {witness[1]} see different cell counts",
                witness,
            )
        entries.append(block[0].tolist())
    return QuotientMatrix(entries=entries)


def expected_quotient_matrix(p: FamilyParams) -> QuotientMatrix:
    p.require(p.n >= 2 * p.r + 1, "the quotient formulas need n >= 2r + 1")
    n, r = p.n, p.r
    return QuotientMatrix(
        entries=[
            [r * _binom(n - r - 2, r - 1), r * _binom(n - r - 2, r - 2), 0],
            [(r - 1) * _binom(n - r - 1, r - 1), 0, _binom(n - r - 1, r - 1)],
            [0, r * _binom(n - r - 1, r - 1), 0],
        ]
    )


def _check_generators(g: Graph, generators: Sequence[Sequence[int]]) -> None:
    for i, images in enumerate(generators):
        if not is_automorphism(g, images):
            raise NotAutomorphismError(f"generator {i} is not an automorphism of {g.name}")


def vertex_orbits(g: Graph, generators: Sequence[Sequence[int]]) -> List[List[int]]:
    _check_generators(g, generators)
    uf = UnionFind(range(g.vertex_count))
    for images in generators:
        for v, image in enumerate(images):
            uf.union(v, image)
    return sorted(sorted(orbit) for orbit in uf.classes())


def orbit_count(g: Graph, generators: Sequence[Sequence[int]]) -> Tuple[int, int]:
    """Orbits of the generated group on vertices and on arcs (ordered adjacent pairs)"""
    vertex_classes = len(vertex_orbits(g, generators))
    arcs = [(u, v) for u in range(g.vertex_count) for v in iter_bits(g.row(u))]
    uf = UnionFind(arcs)
    for images in generators:
        for u, v in arcs:
            uf.union((u, v), (images[u], images[v]))
    logger.debug(f"{g.name}: {vertex_classes} vertex orbits, {len(uf)} arc orbits")
    return vertex_classes, len(uf)


def is_vertex_transitive(g: Graph, generators: Sequence[Sequence[int]]) -> bool:
    return g.vertex_count == 0 or len(vertex_orbits(g, generators)) == 1


def enumerate_group(
    generators: Sequence[Sequence[int]], degree: int, cap: int
) -> List[VertexPermutation]:
    """All elements of the group generated by vertex permutations, sorted by image tuple.

    Breadth-first closure under left multiplication by the generators.
    """
    identity = tuple(range(degree))
    gens = [tuple(images) for images in generators]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for element in frontier:
            for gen in gens:
                product = tuple(gen[x] for x in element)
                if product not in seen:
                    seen.add(product)
                    nxt.append(product)
                    if len(seen) > cap:
                        raise GroupCapExceededError(
                            f"group has more than {cap} elements"
                        )
        frontier = nxt
    logger.debug(f"enumerated group of order {len(seen)} on {degree} points")
    return sorted(seen)

