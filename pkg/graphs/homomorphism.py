import logging
from math import factorial
from typing import List, Optional, Sequence, Tuple

from graphs.core_graph import Graph, is_induced_embedding
from graphs.coloring import group_images, is_proper
from graphs.families import (
    complete_graph,
    hh_graph,
    hh_index,
    hh_vertex_table,
    hybrid_size,
    kneser_graph,
    shift_graph,
    shift_triples,
)
from models import (
    Coloring,
    DegreeConditionError,
    FamilyParams,
    HHKitError,
    HHVertex,
    HomCheck,
    ImproperColoringError,
    KneserVertex,
    ParameterDomainError,
    SetValuedMap,
    TransitivityError,
    VertexMap,
    VertexSet,
)
from subset_utils import (
    colex_rank,
    elements_of,
    iter_bits,
    lowest_element,
    mask_of,
    popcount,
)

logger = logging.getLogger(__name__)


def verify_hom(source: Graph, target: Graph, m: VertexMap) -> HomCheck:
    """Every source edge must land on a target edge; reports the first that does not"""
    if len(m.mapping) != source.vertex_count:
        raise ParameterDomainError(
            f"map covers {len(m.mapping)} of {source.vertex_count} source vertices"
        )
    for image in m.mapping:
        target.check_vertex(image)
    for u, v in source.edges():
        if not target.adjacent(m.mapping[u], m.mapping[v]):
            return HomCheck(valid=False, violation=(u, v))
    return HomCheck(valid=True)


def _require_valid(source: Graph, target: Graph, m: VertexMap) -> VertexMap:
    check = verify_hom(source, target, m)
    if not check.valid:
        raise HHKitError(f"{m.source} -> {m.target} breaks edge {check.violation}")
    return m


def head_hom(p: FamilyParams) -> VertexMap:
    """(h, T) -> h into K_n"""
    p.require(p.n >= 2 * p.r, "the head map needs n >= 2r")
    m = VertexMap(
        source=str(p),
        target=f"K_{p.n}",
        mapping=[head - 1 for head, _ in hh_vertex_table(p)],
    )
    return _require_valid(hh_graph(p), complete_graph(p.n), m)


def tail_hom(p: FamilyParams) -> VertexMap:
    """(h, T) -> T into K(n:r)"""
    p.require(p.n >= 2 * p.r, "the tail map needs n >= 2r")
    m = VertexMap(
        source=str(p),
        target=f"K({p.n}:{p.r})",
        mapping=[colex_rank(tail) for _, tail in hh_vertex_table(p)],
    )
    return _require_valid(hh_graph(p), kneser_graph(p), m)


def tail_growth_embed(
    p: FamilyParams, c: Coloring, palette: Optional[Sequence[int]] = None
) -> Tuple[FamilyParams, VertexMap]:
    """(h, T) -> (h, T + {colour(h, T)}) into H(n + colours : r + 1).

    Colours are relabelled in increasing order to ``palette``, which defaults to
    n + 1, n + 2, ...
    """
    g = hh_graph(p)
    if not is_proper(g, c):
        raise ImproperColoringError(f"colouring is not proper on {p}")
    colors = sorted(set(c.assignment))
    palette = list(palette) if palette is not None else list(
        range(p.n + 1, p.n + 1 + len(colors))
    )
    if len(palette) < len(colors):
        raise ParameterDomainError(f"palette has {len(palette)} of {len(colors)} colours")
    if any(element <= p.n for element in palette):
        raise ParameterDomainError(f"palette {palette} collides with [1..{p.n}]")
    relabel = dict(zip(colors, palette))

    target = FamilyParams(n=max(palette), r=p.r + 1)
    index = hh_index(target)
    mapping = [
        index[(head, tail | 1 << (relabel[c.assignment[v]] - 1))]
        for v, (head, tail) in enumerate(hh_vertex_table(p))
    ]
    m = VertexMap(source=str(p), target=str(target), mapping=mapping)
    _require_valid(g, hh_graph(target), m)
    if not m.injective:
        raise HHKitError(f"tail growth map {p} -> {target} is not injective")
    return target, m


def shift_embed(n: int) -> VertexMap:
    """{x1 < x2 < x3} -> (x2, {x1, x3}), an induced copy of the shift graph in H(n:2)"""
    source = shift_graph(n)
    p = FamilyParams(n=n, r=2)
    index = hh_index(p)
    mapping = [index[(b, mask_of((a, c)))] for a, b, c in shift_triples(n)]
    m = VertexMap(source=source.name, target=str(p), mapping=mapping)
    target = hh_graph(p)
    _require_valid(source, target, m)
    if not m.injective or not is_induced_embedding(target, source, mapping):
        raise HHKitError(f"shift graph S_{n} is not induced in {p}")
    return m


def lift_kneser_subgraph(p: FamilyParams, sub: Graph) -> VertexMap:
    """Embed a subgraph of K(n:r) with small maximum degree into H(n:r).

    Each subset X takes as head the smallest element common to all its neighbours.
    """
    p.require(p.n >= 2 * p.r + 1, "lifting needs n >= 2r + 1")
    if sub.max_degree * (p.n - 2 * p.r) >= p.n - p.r:
        raise DegreeConditionError(
            f"max degree {sub.max_degree} is not below (n-r)/(n-2r) for {p}"
        )
    tails = [
        KneserVertex(subset=tuple(int(e) for e in sub.label(v).split(",")))
        for v in range(sub.vertex_count)
    ]
    masks = [t.mask for t in tails]
    for t in tails:
        if len(t.subset) != p.r or t.subset[-1] > p.n:
            raise ParameterDomainError(f"{t} is not an r-subset of [{p.n}]")
    for u, v in sub.edges():
        if masks[u] & masks[v]:
            raise ParameterDomainError(f"{tails[u]} and {tails[v]} are not disjoint")

    full = (1 << p.n) - 1
    index = hh_index(p)
    mapping = []
    for v in range(sub.vertex_count):
        common = full & ~masks[v]
        for w in iter_bits(sub.row(v)):
            common &= masks[w]
        if not common:
            raise HHKitError(f"no common head for {tails[v]}")
        head = lowest_element(common)
        mapping.append(index[(head, masks[v])])

    m = VertexMap(source=sub.name, target=str(p), mapping=mapping)
    _require_valid(sub, hh_graph(p), m)
    logger.debug(f"lifted {sub.name} into {p}")
    return m


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _even_path(n: int, r: int, x: int, y: int) -> List[int]:
    """The alternating path of length 2 ceil((r - s) / k) between r-subsets x and y"""
    k = n - 2 * r
    common = x & y
    outside = ((1 << n) - 1) & ~(x | y)
    a = [1 << (e - 1) for e in elements_of(x & ~common)]
    b = [1 << (e - 1) for e in elements_of(y & ~common)]
    m = len(a)
    rounds = _ceil_div(m, k)

    def pick(bits: List[int]) -> int:
        return sum(bits)

    path = [x]
    for i in range(1, rounds):
        path.append(pick(a[: (i - 1) * k]) | pick(b[i * k :]) | outside)
        path.append(pick(b[: i * k]) | pick(a[i * k :]) | common)
    keep = max(m - k, 0)
    last = pick(a[:keep])
    for e in elements_of(outside)[: r - keep]:
        last |= 1 << (e - 1)
    path.append(last)
    path.append(y)
    return path


def kneser_path(n: int, r: int, x: Sequence[int], y: Sequence[int]) -> List[Tuple[int, ...]]:
    """A shortest path between r-subsets x and y of K(n:r), built explicitly.

    The even construction alternates blocks of k = n - 2r elements; the odd one
    first steps to (Y - X) + s spare elements. Ties go to the even path.
    """
    if n < 2 * r + 1:
        raise ParameterDomainError(f"Kneser paths need n >= 2r + 1 (n={n}, r={r})")
    xm, ym = mask_of(x), mask_of(y)
    for mask in (xm, ym):
        if popcount(mask) != r or mask >> n:
            raise ParameterDomainError(f"{elements_of(mask)} is not an r-subset of [{n}]")
    if xm == ym:
        raise ParameterDomainError("path endpoints must differ")
    k = n - 2 * r
    s = popcount(xm & ym)
    if s == 0:
        return [elements_of(xm), elements_of(ym)]

    even = _even_path(n, r, xm, ym)
    odd_length = 2 * _ceil_div(s, k) + 1
    if len(even) - 1 <= odd_length:
        path = even
    else:
        outside = ((1 << n) - 1) & ~(xm | ym)
        spare = 0
        for e in elements_of(outside)[:s]:
            spare |= 1 << (e - 1)
        detour = (ym & ~xm) | spare
        path = [xm] + _even_path(n, r, detour, ym)
    return [elements_of(t) for t in path]


def tail_type_path(p: FamilyParams, x: HHVertex, y: HHVertex) -> List[HHVertex]:
    """x, (t, T'), y for two vertices sharing a tail T, with t in T and both heads in T'"""
    p.require(p.r >= 2, "same-tail paths need r >= 2")
    p.require(p.n >= 2 * p.r, "same-tail paths need n >= 2r")
    if x.tail != y.tail or x.head == y.head:
        raise ParameterDomainError(f"{x} and {y} are not a tail-type pair")
    tail = x.tail_mask
    free = [
        e
        for e in range(1, p.n + 1)
        if not tail >> (e - 1) & 1 and e not in (x.head, y.head)
    ]
    middle = HHVertex(head=x.tail[0], tail=(x.head, y.head, *free[: p.r - 2]))
    return [x, middle, y]


def lift_kneser_path(p: FamilyParams, tails: Sequence[Sequence[int]]) -> List[HHVertex]:
    """Give each tail on a K(n:r) path a head so consecutive vertices are adjacent.

    Interior heads come from the intersection of the neighbouring tails; the end
    heads from the single neighbouring tail.
    """
    p.require(p.n >= 2 * p.r + 1, "path lifting needs n >= 2r + 1")
    masks = [mask_of(t) for t in tails]
    if len(masks) < 2:
        raise ParameterDomainError("a path needs at least two tails")
    for a, b in zip(masks, masks[1:]):
        if a & b:
            raise ParameterDomainError(f"{elements_of(a)} and {elements_of(b)} intersect")
    heads = []
    for i, mask in enumerate(masks):
        allowed = (1 << p.n) - 1
        if i > 0:
            allowed &= masks[i - 1]
        if i + 1 < len(masks):
            allowed &= masks[i + 1]
        if not allowed:
            raise ParameterDomainError(
                f"tails around position {i} share no element to use as a head"
            )
        heads.append((allowed & -allowed).bit_length())
    walk = [HHVertex(head=h, tail=elements_of(t)) for h, t in zip(heads, masks)]
    g = hh_graph(p)
    index = hh_index(p)
    ids = [index[(v.head, v.tail_mask)] for v in walk]
    for u, v in zip(ids, ids[1:]):
        if not g.adjacent(u, v):
            raise HHKitError(f"lifted walk breaks at {g.label(u)} - {g.label(v)}")
    return walk


def orbit_hom(
    g: Graph, generators: Sequence[Sequence[int]], s: VertexSet, cap: Optional[int] = None
) -> SetValuedMap:
    """x -> {group elements whose image of s contains x}, into a Kneser graph on the group"""
    images = group_images(g, generators, s, cap)
    order = len(images)
    if (order * s.size) % g.vertex_count:
        raise TransitivityError(f"|G||S| is not divisible by |V| on {g.name}")
    image_size = order * s.size // g.vertex_count

    phi = [0] * g.vertex_count
    for j, mask in enumerate(images):
        bit = 1 << j
        for v in iter_bits(mask):
            phi[v] |= bit
    if any(popcount(image) != image_size for image in phi):
        raise HHKitError(f"orbit images on {g.name} are not all of size {image_size}")
    for u, v in g.edges():
        if phi[u] & phi[v]:
            raise HHKitError(f"adjacent vertices {u} and {v} share a group element")
    logger.info(
        f"orbit homomorphism {g.name} -> K({order}:{image_size}),"
        f" ratio {order}/{image_size}"
    )
    return SetValuedMap(source=g.name, ground_size=order, image_size=image_size, images=phi)


def corollary_orbit_parameters(p: FamilyParams) -> Tuple[int, int]:
    """(n!, alpha'(H(n:r)) (n-r-1)! r!) for the orbit map of the full S_n action"""
    p.require(p.r >= 2, "needs r >= 2")
    p.require(p.n >= p.r * p.r, "needs n >= r^2")
    return factorial(p.n), hybrid_size(p) * factorial(p.n - p.r - 1) * factorial(p.r)
