import logging
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from models import INFINITE, Metric, SelfLoopError, VertexIndexError, VertexSet
from subset_utils import iter_bits, popcount

logger = logging.getLogger(__name__)


class Graph:
    """Immutable simple graph with adjacency rows packed into Python ints.

    Bit ``v`` of ``rows[u]`` is set iff ``u`` and ``v`` are adjacent.
    """

    __slots__ = ("_rows", "_labels", "_index", "name")

    def __init__(
        self,
        rows: Sequence[int],
        labels: Optional[Sequence[str]] = None,
        name: str = "graph",
    ):
        self._rows: Tuple[int, ...] = tuple(rows)
        self.name = name
        self._labels: Optional[Tuple[str, ...]] = None
        self._index: Dict[str, int] = {}
        if labels is not None:
            if len(labels) != len(self._rows):
                raise ValueError(
                    f"{len(labels)} labels given for {len(self._rows)} vertices"
                )
            self._labels = tuple(labels)
            self._index = {label: v for v, label in enumerate(self._labels)}
            if len(self._index) != len(self._labels):
                raise ValueError("vertex labels must be unique")

    @property
    def vertex_count(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    @property
    def labels(self) -> Optional[Tuple[str, ...]]:
        return self._labels

    @property
    def all_mask(self) -> int:
        return (1 << len(self._rows)) - 1

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self._rows):
            raise VertexIndexError(
                f"vertex {v} out of range for {self.name} with {len(self._rows)} vertices"
            )

    def row(self, v: int) -> int:
        return self._rows[v]

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self._rows[v])

    def degrees(self) -> List[int]:
        return [popcount(row) for row in self._rows]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def valency(self) -> Optional[int]:
        """Common degree of a regular graph, None otherwise"""
        degrees = set(self.degrees())
        if len(degrees) == 1:
            return degrees.pop()
        return None if degrees else 0

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges (u, v) with u < v, ordered by u then v"""
        for u, row in enumerate(self._rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def label(self, v: int) -> str:
        if self._labels is None:
            return str(v)
        return self._labels[v]

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise VertexIndexError(f"no vertex labelled {label!r} in {self.name}")

    def neighborhood_of_set(self, mask: int) -> int:
        """Union of the neighbourhoods of the vertices in ``mask``"""
        result = 0
        rows = self._rows
        for v in iter_bits(mask):
            result |= rows[v]
        return result

    def induced_mask_is_independent(self, mask: int) -> bool:
        rows = self._rows
        return all(not rows[v] & mask for v in iter_bits(mask))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph(name=self.name)
        for v in range(self.vertex_count):
            graph.add_node(v, label=self.label(v))
        graph.add_edges_from(self.edges())
        return graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Graph({self.name}, vertices={self.vertex_count}, edges={self.edge_count})"


def build_graph(
    vertex_count: int,
    edges: Iterable[Tuple[int, int]],
    labels: Optional[Sequence[str]] = None,
    name: str = "graph",
) -> Graph:
    """Build a graph from an edge list; pairs are symmetrised and duplicates collapse"""
    if vertex_count < 0:
        raise VertexIndexError(f"vertex count must be nonnegative, got {vertex_count}")
    rows = [0] * vertex_count
    for u, v in edges:
        for w in (u, v):
            if not 0 <= w < vertex_count:
                raise VertexIndexError(
                    f"edge ({u}, {v}) references vertex {w} outside 0..{vertex_count - 1}"
                )
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(rows, labels=labels, name=name)


def _bfs_layers(g: Graph, source: int) -> Iterator[int]:
    """Yield the BFS layers from ``source`` as bitmasks, starting with {source}"""
    seen = frontier = 1 << source
    while frontier:
        yield frontier
        frontier = g.neighborhood_of_set(frontier) & ~seen
        seen |= frontier


def distance(g: Graph, u: int, v: int) -> Metric:
    g.check_vertex(u)
    g.check_vertex(v)
    target = 1 << v
    for depth, layer in enumerate(_bfs_layers(g, u)):
        if layer & target:
            return Metric.finite(depth)
    return INFINITE


def eccentricity(g: Graph, v: int) -> Metric:
    g.check_vertex(v)
    reached = 0
    depth = -1
    for depth, layer in enumerate(_bfs_layers(g, v)):
        reached |= layer
    if reached != g.all_mask:
        return INFINITE
    return Metric.finite(depth)


def diameter(g: Graph) -> Metric:
    best = 0
    for v in range(g.vertex_count):
        ecc = eccentricity(g, v)
        if ecc.is_infinite:
            return INFINITE
        best = max(best, ecc.value)
    logger.debug(f"diameter of {g.name} is {best}")
    return Metric.finite(best)


def girth(g: Graph) -> Metric:
    """Shortest cycle length by BFS from every vertex.

    A non-tree edge met while expanding depth d closes a cycle of length at least
    2d + 1, so a search stops once that reaches the best cycle found.
    """
    best: Optional[int] = None
    rows = g.rows
    for source in range(g.vertex_count):
        dist = {source: 0}
        parent = {source: -1}
        queue = [source]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in iter_bits(rows[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
        if best == 3:
            break
    return INFINITE if best is None else Metric.finite(best)


def odd_girth(g: Graph) -> Metric:
    """Shortest odd cycle, from BFS on the bipartite double cover.

    The first step at which ``source`` reaches its own odd copy is the shortest odd
    closed walk through it; the minimum over all sources is the odd girth.
    """
    best: Optional[int] = None
    for source in range(g.vertex_count):
        start = 1 << source
        seen = [start, 0]
        frontier = [start, 0]
        step = 0
        while frontier[0] or frontier[1]:
            step += 1
            if best is not None and step >= best:
                break
            nxt_odd = g.neighborhood_of_set(frontier[0]) & ~seen[1]
            nxt_even = g.neighborhood_of_set(frontier[1]) & ~seen[0]
            frontier = [nxt_even, nxt_odd]
            seen[0] |= nxt_even
            seen[1] |= nxt_odd
            if step % 2 == 1 and nxt_odd & start:
                best = step
                break
    return INFINITE if best is None else Metric.finite(best)


def connected_components(g: Graph) -> List[List[int]]:
    """Reachability classes, each sorted, ordered by smallest member"""
    remaining = g.all_mask
    components = []
    while remaining:
        source = (remaining & -remaining).bit_length() - 1
        reached = 0
        for layer in _bfs_layers(g, source):
            reached |= layer
        components.append(list(iter_bits(reached)))
        remaining &= ~reached
    return components


def is_bipartite(g: Graph) -> Tuple[bool, Optional[List[int]]]:
    """Return (True, side of each vertex) or (False, None)"""
    side = [-1] * g.vertex_count
    for source in range(g.vertex_count):
        if side[source] != -1:
            continue
        side[source] = 0
        queue = [source]
        while queue:
            u = queue.pop()
            for w in g.neighbors(u):
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return False, None
    return True, side


def common_neighbors(g: Graph, u: int, v: int) -> VertexSet:
    g.check_vertex(u)
    g.check_vertex(v)
    return VertexSet.from_mask(g.row(u) & g.row(v))


def has_triangle(g: Graph) -> bool:
    rows = g.rows
    return any(rows[u] & rows[v] for u, v in g.edges())


def is_induced_embedding(g: Graph, h: Graph, mapping: List[int]) -> bool:
    """True iff ``mapping`` sends h onto the subgraph of g induced by its image"""
    for a in range(h.vertex_count):
        for b in range(a + 1, h.vertex_count):
            if h.adjacent(a, b) != g.adjacent(mapping[a], mapping[b]):
                return False
    return True


def permute_mask(mask: int, images: Sequence[int]) -> int:
    image = 0
    for v in iter_bits(mask):
        image |= 1 << images[v]
    return image


def is_automorphism(g: Graph, images: Sequence[int]) -> bool:
    """True iff ``images`` is a bijection of the vertices preserving adjacency"""
    if len(images) != g.vertex_count or sorted(images) != list(range(g.vertex_count)):
        return False
    rows = g.rows
    return all(permute_mask(rows[u], images) == rows[images[u]] for u in range(len(rows)))
