"""Weighted undirected graphs and the set/topology operations used everywhere else.

Graphs are immutable. Vertex ids are dense integers ``0..n-1`` and every set
returned by this module is a sorted tuple (a :data:`VertexSet`).
"""
from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

if TYPE_CHECKING:
    import networkx as nx

__all__ = [
    "Graph",
    "GraphError",
    "GraphFormatError",
    "Separation",
    "SeparationError",
    "SizeCapExceeded",
    "VertexSet",
    "WeightFn",
    "closed_neighborhood",
    "connected_components",
    "distance",
    "dump_graph",
    "from_networkx",
    "induced_subgraph",
    "is_independent",
    "open_neighborhood",
    "parse_graph",
    "read_graph",
    "to_networkx",
    "vertex_set",
    "write_graph",
]

VertexSet = Tuple[int, ...]


class GraphError(ValueError):
    """Invalid graph construction or a vertex id outside ``0..n-1``."""


class GraphFormatError(GraphError):
    """Malformed graph text, with the offending line number."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class SeparationError(GraphError):
    pass


class SizeCapExceeded(ValueError):
    """An exhaustive routine was asked to run beyond its configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds the exhaustive-search cap {cap}")


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Canonical form of a vertex collection.

    >>> vertex_set([3, 1, 3, 2])
    (1, 2, 3)
    """
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with nonnegative integer vertex weights."""

    n: int
    adjacency: Tuple[VertexSet, ...]
    weights: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * self.n)
        if len(self.adjacency) != self.n or len(self.weights) != self.n:
            raise GraphError("adjacency and weights must have one entry per vertex")
        for v, (nbrs, w) in enumerate(zip(self.adjacency, self.weights)):
            if w < 0:
                raise GraphError(f"vertex {v} has negative weight {w}")
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"neighbors of {v} must be sorted and duplicate-free")
            for u in nbrs:
                if u == v:
                    raise GraphError(f"loop at vertex {v}")
                if not 0 <= u < self.n:
                    raise GraphError(f"vertex id {u} out of range for n={self.n}")
        for u, v in self.edges():
            if u not in self._neighbor_sets[v]:
                raise GraphError(f"adjacency is not symmetric at edge {u}-{v}")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        weights: Optional[Sequence[int]] = None,
    ) -> "Graph":
        """Build a graph from an edge list; duplicate edges are merged.

        >>> g = Graph.from_edges(3, [(0, 1), (2, 1)])
        >>> g.adjacency
        ((1,), (0, 2), (1,))
        """
        nbrs: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(
            n=n,
            adjacency=tuple(vertex_set(s) for s in nbrs),
            weights=tuple(weights) if weights is not None else (1,) * n,
        )

    @functools.cached_property
    def _neighbor_sets(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @property
    def vertices(self) -> VertexSet:
        return tuple(range(self.n))

    @property
    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> VertexSet:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in sorted order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def weight_of(self, vertices: Iterable[int]) -> int:
        return sum(self.weights[v] for v in vertices)

    def check_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex id {v} out of range for n={self.n}")

    def with_weights(self, weights: Sequence[int]) -> "Graph":
        return Graph(self.n, self.adjacency, tuple(weights))


@dataclass(frozen=True)
class Separation:
    """A separation ``(A, C, B)``: disjoint cover with no A-B edge."""

    a: VertexSet
    c: VertexSet
    b: VertexSet

    @classmethod
    def of(
        cls, graph: Graph, a: Iterable[int], c: Iterable[int], b: Iterable[int]
    ) -> "Separation":
        a, c, b = vertex_set(a), vertex_set(c), vertex_set(b)
        graph.check_vertices(itertools.chain(a, c, b))
        if not c:
            raise SeparationError("separator C must be non-empty")
        if len(a) + len(b) + len(c) != graph.n or len(set(a) | set(b) | set(c)) != graph.n:
            raise SeparationError("A, C, B must be pairwise disjoint and cover V(G)")
        a_set, b_set = set(a), set(b)
        for u, v in graph.edges():
            if (u in a_set and v in b_set) or (u in b_set and v in a_set):
                raise SeparationError(f"edge {u}-{v} joins A and B")
        return cls(a, c, b)

    @property
    def order(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class WeightFn:
    """Exact rational weights used for balance tests."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.values):
            raise GraphError("balance weights must be nonnegative")

    @classmethod
    def uniform(cls, n: int) -> "WeightFn":
        """``w(v) = 1/n`` for every vertex.

        >>> WeightFn.uniform(4).total
        Fraction(1, 1)
        """
        if n == 0:
            return cls(())
        return cls((Fraction(1, n),) * n)

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def of(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.values[v] for v in vertices), Fraction(0))


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Tuple[Graph, VertexSet]:
    """Subgraph induced by ``vertices`` together with the id mapping.

    The returned ``mapping[i]`` is the original id of new vertex ``i``.

    >>> path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    >>> sub, mapping = induced_subgraph(path, [2, 0, 1])
    >>> list(sub.edges()), mapping
    ([(0, 1), (1, 2)], (0, 1, 2))
    """
    mapping = vertex_set(vertices)
    graph.check_vertices(mapping)
    index = {v: i for i, v in enumerate(mapping)}
    adjacency = tuple(
        tuple(index[u] for u in graph.adjacency[v] if u in index) for v in mapping
    )
    weights = tuple(graph.weights[v] for v in mapping)
    return Graph(len(mapping), adjacency, weights), mapping


def connected_components(
    graph: Graph, within: Optional[Iterable[int]] = None
) -> List[VertexSet]:
    """Components ordered by their smallest member.

    ``within`` restricts the search to an induced subgraph without copying it.
    """
    allowed = set(range(graph.n)) if within is None else set(within)
    seen = set()
    components = []
    for start in sorted(allowed):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        component = [start]
        while queue:
            v = queue.popleft()
            for u in graph.adjacency[v]:
                if u in allowed and u not in seen:
                    seen.add(u)
                    component.append(u)
                    queue.append(u)
        components.append(vertex_set(component))
    return components


def closed_neighborhood(graph: Graph, sources: Iterable[int], d: int = 1) -> VertexSet:
    """``N^d[S]``: all vertices at distance at most ``d`` from ``S``.

    >>> p5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    >>> closed_neighborhood(p5, [2], 1)
    (1, 2, 3)
    """
    if d < 0:
        raise ValueError(f"radius must be nonnegative, got {d}")
    sources = vertex_set(sources)
    graph.check_vertices(sources)
    dist = {v: 0 for v in sources}
    frontier = list(sources)
    for radius in range(1, d + 1):
        nxt = []
        for v in frontier:
            for u in graph.adjacency[v]:
                if u not in dist:
                    dist[u] = radius
                    nxt.append(u)
        if not nxt:
            break
        frontier = nxt
    return vertex_set(dist)


def open_neighborhood(graph: Graph, sources: Iterable[int]) -> VertexSet:
    """``N(S)``: neighbors of ``S`` outside ``S``."""
    sources = set(sources)
    return vertex_set(u for v in sources for u in graph.adjacency[v] if u not in sources)


def is_independent(graph: Graph, vertices: Iterable[int]) -> bool:
    vertices = set(vertices)
    graph.check_vertices(vertices)
    return not any(u in vertices for v in vertices for u in graph.adjacency[v])


def distance(graph: Graph, xs: Iterable[int], ys: Iterable[int]) -> Optional[int]:
    """Length of a shortest X-Y path, ``0`` if they meet, ``None`` if unreachable."""
    xs, ys = set(xs), set(ys)
    if not xs or not ys:
        raise ValueError("distance needs two non-empty vertex sets")
    graph.check_vertices(xs | ys)
    if xs & ys:
        return 0
    dist = {v: 0 for v in xs}
    queue = deque(xs)
    while queue:
        v = queue.popleft()
        for u in graph.adjacency[v]:
            if u not in dist:
                if u in ys:
                    return dist[v] + 1
                dist[u] = dist[v] + 1
                queue.append(u)
    return None


def parse_graph(text: str) -> Graph:
    """Parse the ``p``/``v``/``e`` graph text format.

    >>> g = parse_graph("c tiny\\np 2 1\\nv 0 5\\ne 0 1\\n")
    >>> g.weights, list(g.edges())
    ((5, 1), [(0, 1)])
    """
    n = m = None
    weights: Dict[int, int] = {}
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        kind, *fields = line.split()
        try:
            values = [int(x) for x in fields]
        except ValueError:
            raise GraphFormatError(f"non-integer field in {line!r}", lineno) from None
        if kind == "p":
            if n is not None:
                raise GraphFormatError("duplicate problem line", lineno)
            if len(values) != 2 or min(values) < 0:
                raise GraphFormatError("expected 'p <n> <m>'", lineno)
            n, m = values
            continue
        if n is None:
            raise GraphFormatError(f"{kind!r} line before the problem line", lineno)
        if kind == "v":
            if len(values) not in (1, 2):
                raise GraphFormatError("expected 'v <id> [<weight>]'", lineno)
            v = values[0]
            if not 0 <= v < n:
                raise GraphFormatError(f"vertex id {v} out of range", lineno)
            if v in weights:
                raise GraphFormatError(f"duplicate vertex line for {v}", lineno)
            weight = values[1] if len(values) == 2 else 1
            if weight < 0:
                raise GraphFormatError(f"negative weight {weight}", lineno)
            weights[v] = weight
        elif kind == "e":
            if len(values) != 2:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            u, v = values
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise GraphFormatError(f"invalid edge {u}-{v}", lineno)
            edges.append((u, v))
        else:
            raise GraphFormatError(f"unknown line type {kind!r}", lineno)
    if n is None:
        raise GraphFormatError("missing problem line")
    if len({frozenset(e) for e in edges}) != len(edges):
        raise GraphFormatError("duplicate edge")
    if len(edges) != m:
        raise GraphFormatError(f"problem line announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges, [weights.get(v, 1) for v in range(n)])


def dump_graph(graph: Graph) -> str:
    lines = [f"p {graph.n} {graph.m}"]
    lines.extend(f"v {v} {w}" for v, w in enumerate(graph.weights))
    lines.extend(f"e {u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(graph: Graph, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_graph(graph))


def to_networkx(graph: Graph) -> "nx.Graph":
    import networkx as nx

    result = nx.Graph()
    result.add_nodes_from((v, {"weight": w}) for v, w in enumerate(graph.weights))
    result.add_edges_from(graph.edges())
    return result


def from_networkx(nx_graph: "nx.Graph", weight: str = "weight") -> Tuple[Graph, list]:
    """Relabel a networkx graph to dense ids; returns the graph and the labels.

    Nodes keep networkx's iteration order, so ``labels[i]`` is the node
    that became vertex ``i``.
    """
    labels = list(nx_graph.nodes)
    index = {node: i for i, node in enumerate(labels)}
    edges = [(index[u], index[v]) for u, v in nx_graph.edges if u != v]
    weights = [int(nx_graph.nodes[node].get(weight, 1)) for node in labels]
    return Graph.from_edges(len(labels), edges, weights), labels
