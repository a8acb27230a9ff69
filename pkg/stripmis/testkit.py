"""Oracles and instance generators.

Everything here is seed-deterministic. The brute-force oracle is the ground
truth the solver and the matching reduction are checked against.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from stripmis.esd.atoms import line_graph_esd
from stripmis.esd.model import EtaMap, ExtendedStripDecomposition, PatternEdge, PatternGraph
from stripmis.graph import (
    Graph,
    GraphError,
    SizeCapExceeded,
    VertexSet,
    connected_components,
    from_networkx,
    is_independent,
    to_networkx,
    vertex_set,
)
from stripmis.solution import Solution, best_solution

__all__ = [
    "BRUTE_FORCE_CAP",
    "ENUMERATION_CAP",
    "PoljakInstance",
    "attach_simplicial",
    "brute_force_mwis",
    "canonical_path_esd",
    "constricted_triple_gadget",
    "enumerate_mwis",
    "gen_random_bounded_degree",
    "gen_subdivided_claw",
    "isolated_vertex_esd",
    "line_graph",
    "line_graph_decomposition",
    "named_graph",
    "poljak_subdivide",
    "random_decomposition",
    "single_vertex_esd",
    "subdivide_edge_twice",
]

logger = logging.getLogger(__name__)

BRUTE_FORCE_CAP = 30
ENUMERATION_CAP = 16


# oracles


def brute_force_mwis(graph: Graph, cap: Optional[int] = BRUTE_FORCE_CAP) -> Solution:
    """Exact MWIS by branching on a maximum-degree vertex, split by components.

    ``cap=None`` lifts the size limit.

    >>> brute_force_mwis(named_graph("cycle", 5)).weight
    2
    >>> brute_force_mwis(Graph.from_edges(6, [(i, i + 1) for i in range(5)], [1, 9, 1, 1, 9, 1])).weight
    18
    """
    if cap is not None and graph.n > cap:
        raise SizeCapExceeded("brute-force MWIS", graph.n, cap)
    memo: Dict[frozenset, Tuple[int, VertexSet]] = {}

    def key(result: Tuple[int, VertexSet]):
        return -result[0], result[1]

    def best(alive: frozenset) -> Tuple[int, VertexSet]:
        if not alive:
            return 0, ()
        if alive in memo:
            return memo[alive]
        components = connected_components(graph, alive)
        if len(components) > 1:
            parts = [best(frozenset(c)) for c in components]
            result = sum(w for w, _ in parts), vertex_set(x for _, vs in parts for x in vs)
        else:
            degree = {v: sum(1 for u in graph.adjacency[v] if u in alive) for v in alive}
            v = min(alive, key=lambda x: (-degree[x], x))
            if degree[v] == 0:
                result = (graph.weights[v], (v,)) if graph.weights[v] > 0 else (0, ())
            else:
                rest_w, rest = best(alive - {v} - set(graph.adjacency[v]))
                take = rest_w + graph.weights[v], vertex_set((*rest, v))
                skip = best(alive - {v})
                result = min(take, skip, key=key)
        memo[alive] = result
        return result

    weight, vertices = best(frozenset(range(graph.n)))
    return Solution(vertices, weight)


def enumerate_mwis(graph: Graph, cap: int = ENUMERATION_CAP) -> Solution:
    """Exact MWIS over all ``2^n`` subsets; the reference for :func:`brute_force_mwis`."""
    if graph.n > cap:
        raise SizeCapExceeded("subset enumeration", graph.n, cap)
    candidates = (
        Solution(subset, graph.weight_of(subset))
        for size in range(graph.n + 1)
        for subset in itertools.combinations(range(graph.n), size)
        if is_independent(graph, subset)
    )
    return best_solution(candidates)


# constructions


@dataclass(frozen=True)
class PoljakInstance:
    """``G^p``: every edge of ``base`` replaced by a path with ``2p`` inner vertices.

    With unit weights ``alpha(graph) == alpha(base) + alpha_shift``.
    """

    base: Graph
    p: int
    graph: Graph

    @property
    def alpha_shift(self) -> int:
        return self.p * self.base.m


def poljak_subdivide(graph: Graph, p: int) -> PoljakInstance:
    """Subdivide each edge ``2p`` times; new vertices get weight 1.

    >>> inst = poljak_subdivide(named_graph("complete", 3), 1)
    >>> inst.graph.n, inst.graph.m, inst.alpha_shift
    (9, 9, 3)
    """
    if p < 0:
        raise ValueError(f"p must be nonnegative, got {p}")
    if p == 0:
        return PoljakInstance(graph, 0, graph)
    edges: List[Tuple[int, int]] = []
    next_id = graph.n
    for u, v in graph.edges():
        inner = list(range(next_id, next_id + 2 * p))
        next_id += 2 * p
        path = [u, *inner, v]
        edges.extend(zip(path, path[1:]))
    weights = [*graph.weights, *([1] * (next_id - graph.n))]
    return PoljakInstance(graph, p, Graph.from_edges(next_id, edges, weights))


def subdivide_edge_twice(graph: Graph, u: int, v: int) -> Graph:
    """Replace the edge ``uv`` by the path ``u a b v``; with unit weights alpha grows by one."""
    if not graph.has_edge(u, v):
        raise GraphError(f"{u}-{v} is not an edge")
    a, b = graph.n, graph.n + 1
    edges = [e for e in graph.edges() if set(e) != {u, v}]
    edges.extend([(u, a), (a, b), (b, v)])
    return Graph.from_edges(graph.n + 2, edges, [*graph.weights, 1, 1])


def gen_subdivided_claw(a: int, b: int, c: int) -> Graph:
    """``S_{a,b,c}`` with root 0 and the legs numbered outwards, one after another.

    >>> gen_subdivided_claw(1, 1, 1).adjacency
    ((1, 2, 3), (0,), (0,), (0,))
    """
    if min(a, b, c) < 0:
        raise ValueError(f"leg lengths must be nonnegative, got {(a, b, c)}")
    edges = []
    next_id = 1
    for length in (a, b, c):
        previous = 0
        for _ in range(length):
            edges.append((previous, next_id))
            previous = next_id
            next_id += 1
    return Graph.from_edges(next_id, edges)


def gen_random_bounded_degree(
    n: int,
    delta: int,
    edge_prob: float,
    seed: int,
    weight_range: Optional[Tuple[int, int]] = None,
) -> Graph:
    """Random graph with maximum degree at most ``delta``.

    Vertex pairs are visited in lexicographic order; an edge is kept with
    probability ``edge_prob`` unless an end is already saturated.
    """
    if n < 0 or delta < 0 or not 0 <= edge_prob <= 1:
        raise ValueError(f"bad generator parameters n={n} delta={delta} edge_prob={edge_prob}")
    rng = random.Random(seed)
    degree = [0] * n
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < edge_prob and degree[u] < delta and degree[v] < delta:
            edges.append((u, v))
            degree[u] += 1
            degree[v] += 1
    weights = None
    if weight_range is not None:
        lo, hi = weight_range
        weights = [rng.randint(lo, hi) for _ in range(n)]
    return Graph.from_edges(n, edges, weights)


_NAMED = {
    "petersen": lambda: nx.petersen_graph(),
    "cube": lambda: nx.convert_node_labels_to_integers(nx.hypercube_graph(3), ordering="sorted"),
    "cycle": nx.cycle_graph,
    "path": nx.path_graph,
    "complete": nx.complete_graph,
    "star": nx.star_graph,
}


def named_graph(name: str, *args: int) -> Graph:
    """A few standard graphs through networkx: ``named_graph("cycle", 9)``."""
    try:
        factory = _NAMED[name]
    except KeyError:
        raise ValueError(f"unknown graph {name!r}; choose from {sorted(_NAMED)}") from None
    graph, _ = from_networkx(factory(*args))
    return graph


def line_graph(root: Graph) -> Tuple[Graph, List[Tuple[int, int]]]:
    """``L(root)``; vertex ``i`` of the result is ``root_edges[i]`` (sorted edge order)."""
    lg = nx.line_graph(to_networkx(root))
    lg = nx.relabel_nodes(lg, {e: tuple(sorted(e)) for e in lg.nodes})
    ordered = nx.Graph()
    ordered.add_nodes_from(sorted(lg.nodes))
    ordered.add_edges_from(lg.edges)
    graph, labels = from_networkx(ordered)
    return graph, [tuple(x) for x in labels]


def line_graph_decomposition(root: Graph) -> ExtendedStripDecomposition:
    """``L(root)`` with its canonical decomposition (pattern graph ``root``)."""
    host, root_edges = line_graph(root)
    return line_graph_esd(host, root.vertices, root_edges)


def attach_simplicial(graph: Graph, cliques: Iterable[Iterable[int]]) -> Tuple[Graph, VertexSet]:
    """Add one new vertex per clique, adjacent to exactly that clique."""
    edges = list(graph.edges())
    added = []
    for clique in cliques:
        clique = vertex_set(clique)
        graph.check_vertices(clique)
        if any(not graph.has_edge(x, y) for x, y in itertools.combinations(clique, 2)):
            raise GraphError(f"{clique} is not a clique")
        z = graph.n + len(added)
        edges.extend((x, z) for x in clique)
        added.append(z)
    weights = [*graph.weights, *([1] * len(added))]
    return Graph.from_edges(graph.n + len(added), edges, weights), tuple(added)


def constricted_triple_gadget() -> Tuple[Graph, VertexSet]:
    """The net: a triangle with a pendant at each corner. No induced tree holds all three pendants."""
    triangle = named_graph("complete", 3)
    return attach_simplicial(triangle, [(0,), (1,), (2,)])


# decompositions used as fixtures


def canonical_path_esd() -> ExtendedStripDecomposition:
    """``P_4`` on ``0-1-2-3`` over the pattern path ``0-1-2``.

    Edge 0 joins pattern vertices 0 and 1 with strip ``{0, 1}``; edge 1
    joins 1 and 2 with strip ``{2, 3}``. Each end set is one host vertex.
    """
    host = named_graph("path", 4)
    pattern = PatternGraph((0, 1, 2), (PatternEdge(0, 0, 1), PatternEdge(1, 1, 2)))
    eta = EtaMap(
        edge={0: (0, 1), 1: (2, 3)},
        edge_end={(0, 0): (0,), (0, 1): (1,), (1, 1): (2,), (1, 2): (3,)},
    )
    return ExtendedStripDecomposition(host, pattern, eta)


def isolated_vertex_esd() -> ExtendedStripDecomposition:
    """:func:`canonical_path_esd` plus a triangle ``{4, 5, 6}`` held by an isolated pattern vertex."""
    path = canonical_path_esd()
    host = Graph.from_edges(7, [*path.host.edges(), (4, 5), (4, 6), (5, 6)])
    pattern = PatternGraph((0, 1, 2, 3), path.pattern.edges)
    return ExtendedStripDecomposition(host, pattern, path.eta.replace(vertex={3: (4, 5, 6)}))


def single_vertex_esd(host: Graph) -> ExtendedStripDecomposition:
    """One pattern vertex holding the whole host; valid only in relaxed mode."""
    return ExtendedStripDecomposition(host, PatternGraph((0,), ()), EtaMap(vertex={0: host.vertices}))


def random_decomposition(
    rng: random.Random,
    max_n: int = 16,
    weight_range: Tuple[int, int] = (1, 10),
    loops: bool = True,
) -> ExtendedStripDecomposition:
    """A random valid decomposition together with its host graph.

    The pattern has two to four vertices and two to four edges (parallel
    edges and loops allowed). Each strip holds up to three vertices with
    random inner edges; segments at a shared end are joined completely.
    Vertex atoms attach to random parts of their potato and triangle atoms
    to random vertices lying in both end sets of a side.
    """
    while True:
        esd = _random_decomposition(rng, weight_range, loops)
        if esd.host.n <= max_n:
            return esd


def _random_decomposition(
    rng: random.Random, weight_range: Tuple[int, int], loops: bool
) -> ExtendedStripDecomposition:
    k = rng.randint(2, 4)
    pattern_edges = []
    for i in range(rng.randint(2, 4)):
        u = rng.randrange(k)
        v = u if loops and rng.random() < 0.1 else rng.choice([x for x in range(k) if x != u])
        pattern_edges.append(PatternEdge(i, min(u, v), max(u, v)))
    pattern = PatternGraph(tuple(range(k)), tuple(pattern_edges))

    n = 0
    host_edges: Set[Tuple[int, int]] = set()

    def fresh(count: int) -> List[int]:
        nonlocal n
        block = list(range(n, n + count))
        n += count
        for x, y in itertools.combinations(block, 2):
            if rng.random() < 0.5:
                host_edges.add((x, y))
        return block

    def some(vertices: Sequence[int]) -> List[int]:
        return [x for x in vertices if rng.random() < 0.5]

    strips: Dict[int, List[int]] = {}
    ends: Dict[Tuple[int, int], List[int]] = {}
    for e in pattern.edges:
        strip = fresh(rng.randint(0, 3))
        strips[e.id] = strip
        for x in e.ends:
            ends[(e.id, x)] = some(strip) or strip[:1]

    for v in pattern.vertices:
        for e, f in itertools.combinations(pattern.incident(v), 2):
            host_edges.update((x, y) for x in ends[(e.id, v)] for y in ends[(f.id, v)])

    vertex_sets: Dict[int, List[int]] = {}
    for v in pattern.vertices:
        potato = sorted({x for e in pattern.incident(v) for x in ends[(e.id, v)]})
        block = fresh(rng.randint(0, 2))
        vertex_sets[v] = block
        for x in block:
            host_edges.update((y, x) for y in some(potato))

    triangle_sets: Dict[Tuple[int, int, int], List[int]] = {}
    for d in pattern.triangles:
        shared = set()
        for a, b in itertools.combinations(d, 2):
            for e in pattern.edges_between(a, b):
                shared.update(set(ends[(e.id, a)]) & set(ends[(e.id, b)]))
        block = fresh(rng.randint(0, 1))
        triangle_sets[d] = block
        for x in block:
            host_edges.update((y, x) for y in some(sorted(shared)))

    lo, hi = weight_range
    host = Graph.from_edges(n, host_edges, [rng.randint(lo, hi) for _ in range(n)])
    eta = EtaMap(edge=strips, edge_end=ends, vertex=vertex_sets, triangle=triangle_sets)
    return ExtendedStripDecomposition(host, pattern, eta)
