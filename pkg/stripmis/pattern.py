"""Induced subdivided claws and induced trees through terminals.

``S_{a,b,c}`` is a root with three legs: induced paths of lengths ``a``, ``b``
and ``c`` whose interiors are pairwise disjoint and anticomplete. With
``a = 0`` it is the path ``P_{b+c+1}``.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from stripmis.graph import Graph, SizeCapExceeded, VertexSet, connected_components, vertex_set

__all__ = [
    "ClawEmbedding",
    "InducedTree",
    "enumerate_rooted_claws",
    "find_induced_subdivided_claw",
    "find_induced_tree_containing",
    "is_sttt_free",
]

logger = logging.getLogger(__name__)

INDUCED_TREE_CAP = 20

Leg = Tuple[int, ...]


@dataclass(frozen=True)
class ClawEmbedding:
    """An induced ``S_{a,b,c}``; each leg lists its vertices from the root outwards."""

    root: int
    legs: Tuple[Leg, Leg, Leg]

    @property
    def lengths(self) -> Tuple[int, int, int]:
        return tuple(len(leg) for leg in self.legs)  # type: ignore[return-value]

    @property
    def vertices(self) -> VertexSet:
        return vertex_set((self.root, *itertools.chain.from_iterable(self.legs)))

    def verify(self, graph: Graph) -> bool:
        """Check that the vertices induce exactly this subdivided claw."""
        expected = set()
        for leg in self.legs:
            previous = self.root
            for x in leg:
                expected.add(frozenset((previous, x)))
                previous = x
        vertices = self.vertices
        if len(vertices) != 1 + sum(self.lengths):
            return False
        induced = {
            frozenset((u, v)) for u, v in itertools.combinations(vertices, 2) if graph.has_edge(u, v)
        }
        return induced == expected


@dataclass(frozen=True)
class InducedTree:
    """Vertex set of an induced tree with a BFS parent map (root maps to itself)."""

    vertices: VertexSet
    parent: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_vertices(cls, graph: Graph, vertices: Iterable[int]) -> "InducedTree":
        vertices = vertex_set(vertices)
        inside = set(vertices)
        root = vertices[0]
        parent = {root: root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in graph.neighbors(v):
                if u in inside and u not in parent:
                    parent[u] = v
                    queue.append(u)
        return cls(vertices, tuple(sorted(parent.items())))

    def verify(self, graph: Graph) -> bool:
        edges = sum(1 for u, v in itertools.combinations(self.vertices, 2) if graph.has_edge(u, v))
        return edges == len(self.vertices) - 1 and len(self.parent) == len(self.vertices)


def _legs(
    graph: Graph, root: int, length: int, blocked: Set[int], shadow: Set[int]
) -> Iterator[Leg]:
    """Induced paths of ``length`` vertices leaving ``root``, in lexicographic order.

    ``blocked`` vertices may not be used; ``shadow`` vertices may not be
    adjacent to any leg vertex (they are earlier legs).
    """
    if length == 0:
        yield ()
        return
    root_nbrs = set(graph.neighbors(root))

    def extend(path: Tuple[int, ...]) -> Iterator[Leg]:
        if len(path) == length:
            yield path
            return
        last = path[-1]
        for q in graph.neighbors(last):
            if q == root or q in blocked or q in path or q in root_nbrs:
                continue
            if any(graph.has_edge(q, p) for p in path[:-1]):
                continue
            if any(graph.has_edge(q, s) for s in shadow):
                continue
            yield from extend(path + (q,))

    for first in graph.neighbors(root):
        if first in blocked or any(graph.has_edge(first, s) for s in shadow):
            continue
        yield from extend((first,))


def _claws_at(graph: Graph, root: int, lengths: Sequence[int]) -> Iterator[ClawEmbedding]:
    def place(index: int, legs: Tuple[Leg, ...], used: Set[int]) -> Iterator[Tuple[Leg, ...]]:
        if index == len(lengths):
            yield legs
            return
        shadow = used - {root}
        for leg in _legs(graph, root, lengths[index], used, shadow):
            yield from place(index + 1, legs + (leg,), used | set(leg))

    for legs in place(0, (), {root}):
        yield ClawEmbedding(root, legs)  # type: ignore[arg-type]


def find_induced_subdivided_claw(graph: Graph, a: int, b: int, c: int) -> Optional[ClawEmbedding]:
    """First induced ``S_{a,b,c}`` by (root, legs) order, or ``None``.

    >>> star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    >>> find_induced_subdivided_claw(star, 1, 1, 1)
    ClawEmbedding(root=0, legs=((1,), (2,), (3,)))
    """
    if a < 0 or b < 1 or c < 1:
        raise ValueError(f"leg lengths must satisfy a >= 0 and b, c >= 1, got {(a, b, c)}")
    for root in range(graph.n):
        if graph.degree(root) < sum(1 for x in (a, b, c) if x > 0):
            continue
        for claw in _claws_at(graph, root, (a, b, c)):
            assert claw.verify(graph)
            logger.debug("found S_{%d,%d,%d} rooted at %d", a, b, c, root)
            return claw
    return None


def is_sttt_free(graph: Graph, t: int) -> bool:
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    return find_induced_subdivided_claw(graph, t, t, t) is None


def enumerate_rooted_claws(graph: Graph, v: int, t: int) -> List[ClawEmbedding]:
    """Every induced ``S_{a,b,c}`` with ``1 <= a, b, c <= t`` rooted at ``v``.

    Claws are listed once, with their legs in sorted order.
    """
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    legs: List[Leg] = []
    for length in range(1, t + 1):
        legs.extend(_legs(graph, v, length, {v}, set()))
    legs.sort()
    found = []
    for triple in itertools.combinations(legs, 3):
        firsts = {leg[0] for leg in triple}
        if len(firsts) < 3:
            continue
        claw = ClawEmbedding(v, triple)  # type: ignore[arg-type]
        if claw.verify(graph):
            found.append(claw)
    return found


def _is_tree(graph: Graph, vertices: Sequence[int]) -> bool:
    inside = set(vertices)
    edges = sum(1 for x in vertices for y in graph.neighbors(x) if y in inside) // 2
    if edges != len(vertices) - 1:
        return False
    return len(connected_components(graph, inside)) == 1


def find_induced_tree_containing(
    graph: Graph, terminals: Iterable[int], cap: int = INDUCED_TREE_CAP
) -> Optional[InducedTree]:
    """Smallest (then lexicographically first) induced tree through ``terminals``.

    ``None`` means the terminal set is constricted. The search is exhaustive
    and refuses graphs with more than ``cap`` vertices.
    """
    terminals = vertex_set(terminals)
    if len(terminals) < 2:
        raise ValueError("need at least two terminals")
    graph.check_vertices(terminals)
    if graph.n > cap:
        raise SizeCapExceeded("induced tree search", graph.n, cap)
    home = next(comp for comp in connected_components(graph) if terminals[0] in comp)
    if not set(terminals) <= set(home):
        return None
    candidates = [v for v in home if v not in set(terminals)]
    for size in range(len(candidates) + 1):
        for extra in itertools.combinations(candidates, size):
            vertices = vertex_set((*terminals, *extra))
            if _is_tree(graph, vertices):
                return InducedTree.from_vertices(graph, vertices)
    return None
