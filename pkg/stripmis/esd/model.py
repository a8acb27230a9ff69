from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple

from stripmis.graph import Graph, VertexSet, vertex_set

__all__ = [
    "EtaMap",
    "ExtendedStripDecomposition",
    "PatternEdge",
    "PatternGraph",
    "Triangle",
]

Triangle = Tuple[int, int, int]


@dataclass(frozen=True)
class PatternEdge:
    id: int
    u: int
    v: int

    @property
    def ends(self) -> Tuple[int, ...]:
        """Distinct ends; a loop has one."""
        return (self.u,) if self.u == self.v else (self.u, self.v)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class PatternGraph:
    """The pattern graph ``H``; loops and parallel edges are allowed."""

    vertices: VertexSet
    edges: Tuple[PatternEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", vertex_set(self.vertices))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("pattern edge ids must be unique")
        known = set(self.vertices)
        for e in self.edges:
            if e.u not in known or e.v not in known:
                raise ValueError(f"pattern edge {e.id} has an end outside the pattern")

    @classmethod
    def from_triples(
        cls, vertices: Iterable[int], edges: Iterable[Tuple[int, int, int]]
    ) -> "PatternGraph":
        """Build from ``(u, v, edge_id)`` triples as stored in ESD files."""
        return cls(tuple(vertices), tuple(PatternEdge(i, u, v) for u, v, i in edges))

    @functools.cached_property
    def _by_id(self) -> Dict[int, PatternEdge]:
        return {e.id: e for e in self.edges}

    @functools.cached_property
    def _incident(self) -> Dict[int, Tuple[PatternEdge, ...]]:
        incident: Dict[int, list] = {v: [] for v in self.vertices}
        for e in self.edges:
            for x in e.ends:
                incident[x].append(e)
        return {v: tuple(es) for v, es in incident.items()}

    def edge(self, edge_id: int) -> PatternEdge:
        return self._by_id[edge_id]

    def has_edge_id(self, edge_id: int) -> bool:
        return edge_id in self._by_id

    def incident(self, v: int) -> Tuple[PatternEdge, ...]:
        return self._incident[v]

    def degree(self, v: int) -> int:
        """Degree with loops counted twice."""
        return sum(2 if e.is_loop else 1 for e in self._incident[v])

    def edges_between(self, u: int, v: int) -> Tuple[PatternEdge, ...]:
        return tuple(e for e in self._incident[u] if not e.is_loop and e.other(u) == v)

    def neighbors(self, v: int) -> VertexSet:
        return vertex_set(e.other(v) for e in self._incident[v] if not e.is_loop)

    @functools.cached_property
    def triangles(self) -> Tuple[Triangle, ...]:
        """Vertex triples pairwise joined by at least one non-loop edge."""
        adjacent = {v: set(self.neighbors(v)) for v in self.vertices}
        found = []
        for a in self.vertices:
            for b, c in itertools.combinations(sorted(x for x in adjacent[a] if x > a), 2):
                if c in adjacent[b]:
                    found.append((a, b, c))
        return tuple(found)

    def triangles_on(self, edge: PatternEdge) -> Tuple[Triangle, ...]:
        if edge.is_loop:
            return ()
        return tuple(d for d in self.triangles if edge.u in d and edge.v in d)

    @property
    def leaves(self) -> VertexSet:
        """Vertices of degree one (the set ``W``)."""
        return tuple(v for v in self.vertices if self.degree(v) == 1)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        start = self.vertices[0]
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)


def _freeze(mapping: Optional[Mapping]) -> Dict:
    return {k: vertex_set(v) for k, v in (mapping or {}).items()}


@dataclass(frozen=True)
class EtaMap:
    """The map ``eta``; absent keys stand for the empty set.

    ``edge_end`` is keyed by ``(edge_id, pattern_vertex)``. For a loop both
    ends collapse onto the single key ``(edge_id, u)``.
    """

    edge: Mapping[int, VertexSet] = field(default_factory=dict)
    edge_end: Mapping[Tuple[int, int], VertexSet] = field(default_factory=dict)
    vertex: Mapping[int, VertexSet] = field(default_factory=dict)
    triangle: Mapping[Triangle, VertexSet] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "edge", _freeze(self.edge))
        object.__setattr__(self, "edge_end", _freeze(self.edge_end))
        object.__setattr__(self, "vertex", _freeze(self.vertex))
        object.__setattr__(
            self, "triangle", {tuple(sorted(k)): v for k, v in _freeze(self.triangle).items()}
        )

    def of_edge(self, edge_id: int) -> VertexSet:
        return self.edge.get(edge_id, ())

    def of_end(self, edge_id: int, v: int) -> VertexSet:
        return self.edge_end.get((edge_id, v), ())

    def of_vertex(self, v: int) -> VertexSet:
        return self.vertex.get(v, ())

    def of_triangle(self, d: Iterable[int]) -> VertexSet:
        return self.triangle.get(tuple(sorted(d)), ())

    def map(self, fn: Callable[[VertexSet], Iterable[int]]) -> "EtaMap":
        """Apply ``fn`` to every stored vertex set."""
        return EtaMap(
            edge={k: fn(v) for k, v in self.edge.items()},
            edge_end={k: fn(v) for k, v in self.edge_end.items()},
            vertex={k: fn(v) for k, v in self.vertex.items()},
            triangle={k: fn(v) for k, v in self.triangle.items()},
        )

    def replace(self, **changes: Mapping) -> "EtaMap":
        """Copy with some entries overridden, e.g. ``replace(edge={3: (1, 2)})``."""
        parts = {
            "edge": dict(self.edge),
            "edge_end": dict(self.edge_end),
            "vertex": dict(self.vertex),
            "triangle": dict(self.triangle),
        }
        for name, entries in changes.items():
            parts[name].update(entries)
        return EtaMap(**parts)


@dataclass(frozen=True)
class ExtendedStripDecomposition:
    """``(H, eta)`` over a host graph, optionally for a terminal set ``Z``.

    Construction does not validate; see :mod:`stripmis.esd.validate`.
    """

    host: Graph
    pattern: PatternGraph
    eta: EtaMap
    terminals: Optional[VertexSet] = None

    def __post_init__(self):
        if self.terminals is not None:
            object.__setattr__(self, "terminals", vertex_set(self.terminals))

    def end_sets(self, edge: PatternEdge) -> Tuple[VertexSet, VertexSet]:
        """``(eta(e, u), eta(e, v))``; both equal for a loop."""
        return self.eta.of_end(edge.id, edge.u), self.eta.of_end(edge.id, edge.v)

    def validate(self, relaxed: bool = False):
        from stripmis.esd.validate import validate_esd

        return validate_esd(self.host, self.pattern, self.eta, self.terminals, relaxed=relaxed)
