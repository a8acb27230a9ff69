"""Atoms, potatoes, boundaries and the particles fed to the matching reduction."""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

from stripmis.esd.model import EtaMap, ExtendedStripDecomposition, PatternEdge, PatternGraph
from stripmis.esd.validate import ESDValidationError
from stripmis.graph import Graph, VertexSet, induced_subgraph, vertex_set

__all__ = [
    "Atom",
    "Particle",
    "ParticleTemplate",
    "add_isolated_components",
    "atom_size_bound",
    "atoms",
    "boundary",
    "line_graph_esd",
    "particle_membership_counts",
    "particle_size_bound",
    "particles",
    "potato",
    "restrict",
    "terminal_extension",
]


@dataclass(frozen=True)
class Atom:
    kind: str  # "vertex", "edge" or "triangle"
    feature: Hashable
    vertices: VertexSet


class ParticleTemplate(enum.Enum):
    VERTEX = "A_v"
    INTERIOR = "A_uv^perp"
    TRIANGLE = "A_uvw"
    END = "A_uv^u"
    FULL = "A_uv^uv"


@dataclass(frozen=True)
class Particle:
    """One particle; ``feature`` is a vertex, an edge id, a triangle or ``(edge_id, end)``."""

    template: ParticleTemplate
    feature: Hashable
    vertices: VertexSet

    @property
    def key(self) -> Tuple[ParticleTemplate, Hashable]:
        return self.template, self.feature


def potato(esd: ExtendedStripDecomposition, v: int) -> VertexSet:
    """Union of the segments ``eta(e, v)`` over edges at ``v``."""
    return vertex_set(x for e in esd.pattern.incident(v) for x in esd.eta.of_end(e.id, v))


def _interior(esd: ExtendedStripDecomposition, edge: PatternEdge) -> VertexSet:
    ends = set().union(*(esd.eta.of_end(edge.id, x) for x in edge.ends))
    return tuple(x for x in esd.eta.of_edge(edge.id) if x not in ends)


def atoms(esd: ExtendedStripDecomposition) -> List[Atom]:
    """Vertex atoms, then edge atoms, then triangle atoms."""
    found = [Atom("vertex", v, esd.eta.of_vertex(v)) for v in esd.pattern.vertices]
    found.extend(Atom("edge", e.id, _interior(esd, e)) for e in esd.pattern.edges)
    found.extend(Atom("triangle", d, esd.eta.of_triangle(d)) for d in esd.pattern.triangles)
    return found


def boundary(esd: ExtendedStripDecomposition, atom: Atom) -> VertexSet:
    if atom.kind == "vertex":
        corners: Iterable[int] = (atom.feature,)
    elif atom.kind == "edge":
        corners = esd.pattern.edge(atom.feature).ends
    else:
        corners = atom.feature
    return vertex_set(x for v in corners for x in potato(esd, v))


def particles(esd: ExtendedStripDecomposition) -> List[Particle]:
    """Every particle in a fixed order.

    Vertices first, then for each edge its interior, end and full
    particles, then triangles. A loop has a single end particle.
    """
    eta, pattern = esd.eta, esd.pattern
    found = [Particle(ParticleTemplate.VERTEX, v, eta.of_vertex(v)) for v in pattern.vertices]
    for e in pattern.edges:
        strip = eta.of_edge(e.id)
        found.append(Particle(ParticleTemplate.INTERIOR, e.id, _interior(esd, e)))
        for x in e.ends:
            far = set(eta.of_end(e.id, e.other(x))) if not e.is_loop else set()
            vertices = vertex_set([*eta.of_vertex(x), *(y for y in strip if y not in far)])
            found.append(Particle(ParticleTemplate.END, (e.id, x), vertices))
        full = [*strip, *(y for x in e.ends for y in eta.of_vertex(x))]
        for d in pattern.triangles_on(e):
            full.extend(eta.of_triangle(d))
        found.append(Particle(ParticleTemplate.FULL, e.id, vertex_set(full)))
    found.extend(Particle(ParticleTemplate.TRIANGLE, d, eta.of_triangle(d)) for d in pattern.triangles)
    return found


def particle_membership_counts(esd: ExtendedStripDecomposition) -> Dict[int, int]:
    """How many particles contain each host vertex."""
    counts: Counter = Counter()
    for particle in particles(esd):
        counts.update(particle.vertices)
    return {v: counts.get(v, 0) for v in range(esd.host.n)}


def atom_size_bound(n: int, delta: int) -> int:
    """``ceil(n / (10 * delta))``, the largest atom a provider may hand over.

    >>> atom_size_bound(45, 3)
    2
    """
    return math.ceil(Fraction(n, 10 * max(delta, 1)))


def particle_size_bound(n: int, delta: int) -> Fraction:
    """``(2 + delta) / (10 * delta) * n + 3 * delta``."""
    delta = max(delta, 1)
    return Fraction(2 + delta, 10 * delta) * n + 3 * delta


def restrict(
    esd: ExtendedStripDecomposition, removed: Iterable[int], validate: bool = True
) -> Tuple[ExtendedStripDecomposition, VertexSet]:
    """Remove vertices from every eta set and from the host.

    The host is re-indexed; ``mapping[i]`` is the old id of new vertex ``i``.
    Terminals are dropped because ``Z`` need not survive the deletion.
    """
    removed = set(removed)
    esd.host.check_vertices(removed)
    host, mapping = induced_subgraph(esd.host, (v for v in range(esd.host.n) if v not in removed))
    index = {old: new for new, old in enumerate(mapping)}
    eta = esd.eta.map(lambda vs: (index[x] for x in vs if x in index))
    result = ExtendedStripDecomposition(host, esd.pattern, eta)
    if validate:
        report = result.validate(relaxed=True)
        if not report.ok:
            raise ESDValidationError(report)
    return result, mapping


def add_isolated_components(
    esd: ExtendedStripDecomposition,
    host: Graph,
    mapping: Iterable[int],
    components: Iterable[Iterable[int]],
) -> ExtendedStripDecomposition:
    """Lift ``esd`` into ``host`` and add one isolated pattern vertex per component.

    ``mapping[i]`` is the id in ``host`` of vertex ``i`` of ``esd.host``;
    each component (ids of ``host``) becomes ``eta(c)`` of a fresh pattern
    vertex ``c``.
    """
    mapping = list(mapping)

    def lift(vertices: VertexSet) -> List[int]:
        return [mapping[x] for x in vertices]

    start = max(esd.pattern.vertices, default=-1) + 1
    extra = {start + i: vertex_set(component) for i, component in enumerate(components)}
    pattern = PatternGraph(esd.pattern.vertices + tuple(extra), esd.pattern.edges)
    return ExtendedStripDecomposition(host, pattern, esd.eta.map(lift).replace(vertex=extra))


def terminal_extension(
    esd: ExtendedStripDecomposition, host: Graph, attachments: Iterable[Tuple[int, int]]
) -> ExtendedStripDecomposition:
    """Hang a leaf edge ``l_i m_i`` with ``eta = {z_i}`` for each ``(z_i, m_i)``.

    ``host`` extends ``esd.host`` by the new vertices ``z_i`` (old ids are
    kept); each ``z_i`` should be adjacent to exactly ``potato(m_i)``. The
    result is a decomposition of ``(host, Z)``.
    """
    pattern = esd.pattern
    next_vertex = max(pattern.vertices, default=-1) + 1
    next_edge = max((e.id for e in pattern.edges), default=-1) + 1
    vertices = list(pattern.vertices)
    edges = list(pattern.edges)
    edge_sets: Dict[int, VertexSet] = {}
    end_sets: Dict[Tuple[int, int], VertexSet] = {}
    terminals = []
    for z, m in attachments:
        vertices.append(next_vertex)
        edges.append(PatternEdge(next_edge, next_vertex, m))
        edge_sets[next_edge] = (z,)
        end_sets[(next_edge, next_vertex)] = (z,)
        end_sets[(next_edge, m)] = (z,)
        terminals.append(z)
        next_vertex += 1
        next_edge += 1
    return ExtendedStripDecomposition(
        host,
        PatternGraph(tuple(vertices), tuple(edges)),
        esd.eta.replace(edge=edge_sets, edge_end=end_sets),
        tuple(terminals),
    )


def line_graph_esd(
    host: Graph, root_vertices: Iterable[int], root_edges: Sequence[Tuple[int, int]]
) -> ExtendedStripDecomposition:
    """The decomposition of a line graph read off its root.

    Host vertex ``i`` stands for root edge ``root_edges[i] = (a, b)``; it
    becomes pattern edge ``i`` between ``a`` and ``b`` with
    ``eta(e) = eta(e, a) = eta(e, b) = {i}``.
    """
    if len(root_edges) != host.n:
        raise ValueError("need one root edge per host vertex")
    edges = tuple(PatternEdge(i, a, b) for i, (a, b) in enumerate(root_edges))
    eta = EtaMap(
        edge={i: (i,) for i in range(host.n)},
        edge_end={(i, x): (i,) for i, (a, b) in enumerate(root_edges) for x in (a, b)},
    )
    return ExtendedStripDecomposition(host, PatternGraph(tuple(root_vertices), edges), eta)
