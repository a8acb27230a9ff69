"""From particle solutions to an independent set of the whole host, via matching.

Each pattern edge ``e = uv`` gets an extra vertex ``x_e`` adjacent to ``u``
and ``v``. Edge weights of this auxiliary graph ``H'`` are differences of
particle optima, so a maximum-weight matching picks a family of particles
whose solutions combine into an independent set. Vertex coverage in the
family rules is read over the edges of ``H'``: a matched ``x_e u`` covers
``u``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Tuple

from stripmis.esd.atoms import Particle, ParticleTemplate, particles
from stripmis.esd.model import ExtendedStripDecomposition
from stripmis.graph import Graph, VertexSet, is_independent, vertex_set
from stripmis.matching import EdgeWeightedGraph, Matching, is_matching, max_weight_matching

__all__ = [
    "AuxiliaryGraph",
    "ParticleFamily",
    "ParticleSolutions",
    "ReductionError",
    "assemble_family",
    "build_auxiliary",
    "combine",
    "reduce_mwis",
    "solve_particles",
]

logger = logging.getLogger(__name__)

ParticleKey = Tuple[ParticleTemplate, Hashable]
ParticleSolver = Callable[[VertexSet], Iterable[int]]


class ReductionError(RuntimeError):
    pass


class ParticleSolutions:
    """An independent set ``I(A)`` for every particle ``A``, checked on entry."""

    def __init__(self, esd: ExtendedStripDecomposition, solutions: Mapping[ParticleKey, Iterable[int]]):
        self.esd = esd
        self._particles = {p.key: p for p in particles(esd)}
        self._solutions: Dict[ParticleKey, VertexSet] = {}
        for key, chosen in solutions.items():
            if key not in self._particles:
                raise ReductionError(f"solution given for unknown particle {key}")
            chosen = vertex_set(chosen)
            inside = set(self._particles[key].vertices)
            if not set(chosen) <= inside:
                raise ReductionError(f"solution for {key} leaves its particle")
            if not is_independent(esd.host, chosen):
                raise ReductionError(f"solution for {key} is not independent")
            self._solutions[key] = chosen

    def __getitem__(self, key: ParticleKey) -> VertexSet:
        try:
            return self._solutions[key]
        except KeyError:
            raise ReductionError(f"missing solution for particle {key}") from None

    def weight(self, key: ParticleKey) -> int:
        return self.esd.host.weight_of(self[key])

    def particle(self, key: ParticleKey) -> Particle:
        return self._particles[key]


def solve_particles(esd: ExtendedStripDecomposition, particle_solver: ParticleSolver) -> ParticleSolutions:
    """Run ``particle_solver`` once per distinct non-empty particle vertex set."""
    cache: Dict[VertexSet, VertexSet] = {(): ()}
    solutions = {}
    for particle in particles(esd):
        if particle.vertices not in cache:
            cache[particle.vertices] = vertex_set(particle_solver(particle.vertices))
        solutions[particle.key] = cache[particle.vertices]
    return ParticleSolutions(esd, solutions)


Role = Tuple  # ("edge", edge_id) or ("end", edge_id, pattern_vertex)


@dataclass(frozen=True)
class AuxiliaryGraph:
    """``H'`` with its weights; ``roles[i]`` names what edge ``i`` stands for."""

    esd: ExtendedStripDecomposition
    graph: EdgeWeightedGraph
    roles: Tuple[Role, ...]
    pattern_index: Mapping[int, int]
    x_index: Mapping[int, int]

    def edge_ids_of(self, edge_id: int) -> List[int]:
        """Ids of the ``H'`` edges that stand for pattern edge ``edge_id``."""
        return [i for i, role in enumerate(self.roles) if role[1] == edge_id]


def build_auxiliary(esd: ExtendedStripDecomposition, sols: ParticleSolutions) -> AuxiliaryGraph:
    """Build ``H'`` and its edge weights.

    Parallel pattern edges share one ``uv`` edge in ``H'``, represented by
    the heaviest of them (smallest id on ties). A loop keeps a single
    ``x_e u`` edge and no ``uv`` edge.
    """
    pattern = esd.pattern
    pattern_index = {v: i for i, v in enumerate(pattern.vertices)}
    x_index = {e.id: len(pattern_index) + i for i, e in enumerate(pattern.edges)}
    edges: List[Tuple[int, int, int]] = []
    roles: List[Role] = []
    direct: Dict[frozenset, Tuple[int, int]] = {}

    for e in pattern.edges:
        interior = sols.weight((ParticleTemplate.INTERIOR, e.id))
        for x in e.ends:
            weight = (
                sols.weight((ParticleTemplate.END, (e.id, x)))
                - sols.weight((ParticleTemplate.VERTEX, x))
                - interior
            )
            edges.append((x_index[e.id], pattern_index[x], weight))
            roles.append(("end", e.id, x))
        if e.is_loop:
            continue
        weight = (
            sols.weight((ParticleTemplate.FULL, e.id))
            - sols.weight((ParticleTemplate.VERTEX, e.u))
            - sols.weight((ParticleTemplate.VERTEX, e.v))
            - interior
            - sum(sols.weight((ParticleTemplate.TRIANGLE, d)) for d in pattern.triangles_on(e))
        )
        key = frozenset((e.u, e.v))
        if key not in direct or weight > direct[key][1]:
            direct[key] = (e.id, weight)

    for e in pattern.edges:
        if e.is_loop:
            continue
        chosen, weight = direct[frozenset((e.u, e.v))]
        if chosen == e.id:
            edges.append((pattern_index[e.u], pattern_index[e.v], weight))
            roles.append(("edge", e.id))

    n = len(pattern_index) + len(x_index)
    logger.debug("auxiliary graph: %d vertices, %d edges", n, len(edges))
    return AuxiliaryGraph(esd, EdgeWeightedGraph(n, tuple(edges)), tuple(roles), pattern_index, x_index)


@dataclass(frozen=True)
class ParticleFamily:
    particles: Tuple[Particle, ...]

    @property
    def keys(self) -> Tuple[ParticleKey, ...]:
        return tuple(p.key for p in self.particles)


def assemble_family(matching: Matching, aux: AuxiliaryGraph) -> ParticleFamily:
    """Select the particle family ``A(M)`` for a matching of ``H'``."""
    if any(not 0 <= i < len(aux.roles) for i in matching.edge_ids) or not is_matching(
        aux.graph, matching.edge_ids
    ):
        raise ReductionError("not a matching of this auxiliary graph")
    esd = aux.esd
    pattern = esd.pattern
    by_key = {p.key: p for p in particles(esd)}
    matched = [aux.roles[i] for i in matching.edge_ids]
    matched_edges = {role[1] for role in matched if role[0] == "edge"}
    touched_edges = {role[1] for role in matched}
    covered = set()
    for i in matching.edge_ids:
        u, v, _ = aux.graph.edges[i]
        covered.update((u, v))

    chosen: List[Particle] = []
    for v in pattern.vertices:
        if aux.pattern_index[v] not in covered:
            chosen.append(by_key[(ParticleTemplate.VERTEX, v)])
    for e in pattern.edges:
        if e.id in matched_edges:
            chosen.append(by_key[(ParticleTemplate.FULL, e.id)])
        elif e.id not in touched_edges:
            chosen.append(by_key[(ParticleTemplate.INTERIOR, e.id)])
    for role in matched:
        if role[0] == "end":
            chosen.append(by_key[(ParticleTemplate.END, (role[1], role[2]))])
    for d in pattern.triangles:
        sides = [
            e.id
            for e in pattern.edges
            if not e.is_loop and e.u in d and e.v in d
        ]
        if not any(s in matched_edges for s in sides):
            chosen.append(by_key[(ParticleTemplate.TRIANGLE, d)])
    return ParticleFamily(tuple(chosen))


def combine(family: ParticleFamily, sols: ParticleSolutions) -> VertexSet:
    """Union of the chosen particle solutions, re-checked for independence."""
    chosen = vertex_set(x for key in family.keys for x in sols[key])
    if not is_independent(sols.esd.host, chosen):
        raise ReductionError("particle solutions of the family are not independent")
    return chosen


def reduce_mwis(graph: Graph, esd: ExtendedStripDecomposition, particle_solver: ParticleSolver) -> VertexSet:
    """Independent set of ``graph`` assembled from particle solutions.

    With exact particle optima the result is a maximum-weight independent set.
    """
    if esd.host != graph:
        raise ReductionError("decomposition does not describe this graph")
    sols = solve_particles(esd, particle_solver)
    aux = build_auxiliary(esd, sols)
    matching = max_weight_matching(aux.graph)
    family = assemble_family(matching, aux)
    result = combine(family, sols)
    logger.debug(
        "reduction picked %d particles, matching weight %d, set weight %d",
        len(family.particles),
        matching.weight,
        graph.weight_of(result),
    )
    return result
