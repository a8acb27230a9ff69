"""Decomposition providers: where Case 2 of the solver gets ``(X, esd)`` from.

A provider is called with a :class:`ProviderRequest` and returns a
:class:`DecompositionResult` or raises :class:`ProviderError`. Providers are
looked up by name in :data:`providers`, which also sees packages exposing a
``stripmis.provider`` entry point.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from stripmis.esd.atoms import atom_size_bound, restrict
from stripmis.esd.io import ESDDocument, ESDFormatError, read_esd
from stripmis.esd.model import EtaMap, ExtendedStripDecomposition, PatternEdge, PatternGraph
from stripmis.esd.validate import ESDValidationError
from stripmis.graph import (
    Graph,
    VertexSet,
    connected_components,
    induced_subgraph,
    to_networkx,
    vertex_set,
)
from stripmis.plugin_registry import PluginRegistry
from stripmis.solver.config import SolverConfig

__all__ = [
    "DecompositionResult",
    "ExhaustiveProvider",
    "FileProvider",
    "LineGraphProvider",
    "ProviderError",
    "ProviderRequest",
    "decompose_components",
    "providers",
]

logger = logging.getLogger(__name__)


class ProviderError(RuntimeError):
    """The provider could not decompose this graph."""


@dataclass(frozen=True)
class ProviderRequest:
    """A subproblem: ``graph`` is ``root[origin]`` re-indexed."""

    graph: Graph
    origin: VertexSet
    root: Graph
    config: SolverConfig


@dataclass(frozen=True)
class DecompositionResult:
    """``esd`` decomposes ``graph - deleted``; ``mapping[i]`` is the graph id of host vertex ``i``."""

    deleted: VertexSet
    esd: ExtendedStripDecomposition
    mapping: VertexSet


DecompositionProvider = Callable[[ProviderRequest], DecompositionResult]

providers = PluginRegistry[Callable[..., DecompositionProvider]]("stripmis.provider")


def _remainder(graph: Graph, deleted: Sequence[int]) -> Tuple[Graph, VertexSet]:
    removed = set(deleted)
    return induced_subgraph(graph, (v for v in range(graph.n) if v not in removed))


def _root_edges(nx_graph: "nx.Graph", component: VertexSet) -> Optional[Dict[int, Tuple[Hashable, Hashable]]]:
    """For a line graph component, the two root vertices (cells) of each vertex."""
    if len(component) == 1:
        (u,) = component
        return {u: ((u, 0), (u, 1))}
    try:
        root = nx.inverse_line_graph(nx_graph.subgraph(component))
    except nx.NetworkXException as err:
        logger.debug("component %s is not a line graph: %s", component[:8], err)
        return None
    cells = sorted(root.nodes)
    ends = {}
    for u in component:
        holding = [cell for cell in cells if u in cell]
        if len(holding) != 2:
            return None
        ends[u] = (holding[0], holding[1])
    return ends


def decompose_components(host: Graph, atom_cap: int = 0) -> ExtendedStripDecomposition:
    """Decomposition of ``host`` from its components.

    Line graph components become strips of single vertices over their root;
    other components of at most ``atom_cap`` vertices become isolated
    pattern vertices. Anything else raises :class:`ProviderError`.
    """
    nx_graph = to_networkx(host)
    vertices: List[int] = []
    edges: List[PatternEdge] = []
    strips: Dict[int, VertexSet] = {}
    ends: Dict[Tuple[int, int], VertexSet] = {}
    isolated: Dict[int, VertexSet] = {}
    for component in connected_components(host):
        root = _root_edges(nx_graph, component)
        if root is None:
            if len(component) > atom_cap:
                raise ProviderError(f"component of {len(component)} vertices is not a line graph")
            isolated[len(vertices)] = component
            vertices.append(len(vertices))
            continue
        cells = sorted({cell for pair in root.values() for cell in pair})
        index = {cell: len(vertices) + i for i, cell in enumerate(cells)}
        vertices.extend(index.values())
        for u, (a, b) in sorted(root.items()):
            edges.append(PatternEdge(u, index[a], index[b]))
            strips[u] = (u,)
            ends[(u, index[a])] = (u,)
            ends[(u, index[b])] = (u,)
    esd = ExtendedStripDecomposition(
        host,
        PatternGraph(tuple(vertices), tuple(edges)),
        EtaMap(edge=strips, edge_end=ends, vertex=isolated),
    )
    report = esd.validate(relaxed=True)
    if not report.ok:
        raise ProviderError(f"recovered root does not decompose the graph: {report.violations[0].message}")
    return esd


class LineGraphProvider:
    """Recognise ``G`` as a line graph and hand back its root as pattern graph, with ``X`` empty."""

    name = "line-graph"

    def __call__(self, request: ProviderRequest) -> DecompositionResult:
        esd = decompose_components(request.graph)
        return DecompositionResult((), esd, request.graph.vertices)


class ExhaustiveProvider:
    """Try every deletion set ``X`` up to ``z_max`` vertices in lexicographic order.

    ``G - X`` is accepted when each component is a line graph or small
    enough to be a vertex atom.
    """

    name = "exhaustive"

    def __init__(self, n_cap: int = 24):
        self.n_cap = n_cap

    def __call__(self, request: ProviderRequest) -> DecompositionResult:
        graph, config = request.graph, request.config
        if graph.n > self.n_cap:
            raise ProviderError(f"exhaustive search is capped at {self.n_cap} vertices, got {graph.n}")
        atom_cap = atom_size_bound(graph.n, config.delta or graph.max_degree)
        for size in range(min(config.z_max, graph.n) + 1):
            for deleted in itertools.combinations(range(graph.n), size):
                host, mapping = _remainder(graph, deleted)
                try:
                    esd = decompose_components(host, atom_cap)
                except ProviderError:
                    continue
                logger.debug("exhaustive provider deleted %s from %d vertices", deleted, graph.n)
                return DecompositionResult(deleted, esd, mapping)
        raise ProviderError(f"no deletion set of size <= {config.z_max} leaves a decomposable graph")


class FileProvider:
    """Serve a decomposition of the input graph read from an ESD file.

    Subproblems get the file's decomposition restricted to their vertices,
    which stays valid because decompositions survive vertex deletion.
    """

    name = "file"

    def __init__(self, path: Union[str, Path, None] = None, document: Optional[ESDDocument] = None):
        if document is None:
            if path is None:
                raise ProviderError("the file provider needs a path")
            try:
                document = read_esd(path)
            except (ESDFormatError, OSError) as err:
                raise ProviderError(f"cannot read decomposition file {path}: {err}") from err
        self.document = document
        self._root: Optional[Graph] = None
        self._bound: Optional[Tuple[VertexSet, ExtendedStripDecomposition, VertexSet]] = None

    def _bind(self, root: Graph) -> Tuple[VertexSet, ExtendedStripDecomposition, VertexSet]:
        if self._bound is None or self._root != root:
            try:
                deleted, esd, mapping = self.document.bind(root)
            except ESDFormatError as err:
                raise ProviderError(f"decomposition file does not fit the graph: {err}") from err
            report = esd.validate(relaxed=True)
            if not report.ok:
                raise ProviderError(f"decomposition file is invalid: {report.violations[0].message}")
            self._root, self._bound = root, (deleted, esd, mapping)
        return self._bound

    def __call__(self, request: ProviderRequest) -> DecompositionResult:
        deleted_root, esd, host_to_root = self._bind(request.root)
        local = {g: i for i, g in enumerate(request.origin)}
        deleted = vertex_set(local[g] for g in deleted_root if g in local)
        outside = [i for i, g in enumerate(host_to_root) if g not in local]
        try:
            restricted, kept = restrict(esd, outside)
        except ESDValidationError as err:
            raise ProviderError(f"restricted decomposition is invalid: {err}") from err
        mapping = tuple(local[host_to_root[i]] for i in kept)
        return DecompositionResult(deleted, restricted, mapping)


providers.register("line-graph", LineGraphProvider)
providers.register("exhaustive", ExhaustiveProvider)
providers.register("file", FileProvider)
