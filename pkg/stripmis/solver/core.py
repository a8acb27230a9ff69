"""The recursive MWIS solver.

On a connected graph with more than ``base_case_n`` vertices the solver
either splits along a small balanced separator (Case 1) or asks the provider
chain for a deletion set ``X`` and a decomposition of ``G - X`` (Case 2) and
goes through the matching reduction. If neither applies it falls back to
brute force and says so.
"""
from __future__ import annotations

import itertools
import logging
import threading
import warnings
from collections import Counter, OrderedDict
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from stripmis.esd.atoms import atom_size_bound, atoms, particle_size_bound, particles, restrict
from stripmis.esd.model import ExtendedStripDecomposition
from stripmis.graph import (
    Graph,
    VertexSet,
    WeightFn,
    closed_neighborhood,
    connected_components,
    induced_subgraph,
    is_independent,
    open_neighborhood,
    vertex_set,
)
from stripmis.plugin_registry import UnknownPluginError
from stripmis.reduction import reduce_mwis
from stripmis.solution import Solution, TraceNode, best_solution
from stripmis.solver.config import ConfigError, SolverConfig
from stripmis.solver.providers import (
    DecompositionProvider,
    DecompositionResult,
    ProviderError,
    ProviderRequest,
    providers,
)
from stripmis.solver.separators import find_balanced_separator, partition_lr
from stripmis.testkit import brute_force_mwis

__all__ = [
    "BruteForceFallbackWarning",
    "ProviderContractError",
    "check_decomposition",
    "solve_case1",
    "solve_case2",
    "solve_mwis",
]

logger = logging.getLogger(__name__)

Recurse = Callable[[VertexSet], Solution]
BranchMap = Callable[[Callable, Iterable], Iterable[Solution]]


class BruteForceFallbackWarning(UserWarning):
    """Neither a separator nor a decomposition was found; a subproblem was brute-forced."""


class ProviderContractError(ProviderError):
    """A provider returned something that is not a usable decomposition."""


def _independent_subsets(graph: Graph, vertices: Sequence[int]) -> Iterator[VertexSet]:
    for size in range(len(vertices) + 1):
        for subset in itertools.combinations(vertices, size):
            if is_independent(graph, subset):
                yield subset


def _branch_trace(chosen: VertexSet, size: int, children: Iterable[Optional[TraceNode]]) -> TraceNode:
    return TraceNode("branch", size, {"chosen": list(chosen)}, tuple(c for c in children if c is not None))


def solve_case1(
    graph: Graph,
    separator: Iterable[int],
    recurse: Recurse,
    c,
    branch_map: BranchMap = map,
) -> Solution:
    """Best over independent ``I_S`` of ``I_S`` plus optima of ``L - N(I_S)`` and ``R - N(I_S)``.

    ``recurse`` solves the subgraph induced by a vertex set and answers in
    the ids of ``graph``.
    """
    separator = vertex_set(separator)
    left, right = partition_lr(graph, separator, c)

    def branch(chosen: VertexSet) -> Solution:
        blocked = set(closed_neighborhood(graph, chosen)) if chosen else set()
        sides = [recurse(vertex_set(v for v in side if v not in blocked)) for side in (left, right)]
        vertices = vertex_set((*chosen, *sides[0].vertices, *sides[1].vertices))
        weight = graph.weight_of(chosen) + sides[0].weight + sides[1].weight
        return Solution(vertices, weight, _branch_trace(chosen, graph.n, (s.trace for s in sides)))

    return best_solution(branch_map(branch, list(_independent_subsets(graph, separator))))


def solve_case2(
    graph: Graph,
    deleted: Iterable[int],
    esd: ExtendedStripDecomposition,
    mapping: Sequence[int],
    recurse: Recurse,
    branch_map: BranchMap = map,
) -> Solution:
    """Best over independent ``I_X`` of ``I_X`` plus the reduction on ``G - X - N(I_X)``.

    ``esd`` decomposes ``G - X`` with ``mapping[i]`` the graph id of its
    host vertex ``i``. Particles are solved through ``recurse``.
    """
    deleted = vertex_set(deleted)
    host_index = {g: i for i, g in enumerate(mapping)}

    def branch(chosen: VertexSet) -> Solution:
        blocked = open_neighborhood(graph, chosen)
        sub_esd, kept = restrict(esd, [host_index[x] for x in blocked if x in host_index])
        to_graph = [mapping[i] for i in kept]
        back = {g: i for i, g in enumerate(to_graph)}
        traces: List[Optional[TraceNode]] = []

        def particle_solver(vertices: VertexSet) -> List[int]:
            solution = recurse(vertex_set(to_graph[x] for x in vertices))
            traces.append(solution.trace)
            return [back[g] for g in solution.vertices]

        found = reduce_mwis(sub_esd.host, sub_esd, particle_solver)
        vertices = vertex_set((*chosen, *(to_graph[x] for x in found)))
        return Solution(vertices, graph.weight_of(vertices), _branch_trace(chosen, graph.n, traces))

    return best_solution(branch_map(branch, list(_independent_subsets(graph, deleted))))


def check_decomposition(request: ProviderRequest, result: DecompositionResult) -> Mapping[str, object]:
    """Re-validate provider output; returns audit details or raises :class:`ProviderContractError`."""
    graph, config = request.graph, request.config
    deleted = result.deleted
    if list(deleted) != sorted(set(deleted)) or any(not 0 <= v < graph.n for v in deleted):
        raise ProviderContractError(f"deletion set {deleted} is not a sorted set of graph vertices")
    if len(deleted) > config.z_max:
        raise ProviderContractError(f"deletion set has {len(deleted)} > z_max={config.z_max} vertices")
    removed = set(deleted)
    host, mapping = induced_subgraph(graph, (v for v in range(graph.n) if v not in removed))
    if tuple(result.mapping) != mapping or result.esd.host != host:
        raise ProviderContractError("decomposition host is not G - X")
    report = result.esd.validate(relaxed=True)
    if not report.ok:
        raise ProviderContractError(f"invalid decomposition: {report.violations[0].message}")
    delta = config.delta if config.delta is not None else graph.max_degree
    if config.atom_bound_check:
        bound = atom_size_bound(graph.n, delta)
        largest_atom = max((len(a.vertices) for a in atoms(result.esd)), default=0)
        if largest_atom > bound:
            raise ProviderContractError(f"atom of {largest_atom} vertices exceeds the bound {bound}")
    largest = max((len(p.vertices) for p in particles(result.esd)), default=0)
    if largest >= graph.n:
        raise ProviderContractError(f"particle of {largest} vertices does not shrink the {graph.n}-vertex graph")
    details = {"deleted": list(deleted), "pattern_edges": len(result.esd.pattern.edges), "largest_particle": largest}
    if config.audit_particles:
        held = largest <= particle_size_bound(graph.n, delta)
        details["particle_bound_held"] = held
        if not held:
            logger.info("particle of %d vertices exceeds the size bound at n=%d", largest, graph.n)
    return details


class _Run:
    """State of one :func:`solve_mwis` call: providers, memo, counters, thread pool."""

    def __init__(self, root: Graph, config: SolverConfig):
        self.root = root
        self.config = config
        self.providers: List[Tuple[str, DecompositionProvider]] = []
        for spec in config.providers:
            try:
                self.providers.append((spec.name, providers.create(spec.name, **spec.options)))
            except (UnknownPluginError, TypeError, ProviderError) as err:
                raise ConfigError(f"cannot set up provider {spec.name!r}: {err}") from err
        self.stats: Counter = Counter()
        self._lock = threading.Lock()
        self._memo: Optional[OrderedDict] = OrderedDict() if config.memoize and config.cache_size else None
        self._pool = ThreadPoolExecutor(config.threads) if config.threads > 1 else None

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()

    def count(self, case: str) -> None:
        with self._lock:
            self.stats["nodes"] += 1
            self.stats[case] += 1

    def node(self, case: str, size: int, detail: Mapping[str, object], children=()) -> Optional[TraceNode]:
        if not self.config.trace:
            return None
        return TraceNode(case, size, dict(detail), tuple(c for c in children if c is not None))

    def branch_map(self, depth: int) -> BranchMap:
        if self._pool is not None and depth == 0:
            return self._pool.map
        return map

    def recurse(self, graph: Graph, origin: VertexSet, depth: int) -> Recurse:
        def solve_part(vertices: VertexSet) -> Solution:
            sub, mapping = induced_subgraph(graph, vertices)
            found = self.solve(sub, tuple(origin[i] for i in mapping), depth + 1)
            return found.relabel(mapping)

        return solve_part

    def _memo_get(self, origin: VertexSet) -> Optional[Solution]:
        if self._memo is None:
            return None
        with self._lock:
            found = self._memo.get(origin)
            if found is not None:
                self._memo.move_to_end(origin)
            return found

    def _memo_put(self, origin: VertexSet, solution: Solution) -> None:
        if self._memo is None:
            return
        with self._lock:
            self._memo[origin] = Solution(solution.vertices, solution.weight)
            if len(self._memo) > self.config.cache_size:
                self._memo.popitem(last=False)

    def solve(self, graph: Graph, origin: VertexSet, depth: int) -> Solution:
        """Optimum of ``graph`` in its own ids; ``origin[i]`` is the root id of vertex ``i``."""
        if graph.n == 0:
            self.count("empty")
            return Solution((), 0, self.node("empty", 0, {}))
        cached = self._memo_get(origin)
        if cached is not None:
            self.count("memo")
            return Solution(cached.vertices, cached.weight, self.node("memo", graph.n, {"weight": cached.weight}))

        components = connected_components(graph)
        if len(components) > 1:
            self.count("components")
            solve_part = self.recurse(graph, origin, depth)
            parts = list(self.branch_map(depth)(solve_part, components))
            vertices = vertex_set(x for part in parts for x in part.vertices)
            weight = sum(part.weight for part in parts)
            trace = self.node("components", graph.n, {"parts": len(parts)}, (p.trace for p in parts))
            result = Solution(vertices, weight, trace)
        elif graph.n <= self.config.base_case_n:
            self.count("base")
            found = brute_force_mwis(graph, cap=None)
            result = Solution(found.vertices, found.weight, self.node("base", graph.n, {"weight": found.weight}))
        else:
            result = self._separate(graph, origin, depth)
            if result is None:
                result = self._decompose(graph, origin, depth)
            if result is None:
                result = self._fallback(graph)
        self._memo_put(origin, result)
        return result

    def _separate(self, graph: Graph, origin: VertexSet, depth: int) -> Optional[Solution]:
        c = self.config.c
        separator = find_balanced_separator(graph, WeightFn.uniform(graph.n), c, self.config.d_max)
        if separator is None:
            return None
        self.count("separator")
        logger.debug("depth %d: separator %s on %d vertices", depth, separator, graph.n)
        found = solve_case1(graph, separator, self.recurse(graph, origin, depth), c, self.branch_map(depth))
        detail = {"separator": list(separator), "branches": 2 ** len(separator)}
        return Solution(found.vertices, found.weight, self.node("separator", graph.n, detail, (found.trace,)))

    def _decompose(self, graph: Graph, origin: VertexSet, depth: int) -> Optional[Solution]:
        request = ProviderRequest(graph, origin, self.root, self.config)
        for name, provider in self.providers:
            try:
                result = provider(request)
                details = check_decomposition(request, result)
            except ProviderContractError as err:
                logger.warning("provider %s broke its contract on %d vertices: %s", name, graph.n, err)
                continue
            except ProviderError as err:
                logger.info("provider %s declined %d vertices: %s", name, graph.n, err)
                continue
            self.count("decomposition")
            logger.debug("depth %d: provider %s decomposed %d vertices", depth, name, graph.n)
            found = solve_case2(
                graph,
                result.deleted,
                result.esd,
                result.mapping,
                self.recurse(graph, origin, depth),
                self.branch_map(depth),
            )
            trace = self.node("decomposition", graph.n, {"provider": name, **details}, (found.trace,))
            return Solution(found.vertices, found.weight, trace)
        return None

    def _fallback(self, graph: Graph) -> Solution:
        self.count("fallback")
        message = (
            f"no balanced separator of size <= {self.config.d_max} and no decomposition "
            f"for a {graph.n}-vertex subgraph; solving it by brute force"
        )
        logger.warning(message)
        warnings.warn(message, BruteForceFallbackWarning, stacklevel=4)
        found = brute_force_mwis(graph, cap=None)
        return Solution(found.vertices, found.weight, self.node("fallback", graph.n, {"weight": found.weight}))


def solve_mwis(graph: Graph, config: Optional[SolverConfig] = None) -> Solution:
    """Maximum-weight independent set of ``graph``.

    The answer is exact for every input; the structure of the graph only
    decides how much work it takes. Ties between optima are broken towards
    the lexicographically smaller vertex tuple at every aggregation.

    >>> from stripmis.testkit import named_graph
    >>> solve_mwis(named_graph("cycle", 9)).weight
    4
    """
    config = (config or SolverConfig()).resolve(graph)
    run = _Run(graph, config)
    try:
        found = run.solve(graph, graph.vertices, 0)
    finally:
        run.close()
    if not is_independent(graph, found.vertices) or graph.weight_of(found.vertices) != found.weight:
        raise RuntimeError("solver produced an inconsistent solution")
    logger.debug("solved %d vertices: weight %d, %d nodes", graph.n, found.weight, run.stats["nodes"])
    return Solution(found.vertices, found.weight, found.trace, dict(run.stats))
