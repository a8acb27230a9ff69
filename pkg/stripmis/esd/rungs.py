"""Rungs, frames and (semi-)tameness.

Rung enumeration walks induced paths and is exponential in general, so it
runs under a budget of partial paths. Tameness checks that exhaust the
budget come back *indeterminate* instead of guessing.
"""
from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from stripmis.esd.model import ExtendedStripDecomposition, PatternGraph
from stripmis.esd.validate import ValidationReport, Violation
from stripmis.graph import SizeCapExceeded, VertexSet, vertex_set

__all__ = [
    "DEFAULT_RUNG_BUDGET",
    "RungBudgetExceeded",
    "check_frame",
    "check_semi_tame",
    "check_tame",
    "e_rungs",
    "tilde_eta",
]

logger = logging.getLogger(__name__)

DEFAULT_RUNG_BUDGET = 10**6


class RungBudgetExceeded(SizeCapExceeded):
    pass


def e_rungs(
    esd: ExtendedStripDecomposition, edge_id: int, budget: int = DEFAULT_RUNG_BUDGET
) -> List[Tuple[int, ...]]:
    """All e-rungs of ``eta(e)``, oriented from ``eta(e, u)`` to ``eta(e, v)``.

    A rung ``p_1 .. p_k`` is an induced path of ``G[eta(e)]`` with
    ``p_i`` in ``eta(e, u)`` iff ``i == 1`` and ``p_i`` in ``eta(e, v)`` iff
    ``i == k``.
    """
    edge = esd.pattern.edge(edge_id)
    host = esd.host
    strip = set(esd.eta.of_edge(edge_id))
    start_set, end_set = (set(s) for s in esd.end_sets(edge))
    rungs: List[Tuple[int, ...]] = []
    explored = 0

    for p1 in sorted(start_set & strip):
        if p1 in end_set:
            rungs.append((p1,))
            continue
        stack = [(p1,)]
        while stack:
            path = stack.pop()
            explored += 1
            if explored > budget:
                raise RungBudgetExceeded(f"rungs of edge {edge_id}", explored, budget)
            last = path[-1]
            earlier = set(path[:-1])
            extensions = []
            for q in host.neighbors(last):
                if q not in strip or q in start_set or q in path:
                    continue
                if any(host.has_edge(q, p) for p in earlier):
                    continue
                if q in end_set:
                    rungs.append(path + (q,))
                else:
                    extensions.append(path + (q,))
            stack.extend(reversed(extensions))
    return sorted(rungs)


def tilde_eta(
    esd: ExtendedStripDecomposition, edge_id: int, budget: int = DEFAULT_RUNG_BUDGET
) -> VertexSet:
    """Vertices of ``eta(e)`` lying on no e-rung."""
    on_rung = {x for rung in e_rungs(esd, edge_id, budget) for x in rung}
    return tuple(x for x in esd.eta.of_edge(edge_id) if x not in on_rung)


def _is_path_between(pattern: PatternGraph, inner: Iterable[int], c: Tuple[int, int]) -> bool:
    """Whether ``inner`` plus ``c``, using the edges touching ``inner``, is a path with ends ``c``."""
    inner = set(inner)
    nodes = inner | set(c)
    degree: Dict[int, int] = {v: 0 for v in nodes}
    count = 0
    for e in pattern.edges:
        if e.u not in inner and e.v not in inner:
            continue
        if e.is_loop:
            return False
        degree[e.u] += 1
        degree[e.v] += 1
        count += 1
    if count != len(nodes) - 1:
        return False
    if any(degree[x] != 1 for x in c) or any(degree[x] != 2 for x in inner):
        return False
    # a degree-valid graph with |V| - 1 edges is a path iff connected
    seen = {c[0]}
    stack = [c[0]]
    while stack:
        v = stack.pop()
        for e in pattern.incident(v):
            if e.u in inner or e.v in inner:
                u = e.other(v)
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
    return seen == nodes


def _components_without(pattern: PatternGraph, removed: set) -> List[set]:
    left = [v for v in pattern.vertices if v not in removed]
    seen: set = set()
    components = []
    for start in left:
        if start in seen:
            continue
        component = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for u in pattern.neighbors(v):
                if u not in removed and u not in seen:
                    seen.add(u)
                    component.add(u)
                    stack.append(u)
        components.append(component)
    return components


def frame_violations(pattern: PatternGraph, w: Iterable[int]) -> List[Violation]:
    w = vertex_set(w)
    found: List[Violation] = []
    if not pattern.is_connected():
        found.append(Violation("frame", "pattern graph is not connected"))
    if len(w) < 3:
        found.append(Violation("frame", f"|W| = {len(w)}, needs at least 3", w))
    for x in w:
        if x not in pattern.vertices or pattern.degree(x) != 1:
            found.append(Violation("frame", f"{x} in W does not have degree one", (x,)))
    if found:
        return found
    wset = set(w)
    for size in (1, 2):
        for c in itertools.combinations(pattern.vertices, size):
            free = [k for k in _components_without(pattern, set(c)) if not k & wset]
            if not free:
                continue
            if len(free) > 1 or size == 1 or not _is_path_between(pattern, free[0], c):
                found.append(
                    Violation(
                        "frame",
                        f"separation with C = {c} cuts off {sorted(min(free, key=min))} from W",
                        c,
                    )
                )
    return found


def check_frame(pattern: PatternGraph, w: Iterable[int]) -> bool:
    """Whether ``(H, W)`` is a frame.

    Every separation of order at most two that keeps ``W`` on one side must
    cut off a bare path between the two separator vertices.
    """
    return not frame_violations(pattern, w)


def check_semi_tame(
    esd: ExtendedStripDecomposition, budget: int = DEFAULT_RUNG_BUDGET
) -> ValidationReport:
    return _tameness(esd, budget, tame=False)


def check_tame(esd: ExtendedStripDecomposition, budget: int = DEFAULT_RUNG_BUDGET) -> ValidationReport:
    return _tameness(esd, budget, tame=True)


def _tameness(esd: ExtendedStripDecomposition, budget: int, tame: bool) -> ValidationReport:
    pattern = esd.pattern
    violations: List[Violation] = []
    indeterminate: List[str] = []
    for v in pattern.vertices:
        if pattern.degree(v) == 2:
            violations.append(Violation("degree-two", f"pattern vertex {v} has degree two", (v,)))
    violations.extend(frame_violations(pattern, pattern.leaves))
    tildes: Dict[int, Optional[VertexSet]] = {}
    for e in pattern.edges:
        try:
            tilde = tilde_eta(esd, e.id, budget)
        except RungBudgetExceeded as err:
            logger.info("rung enumeration for edge %s gave up: %s", e.id, err)
            indeterminate.append(f"rungs of edge {e.id}")
            tildes[e.id] = None
            continue
        tildes[e.id] = tilde
        if len(tilde) == len(esd.eta.of_edge(e.id)):
            violations.append(Violation("rung-empty", f"eta({e.id}) has no rung", (e.id,)))
        for x in e.ends:
            clash = set(esd.eta.of_end(e.id, x)) & set(tilde)
            if clash:
                violations.append(
                    Violation("end-in-tilde", f"eta({e.id}, {x}) meets the rung-free part", (e.id, x, *sorted(clash)))
                )
        if tame and tilde:
            violations.append(Violation("tilde-nonempty", f"eta({e.id}) has vertices on no rung", (e.id, *tilde)))
    return ValidationReport(tuple(violations), tuple(indeterminate), {"tilde": tildes})
