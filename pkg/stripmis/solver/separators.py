"""Balanced separators and the split of the remaining components into two halves."""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from stripmis.graph import Graph, SeparationError, VertexSet, WeightFn, connected_components, vertex_set

__all__ = ["find_balanced_separator", "is_balanced_separator", "partition_lr"]

logger = logging.getLogger(__name__)


def is_balanced_separator(graph: Graph, w: WeightFn, separator: Iterable[int], c: Fraction) -> bool:
    """Every component of ``G - X`` weighs less than ``c``."""
    removed = set(separator)
    graph.check_vertices(removed)
    within = [v for v in range(graph.n) if v not in removed]
    return all(w.of(comp) < c for comp in connected_components(graph, within))


def find_balanced_separator(graph: Graph, w: WeightFn, c: Fraction, d_max: int) -> Optional[VertexSet]:
    """Smallest, then lexicographically first, ``(w, c)``-balanced separator of size at most ``d_max``.

    >>> p9 = Graph.from_edges(9, [(i, i + 1) for i in range(8)])
    >>> find_balanced_separator(p9, WeightFn.uniform(9), Fraction(1, 2), 1)
    (4,)
    """
    if len(w.values) != graph.n:
        raise ValueError("weight function must cover every vertex")
    for size in range(min(d_max, graph.n) + 1):
        for candidate in itertools.combinations(range(graph.n), size):
            if is_balanced_separator(graph, w, candidate, c):
                logger.debug("balanced separator %s (c=%s)", candidate, c)
                return candidate
    return None


def partition_lr(graph: Graph, separator: Iterable[int], c: Fraction) -> Tuple[VertexSet, VertexSet]:
    """Group the components of ``G - S`` into two anticomplete sides ``L`` and ``R``.

    Components are taken largest first (ties by smallest member). If the
    largest has at least ``(1 - c)/2 * n`` vertices it alone is ``L``;
    otherwise ``L`` is the shortest prefix whose size reaches that mark.
    Both sides end up with at most ``(c + 1)/2 * n`` vertices.
    """
    separator = vertex_set(separator)
    n = graph.n
    if not is_balanced_separator(graph, WeightFn.uniform(n), separator, c):
        raise SeparationError(f"{separator} is not a {c}-balanced separator")
    removed = set(separator)
    components = connected_components(graph, (v for v in range(n) if v not in removed))
    components.sort(key=lambda comp: (-len(comp), comp[0]))
    mark = (1 - Fraction(c)) / 2 * n

    if components and len(components[0]) >= mark:
        taken = 1
    else:
        taken, size = 0, 0
        while taken < len(components) and size < mark:
            size += len(components[taken])
            taken += 1
    left = vertex_set(x for comp in components[:taken] for x in comp)
    right = vertex_set(x for comp in components[taken:] for x in comp)
    return left, right
