"""Maximum-weight matching in general graphs.

The search is delegated to :func:`networkx.max_weight_matching` (Edmonds'
blossom algorithm).

Edges with non-positive weight never improve a matching and are dropped
before the search starts. Remaining weights are lifted to
``w * 2**m + 2**(m - 1 - edge_id)`` so that the optimum is unique: among
all maximum-weight matchings the one returned has the lexicographically
smallest sorted edge-id set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from stripmis.graph import SizeCapExceeded

__all__ = [
    "EdgeWeightedGraph",
    "Matching",
    "MatchingError",
    "brute_force_matching",
    "is_matching",
    "max_weight_matching",
]

BRUTE_FORCE_EDGE_CAP = 25


class MatchingError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeWeightedGraph:
    """Simple graph on ``0..n-1`` with signed integer edge weights.

    An edge's id is its position in ``edges``.
    """

    n: int
    edges: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        seen = set()
        for u, v, _ in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise MatchingError(f"edge {u}-{v} out of range for n={self.n}")
            if u == v:
                raise MatchingError(f"loop at vertex {u}")
            key = frozenset((u, v))
            if key in seen:
                raise MatchingError(f"parallel edge {u}-{v}")
            seen.add(key)

    def weight_of(self, edge_ids: Sequence[int]) -> int:
        return sum(self.edges[i][2] for i in edge_ids)


@dataclass(frozen=True)
class Matching:
    edge_ids: Tuple[int, ...]
    weight: int

    def pairs(self, graph: EdgeWeightedGraph) -> List[Tuple[int, int]]:
        return [graph.edges[i][:2] for i in self.edge_ids]


def is_matching(graph: EdgeWeightedGraph, edge_ids: Sequence[int]) -> bool:
    covered = set()
    for i in edge_ids:
        u, v, _ = graph.edges[i]
        if u in covered or v in covered:
            return False
        covered.update((u, v))
    return True


def max_weight_matching(graph: EdgeWeightedGraph) -> Matching:
    """Maximum-weight matching (not necessarily maximum cardinality).

    >>> triangle = EdgeWeightedGraph(3, [(0, 1, 5), (1, 2, 3), (0, 2, 2)])
    >>> max_weight_matching(triangle)
    Matching(edge_ids=(0,), weight=5)
    """
    m = len(graph.edges)
    lifted = nx.Graph()
    lifted.add_nodes_from(range(graph.n))
    for i, (u, v, w) in enumerate(graph.edges):
        if w > 0:
            lifted.add_edge(u, v, weight=(w << m) + (1 << (m - 1 - i)), id=i)
    pairs = nx.max_weight_matching(lifted, maxcardinality=False, weight="weight")
    edge_ids = tuple(sorted(lifted.edges[u, v]["id"] for u, v in pairs))
    if not is_matching(graph, edge_ids):
        raise MatchingError("blossom search produced overlapping edges")
    return Matching(edge_ids, graph.weight_of(edge_ids))


def brute_force_matching(
    graph: EdgeWeightedGraph, *, prefilter: bool = True, cap: int = BRUTE_FORCE_EDGE_CAP
) -> Matching:
    """Enumerate every edge subset; same contract as :func:`max_weight_matching`.

    With ``prefilter=False`` all edges take part, including non-positive ones;
    the optimum weight is unchanged but the witness may differ.
    """
    ids = [i for i, e in enumerate(graph.edges) if e[2] > 0 or not prefilter]
    if len(ids) > cap:
        raise SizeCapExceeded("brute-force matching", len(ids), cap)
    best: Optional[Tuple[int, ...]] = None
    best_weight = 0
    for subset in _matchings(graph, ids):
        weight = graph.weight_of(subset)
        if best is None or weight > best_weight or (weight == best_weight and subset < best):
            best, best_weight = subset, weight
    return Matching(best or (), best_weight)


def _matchings(graph: EdgeWeightedGraph, ids: List[int]) -> Iterator[Tuple[int, ...]]:
    for size in range(min(len(ids), graph.n // 2) + 1):
        for subset in itertools.combinations(ids, size):
            if is_matching(graph, subset):
                yield subset
