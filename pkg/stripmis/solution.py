from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from stripmis.graph import VertexSet, vertex_set

__all__ = ["Solution", "TraceNode", "best_solution"]


@dataclass(frozen=True)
class TraceNode:
    """One decision of the solver: which case fired on a subgraph of ``size`` vertices."""

    case: str
    size: int
    detail: Mapping[str, Any] = field(default_factory=dict)
    children: Tuple["TraceNode", ...] = ()

    def node_count(self) -> int:
        return 1 + sum(child.node_count() for child in self.children)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case,
            "size": self.size,
            "detail": dict(self.detail),
            "children": [child.to_dict() for child in self.children],
        }

    def render(self, depth: int = 0, max_depth: Optional[int] = None) -> str:
        """Indented text form, one node per line.

        >>> leaf = TraceNode("base", 3, {"weight": 2})
        >>> print(TraceNode("components", 5, {}, (leaf,)).render())
        components n=5
          base n=3 weight=2
        """
        extras = "".join(f" {k}={v}" for k, v in self.detail.items())
        lines = ["  " * depth + f"{self.case} n={self.size}{extras}"]
        if max_depth is None or depth < max_depth:
            lines.extend(child.render(depth + 1, max_depth) for child in self.children)
        return "\n".join(lines)


@dataclass(frozen=True)
class Solution:
    """An independent set with its weight and, optionally, how it was found."""

    vertices: VertexSet
    weight: int
    trace: Optional[TraceNode] = field(default=None, compare=False)
    stats: Mapping[str, int] = field(default_factory=dict, compare=False)

    @property
    def sort_key(self) -> Tuple[int, VertexSet]:
        """Heavier first, then the lexicographically smaller vertex tuple."""
        return -self.weight, self.vertices

    def relabel(self, mapping: Sequence[int]) -> "Solution":
        return Solution(vertex_set(mapping[v] for v in self.vertices), self.weight, self.trace, self.stats)

    def union(self, other: "Solution") -> "Solution":
        return Solution(vertex_set((*self.vertices, *other.vertices)), self.weight + other.weight)


def best_solution(candidates: Iterable[Solution]) -> Solution:
    """Deterministic maximum: largest weight, ties to the smaller vertex tuple."""
    return min(candidates, key=lambda s: s.sort_key)
