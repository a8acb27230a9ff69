"""JSON documents describing an extended strip decomposition.

Vertex lists use the ids of the graph file the document is checked against.
The optional ``deleted`` list names a set ``X``; the decomposition then
describes ``G - X``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, Union

from stripmis import schema
from stripmis.esd.model import EtaMap, ExtendedStripDecomposition, PatternGraph
from stripmis.graph import Graph, VertexSet, induced_subgraph, vertex_set

__all__ = [
    "ESDDocument",
    "ESDFormatError",
    "esd_from_dict",
    "esd_to_dict",
    "read_esd",
    "write_esd",
]


class ESDFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ESDDocument:
    pattern: PatternGraph
    eta: EtaMap
    terminals: Optional[VertexSet] = None
    deleted: VertexSet = ()

    def bind(self, graph: Graph) -> Tuple[VertexSet, ExtendedStripDecomposition, VertexSet]:
        """Attach the document to ``graph``.

        Returns ``(deleted, esd, mapping)`` where ``esd`` decomposes
        ``graph - deleted`` re-indexed so that ``mapping[i]`` is the graph
        id of host vertex ``i``.
        """
        bad = [v for v in self.deleted if not 0 <= v < graph.n]
        if bad:
            raise ESDFormatError(f"deleted vertices {bad} are not in the graph")
        removed = set(self.deleted)
        host, mapping = induced_subgraph(graph, (v for v in range(graph.n) if v not in removed))
        index = {old: new for new, old in enumerate(mapping)}

        def translate(vertices: Iterable[int]) -> VertexSet:
            missing = [v for v in vertices if v not in index]
            if missing:
                raise ESDFormatError(f"eta refers to vertices {missing} outside G - X")
            return tuple(index[v] for v in vertices)

        terminals = translate(self.terminals) if self.terminals is not None else None
        esd = ExtendedStripDecomposition(host, self.pattern, self.eta.map(translate), terminals)
        return self.deleted, esd, mapping


def _sorted_list(values: Sequence[int], where: str) -> VertexSet:
    if list(values) != sorted(values):
        raise ESDFormatError(f"{where}: vertex list must be sorted")
    return tuple(values)


def esd_from_dict(data: Dict[str, Any]) -> ESDDocument:
    try:
        schema.validate(data, schema.ESD_SCHEMA)
    except schema.SchemaValidationError as err:
        raise ESDFormatError(str(err)) from err
    pattern_data = data["pattern"]
    try:
        pattern = PatternGraph.from_triples(pattern_data["vertices"], pattern_data["edges"])
    except ValueError as err:
        raise ESDFormatError(f"pattern: {err}") from err
    eta_data = data["eta"]
    edge = {int(k): _sorted_list(v, f"eta.edge.{k}") for k, v in eta_data.get("edge", {}).items()}
    edge_end = {}
    for key, values in eta_data.get("edge_end", {}).items():
        e, v = key.split("/")
        edge_end[(int(e), int(v))] = _sorted_list(values, f"eta.edge_end.{key}")
    vertex = {int(k): _sorted_list(v, f"eta.vertex.{k}") for k, v in eta_data.get("vertex", {}).items()}
    triangle = {}
    for key, values in eta_data.get("triangle", {}).items():
        corners = tuple(int(x) for x in key.split(","))
        if list(corners) != sorted(corners):
            raise ESDFormatError(f"eta.triangle.{key}: corners must be sorted")
        triangle[corners] = _sorted_list(values, f"eta.triangle.{key}")
    terminals = data.get("terminals")
    return ESDDocument(
        pattern=pattern,
        eta=EtaMap(edge, edge_end, vertex, triangle),
        terminals=_sorted_list(terminals, "terminals") if terminals is not None else None,
        deleted=_sorted_list(data.get("deleted", []), "deleted"),
    )


def esd_to_dict(
    esd: ExtendedStripDecomposition,
    deleted: Iterable[int] = (),
    mapping: Optional[Sequence[int]] = None,
) -> Dict[str, Any]:
    """Serialize ``esd``; ``mapping`` translates host ids to graph ids."""

    def out(vertices: Iterable[int]) -> list:
        if mapping is None:
            return sorted(vertices)
        return sorted(mapping[v] for v in vertices)

    eta = esd.eta
    data: Dict[str, Any] = {
        "pattern": {
            "vertices": list(esd.pattern.vertices),
            "edges": [[e.u, e.v, e.id] for e in esd.pattern.edges],
        },
        "eta": {
            "edge": {str(k): out(v) for k, v in sorted(eta.edge.items())},
            "edge_end": {f"{e}/{v}": out(s) for (e, v), s in sorted(eta.edge_end.items())},
            "vertex": {str(k): out(v) for k, v in sorted(eta.vertex.items())},
            "triangle": {",".join(map(str, k)): out(v) for k, v in sorted(eta.triangle.items())},
        },
    }
    if esd.terminals is not None:
        data["terminals"] = out(esd.terminals)
    deleted = vertex_set(deleted)
    if deleted:
        data["deleted"] = list(deleted)
    return data


def read_esd(path: Union[str, Path]) -> ESDDocument:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise ESDFormatError(f"{path}: not valid JSON ({err})") from err
    return esd_from_dict(data)


def write_esd(
    esd: ExtendedStripDecomposition,
    path: Union[str, Path],
    deleted: Iterable[int] = (),
    mapping: Optional[Sequence[int]] = None,
) -> None:
    Path(path).write_text(json.dumps(esd_to_dict(esd, deleted, mapping), indent=2) + "\n")
