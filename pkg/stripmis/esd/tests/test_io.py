import json

import pytest

from stripmis.esd import ESDFormatError, esd_from_dict, esd_to_dict, read_esd, write_esd
from stripmis.graph import Graph
from stripmis.testkit import canonical_path_esd, isolated_vertex_esd, line_graph_decomposition, named_graph


@pytest.mark.parametrize(
    "esd", [canonical_path_esd(), isolated_vertex_esd(), line_graph_decomposition(named_graph("complete", 4))]
)
def test_document_binds_back(esd, tmp_path):
    path = tmp_path / "esd.json"
    write_esd(esd, path)
    deleted, bound, mapping = read_esd(path).bind(esd.host)
    assert deleted == ()
    assert mapping == esd.host.vertices
    assert bound == esd


def test_layout():
    data = esd_to_dict(canonical_path_esd())
    assert data == {
        "pattern": {"vertices": [0, 1, 2], "edges": [[0, 1, 0], [1, 2, 1]]},
        "eta": {
            "edge": {"0": [0, 1], "1": [2, 3]},
            "edge_end": {"0/0": [0], "0/1": [1], "1/1": [2], "1/2": [3]},
            "vertex": {},
            "triangle": {},
        },
    }


def test_deleted_vertices_are_cut_out():
    graph = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    document = esd_from_dict(esd_to_dict(canonical_path_esd(), deleted=[4]))
    deleted, esd, mapping = document.bind(graph)
    assert deleted == (4,)
    assert mapping == (0, 1, 2, 3)
    assert esd.validate().ok


def test_mapping_translates_to_graph_ids():
    esd = canonical_path_esd()
    data = esd_to_dict(esd, deleted=[0], mapping=[1, 2, 3, 4])
    assert data["eta"]["edge"]["0"] == [1, 2]
    assert data["deleted"] == [0]
    graph = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    _, bound, mapping = esd_from_dict(data).bind(graph)
    assert mapping == (1, 2, 3, 4)
    assert bound == esd


def test_terminals_round_trip():
    esd = canonical_path_esd()
    esd = type(esd)(esd.host, esd.pattern, esd.eta, (0, 3))
    _, bound, _ = esd_from_dict(esd_to_dict(esd)).bind(esd.host)
    assert bound.terminals == (0, 3)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("eta"),
        lambda d: d.update(extra=1),
        lambda d: d["eta"]["edge"].update({"0": [1, 0]}),
        lambda d: d["eta"]["edge_end"].update({"zero": [0]}),
        lambda d: d["pattern"]["edges"].append([0, 1]),
        lambda d: d["pattern"]["edges"].append([0, 1, 0]),
        lambda d: d["eta"].update(triangle={"2,1,0": []}),
        lambda d: d.update(terminals=[3, 0]),
    ],
)
def test_malformed_documents(mutate):
    data = esd_to_dict(canonical_path_esd())
    mutate(data)
    with pytest.raises(ESDFormatError):
        esd_from_dict(data)


def test_binding_errors():
    document = esd_from_dict(esd_to_dict(canonical_path_esd(), deleted=[3]))
    with pytest.raises(ESDFormatError):
        document.bind(named_graph("path", 4))
    document = esd_from_dict(esd_to_dict(canonical_path_esd(), deleted=[9]))
    with pytest.raises(ESDFormatError):
        document.bind(named_graph("path", 5))


def test_unreadable_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ESDFormatError):
        read_esd(path)
    path.write_text(json.dumps([]))
    with pytest.raises(ESDFormatError):
        read_esd(path)
