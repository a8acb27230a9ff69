from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stripmis.graph import (
    Graph,
    GraphError,
    GraphFormatError,
    Separation,
    SeparationError,
    WeightFn,
    closed_neighborhood,
    connected_components,
    distance,
    dump_graph,
    from_networkx,
    induced_subgraph,
    is_independent,
    open_neighborhood,
    parse_graph,
    read_graph,
    to_networkx,
    vertex_set,
    write_graph,
)
from stripmis.testkit import gen_random_bounded_degree, named_graph

random_graphs = st.builds(
    gen_random_bounded_degree,
    n=st.integers(0, 14),
    delta=st.integers(0, 4),
    edge_prob=st.floats(0, 1),
    seed=st.integers(0, 2**32),
    weight_range=st.just((0, 9)),
)


def test_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()))
    with pytest.raises(GraphError):
        Graph(1, ((),), (-1,))


def test_graph_basics():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], [3, 1, 4, 1])
    assert g.m == 3
    assert g.max_degree == 2
    assert g.neighbors(1) == (0, 2)
    assert g.has_edge(2, 1) and not g.has_edge(0, 2)
    assert g.weight_of([0, 2]) == 7
    assert Graph(0, ()).max_degree == 0


def test_induced_subgraph():
    p4 = named_graph("path", 4)
    sub, mapping = induced_subgraph(p4, [0, 1, 2])
    assert mapping == (0, 1, 2)
    assert list(sub.edges()) == [(0, 1), (1, 2)]

    c5 = named_graph("cycle", 5)
    sub, mapping = induced_subgraph(c5, [4, 0, 1])
    assert mapping == (0, 1, 4)
    assert sorted(sub.degree(v) for v in range(3)) == [1, 1, 2]

    with pytest.raises(GraphError):
        induced_subgraph(p4, [7])


def test_induced_subgraph_keeps_weights():
    g = Graph.from_edges(3, [(0, 2)], [5, 6, 7])
    sub, mapping = induced_subgraph(g, [2, 0])
    assert sub.weights == (5, 7)
    assert sub.has_edge(0, 1)


def test_connected_components():
    assert connected_components(Graph(0, ())) == []
    two = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 4)])
    assert connected_components(two) == [(0, 1, 2), (3, 4)]
    p6 = named_graph("path", 6)
    assert connected_components(p6, within=[0, 1, 4, 5]) == [(0, 1), (4, 5)]


def test_closed_neighborhood():
    p5 = named_graph("path", 5)
    assert closed_neighborhood(p5, [2], 0) == (2,)
    assert closed_neighborhood(p5, [2], 1) == (1, 2, 3)
    assert closed_neighborhood(named_graph("cycle", 6), [0], 2) == (0, 1, 2, 4, 5)
    with pytest.raises(ValueError):
        closed_neighborhood(p5, [0], -1)
    assert open_neighborhood(p5, [1, 2]) == (0, 3)


def test_is_independent():
    assert not is_independent(named_graph("complete", 3), [0, 1])
    assert is_independent(named_graph("complete", 3), [])
    assert is_independent(named_graph("cycle", 5), [0, 2])


def test_distance():
    p5 = named_graph("path", 5)
    assert distance(p5, [0], [4]) == 4
    assert distance(p5, [1, 3], [3]) == 0
    assert distance(Graph.from_edges(3, [(0, 1)]), [0], [2]) is None
    with pytest.raises(ValueError):
        distance(p5, [], [1])


def test_separation():
    p5 = named_graph("path", 5)
    sep = Separation.of(p5, [0, 1], [2], [3, 4])
    assert sep.order == 1
    with pytest.raises(SeparationError):
        Separation.of(p5, [0, 1, 2], [3], [4, 2])
    with pytest.raises(SeparationError):
        Separation.of(p5, [0, 1], [3], [2, 4])
    with pytest.raises(SeparationError):
        Separation.of(p5, [0, 1, 2], [], [3, 4])


def test_weight_fn():
    w = WeightFn.uniform(3)
    assert w.total == 1
    assert w.of([0, 2]) == Fraction(2, 3)
    with pytest.raises(GraphError):
        WeightFn((Fraction(-1),))


def test_parse_errors():
    for text, lineno in [
        ("v 0 1\n", 1),
        ("p 2 1\ne 0 0\n", 2),
        ("p 2 1\nv 0 x\n", 2),
        ("p 2 0\nq 1\n", 2),
        ("p 2 1\nv 0 -3\n", 2),
    ]:
        with pytest.raises(GraphFormatError) as info:
            parse_graph(text)
        assert info.value.lineno == lineno
    with pytest.raises(GraphFormatError):
        parse_graph("p 2 2\ne 0 1\ne 1 0\n")
    with pytest.raises(GraphFormatError):
        parse_graph("p 3 2\ne 0 1\n")
    with pytest.raises(GraphFormatError):
        parse_graph("c nothing\n")


def test_default_weight_and_comments():
    g = parse_graph("c header\np 3 1\nv 1 4\ne 2 0\n")
    assert g.weights == (1, 4, 1)
    assert list(g.edges()) == [(0, 2)]


def test_file_round_trip(tmp_path):
    g = Graph.from_edges(4, [(3, 0), (1, 2)], [2, 0, 5, 1])
    path = tmp_path / "g.gr"
    write_graph(g, path)
    text = path.read_text()
    assert text == "p 4 2\nv 0 2\nv 1 0\nv 2 5\nv 3 1\ne 0 3\ne 1 2\n"
    assert read_graph(path) == g
    assert dump_graph(parse_graph(text)) == text


def test_networkx_conversion():
    g = Graph.from_edges(3, [(0, 1)], [4, 5, 6])
    back, labels = from_networkx(to_networkx(g))
    assert back == g
    assert labels == [0, 1, 2]


@given(random_graphs)
def test_components_partition_the_graph(g):
    components = connected_components(g)
    flat = [v for comp in components for v in comp]
    assert sorted(flat) == list(range(g.n))
    for comp in components:
        assert closed_neighborhood(g, comp[:1], g.n) == comp


@given(random_graphs, st.integers(0, 5))
def test_neighborhoods_grow(g, d):
    if g.n == 0:
        return
    inner = set(closed_neighborhood(g, [0], d))
    outer = set(closed_neighborhood(g, [0], d + 1))
    assert inner <= outer
    for v in outer - inner:
        assert distance(g, [0], [v]) == d + 1


@given(random_graphs)
def test_text_format_round_trip(g):
    assert parse_graph(dump_graph(g)) == g


def test_vertex_set_is_canonical():
    assert vertex_set([3, 1, 3, 2]) == (1, 2, 3)
