from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from stripmis.graph import Graph, SeparationError, WeightFn
from stripmis.solver import find_balanced_separator, is_balanced_separator, partition_lr
from stripmis.testkit import gen_random_bounded_degree, named_graph

HALF = Fraction(1, 2)


def test_path_middle_vertex():
    p9 = named_graph("path", 9)
    assert find_balanced_separator(p9, WeightFn.uniform(9), HALF, 1) == (4,)
    assert is_balanced_separator(p9, WeightFn.uniform(9), (4,), HALF)
    assert not is_balanced_separator(p9, WeightFn.uniform(9), (3,), HALF)


def test_cycle_needs_two_vertices():
    c5 = named_graph("cycle", 5)
    assert find_balanced_separator(c5, WeightFn.uniform(5), HALF, 1) is None
    assert find_balanced_separator(c5, WeightFn.uniform(5), HALF, 2) == (0, 2)


def test_clique_has_no_small_separator():
    k7 = named_graph("complete", 7)
    assert find_balanced_separator(k7, WeightFn.uniform(7), HALF, 3) is None


def test_disconnected_graph_is_already_balanced():
    two = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert find_balanced_separator(two, WeightFn.uniform(4), Fraction(3, 4), 2) == ()


def test_weight_function_must_fit():
    with pytest.raises(ValueError):
        find_balanced_separator(named_graph("path", 3), WeightFn.uniform(2), HALF, 1)


def test_partition_takes_the_largest_component():
    left, right = partition_lr(named_graph("path", 9), (4,), HALF)
    assert left == (0, 1, 2, 3)
    assert right == (5, 6, 7, 8)


def test_partition_collects_small_components():
    left, right = partition_lr(named_graph("star", 6), (0,), HALF)
    assert left == (1, 2)
    assert right == (3, 4, 5, 6)


def test_partition_rejects_unbalanced_separators():
    with pytest.raises(SeparationError):
        partition_lr(named_graph("path", 9), (0,), HALF)


def test_half_balance_is_strict():
    # components of sizes 5, 3 and 1 hanging off vertex 9
    g = Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (9, 0), (9, 5), (9, 8)])
    assert not is_balanced_separator(g, WeightFn.uniform(10), (9,), HALF)
    with pytest.raises(SeparationError):
        partition_lr(g, (9,), HALF)
    left, right = partition_lr(g, (9,), Fraction(2, 3))
    assert left == (0, 1, 2, 3, 4)
    assert right == (5, 6, 7, 8)


@settings(max_examples=100)
@given(
    st.integers(2, 16),
    st.integers(0, 2**32),
    st.sampled_from([Fraction(1, 2), Fraction(2, 3), Fraction(9, 10)]),
)
def test_partition_sides_are_small_and_anticomplete(n, seed, c):
    g = gen_random_bounded_degree(n, 3, 0.3, seed)
    separator = find_balanced_separator(g, WeightFn.uniform(n), c, 3)
    assume(separator is not None)
    left, right = partition_lr(g, separator, c)
    assert sorted((*left, *right, *separator)) == list(range(n))
    assert not any(g.has_edge(x, y) for x in left for y in right)
    bound = (c + 1) / 2 * n
    assert len(left) <= bound and len(right) <= bound
