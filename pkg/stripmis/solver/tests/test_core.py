import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stripmis.esd import ESDDocument, ExtendedStripDecomposition, particle_size_bound, write_esd
from stripmis.graph import Graph, induced_subgraph, is_independent
from stripmis.solver import (
    BruteForceFallbackWarning,
    ConfigError,
    DecompositionResult,
    ProviderContractError,
    ProviderRequest,
    ProviderSpec,
    SolverConfig,
    check_decomposition,
    providers,
    solve_case1,
    solve_case2,
    solve_mwis,
)
from stripmis.testkit import (
    brute_force_mwis,
    canonical_path_esd,
    gen_random_bounded_degree,
    line_graph,
    named_graph,
    poljak_subdivide,
    random_decomposition,
    single_vertex_esd,
)

HALF = Fraction(1, 2)
FORCE_CASE2 = dict(d_max=0, base_case_n=2)


def oracle(graph):
    def recurse(vertices):
        sub, mapping = induced_subgraph(graph, vertices)
        return brute_force_mwis(sub).relabel(mapping)

    return recurse


def request_for(graph, **config):
    return ProviderRequest(graph, graph.vertices, graph, SolverConfig(**config).resolve(graph))


def test_case1_on_a_path():
    p9 = named_graph("path", 9)
    found = solve_case1(p9, (4,), oracle(p9), HALF)
    assert found.weight == 5
    assert is_independent(p9, found.vertices)


def test_case1_on_a_cycle():
    c5 = named_graph("cycle", 5)
    assert solve_case1(c5, (0, 2), oracle(c5), HALF).weight == 2


def test_case2_on_the_canonical_path():
    esd = canonical_path_esd()
    found = solve_case2(esd.host, (), esd, esd.host.vertices, oracle(esd.host))
    assert found.weight == 2


def test_case2_branches_over_the_deleted_set():
    p5 = named_graph("path", 5)
    esd = canonical_path_esd()
    branches = []

    def recording_map(fn, items):
        items = list(items)
        branches.extend(items)
        return map(fn, items)

    found = solve_case2(p5, (4,), esd, (0, 1, 2, 3), oracle(p5), recording_map)
    assert found.weight == 3
    assert branches == [(), (4,)]
    assert is_independent(p5, found.vertices)


def test_check_decomposition_accepts_the_canonical_path():
    esd = canonical_path_esd()
    details = check_decomposition(request_for(esd.host), DecompositionResult((), esd, esd.host.vertices))
    assert details["deleted"] == []
    assert details["largest_particle"] == 2
    assert details["particle_bound_held"]


@pytest.mark.parametrize(
    "root",
    [
        named_graph("cycle", 60),
        poljak_subdivide(named_graph("petersen"), 4).graph,
        poljak_subdivide(named_graph("cube"), 5).graph,
    ],
)
def test_particles_of_large_line_graphs_stay_below_half(root):
    graph = line_graph(root)[0]
    delta = graph.max_degree
    assert graph.n >= 30 * delta
    request = request_for(graph)
    result = providers.create("line-graph")(request)
    details = check_decomposition(request, result)
    assert details["largest_particle"] <= graph.n / 2
    assert details["particle_bound_held"]
    assert particle_size_bound(graph.n, delta) <= Fraction(graph.n, 2)


def test_check_decomposition_rejects_broken_results():
    esd = canonical_path_esd()
    p4 = esd.host
    bad = [
        DecompositionResult((1, 0), esd, p4.vertices),
        DecompositionResult((), esd, (0, 1, 2)),
        DecompositionResult((), ExtendedStripDecomposition(p4, esd.pattern, esd.eta.replace(edge={1: (1, 2, 3)})), p4.vertices),
    ]
    for result in bad:
        with pytest.raises(ProviderContractError):
            check_decomposition(request_for(p4), result)
    with pytest.raises(ProviderContractError):
        check_decomposition(request_for(p4, z_max=0), DecompositionResult((3,), esd, p4.vertices))


def test_check_decomposition_size_bounds():
    c5 = named_graph("cycle", 5)
    result = DecompositionResult((), single_vertex_esd(c5), c5.vertices)
    with pytest.raises(ProviderContractError, match="atom"):
        check_decomposition(request_for(c5), result)
    with pytest.raises(ProviderContractError, match="shrink"):
        check_decomposition(request_for(c5, atom_bound_check=False), result)


@pytest.mark.parametrize(
    "graph, weight",
    [
        (Graph(0, ()), 0),
        (Graph.from_edges(1, [], [7]), 7),
        (named_graph("cycle", 9), 4),
        (named_graph("petersen"), 4),
        (named_graph("cube"), 4),
        (named_graph("path", 20), 10),
        (poljak_subdivide(named_graph("complete", 3), 2).graph, 7),
        (poljak_subdivide(named_graph("complete", 4), 1).graph, 7),
    ],
)
def test_known_optima(graph, weight):
    found = solve_mwis(graph)
    assert found.weight == weight
    assert is_independent(graph, found.vertices)
    assert found.stats["nodes"] >= 1


def test_single_vertex():
    assert solve_mwis(Graph.from_edges(1, [], [7])).vertices == (0,)


def test_base_case_is_not_capped():
    found = solve_mwis(named_graph("path", 35), SolverConfig(base_case_n=40))
    assert found.weight == 18
    assert found.stats["base"] == 1


def test_line_graph_goes_through_the_reduction():
    host, _ = line_graph(named_graph("petersen"))
    found = solve_mwis(host, SolverConfig(**FORCE_CASE2))
    assert found.weight == 5
    assert found.stats["decomposition"] == 1
    assert "fallback" not in found.stats


def test_exhaustive_provider_deletes_a_vertex():
    config = SolverConfig(d_max=0, base_case_n=1, providers=(ProviderSpec("exhaustive"),))
    found = solve_mwis(named_graph("star", 3), config)
    assert found.vertices == (1, 2, 3)
    assert found.stats["decomposition"] == 1


def test_file_provider_drives_the_solver(tmp_path):
    path = tmp_path / "p4.json"
    esd = canonical_path_esd()
    write_esd(esd, path)
    config = SolverConfig(**FORCE_CASE2, providers=(ProviderSpec("file", {"path": str(path)}),))
    found = solve_mwis(esd.host, config)
    assert found.weight == 2
    assert found.stats["decomposition"] == 1


def test_fallback_warns():
    config = SolverConfig(**FORCE_CASE2, providers=())
    with pytest.warns(BruteForceFallbackWarning):
        found = solve_mwis(named_graph("cycle", 5), config)
    assert found.weight == 2
    assert found.stats["fallback"] == 1


@pytest.mark.parametrize(
    "spec",
    [ProviderSpec("nope"), ProviderSpec("exhaustive", {"bogus": 1}), ProviderSpec("file")],
)
def test_provider_setup_errors(spec):
    with pytest.raises(ConfigError):
        solve_mwis(named_graph("path", 3), SolverConfig(providers=(spec,)))


def test_delta_is_checked():
    with pytest.raises(ConfigError):
        solve_mwis(named_graph("cycle", 5), SolverConfig(delta=1))


def test_trace():
    p20 = named_graph("path", 20)
    found = solve_mwis(p20, SolverConfig(c=HALF, trace=True))
    assert found.trace.case == "separator"
    assert found.trace.children[0].case == "branch"
    assert "separator n=20" in found.trace.render(max_depth=0)
    assert solve_mwis(p20, SolverConfig(c=HALF)).trace is None


def test_memo_saves_work():
    p20 = named_graph("path", 20)
    plain = solve_mwis(p20)
    cached = solve_mwis(p20, SolverConfig(memoize=True))
    assert cached == plain
    assert cached.stats["memo"] > 0
    assert cached.stats["nodes"] < plain.stats["nodes"]


def test_tiny_cache_still_answers():
    p20 = named_graph("path", 20)
    assert solve_mwis(p20, SolverConfig(memoize=True, cache_size=1)).weight == 10


def test_deterministic_and_thread_independent():
    g = gen_random_bounded_degree(22, 3, 0.25, seed=11, weight_range=(1, 9))
    config = SolverConfig(c=HALF)
    first = solve_mwis(g, config)
    assert solve_mwis(g, config).vertices == first.vertices
    assert solve_mwis(g, config.replace(threads=4)).vertices == first.vertices
    assert first.weight == brute_force_mwis(g).weight


@settings(max_examples=300)
@given(st.integers(0, 18), st.integers(0, 2**32), st.sampled_from([None, HALF]))
def test_matches_the_oracle(n, seed, c):
    g = gen_random_bounded_degree(n, 4, 0.3, seed, weight_range=(1, 100))
    found = solve_mwis(g, SolverConfig(c=c))
    assert found.weight == brute_force_mwis(g).weight
    assert is_independent(g, found.vertices)


@pytest.mark.filterwarnings("ignore::stripmis.solver.BruteForceFallbackWarning")
@settings(max_examples=20)
@given(st.integers(0, 10), st.integers(0, 2**32))
def test_matches_the_oracle_through_decompositions(n, seed):
    g = gen_random_bounded_degree(n, 3, 0.35, seed, weight_range=(0, 9))
    found = solve_mwis(g, SolverConfig(d_max=0, base_case_n=3))
    assert found.weight == brute_force_mwis(g).weight


@pytest.mark.filterwarnings("ignore::stripmis.solver.BruteForceFallbackWarning")
@settings(max_examples=20)
@given(st.integers(0, 2**32))
def test_supplied_decompositions_give_the_optimum(seed):
    esd = random_decomposition(random.Random(seed), max_n=12)
    document = ESDDocument(esd.pattern, esd.eta)
    config = SolverConfig(
        **FORCE_CASE2,
        atom_bound_check=False,
        providers=(ProviderSpec("file", {"document": document}),),
    )
    found = solve_mwis(esd.host, config)
    assert found.weight == brute_force_mwis(esd.host).weight


@settings(max_examples=15)
@given(st.integers(1, 6), st.integers(0, 2**32), st.sampled_from([1, 2]))
def test_subdivision_raises_alpha_by_p_per_edge(n, seed, p):
    base = gen_random_bounded_degree(n, 3, 0.5, seed)
    instance = poljak_subdivide(base, p)
    found = solve_mwis(instance.graph, SolverConfig(c=HALF))
    assert found.weight == brute_force_mwis(base).weight + p * base.m
