import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stripmis.esd import (
    ESDValidationError,
    EtaMap,
    ExtendedStripDecomposition,
    ParticleTemplate,
    PatternEdge,
    PatternGraph,
    add_isolated_components,
    atom_size_bound,
    atoms,
    boundary,
    particle_membership_counts,
    particle_size_bound,
    particles,
    potato,
    restrict,
    terminal_extension,
    validate_esd,
)
from stripmis.graph import Graph
from stripmis.testkit import (
    canonical_path_esd,
    isolated_vertex_esd,
    named_graph,
    random_decomposition,
)


def by_key(esd):
    return {p.key: p.vertices for p in particles(esd)}


def test_path_potatoes_and_atoms():
    esd = canonical_path_esd()
    assert [potato(esd, v) for v in esd.pattern.vertices] == [(0,), (1, 2), (3,)]
    assert all(not atom.vertices for atom in atoms(esd))
    edge_atom = next(a for a in atoms(esd) if a.kind == "edge" and a.feature == 0)
    assert boundary(esd, edge_atom) == (0, 1, 2)


def test_isolated_component_atom():
    esd = isolated_vertex_esd()
    atom = next(a for a in atoms(esd) if a.kind == "vertex" and a.feature == 3)
    assert atom.vertices == (4, 5, 6)
    assert boundary(esd, atom) == ()


def test_path_particles():
    found = by_key(canonical_path_esd())
    assert found[(ParticleTemplate.END, (0, 0))] == (0,)
    assert found[(ParticleTemplate.END, (0, 1))] == (1,)
    assert found[(ParticleTemplate.FULL, 0)] == (0, 1)
    assert found[(ParticleTemplate.INTERIOR, 0)] == ()
    assert found[(ParticleTemplate.VERTEX, 1)] == ()


def test_full_particle_without_triangles():
    found = by_key(isolated_vertex_esd())
    assert found[(ParticleTemplate.FULL, 1)] == (2, 3)
    assert found[(ParticleTemplate.VERTEX, 3)] == (4, 5, 6)


def test_loop_has_one_end_particle_keeping_its_ends():
    host = Graph.from_edges(3, [(0, 1), (1, 2)])
    pattern = PatternGraph((0,), (PatternEdge(0, 0, 0),))
    esd = ExtendedStripDecomposition(host, pattern, EtaMap(edge={0: (0, 1, 2)}, edge_end={(0, 0): (0, 2)}))
    found = by_key(esd)
    assert [key for key in found if key[0] is ParticleTemplate.END] == [(ParticleTemplate.END, (0, 0))]
    assert found[(ParticleTemplate.END, (0, 0))] == (0, 1, 2)
    assert found[(ParticleTemplate.INTERIOR, 0)] == (1,)


def test_bounds():
    assert atom_size_bound(45, 3) == 2
    assert atom_size_bound(10, 0) == 1
    assert particle_size_bound(30, 3) == Fraction(14)


def test_restrict_nothing():
    esd = canonical_path_esd()
    restricted, mapping = restrict(esd, ())
    assert restricted == esd
    assert mapping == (0, 1, 2, 3)


def test_restrict_one_vertex():
    restricted, mapping = restrict(canonical_path_esd(), [0])
    assert mapping == (1, 2, 3)
    assert restricted.host.m == 2
    assert restricted.eta.of_edge(0) == (0,)
    assert restricted.eta.of_end(0, 0) == ()
    assert restricted.validate().ok


def test_restrict_a_whole_strip():
    restricted, _ = restrict(canonical_path_esd(), [0, 1])
    assert restricted.eta.of_edge(0) == ()
    assert restricted.validate().ok


def test_restrict_drops_terminals():
    esd = canonical_path_esd()
    with_terminals = type(esd)(esd.host, esd.pattern, esd.eta, (0, 3))
    restricted, _ = restrict(with_terminals, [3])
    assert restricted.terminals is None


def test_restrict_revalidates():
    esd = canonical_path_esd()
    broken = type(esd)(Graph.from_edges(4, [(0, 1), (2, 3)]), esd.pattern, esd.eta)
    with pytest.raises(ESDValidationError):
        restrict(broken, [0])


def test_add_isolated_components():
    path = canonical_path_esd()
    host = Graph.from_edges(7, [*path.host.edges(), (4, 5), (4, 6), (5, 6)])
    assert add_isolated_components(path, host, range(4), [(4, 5, 6)]) == isolated_vertex_esd()


def test_terminal_extension():
    path = canonical_path_esd()
    host = Graph.from_edges(5, [*path.host.edges(), (4, 1), (4, 2)])
    extended = terminal_extension(path, host, [(4, 1)])
    assert extended.terminals == (4,)
    assert extended.pattern.edge(2).ends == (3, 1)
    assert extended.eta.of_edge(2) == (4,)
    assert validate_esd(extended.host, extended.pattern, extended.eta).ok


def test_membership_counts():
    counts = particle_membership_counts(canonical_path_esd())
    assert counts == {0: 2, 1: 2, 2: 2, 3: 2}


@given(st.integers(0, 2**32))
def test_atoms_and_potatoes_cover_the_host(seed):
    esd = random_decomposition(random.Random(seed), max_n=14)
    in_atoms = [x for atom in atoms(esd) for x in atom.vertices]
    assert len(in_atoms) == len(set(in_atoms))
    in_potatoes = {x for v in esd.pattern.vertices for x in potato(esd, v)}
    assert set(in_atoms) | in_potatoes == set(range(esd.host.n))
    assert all(n >= 1 for n in particle_membership_counts(esd).values())


@given(st.integers(0, 2**32))
def test_every_atom_is_a_particle(seed):
    esd = random_decomposition(random.Random(seed), max_n=14)
    found = by_key(esd)
    template = {"vertex": ParticleTemplate.VERTEX, "edge": ParticleTemplate.INTERIOR, "triangle": ParticleTemplate.TRIANGLE}
    for atom in atoms(esd):
        assert found[(template[atom.kind], atom.feature)] == atom.vertices


@given(st.integers(0, 2**32), st.data())
def test_restriction_stays_valid(seed, data):
    esd = random_decomposition(random.Random(seed), max_n=14)
    removed = data.draw(st.sets(st.integers(0, esd.host.n - 1)) if esd.host.n else st.just(set()))
    restricted, mapping = restrict(esd, removed)
    assert restricted.validate().ok
    assert set(mapping).isdisjoint(removed)
