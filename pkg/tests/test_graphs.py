import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrhier.errors import CapacityError, ParseError
from corrhier.graphs import (
    Graph,
    brute_force_canonical_code,
    canonical_code,
    canonical_form,
    complete_graph,
    cycle_graph,
    enumerate_connected_graphs,
    enumerate_graphs,
    graph_hierarchy,
    graph_state_stabilizer,
    lc_orbits,
    local_complement,
    parse_edge_list,
    parse_graph6,
    path_graph,
    read_graph6_catalog,
    star_graph,
    to_edge_list,
    to_graph6,
)
from corrhier.pauli import pauli_to_text, weight
from corrhier.stabilizer import make_group


@st.composite
def graphs(draw, n_min=1, n_max=8):
    n = draw(st.integers(n_min, n_max))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def connected_graphs(draw, n_min=2, n_max=8):
    g = draw(graphs(n_min, n_max))
    # add a random spanning path so the graph is connected
    order = draw(st.permutations(range(g.n)))
    return Graph.from_edges(g.n, g.edges() + list(zip(order, order[1:])))


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# -- parsing --------------------------------------------------------------------


def test_parse_edge_list_examples():
    assert parse_edge_list("n 2\n1 2") == path_graph(2)
    assert parse_edge_list("n 5\n1 2\n1 3\n1 4\n1 5") == star_graph(5)


def test_parse_edge_list_comments_and_duplicates():
    g = parse_edge_list("# header comment\nn 3\n1 2  # first\n2 1\n\n2 3\n")
    assert g == path_graph(3)


@pytest.mark.parametrize(
    "text, line",
    [
        ("n 3\n1 1", 2),
        ("n 3\n1 4", 2),
        ("n 3\n1 2 3", 2),
        ("n 3\n1 x", 2),
        ("3\n1 2", 1),
        ("", 1),
    ],
)
def test_parse_edge_list_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_self_loop_message():
    with pytest.raises(ParseError, match="self-loop"):
        parse_edge_list("n 3\n1 1")


def test_graph6_single_edge():
    assert parse_graph6("A_") == path_graph(2)


def test_graph6_cross_checked_with_networkx():
    g = parse_graph6("D?{")
    ref = nx.from_graph6_bytes(b"D?{")
    assert g.n == ref.number_of_nodes() == 5
    assert sorted(g.edges()) == sorted(tuple(sorted(e)) for e in ref.edges())
    # four edges into vertex 5: a star centred on the last vertex
    assert g.edges() == [(0, 4), (1, 4), (2, 4), (3, 4)]


@pytest.mark.parametrize("bad", ["", "   ", "A", "A__", "D?", "B\x7f", "A "])
def test_graph6_errors(bad):
    with pytest.raises(ParseError):
        parse_graph6(bad)


def test_graph6_header_ignored():
    assert parse_graph6(">>graph6<<A_") == path_graph(2)


@settings(max_examples=80, deadline=None)
@given(graphs(1, 20))
def test_graph6_round_trip_and_matches_networkx(g):
    s = to_graph6(g)
    assert parse_graph6(s) == g
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_graph6_large_size_header():
    g = path_graph(70)
    s = to_graph6(g)
    assert s.startswith("~")
    assert parse_graph6(s) == g
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_edge_list_round_trip():
    g = cycle_graph(6)
    assert parse_edge_list(to_edge_list(g)) == g


def test_catalog_reports_line():
    with pytest.raises(ParseError) as info:
        read_graph6_catalog("A_\n\nB!!\n")
    assert info.value.line == 3


# -- graph states ---------------------------------------------------------------


def test_stabilizer_single_edge():
    texts = [pauli_to_text(k) for k in graph_state_stabilizer(path_graph(2)).generators]
    assert texts == ["ZX", "XZ"]  # X1 Z2 and Z1 X2


def test_stabilizer_star3():
    texts = [pauli_to_text(k) for k in graph_state_stabilizer(star_graph(3)).generators]
    assert texts == ["ZZX", "IXZ", "XIZ"]


def test_stabilizer_cycle5():
    gens = graph_state_stabilizer(cycle_graph(5)).generators
    assert all(weight(k) == 3 for k in gens)
    assert pauli_to_text(gens[0]) == "ZIIZX"


@settings(max_examples=50, deadline=None)
@given(graphs(1, 10))
def test_every_graph_gives_valid_group(g):
    grp = graph_state_stabilizer(g)
    assert make_group(grp.generators).m == g.n
    assert all(k.sign == 0 for k in grp.generators)


# -- local complementation ------------------------------------------------------


def test_local_complement_star_centre_gives_complete():
    assert local_complement(star_graph(5), 0) == complete_graph(5)


def test_local_complement_single_edge():
    assert local_complement(path_graph(2), 0) == path_graph(2)


def test_local_complement_range():
    with pytest.raises(ValueError):
        local_complement(path_graph(3), 3)


@given(graphs(1, 8), st.data())
def test_local_complement_is_involution(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    assert local_complement(local_complement(g, v), v) == g


@settings(max_examples=100, deadline=None)
@given(graphs(1, 8), st.data())
def test_hierarchy_lc_invariant(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    assert graph_hierarchy(local_complement(g, v)) == graph_hierarchy(g)


@settings(max_examples=100, deadline=None)
@given(graphs(1, 8), st.data())
def test_hierarchy_relabel_invariant(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    assert graph_hierarchy(g.relabel(perm)) == graph_hierarchy(g)


@settings(max_examples=60, deadline=None)
@given(connected_graphs(2, 9))
def test_connected_sum_rule(g):
    h = graph_hierarchy(g)
    assert h.c[0] == 0
    assert h.c_total == sum(h.c) == g.n


# -- canonical forms and enumeration ---------------------------------------------


@settings(max_examples=60, deadline=None)
@given(graphs(1, 6), st.data())
def test_canonical_code_is_invariant_and_complete(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    assert canonical_code(g) == canonical_code(g.relabel(perm))
    assert canonical_code(canonical_form(g)) == canonical_code(g)
    other = data.draw(graphs(g.n, g.n))
    same = canonical_code(g) == canonical_code(other)
    assert same == nx.is_isomorphic(to_nx(g), to_nx(other))


@pytest.mark.parametrize("n", range(1, 6))
def test_brute_force_canonicalizer_gives_same_classes(n):
    fast = {canonical_code(g) for g in enumerate_graphs(n)}
    brute = {brute_force_canonical_code(g) for g in enumerate_graphs(n)}
    assert len(fast) == len(brute)


@pytest.mark.parametrize("n", range(1, 8))
def test_graph_counts_match_networkx_atlas(n):
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n]
    connected = [g for g in atlas if nx.is_connected(g)]
    assert len(enumerate_graphs(n)) == len(atlas)
    assert len(list(enumerate_connected_graphs(n))) == len(connected)


def test_connected_counts_small():
    assert [len(list(enumerate_connected_graphs(n))) for n in (2, 3, 5)] == [1, 2, 21]


def test_enumeration_limit():
    with pytest.raises(CapacityError):
        list(enumerate_connected_graphs(9))
    with pytest.raises(CapacityError):
        lc_orbits(6, max_vertices=5)


def test_catalog_ingestion_dedupes_and_filters():
    lines = [to_graph6(path_graph(3)), to_graph6(path_graph(3).relabel([2, 0, 1])),
             to_graph6(complete_graph(3)), to_graph6(Graph.from_edges(3, [(0, 1)]))]
    got = list(enumerate_connected_graphs(3, catalog=read_graph6_catalog("\n".join(lines))))
    assert len(got) == 2


# -- orbits ---------------------------------------------------------------------


def test_orbits_n2():
    rep = lc_orbits(2)
    assert len(rep.orbits) == 1
    assert rep.orbits[0].hierarchy.multiparty == (2,)


def test_orbits_n3_path_and_triangle_merge():
    rep = lc_orbits(3)
    assert len(rep.orbits) == 1
    assert rep.orbits[0].members == 2
    assert rep.orbits[0].hierarchy.multiparty == (2, 1)


def test_orbits_n4():
    rep = lc_orbits(4)
    assert len(rep.orbits) == 2
    assert rep.total_members == 6
    assert rep.separation


def test_orbits_n5_table():
    rep = lc_orbits(5)
    assert rep.total_members == 21
    assert [o.hierarchy.multiparty for o in rep.orbits] == [
        (4, 0, 0, 1), (3, 1, 1, 0), (2, 3, 0, 0), (0, 5, 0, 0)
    ]
    assert rep.separation


def test_orbits_n6_counts():
    rep = lc_orbits(6)
    # 11 LC classes of connected six-vertex graphs is the published count
    assert len(rep.orbits) == 11
    assert rep.total_members == 112
    for orbit in rep.orbits:
        assert sum(orbit.hierarchy.c) == 6


def test_orbit_members_share_hierarchy():
    rep = lc_orbits(5)
    for orbit in rep.orbits:
        g = orbit.representative
        for v in range(g.n):
            assert graph_hierarchy(local_complement(g, v)) == orbit.hierarchy
