import json

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from surfgrid.errors import DomainError
from surfgrid.graph import (complete_graph, connected_components, contract_partition,
                            cycle_graph, delete_vertices, from_dimacs, from_edge_list,
                            from_json_obj, grid_graph, induced_subgraph, is_connected_set,
                            line_graph, path_graph, to_dimacs, to_dot, to_json_obj)

from conftest import graphs, to_nx


def test_rejects_loops_duplicates_and_range():
    with pytest.raises(DomainError):
        from_edge_list(3, [(1, 1)])
    with pytest.raises(DomainError):
        from_edge_list(3, [(0, 1), (1, 0)])
    with pytest.raises(DomainError):
        from_edge_list(3, [(0, 3)])


def test_small_families():
    assert complete_graph(5).m == 10
    assert path_graph(4).m == 3
    assert cycle_graph(6).m == 6
    assert grid_graph(3, 4).m == 3 * 3 + 2 * 4


@given(graphs())
def test_dimacs_round_trip(g):
    assert from_dimacs(to_dimacs(g)) == g


@given(graphs())
def test_json_round_trip(g):
    assert from_json_obj(json.loads(json.dumps(to_json_obj(g)))) == g


def test_dimacs_header_mismatch():
    with pytest.raises(DomainError):
        from_dimacs("p edge 3 2\ne 1 2\n")


def test_dot_lists_every_edge():
    text = to_dot(cycle_graph(4))
    assert text.count("--") == 4


@given(graphs(max_n=9))
def test_components_match_networkx(g):
    ours = sorted(sorted(c) for c in connected_components(g))
    theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs


@given(graphs(min_n=1, max_n=8), st.data())
def test_connected_set_matches_networkx(g, data):
    part = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    assert is_connected_set(g, part) == nx.is_connected(to_nx(g).subgraph(part))


@given(graphs(min_n=1, max_n=8), st.data())
def test_induced_and_delete_agree(g, data):
    gone = data.draw(st.sets(st.integers(0, g.n - 1)))
    keep = [v for v in range(g.n) if v not in gone]
    a, _ = induced_subgraph(g, keep)
    b, _ = delete_vertices(g, gone)
    assert a == b
    assert a.m == to_nx(g).subgraph(keep).number_of_edges()


@given(graphs(max_n=7))
def test_line_graph_matches_networkx(g):
    ours = line_graph(g)
    theirs = nx.line_graph(to_nx(g))
    assert ours.n == theirs.number_of_nodes()
    assert ours.m == theirs.number_of_edges()


def test_contract_partition_of_grid_row_blocks():
    g = grid_graph(3, 3)
    rows = [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
    assert contract_partition(g, rows) == path_graph(3)
