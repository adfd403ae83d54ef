import json

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from surfgrid.errors import BudgetExceeded, DomainError
from surfgrid.graph import (complete_graph, cycle_graph, delete_vertices, from_edge_list,
                            grid_graph, path_graph)
from surfgrid.minors import (MinorModel, SearchBudget, bg_annotated, find_minor, hadwiger,
                             make_model, validate_model)

from annotated_cases import deletion_instance, expansion_instance
from conftest import graphs, random_graph, to_nx


def oracle_has_minor(host, pattern):
    """Contract edges in every possible way and look for a monomorphism."""
    want = to_nx(pattern)
    seen = set()

    def rec(g):
        key = frozenset(frozenset(e) for e in g.edges()) | {frozenset([("n", g.number_of_nodes())])}
        if key in seen:
            return False
        seen.add(key)
        if g.number_of_nodes() < want.number_of_nodes() or \
                g.number_of_edges() < want.number_of_edges():
            return False
        if GraphMatcher(g, want).subgraph_is_monomorphic():
            return True
        for u, v in list(g.edges()):
            h = nx.contracted_nodes(g, u, v, self_loops=False)
            h = nx.convert_node_labels_to_integers(nx.Graph(h), ordering="sorted")
            if rec(h):
                return True
        return False

    return rec(to_nx(host))


def test_validate_accepts_grid_contraction():
    host = grid_graph(3, 3)
    model = make_model(path_graph(3), host, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    assert validate_model(model) == []


def test_validate_reports_each_violation():
    host = path_graph(5)
    pat = path_graph(3)
    assert any("disjointness" in v for v in validate_model(make_model(pat, host, [[0, 1], [1, 2], [3]])))
    assert any("connectivity" in v for v in validate_model(make_model(pat, host, [[0, 2], [1], [3]])))
    assert any("missing edge" in v for v in validate_model(make_model(pat, host, [[0], [1], [3]])))
    assert any("empty" in v for v in validate_model(make_model(pat, host, [[0], [], [3]])))
    assert any("roots" in v for v in validate_model(make_model(pat, host, [[0], [1], [2]], roots=[0, 1])))


def test_model_json_round_trip():
    host = grid_graph(2, 3)
    m = make_model(path_graph(2), host, [[0, 1, 2], [3, 4, 5]], roots=[0, 3])
    back = MinorModel.from_json(m.to_json())
    assert back == m
    assert json.loads(m.to_json())["branch_sets"]["1"] == [3, 4, 5]


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(graphs(min_n=1, max_n=6), graphs(min_n=1, max_n=4))
def test_find_minor_agrees_with_contraction_oracle(host, pattern):
    got = find_minor(host, pattern)
    if got is not None:
        assert validate_model(got) == []
    assert (got is not None) == oracle_has_minor(host, pattern)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=7), st.data())
def test_rooted_models_hit_roots(host, data):
    roots = data.draw(st.sets(st.integers(0, host.n - 1), min_size=1))
    pattern = path_graph(data.draw(st.integers(1, 3)))
    got = find_minor(host, pattern, roots)
    if got is not None:
        assert validate_model(got) == []
        assert all(set(s) & roots for s in got.branch_sets)
    # a rooted model is in particular a model
    if got is not None:
        assert find_minor(host, pattern) is not None


def test_known_hadwiger_numbers():
    assert hadwiger(complete_graph(5))[0] == 5
    k33 = from_edge_list(6, [(a, b) for a in range(3) for b in range(3, 6)])
    assert hadwiger(k33)[0] == 4
    assert hadwiger(cycle_graph(7))[0] == 3


def test_grid_in_grid():
    assert bg_annotated(grid_graph(3, 3))[0] == 3
    k, model = bg_annotated(grid_graph(4, 4), x=[5, 6, 9, 10])
    assert k == 2 and validate_model(model) == []


def test_budget_is_enforced():
    g = random_graph(14, 0.4, 3)
    with pytest.raises(BudgetExceeded):
        find_minor(g, complete_graph(6), budget=SearchBudget(node_limit=10))
    with pytest.raises(BudgetExceeded):
        find_minor(g, complete_graph(6), budget=SearchBudget(max_host_vertices=5))
    with pytest.raises(DomainError):
        SearchBudget(node_limit=0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rooted_grid_value_is_monotone_under_rooted_minors(seed):
    h, y, g, x, sets = expansion_instance(seed)
    assert validate_model(make_model(h, g, sets)) == []
    assert all(set(sets[v]) & set(x) for v in y)
    assert bg_annotated(g, x)[0] >= bg_annotated(h, y)[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rooted_grid_value_deletion_bound(seed):
    g, x, a = deletion_instance(seed)
    rest, index = delete_vertices(g, a)
    lhs = bg_annotated(g, sorted(set(x) | set(a)))[0]
    assert lhs <= bg_annotated(rest, [index[v] for v in x])[0] + len(a)


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(graphs(min_n=1, max_n=7))
def test_unrooted_grid_value_matches_contraction_oracle(g):
    k = bg_annotated(g)[0]
    assert oracle_has_minor(g, grid_graph(k, k))
    if (k + 1) ** 2 <= g.n:
        assert not oracle_has_minor(g, grid_graph(k + 1, k + 1))
