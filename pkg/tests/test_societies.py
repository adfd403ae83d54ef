import json
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from surfgrid.errors import BudgetExceeded, DomainError
from surfgrid.generators import mixed_surface_grid
from surfgrid.graph import (complete_graph, cycle_graph, empty_graph,
                            grid_graph, path_graph)
from surfgrid.societies import (LinearDecomposition, Society, Transaction,
                                classify_transaction, has_cross, is_segment,
                                linear_decomposition, linear_decomposition_violations,
                                max_transaction, same_cyclic_order, segment_between,
                                segments, transaction_depth, transaction_violations)

from conftest import graphs, to_nx


@st.composite
def societies(draw, max_n=7, max_omega=6):
    g = draw(graphs(min_n=1, max_n=max_n))
    om = draw(st.permutations(range(g.n)))
    size = draw(st.integers(1, min(max_omega, g.n)))
    return Society(g, tuple(om[:size]))


def arcs(omega):
    n = len(omega)
    out = {frozenset(omega)}
    for start in range(n):
        for length in range(1, n):
            out.add(frozenset(omega[(start + t) % n] for t in range(length)))
    return out


def oracle_depth(soc):
    """Menger number maximised over every pair of disjoint segments."""
    h = to_nx(soc.graph)
    best = 0
    segs = list(arcs(soc.omega))
    for a in segs:
        for b in segs:
            if a & b:
                continue
            aux = h.copy()
            aux.add_edges_from(("s", v) for v in a)
            aux.add_edges_from((v, "t") for v in b)
            best = max(best, nx.algorithms.connectivity.local_node_connectivity(aux, "s", "t"))
    return best


def oracle_cross(soc):
    """True when two disjoint paths join interleaved Ω pairs with no inner Ω vertex."""
    om = list(soc.omega)
    h = to_nx(soc.graph)
    inner = [v for v in h if v not in set(om)]
    n = len(om)
    for i, j in combinations(range(n), 2):
        for k in range(i + 1, j):
            for l in list(range(j + 1, n)) + list(range(i)):
                s1, t1, s2, t2 = om[i], om[j], om[k], om[l]
                sub = h.subgraph(inner + [s1, t1])
                for p in nx.all_simple_paths(sub, s1, t1):
                    rest = h.subgraph([v for v in inner if v not in p] + [s2, t2])
                    if nx.has_path(rest, s2, t2):
                        return True
    return False


# ---------------------------------------------------------------- segments

def test_single_vertex_is_segment():
    assert is_segment([0, 1, 2, 3], {2})


def test_antipodal_pair_is_not_segment():
    assert not is_segment([0, 1, 2, 3], {0, 2})


def test_segment_wrapping_to_whole_order():
    assert segment_between([4, 5, 6, 7], 6, 5) == [6, 7, 4, 5]
    assert segment_between([4, 5, 6, 7], 5, 7) == [5, 6, 7]


def test_segments_enumeration_matches_cyclic_arcs():
    om = [3, 1, 4, 0, 2]
    listed = list(segments(om))
    assert set(listed) == arcs(om)
    assert len(listed) == len(om) * (len(om) - 1) + 1


@given(st.permutations(range(6)), st.sets(st.integers(0, 5)))
def test_is_segment_agrees_with_arc_enumeration(om, part):
    expected = not part or frozenset(part) in arcs(list(om))
    assert is_segment(list(om), part) == expected


def test_same_cyclic_order_rotation_and_reversal():
    assert same_cyclic_order([0, 1, 2, 3], [2, 3, 0, 1])
    assert same_cyclic_order([0, 1, 2, 3], [1, 0, 3, 2])
    assert not same_cyclic_order([0, 1, 2, 3], [0, 2, 1, 3])


# ----------------------------------------------------------------- society

def test_society_rejects_repeats_and_strangers():
    with pytest.raises(DomainError):
        Society(path_graph(3), (0, 0))
    with pytest.raises(DomainError):
        Society(path_graph(3), (0, 5))


def test_society_json_round_trip():
    soc = Society(cycle_graph(5), (4, 0, 2))
    back = Society.from_json_obj(json.loads(json.dumps(soc.to_json_obj())))
    assert back == soc


# ------------------------------------------------------------------- depth

def test_depth_cycle_is_two():
    assert transaction_depth(Society(cycle_graph(6), tuple(range(6)))) == 2


def test_depth_single_vertex_is_zero():
    assert transaction_depth(Society(path_graph(3), (1,))) == 0


def test_depth_k4_is_two():
    assert transaction_depth(Society(complete_graph(4), (0, 1, 2, 3))) == 2


def test_depth_omega_limit():
    with pytest.raises(BudgetExceeded):
        transaction_depth(Society(cycle_graph(20), tuple(range(20))))


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(societies())
def test_max_transaction_matches_oracle(soc):
    t = max_transaction(soc)
    assert t.order == oracle_depth(soc)
    if t.order:
        assert transaction_violations(soc, t.paths, t.A, t.B) == []


# ---------------------------------------------------------- classification

def test_classify_nested_paths_planar():
    om = list(range(6))
    assert classify_transaction([(0, 9, 5), (1, 8, 4)], om).kind == "planar"


def test_classify_single_path_planar():
    assert classify_transaction([(0, 7, 3)], list(range(6))).kind == "planar"


def test_classify_two_crossing_paths_is_cross():
    c = classify_transaction([(0, 2), (1, 3)], [0, 1, 2, 3])
    assert (c.kind, c.thickness) == ("cross", 1)


def test_classify_rejects_endpoints_off_omega():
    with pytest.raises(DomainError):
        classify_transaction([(0, 9)], [0, 1, 2])


def test_classify_empty():
    assert classify_transaction([], [0, 1]).kind == "none"


def test_crosscap_bundle_k2():
    lg = mixed_surface_grid(2, ["crosscap"])
    om = list(range(lg.length))
    (rec,) = [r for r in lg.transactions if r.kind == "crosscap"]
    c = classify_transaction(rec.paths, om)
    assert (c.kind, c.thickness) == ("crosscap", 4)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("kinds", [["handle"], ["crosscap"], ["crosscap", "handle", "crosscap"]])
def test_generator_kinds_classified(k, kinds):
    lg = mixed_surface_grid(k, kinds)
    om = list(range(lg.length))
    for rec in lg.transactions:
        c = classify_transaction(rec.paths, om)
        assert c.kind == rec.kind
        assert c.thickness == (2 * k if rec.kind == "crosscap" else k)


@given(st.integers(3, 5), st.integers(0, 9), st.booleans())
def test_classify_invariant_under_rotation(n, shift, flip):
    # crosscap pattern u_1..u_n v_1..v_n laid on 0..2n-1
    paths = [(i, n + i) for i in range(n)]
    om = list(range(2 * n))
    s = shift % (2 * n)
    om = om[s:] + om[:s]
    if flip:
        om.reverse()
    assert classify_transaction(paths, om).kind == "crosscap"


def test_handle_pattern_by_hand():
    # u1 u2 u3 u4 v2 v1 v4 v3
    om = list(range(8))
    paths = [(0, 5), (1, 4), (2, 7), (3, 6)]
    c = classify_transaction(paths, om)
    assert (c.kind, c.thickness) == ("handle", 2)


# ------------------------------------------------------------------- cross

def test_k4_has_cross():
    got = has_cross(Society(complete_graph(4), (0, 1, 2, 3)))
    assert got is not None
    assert sorted(tuple(sorted((p[0], p[-1]))) for p in got) == [(0, 2), (1, 3)]


def test_cycle_has_no_cross():
    assert has_cross(Society(cycle_graph(7), tuple(range(7)))) is None


def test_grid_perimeter_has_no_cross():
    perimeter = (0, 1, 2, 5, 8, 7, 6, 3)
    assert has_cross(Society(grid_graph(3, 3), perimeter)) is None


def test_grid_scrambled_perimeter_has_cross():
    assert has_cross(Society(grid_graph(3, 3), (0, 2, 1, 5, 8, 7, 6, 3))) is not None


@settings(max_examples=60, deadline=None)
@given(societies(max_n=7, max_omega=6))
def test_has_cross_matches_oracle(soc):
    got = has_cross(soc)
    assert (got is not None) == oracle_cross(soc)
    if got is not None:
        p, q = got
        assert transaction_violations(soc, [p, q]) == []
        om = set(soc.omega)
        assert not om.intersection(p[1:-1]) and not om.intersection(q[1:-1])
        assert classify_transaction([p, q], soc.omega).kind == "cross"


@settings(max_examples=40, deadline=None)
@given(societies(max_n=7, max_omega=6))
def test_no_cross_means_no_interleaved_transaction(soc):
    if has_cross(soc) is not None:
        return
    t = max_transaction(soc)
    for p, q in combinations(t.paths, 2):
        assert classify_transaction([p, q], soc.omega).kind != "cross"


# --------------------------------------------------- linear decompositions

def test_edgeless_society_bags_are_anchors():
    soc = Society(empty_graph(4), (2, 0, 3, 1))
    ld = linear_decomposition(soc, 0)
    assert [set(b) for b in ld.bags] == [{2}, {0}, {3}, {1}]
    assert ld.adhesion() == 0


def test_cycle_society_theta_two():
    soc = Society(cycle_graph(8), tuple(range(8)))
    ld = linear_decomposition(soc, 2)
    assert isinstance(ld, LinearDecomposition)
    assert linear_decomposition_violations(soc, ld) == []
    assert ld.adhesion() <= 4


def test_theta_zero_returns_witness():
    soc = Society(path_graph(3), (0, 2))
    out = linear_decomposition(soc, 0)
    assert isinstance(out, Transaction) and out.order >= 1
    assert transaction_violations(soc, out.paths, out.A, out.B) == []


def test_empty_omega_rejected():
    with pytest.raises(DomainError):
        linear_decomposition(Society(path_graph(2), ()), 1)


def test_violations_catch_broken_interval():
    soc = Society(path_graph(3), (0, 1, 2))
    ld = LinearDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 0})), (0, 1, 2))
    assert any("interval" in v for v in linear_decomposition_violations(soc, ld))


def test_violations_catch_anchor_order():
    soc = Society(path_graph(3), (0, 1, 2))
    ld = LinearDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({1})), (0, 2, 1))
    assert any("follow" in v for v in linear_decomposition_violations(soc, ld))


@settings(max_examples=60, deadline=None)
@given(societies(max_n=8, max_omega=7), st.integers(0, 3))
def test_linear_decomposition_two_outcomes(soc, theta):
    out = linear_decomposition(soc, theta)
    if isinstance(out, Transaction):
        assert out.order > theta
        assert transaction_violations(soc, out.paths, out.A, out.B) == []
    else:
        assert linear_decomposition_violations(soc, out) == []
        assert out.adhesion() <= 2 * theta


def test_decomposition_json_shape():
    soc = Society(cycle_graph(4), (0, 1, 2, 3))
    obj = linear_decomposition(soc, 2).to_json_obj()
    assert obj["anchors"] == [0, 1, 2, 3]
    assert all(b == sorted(b) for b in obj["bags"])
