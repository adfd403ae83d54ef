import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from surfgrid.errors import DomainError
from surfgrid.generators import (CROSSCAP, HANDLE, block_grid_rows, branch_paths,
                                 check_grid_map, crossed_grid, crosscap_grid,
                                 cylindrical_grid, dhat, dtilde, dyck_grid, dyck_wall,
                                 elementary_wall, hairy_wall, handle_grid,
                                 mixed_surface_grid, special_variants, wall_perimeter)
from surfgrid.graph import connected_components
from surfgrid.width import is_planar

from conftest import to_nx

kinds_st = st.lists(st.sampled_from([HANDLE, CROSSCAP]), min_size=1, max_size=3)


def interleave(a, b):
    """Do chords a and b cross on a circle?"""
    a0, a1 = sorted(a)
    return (a0 < b[0] < a1) != (a0 < b[1] < a1)


def test_cylindrical_grid_shape():
    lg = cylindrical_grid(3, 7)
    assert lg.graph.n == 21
    assert lg.graph.m == 3 * 7 + 2 * 7
    assert all(lg.graph.degree(v) in (3, 4) for v in range(21))


@given(st.integers(0, 2), st.integers(0, 2), st.integers(1, 4))
def test_dyck_base_vertex_count(h, c, k):
    lg = dyck_grid(h, c, k)
    assert len(lg.coord) == 4 * (c + h + 1) * k * k
    assert lg.graph.n == len(lg.coord)


@given(kinds_st, st.integers(1, 3))
def test_transaction_shapes(kinds, k):
    """Crosscap chords all cross each other.  A handle's bundles are each
    nested, and every chord of one bundle crosses every chord of the other."""
    lg = mixed_surface_grid(k, kinds)
    pos = {v: lg.coord[v][1] for v in lg.coord}
    assert lg.kinds() == kinds
    for rec in lg.transactions:
        chords = [(pos[a], pos[b]) for a, b in rec.endpoints()]
        assert all(rec.base < p <= rec.base + 4 * k for ch in chords for p in ch)
        assert len({p for ch in chords for p in ch}) == 4 * k
        if rec.kind == CROSSCAP:
            assert all(interleave(x, y) for i, x in enumerate(chords) for y in chords[i + 1:])
        else:
            one, two = chords[:k], chords[k:]
            for bundle in (one, two):
                assert not any(interleave(x, y) for i, x in enumerate(bundle)
                               for y in bundle[i + 1:])
            assert all(interleave(x, y) for x in one for y in two)


@given(kinds_st, st.integers(1, 3))
def test_endpoints_on_first_cycle_and_degrees(kinds, k):
    lg = mixed_surface_grid(k, kinds)
    for rec in lg.transactions:
        for a, b in rec.endpoints():
            assert lg.coord[a][0] == 1 and lg.coord[b][0] == 1
    assert lg.graph.max_degree() <= 4
    annulus = [lg.vertex(1, j) for j in range(1, 4 * k + 1)]
    assert all(lg.graph.degree(v) == (3 if k > 1 else 2) for v in annulus)


def test_subdivisions_add_path_vertices():
    lg = mixed_surface_grid(2, [HANDLE, CROSSCAP], subdivisions=2)
    assert len(lg.subdivision_vertices) == 2 * (2 * 2 * 2)
    assert all(len(p) == 4 for rec in lg.transactions for p in rec.paths)
    per_path = list(range(8))
    lg = mixed_surface_grid(2, [HANDLE, CROSSCAP], subdivisions=per_path)
    assert len(lg.subdivision_vertices) == sum(per_path)
    with pytest.raises(DomainError):
        mixed_surface_grid(2, [HANDLE], subdivisions=[1, 2])


def test_blocks_planarity():
    # networkx planarity as an independent check of the non-planar blocks
    assert is_planar(cylindrical_grid(3, 12).graph)
    assert not is_planar(handle_grid(2).graph)
    assert not is_planar(crosscap_grid(2).graph)


def test_domain_errors():
    with pytest.raises(DomainError):
        dyck_grid(0, 3, 2)
    with pytest.raises(DomainError):
        mixed_surface_grid(0, [HANDLE])
    with pytest.raises(DomainError):
        mixed_surface_grid(2, ["tube"])
    with pytest.raises(DomainError):
        dtilde(0, 0, 2)
    with pytest.raises(DomainError):
        dyck_wall(1, 0, 2)


def test_dyck_normalises_empty_surface():
    assert dyck_grid(-1, 2, 2).graph == dyck_grid(0, 0, 2).graph


@pytest.mark.parametrize("k", [3, 4, 5])
def test_elementary_wall_is_hexagonal_lattice(k):
    # independent recipe: networkx builds the same brick pattern from hexagons
    w = elementary_wall(k)
    assert nx.is_isomorphic(to_nx(w), nx.hexagonal_lattice_graph(k - 1, k - 1))
    assert w.max_degree() == 3


def test_wall_perimeter_is_a_cycle():
    w = elementary_wall(4)
    per = set(wall_perimeter(4))
    sub = to_nx(w).subgraph(per)
    assert nx.is_connected(sub)
    assert all(d == 2 for _, d in sub.degree())


@pytest.mark.parametrize("h,c", [(0, 1), (1, 0), (1, 1), (0, 2), (2, 2)])
@pytest.mark.parametrize("t", [3, 4])
def test_dyck_wall_is_subcubic_and_connected(h, c, t):
    g = dyck_wall(h, c, t)
    assert g.max_degree() <= 3
    assert len(connected_components(g)) == 1


@given(st.integers(0, 2), st.integers(0, 2), st.integers(1, 3))
def test_dtilde_drops_annulus(h, c, k):
    if (h, c) == (0, 0):
        return
    full, cut = dyck_grid(h, c, k), dtilde(h, c, k)
    assert cut.graph.n == full.graph.n - 4 * k * k
    assert cut.graph.m == full.graph.m - (4 * k * k + 4 * k * (k - 1))
    assert cut.kinds() == full.kinds()


def test_dhat_satellites():
    lg = dhat(1, 2, 8)
    sats = lg.extra["satellites"]
    assert len(sats) == 3 * 8
    for s in sats:
        nb = sorted(lg.graph.neighbors(s))
        assert len(nb) == 4
        assert all(lg.coord[v][0] == 8 for v in nb)
        cols = [lg.coord[v][1] for v in nb]
        assert cols == list(range(cols[0], cols[0] + 4))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_crossed_grid_has_k_squared_k4s(k):
    g = to_nx(crossed_grid(k))
    k4 = [q for q in nx.enumerate_all_cliques(g) if len(q) == 4]
    assert len(k4) == k * k
    assert len({v for q in k4 for v in q}) == 4 * k * k


def test_hairy_wall():
    g, x, s = hairy_wall(4)
    paths = branch_paths(elementary_wall(4))
    assert len(x) == len(s) == len(paths)
    assert all(g.degree(v) == 1 for v in x)
    assert all(g.degree(v) == 3 for v in s)
    with pytest.raises(DomainError):
        hairy_wall(4, len(paths) + 1)


def test_special_variants_dispatch():
    assert special_variants("dtilde", h=1, c=0, k=2).graph == dtilde(1, 0, 2).graph
    assert special_variants("crossed", k=2) == crossed_grid(2)
    with pytest.raises(DomainError):
        special_variants("mystery")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_block_rows_form_grids(k):
    lg = mixed_surface_grid(k, [HANDLE, CROSSCAP])
    for rec in lg.transactions:
        for rows in block_grid_rows(lg, rec):
            assert check_grid_map(lg.graph, rows) == []
    # a broken map is caught
    rows = block_grid_rows(lg, lg.transactions[0])[0]
    assert check_grid_map(lg.graph, [rows[0][::-1]] + rows[1:]) or k == 1
