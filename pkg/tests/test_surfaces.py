from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from surfgrid.errors import DomainError
from surfgrid.surfaces import (EMPTY, KLEIN_BOTTLE, PROJECTIVE_PLANE, SPHERE, TORUS,
                               Surface, closure_witness, contained_in,
                               contained_in_by_search, downset, genus_class, hasse_dot,
                               normalize, parse_surface, parse_surface_set, prevalent,
                               sobs, surfaces_up_to)

ALL = surfaces_up_to(6)
surface_st = st.sampled_from(ALL)


def oracle_sobs(s):
    """Minimal surfaces outside s, by brute force over the search-based order."""
    s = set(s)
    outside = [x for x in surfaces_up_to(8) if x not in s]
    return {x for x in outside
            if not any(y != x and contained_in_by_search(y, x) for y in outside)}


def closed_sets(max_genus):
    """Every down-closed set generated by an antichain of surfaces up to max_genus."""
    pool = surfaces_up_to(max_genus)
    seen = {frozenset()}
    for r in range(1, 4):
        for tops in combinations(pool, r):
            seen.add(frozenset(downset(*tops)))
    return sorted(seen, key=lambda s: sorted(x.sort_key() for x in s))


def test_parse_aliases_and_pairs():
    assert parse_surface("torus") == TORUS
    assert parse_surface("(0, 2)") == KLEIN_BOTTLE
    assert parse_surface("(1,1)") == normalize(0, 3)
    assert parse_surface("(-1,2)") == SPHERE
    assert parse_surface_set("empty, sphere") == {EMPTY, SPHERE}
    assert parse_surface_set("(1,0),(0,1)") == {TORUS, PROJECTIVE_PLANE}
    with pytest.raises(DomainError):
        parse_surface("donut")


@given(st.integers(0, 4), st.integers(0, 6))
def test_normalize_keeps_genus_and_orientability(h, c):
    s = normalize(h, c)
    assert s.genus == 2 * h + c
    assert s.orientable == (c == 0)
    assert s.c <= 2


@given(surface_st, surface_st)
def test_containment_matches_search(a, b):
    assert contained_in(a, b) == contained_in_by_search(a, b)


@given(surface_st, surface_st, surface_st)
def test_containment_is_a_partial_order(a, b, c):
    assert contained_in(a, a)
    if contained_in(a, b) and contained_in(b, a):
        assert a == b
    if contained_in(a, b) and contained_in(b, c):
        assert contained_in(a, c)


def test_small_examples():
    assert set(sobs([])) == {EMPTY}
    assert set(sobs([EMPTY])) == {SPHERE}
    assert set(sobs([EMPTY, SPHERE])) == {TORUS, PROJECTIVE_PLANE}
    assert prevalent([EMPTY]) == SPHERE
    assert prevalent([EMPTY, SPHERE]) == SPHERE


def test_klein_bottle_downset_has_torus_as_only_obstruction():
    assert sobs(downset(KLEIN_BOTTLE)) == [TORUS]


@pytest.mark.parametrize("g", range(-1, 7))
def test_genus_class_closed_form(g):
    if g == -1:
        expected = {SPHERE}
    elif g % 2 == 0:
        t = g // 2
        expected = {normalize(t + 1, 0), normalize(t, 1)}
    else:
        t = (g - 1) // 2
        expected = {normalize(t, 2), normalize(t + 1, 0)}
    assert set(sobs(genus_class(g))) == expected


@pytest.mark.parametrize("s", closed_sets(4))
def test_sobs_matches_bruteforce(s):
    assert set(sobs(s)) == oracle_sobs(s)


@pytest.mark.parametrize("s", closed_sets(4))
def test_prevalent_is_orientable_and_below_every_obstruction(s):
    p = prevalent(s)
    assert p.orientable
    assert all(contained_in(p, o) for o in sobs(s))


@pytest.mark.parametrize("s", closed_sets(4))
def test_single_obstruction_condition(s):
    s = set(s)
    g = max((x.genus for x in s), default=-1)
    top = [x for x in s if x.genus == g]
    single = (g > 0 and g % 2 == 0 and all(not x.orientable for x in top)) \
        or s <= {EMPTY}
    obs = sobs(s)
    assert (len(obs) == 1) == single
    assert (prevalent(s) in obs) == (obs == [prevalent(s)])


def test_sobs_rejects_open_sets():
    with pytest.raises(DomainError):
        sobs([TORUS])
    assert closure_witness([EMPTY, TORUS]) == (TORUS, SPHERE)


def test_hasse_diagram_edges():
    dot = hasse_dot(2)
    assert '"sphere" -> "torus"' in dot
    assert '"projective-plane" -> "klein-bottle"' in dot
    assert '"sphere" -> "klein-bottle"' not in dot
