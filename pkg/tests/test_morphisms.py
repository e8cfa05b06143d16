import itertools

import pytest
from hypothesis import given, settings

from conftest import frames
from kframes import (AlphabetError, FrameError, WorldMap, chain, clone_world, cluster, find_p_morphism,
                     is_isomorphic, is_onto_p_morphism, is_p_morphism, rectangle, tack2)
from kframes.formulas import parse, valid_on_frame
from kframes.morphisms import BUDGET_EXHAUSTED, FOUND, NONE


def brute_onto_p_morphism_exists(F, G):
    for images in itertools.product(range(G.n), repeat=F.n):
        f = WorldMap(F.n, G.n, images)
        if is_onto_p_morphism(f, F, G):
            return True
    return False


def test_world_map_validation_and_composition():
    with pytest.raises(FrameError):
        WorldMap(2, 2, (0,))
    with pytest.raises(FrameError):
        WorldMap(2, 2, (0, 2))
    f = WorldMap(3, 2, (0, 1, 1))
    g = WorldMap(2, 1, (0, 0))
    assert f.then(g).images == (0, 0, 0)
    assert WorldMap.identity(3).then(f) == f
    with pytest.raises(FrameError):
        g.then(f)


def test_identity_is_p_morphism():
    for F in (chain(3), rectangle(2, 3), tack2(2, 2)):
        assert is_onto_p_morphism(WorldMap.identity(F.n), F, F)


def test_cluster_collapse():
    f = WorldMap(3, 1, (0, 0, 0))
    assert is_onto_p_morphism(f, cluster(3), cluster(1))


def test_forth_violation_reported():
    v = is_p_morphism(WorldMap(2, 2, (1, 0)), chain(2), chain(2))
    assert not v and v.clause == "forth" and v.label == "1" and v.witness == (0, 1)


def test_back_violation_reported():
    # the last world of a chain has no successor, so sending it into a cluster breaks back
    F = chain(2)
    v = is_p_morphism(WorldMap(2, 2, (0, 0)), F, cluster(2))
    assert not v and v.clause == "back" and v.witness == (0, 1)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        is_p_morphism(WorldMap.identity(1), cluster(1), cluster(1, "2"))


def test_rect44_onto_rect22():
    res = find_p_morphism(rectangle(4, 4), rectangle(2, 2))
    assert res.status == FOUND
    assert is_onto_p_morphism(res.map, rectangle(4, 4), rectangle(2, 2))


def test_search_outcomes_on_chains():
    assert find_p_morphism(chain(2), chain(3)).status == NONE  # too few worlds
    assert find_p_morphism(cluster(2), chain(2)).status == NONE
    res = find_p_morphism(chain(3), chain(2))  # reflexive chains can merge neighbours
    assert res and is_onto_p_morphism(res.map, chain(3), chain(2))


def test_budget_exhaustion():
    res = find_p_morphism(rectangle(4, 4), rectangle(2, 2), budget=3)
    assert res.status == BUDGET_EXHAUSTED and res.map is None


def test_clone_maps_back_onto_original():
    F = tack2(2, 2)
    C = clone_world(F, 4)
    res = find_p_morphism(C, F)
    assert res and is_onto_p_morphism(res.map, C, F)


def test_is_isomorphic():
    a = rectangle(2, 3)
    assert is_isomorphic(a, a) is not None
    assert is_isomorphic(a, rectangle(3, 2)) is None
    assert is_isomorphic(chain(2), cluster(2)) is None


def test_onto_p_morphisms_preserve_validity():
    # validity on the source transfers to the image
    F, G = rectangle(4, 4), rectangle(2, 2)
    assert find_p_morphism(F, G)
    for text in ("<1><2>p0 -> <2><1>p0", "<1>[2]p0 -> [2]<1>p0", "p0 -> [1]<1>p0"):
        f = parse(text)
        assert valid_on_frame(F, f, method="auto").valid
        assert valid_on_frame(G, f).valid


@settings(max_examples=150, deadline=None)
@given(frames(("1",), 4), frames(("1",), 3))
def test_search_agrees_with_brute_force_unimodal(F, G):
    res = find_p_morphism(F, G)
    assert res.status in (FOUND, NONE)
    assert (res.status == FOUND) == brute_onto_p_morphism_exists(F, G)
    if res:
        assert is_onto_p_morphism(res.map, F, G)


@settings(max_examples=100, deadline=None)
@given(frames(("1", "2"), 4), frames(("1", "2"), 2))
def test_search_agrees_with_brute_force_bimodal(F, G):
    res = find_p_morphism(F, G)
    assert (res.status == FOUND) == brute_onto_p_morphism_exists(F, G)
