import pytest

from kframes import (AlphabetError, Equivalence, Frame, FrameError, FrameFamily, Relation,
                     antichain, chain, clone_world, cluster, clusters, disjoint_union, gap_cluster,
                     height, is_isomorphic, is_p_morphism, lift_bimodal, max_cluster_size, point,
                     product, productivize, quotient, rectangle, saw, semi_ordered_sum, star,
                     sum_over, tack1, tack2, terminal_points)
from kframes.formulas import parse, valid_on_frame


def test_generators():
    assert cluster(1)["1"].edges == [(0, 0)]
    assert height(chain(3)) == 3
    assert chain(3, reflexive=False)["1"].edges == [(0, 1), (0, 2), (1, 2)]
    assert antichain(3)["1"] == Relation.diagonal(3)
    for make in (cluster, lambda n: chain(n), antichain):
        with pytest.raises(FrameError):
            make(0)


def test_gap_cluster_relation():
    C = gap_cluster(4)
    assert (1, 0) not in C["1"] and (0, 1) in C["1"] and (2, 2) in C["1"]
    assert len(C["1"]) == 16 - 3


def test_product_layout_and_sizes():
    F, G = cluster(2, "1"), cluster(3, "2")
    H = product(F, G)
    assert H.n == 6 and tuple(H.alphabet) == ("1", "2")
    assert H == rectangle(2, 3)
    assert H.names[4] == "(1,1)"  # (a, b) -> a*|G| + b


def test_product_chain_times_cluster():
    H = product(chain(2), cluster(2, "2"))
    strict_h = [(a, b) for a, b in H["1"].edges if a != b]
    assert strict_h == [(0, 2), (1, 3)]
    assert set(H["2"].edges) == {(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)}


def test_product_needs_disjoint_alphabets():
    with pytest.raises(AlphabetError):
        product(cluster(2), cluster(2))


def test_rectangle():
    assert rectangle(1, 1) == Frame(1, {"1": [(0, 0)], "2": [(0, 0)]})
    R = rectangle(2, 2)
    assert all(len(R[a].successors(x)) == 2 for a in "12" for x in range(4))
    for m in range(1, 5):
        assert star(rectangle(m, m)) == Relation.full(m * m)
    with pytest.raises(FrameError):
        rectangle(0, 2)


def test_sum_over_single_index_is_summand():
    I = cluster(1)
    F = chain(3)
    assert sum_over(FrameFamily(I, (F,))) == F


def test_sum_over_chain_gives_tack():
    index = Frame(2, {"1": [(0, 1)]})
    S = sum_over(FrameFamily(index, (cluster(3), cluster(1))))
    assert is_isomorphic(S, tack1(3)) is not None


def test_sum_over_antichain_is_disjoint_union():
    index = Frame(2, {"1": []})
    S = sum_over(index, [cluster(2), chain(2)])
    assert S == disjoint_union(cluster(2), chain(2))


def test_sum_over_checks_alphabets():
    with pytest.raises(AlphabetError):
        FrameFamily(cluster(2), (cluster(1), cluster(1, "x")))
    with pytest.raises(FrameError):
        FrameFamily(cluster(2), (cluster(1),))


def test_semi_ordered_sum():
    T = semi_ordered_sum(rectangle(2, 2), point())
    assert is_isomorphic(T, tack2(2, 2)) is not None
    assert T.n == 5
    assert all(a < 4 and b < 4 or a == b == 4 for a, b in T["2"].edges)
    assert len(clusters(T)) == len(clusters(rectangle(2, 2))) + 1
    with pytest.raises(AlphabetError):
        semi_ordered_sum(cluster(2), cluster(2))


def test_lift_bimodal_matches_point():
    assert lift_bimodal(cluster(1)) == point()
    with pytest.raises(AlphabetError):
        lift_bimodal(rectangle(1, 1))


def test_quotient():
    F = chain(3)
    Q, f = quotient(F, Equivalence.diagonal(3))
    assert Q == F and f.images == (0, 1, 2)
    Q2, f2 = quotient(cluster(4), Equivalence([0, 0, 1, 1]))
    assert Q2 == cluster(2) and f2.images == (0, 0, 1, 1)


def test_equivalence_builders():
    assert list(Equivalence.from_pairs(4, [(3, 1)]).classes) == [0, 1, 2, 1]
    assert list(Equivalence.from_blocks(4, [(2, 3)]).classes) == [0, 1, 2, 2]


def test_productivize_examples():
    R = rectangle(2, 3)
    T, f = productivize(R)
    assert T == R and f.images == tuple(range(6))
    C = clone_world(rectangle(2, 2), 1)
    assert C.n == 5
    T2, f2 = productivize(C)
    assert is_isomorphic(T2, rectangle(2, 2)) is not None
    assert is_p_morphism(f2, C, T2)


def test_productivize_rejects_non_preorder():
    F = Frame(2, {"1": [(0, 1)], "2": [(0, 0), (1, 1)]})
    with pytest.raises(FrameError, match="'1'.*reflexivity"):
        productivize(F)
    G = Frame(3, {"1": [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]})
    with pytest.raises(FrameError, match="transitivity fails at \\(0, 2\\)"):
        productivize(G)


def test_saw_structure():
    S = saw(1)
    assert S.n == 4 and S.names == ("u", "v0", "w0", "w1")
    assert S["d"].edges == [(0, 1)] and S["l"].edges == [(1, 2)] and S["r"].edges == [(1, 3)]
    for k in range(1, 6):
        Sk = saw(k)
        assert Sk.n == 2 * k + 2
        tips = [Sk.index_of(f"w{i}") for i in range(k + 1)]
        assert all(len(Sk[a].successors(w)) == 0 for a in "dlr" for w in tips)
    with pytest.raises(FrameError):
        saw(0)


def test_saw_truncation_refutes_expansion_axiom():
    for k in (1, 2, 3):
        res = valid_on_frame(saw(k), parse("<d><l>p0 -> <d><r>p0"))
        assert not res.valid and res.world == 0


def test_tack1():
    assert tack1(1) == chain(2)
    for k in range(1, 5):
        T = tack1(k)
        assert T["1"].is_preorder()
        assert height(T) == 2
        assert terminal_points(T) == frozenset({k})


def test_tack2():
    T = tack2(1, 1)
    assert T.n == 2
    assert T["1"].edges == [(0, 0), (0, 1), (1, 1)]
    assert T["2"] == Relation.diagonal(2)
    assert clusters(tack2(2, 2)).blocks == ((0, 1, 2, 3), (4,))
    for k, m in [(1, 2), (2, 3), (3, 3)]:
        assert height(tack2(k, m)) == 2
        assert tack2(k, m).n == k * m + 1


def test_disjoint_union_cluster_sizes():
    assert max_cluster_size(disjoint_union(cluster(2), cluster(5))) == 5


def test_clone_world_projection_is_p_morphism():
    from kframes import WorldMap

    F = tack2(2, 2)
    for w in range(F.n):
        C = clone_world(F, w)
        proj = WorldMap(C.n, F.n, tuple(range(F.n)) + (w,))
        assert is_p_morphism(proj, C, F)


def test_quotient_merging_top_row_validates_tack_formula():
    H = product(tack1(3), cluster(2, "2"))
    phi = parse("<2><1>[1]p0 -> [1]<1>p0")
    assert not valid_on_frame(H, phi).valid
    merged, _ = quotient(H, Equivalence.from_blocks(H.n, [(H.index_of("(top,0)"),
                                                           H.index_of("(top,1)"))]))
    assert valid_on_frame(merged, phi).valid
