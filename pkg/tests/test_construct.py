import pytest
from hypothesis import given, settings

from duncehat import construct as cons
from duncehat import delta
from duncehat.construct import Branch, Component, Construct, Gluing
from duncehat.lattice import blown_up_plane, positive_inertia

from strategies import small_constructs


@pytest.fixture(scope="module")
def X():
    return cons.duncehat_construct()


def test_valid_and_one_triple_point(X):
    assert cons.validate(X).ok
    assert len(X.triple_points) == 1
    tp = X.triple_points[0]
    assert tp.sheets == (0, 0, 0)
    assert sorted(s.mark for s in tp.slots) == ["p1", "p2", "p3"]


def test_dual_complex_is_dunce_hat(X):
    dc = cons.dual_complex(X)
    assert dc.counts == (1, 1, 1)
    assert delta.is_isomorphic(dc, delta.dunce_hat())
    assert delta.free_faces(dc) == []


def test_triple_point_formula(X):
    (edge,) = cons.triple_point_check(X)
    assert edge.degrees == (-1, -2)
    assert edge.triple_points == 3
    assert edge.total == 0 and edge.ok


def test_without_extra_blowup():
    (edge,) = cons.triple_point_check(cons.duncehat_construct(extra_blowup=False))
    assert edge.degrees == (-1, -1)
    assert edge.total == 1
    assert not edge.ok


def test_numbers(X):
    assert cons.smoothing_euler(X) == 11
    assert cons.h11(X) == 9
    assert cons.expected_moduli_dim(X) == 9
    assert cons.singular_locus_genus(X) == 2
    assert cons.dsemistable_expected_dim(X) == 7
    assert cons.structure_sheaf_cohomology(X) == (1, 0, 0)


def test_divisor_euler(X):
    # Two cubics, two nodes, one crossing: 2 + 2 - 1 - 1 - 1.
    assert cons.divisor_euler(X, 0) == 1


def test_inertia_both_diagonals(X):
    (emb,) = cons.combinatorial_check(X, "embedded")
    (nrm,) = cons.combinatorial_check(X, "normalized")
    assert emb.matrix == ((1, 1), (1, 0))
    assert nrm.matrix == ((-1, 1), (1, -2))
    assert emb.inertia == 1 and nrm.inertia == 0
    with pytest.raises(ValueError):
        cons.link_matrix(X, 0, "other")


def test_gluing_unobstructed(X):
    (g,) = cons.gluing_unobstructed_check(X)
    assert g.triple_points == 3 and g.degree == -1 and g.ok


def test_empty_construct():
    E = Construct()
    assert cons.validate(E).ok
    assert cons.smoothing_euler(E) == 0
    assert cons.triple_point_check(E) == []
    assert cons.structure_sheaf_cohomology(E) == (0, 0, 0)
    assert cons.singular_locus_genus(E) == 0
    with pytest.raises(cons.NotPointLikeError):
        cons.h11(E)


def test_structural_violations():
    L = blown_up_plane(1)
    comp = Component(L, (Branch(L.divisor(1), 0, ("a",)), Branch(L.divisor(1), 0, ("b",))))
    missing = Construct((comp,), (Gluing((0, 0), (0, 5), (("a", "b"),)),))
    assert any("(0, 5)" in v for v in cons.validate(missing).violations)
    with pytest.raises(cons.InvalidConstructError):
        cons.dual_complex(missing)
    unknown_mark = Construct((comp,), (Gluing((0, 0), (0, 1), (("a", "zz"),)),))
    assert not cons.validate(unknown_mark).ok


def test_unmarked_node_on_glued_branch_rejected():
    L = blown_up_plane(9)
    c = L.divisor(3, *([-1] * 9))
    comp = Component(L, (Branch(c, 1, ()), Branch(c, 0, ())))
    assert not cons.validate(Construct((comp,), (Gluing((0, 0), (0, 1)),))).ok


def test_disjoint_union_adds_up(X):
    Y = cons.disjoint_union(X, X)
    assert cons.validate(Y).ok
    assert cons.smoothing_euler(Y) == 22
    assert cons.structure_sheaf_cohomology(Y) == (2, 0, 0)
    assert cons.singular_locus_genus(Y) == 4
    assert cons.expected_moduli_dim(Y) == 18


@settings(max_examples=100, deadline=None)
@given(small_constructs())
def test_cohomology_equals_dual_betti(pair):
    X, cx = pair
    assert cons.validate(X).ok
    dc = cons.dual_complex(X)
    assert cons.structure_sheaf_cohomology(X) == delta.betti_numbers(dc) == delta.betti_numbers(cx)
    if max(cx.counts) <= 4:
        assert delta.is_isomorphic(dc, cx)


def test_label_search_torus_and_genus_two():
    assert cons.search_combinatorial_labels(delta.torus()).found
    res = cons.search_combinatorial_labels(cons.genus_two_surface())
    assert not res.found
    assert res.explored > 0


def test_label_search_solution_is_admissible():
    cx = delta.torus()
    res = cons.search_combinatorial_labels(cx)
    sides = cons.edge_side_counts(cx)
    for e in cx.edges:
        assert res.labels[(e, "tail")] + res.labels[(e, "head")] == -sides[e]
    for v in cx.vertices:
        m = delta.link_matrix(cx, v, res.labels)
        assert positive_inertia(m) <= 1
