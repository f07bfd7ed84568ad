"""Decomposition trees: validation, realization, width, niceness."""

import pytest

from amwidth import zoo
from amwidth.decomposition import AmalgamDecomposition, DecompositionNode
from amwidth.errors import ResourceError, ValidationError
from amwidth.matroid import Matroid, two_sum


def twosum_tree(deletions=(10,)):
    tb = zoo.TreeBuilder()
    left = tb.glue(
        tb.leaf(Matroid.single(1)), tb.leaf(Matroid.single(2)), zoo.triangle(1, 2, 10)
    )
    right = tb.glue(
        tb.leaf(Matroid.single(3)), tb.leaf(Matroid.single(4)), zoo.triangle(3, 4, 10)
    )
    return tb.done(tb.glue(left, right, Matroid.single(10), deletions))


def test_single_leaf_tree_valid():
    tree = AmalgamDecomposition([DecompositionNode("a", (), Matroid.single(1))], "a")
    report = tree.validate()
    assert report.ok and report.width == 1
    assert tree.realize().rank_equal(Matroid.single(1))
    assert tree.width() == 1


def test_twosum_tree_valid_and_realizes_c4():
    tree = twosum_tree()
    report = tree.validate()
    assert report.ok
    assert str(report) == "valid, width 3"
    m = tree.realize()
    assert m.circuits() == frozenset([frozenset([1, 2, 3, 4])])
    assert m.rank_equal(
        two_sum(zoo.triangle(1, 2, 10), zoo.triangle(3, 4, 11), 10, 11)
    )


def test_leaf_realization():
    tree = twosum_tree()
    for nid, node in tree.nodes.items():
        if node.is_leaf:
            assert tree.realize(nid).rank_equal(node.K)


def test_semiflat_violation_reported():
    # J1 spans a non-modular line of K (two points of U_{3,6})
    u36 = Matroid.uniform(3, [1, 2, 3, 4, 5, 6])
    tb = zoo.TreeBuilder()
    left = tb.glue(
        tb.leaf(Matroid.single(1)), tb.leaf(Matroid.single(2)), Matroid.uniform(2, [1, 2])
    )
    top = tb.glue(left, tb.leaf(Matroid.single(3)), u36)
    tree = tb.done(top)
    report = tree.validate()
    assert not report.ok
    assert any(v.code == "semiflat-j1" for v in report.violations)
    assert any(v.node for v in report.violations)
    with pytest.raises(ValidationError):
        tree.realize()


def test_boundary_mismatch_reported():
    nodes = [
        DecompositionNode("l1", (), Matroid.single(1)),
        DecompositionNode("l2", (), Matroid.single(2)),
        DecompositionNode(
            "v",
            ("l1", "l2"),
            zoo.triangle(1, 2, 3),
            frozenset([2]),  # wrong: should be {1}
            frozenset([2]),
            frozenset(),
        ),
    ]
    report = AmalgamDecomposition(nodes, "v").validate()
    assert any(v.code == "boundary-mismatch" for v in report.violations)


def test_restriction_violation_reported():
    # K treats the shared element as a loop; the child leaf has it a coloop
    loopk = Matroid.from_linear({1: (0, 0), 2: (1, 0)}, 2)
    nodes = [
        DecompositionNode("l1", (), Matroid.single(1)),
        DecompositionNode("l2", (), Matroid.single(2)),
        DecompositionNode(
            "v", ("l1", "l2"), loopk, frozenset([1]), frozenset([2]), frozenset()
        ),
    ]
    report = AmalgamDecomposition(nodes, "v").validate()
    assert any(v.code == "restriction-j1" for v in report.violations)


def test_width_examples():
    assert twosum_tree().width() == 3
    assert zoo.triangle_chain(5).width() == 3
    assert zoo.triangle_chain(5, pad=3).width() == 6
    assert zoo.comb(Matroid.uniform(2, [1, 2, 3, 4])).width() == 4


def test_realize_respects_cap():
    tree = zoo.triangle_chain(20)
    assert tree.validate().ok  # validation scales past the realize cap
    with pytest.raises(ResourceError):
        tree.realize()


def test_to_nice_roundtrip(corpus_decompositions):
    for name, tree in corpus_decompositions.items():
        nice = tree.to_nice()
        assert nice.validate().ok, name
        assert nice.is_nice(), name
        assert nice.width() <= 2 * tree.width(), name
        if len(tree.ground()) <= 10:
            assert nice.realize().rank_equal(tree.realize()), name
        else:
            assert nice.ground() == tree.ground(), name


def test_to_nice_noop_when_nice():
    tree = zoo.triangle_chain(3)
    assert tree.is_nice()
    nice = tree.to_nice()
    assert nice.width() == tree.width()
    assert nice.realize().rank_equal(tree.realize())


def test_to_nice_duplicates_shared_boundary():
    tree = twosum_tree()
    assert not tree.is_nice()
    nice = tree.to_nice()
    assert nice.is_nice()
    root = nice.nodes[nice.root]
    assert len(root.K.ground_set) == 2  # original plus one parallel twin
    assert nice.realize().rank_equal(tree.realize())


def test_corpus_all_valid(corpus_decompositions):
    for name, tree in corpus_decompositions.items():
        report = tree.validate()
        assert report.ok, f"{name}: {report}"
        assert tree.is_anchored(), name
        size = len(tree.ground())
        assert 3 <= size <= 14, name
        assert 1 <= tree.width() <= 6, name


def test_corpus_realizations_satisfy_axioms(corpus_decompositions):
    for name, tree in corpus_decompositions.items():
        if len(tree.ground()) > 12:
            continue
        m = tree.realize()
        assert m.rank_axiom_violation() is None, name


def test_realized_chain_is_cycle():
    for n in (1, 2, 3, 5):
        tree = zoo.triangle_chain(n)
        m = tree.realize()
        assert m.size == n + 2
        assert m.rank() == n + 1
        assert m.circuits() == frozenset([m.ground_set])


def test_direct_sum_tree():
    tree = zoo.direct_sum_tree(
        [zoo.triangle_chain(1, prefix="a"), zoo.comb(zoo.triangle(21, 22, 23), "b")]
    )
    assert tree.validate().ok
    m = tree.realize()
    assert m.rank() == 4
    assert len(m.circuits()) == 2
