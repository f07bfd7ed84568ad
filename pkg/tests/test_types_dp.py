"""Node types, extended types, and their joins against the realized oracle."""

import random

import pytest

from amwidth import zoo
from amwidth.errors import DomainError
from amwidth.matroid import Matroid
from amwidth.types_dp import (
    JoinContext,
    NodeType,
    all_types,
    extended_join,
    extended_type_of,
    join,
    leaf_signatures,
    type_of,
)

import oracles


def twosum_tree():
    tb = zoo.TreeBuilder()
    left = tb.glue(
        tb.leaf(Matroid.single(1)), tb.leaf(Matroid.single(2)), zoo.triangle(1, 2, 10)
    )
    right = tb.glue(
        tb.leaf(Matroid.single(3)), tb.leaf(Matroid.single(4)), zoo.triangle(3, 4, 10)
    )
    return tb.done(tb.glue(left, right, Matroid.single(10), [10]))


def sweep_trees():
    return {
        "twosum": twosum_tree(),
        "chain3": zoo.triangle_chain(3),
        "parallel6": zoo.parallel_elements_tree(6),
        "u24comb": zoo.comb(Matroid.uniform(2, [1, 2, 3, 4])),
    }


def test_type_map_properties():
    tree = twosum_tree()
    for v in tree.postorder():
        for tracked in oracles.subsets(tree.ground()):
            nt = type_of(tree, v, tracked)
            j = len(nt.boundary)
            for ymask in range(1 << j):
                fy = nt.fmap[ymask]
                assert fy & ymask == ymask  # extensive
                assert nt.fmap[fy] == fy  # idempotent
                for other in range(1 << j):
                    if other & ymask == ymask:
                        assert nt.fmap[other] & fy == fy  # monotone


def test_type_trivial_cases():
    tree = zoo.triangle_chain(2)
    # loop-free nodes: type of the empty set maps empty to empty
    for v in tree.postorder():
        nt = type_of(tree, v, [])
        assert nt.fmap[0] == 0
        full = (1 << len(nt.boundary)) - 1
        assert nt.fmap[full] == full


def test_join_identity_reflections():
    # children with identity type maps: join(Y) = cl_K(Y) & J
    k = zoo.triangle(1, 2, 3)
    f_id = NodeType((), (0,))
    got = join(f_id, f_id, k, [], [], [], [1, 2, 3])
    for ymask in range(8):
        ym = k.mask_of([e for i, e in enumerate((1, 2, 3)) if ymask >> i & 1])
        want = k.closure_mask(ym)
        assert got.fmap[ymask] == want


def test_join_matches_type_of_everywhere():
    for name, tree in sweep_trees().items():
        assert tree.validate().ok
        rng = random.Random(11)
        for v in tree.postorder():
            node = tree.nodes[v]
            if node.is_leaf:
                continue
            c1, c2 = node.children
            pool = list(oracles.subsets(sorted(tree.ground(v))))
            if len(pool) > 40:
                pool = rng.sample(pool, 40)
            for tracked in pool:
                tracked = frozenset(tracked)
                f1 = type_of(tree, c1, tracked)
                f2 = type_of(tree, c2, tracked)
                got = join(
                    f1,
                    f2,
                    node.K,
                    tracked & node.K.ground_set,
                    sorted(node.J1),
                    sorted(node.J2),
                    sorted(tree.boundary(v)),
                )
                assert got == type_of(tree, v, tracked), (name, v, tracked)


def test_extended_join_matches_oracle():
    for name, tree in sweep_trees().items():
        rng = random.Random(3)
        for v in tree.postorder():
            node = tree.nodes[v]
            if node.is_leaf:
                continue
            c1, c2 = node.children
            pool = list(oracles.subsets(sorted(tree.ground(v))))
            if len(pool) > 32:
                pool = rng.sample(pool, 32)
            for tracked in pool:
                tracked = frozenset(tracked)
                e1 = extended_type_of(tree, c1, tracked)
                e2 = extended_type_of(tree, c2, tracked)
                fresh = tracked & node.K.ground_set - node.J1 - node.J2
                got, delta = extended_join(
                    e1,
                    e2,
                    node.K,
                    fresh,
                    node.D,
                    sorted(node.J1),
                    sorted(node.J2),
                    sorted(tree.boundary(v)),
                )
                want = extended_type_of(tree, v, tracked)
                assert got == want, (name, v, tracked)
                m = tree.realize(v)
                m1 = tree.realize(c1)
                m2 = tree.realize(c2)
                want_delta = (
                    m.rank(tracked & m.ground_set)
                    - m1.rank(tracked & m1.ground_set)
                    - m2.rank(tracked & m2.ground_set)
                )
                assert delta == want_delta, (name, v, tracked)


def test_extended_type_invariants():
    for name, tree in sweep_trees().items():
        for v in tree.postorder():
            for tracked in list(oracles.subsets(sorted(tree.ground(v))))[:24]:
                e = extended_type_of(tree, v, tracked)
                j = len(e.boundary)
                assert e.offsets[0] == 0
                for ymask in range(1 << j):
                    assert 0 <= e.offsets[ymask] <= j
                    for b in range(j):
                        if not ymask >> b & 1:
                            up = e.offsets[ymask | (1 << b)] - e.offsets[ymask]
                            assert up in (0, 1)


def test_tracked_set_in_deletions_rejected():
    tree = twosum_tree()
    node = tree.nodes[tree.root]
    c1, c2 = node.children
    e1 = extended_type_of(tree, c1, [10])
    e2 = extended_type_of(tree, c2, [10])
    with pytest.raises(DomainError):
        extended_join(
            e1,
            e2,
            node.K,
            [],
            node.D,
            sorted(node.J1),
            sorted(node.J2),
            sorted(tree.boundary(tree.root)),
        )


def test_fixpoint_terminates_quickly():
    tree = zoo.triangle_chain(4)
    for v in tree.postorder():
        node = tree.nodes[v]
        if node.is_leaf:
            continue
        ctx = JoinContext(node.K, node.J1, node.J2, tree.boundary(v), node.D)
        f1 = type_of(tree, node.children[0], [])
        f2 = type_of(tree, node.children[1], [])
        # the fixpoint loop is bounded by |E(K)| + 1 rounds by construction;
        # reaching a fixed point must happen within that bound
        for seed in range(1 << node.K.size):
            z = ctx.fixpoint(f1, f2, seed)
            z2 = ctx.fixpoint(f1, f2, z)
            assert z2 == z


def test_all_types_enumeration():
    for j in (0, 1, 2, 3):
        boundary = tuple(range(1, j + 1))
        types = all_types(boundary)
        assert len(types) <= (2**j) ** (2**j)
        # every enumerated map is a closure operator
        for nt in types:
            for y in range(1 << j):
                fy = nt.fmap[y]
                assert fy & y == y
                assert nt.fmap[fy] == fy
    assert len(all_types((1,))) == 2
    assert len(all_types((1, 2))) == 7


def test_observed_types_are_closure_operators():
    tree = zoo.triangle_chain(3)
    for v in tree.postorder():
        boundary = tuple(sorted(tree.boundary(v)))
        if len(boundary) > 3:
            continue
        candidates = all_types(boundary)
        for tracked in oracles.subsets(sorted(tree.ground(v))):
            assert type_of(tree, v, tracked) in candidates


def test_leaf_signatures_cover_subsets():
    k = zoo.triangle(1, 2, 3)
    rows = leaf_signatures(k, [1, 2])
    assert len(rows) == 8
    subsets_seen = {frozenset(s) for s, _, _, _ in rows}
    assert len(subsets_seen) == 8
    for subset, r, s, sig in rows:
        assert r == k.rank(subset)
        assert s == len(subset)
        assert sig.trace == sum(
            1 << i for i, e in enumerate((1, 2)) if e in subset
        )
