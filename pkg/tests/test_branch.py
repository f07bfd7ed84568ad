"""Branch decompositions and the conversion to amalgam decompositions."""

import pytest

from amwidth import files, zoo
from amwidth.branch import (
    BranchDecomposition,
    branch_width_of,
    from_branch_decomposition,
)
from amwidth.errors import DomainError
from amwidth.matroid import Matroid


def caterpillar(ids):
    ids = list(ids)
    n = len(ids)
    if n == 1:
        return BranchDecomposition.build([], {"l0": ids[0]})
    if n == 2:
        return BranchDecomposition.build([("l0", "l1")], {"l0": ids[0], "l1": ids[1]})
    edges = [("l0", "i0"), ("l1", "i0")]
    leaves = {"l0": ids[0], "l1": ids[1]}
    for k in range(1, n - 2):
        edges += [(f"i{k-1}", f"i{k}"), (f"l{k+1}", f"i{k}")]
        leaves[f"l{k+1}"] = ids[k + 1]
    edges.append((f"l{n-1}", f"i{n-3}"))
    leaves[f"l{n-1}"] = ids[n - 1]
    return BranchDecomposition.build(edges, leaves)


def test_branch_width_free_matroid():
    m = Matroid.free([1, 2, 3, 4])
    assert branch_width_of(m, caterpillar([1, 2, 3, 4])) == 1


def test_branch_width_u24():
    m = Matroid.uniform(2, [1, 2, 3, 4])
    assert branch_width_of(m, caterpillar([1, 2, 3, 4])) == 3


def test_branch_width_k3(k3):
    assert branch_width_of(k3, caterpillar([1, 2, 3])) == 2


def test_branch_width_matches_separations(k4):
    b = caterpillar([1, 2, 3, 4, 5, 6])
    want = 1
    for x, y in b.edges:
        side = b.side_elements(x, y)
        want = max(want, k4.separation_width(side))
    assert branch_width_of(k4, b) == want


def test_invalid_branch_rejected(k3):
    with pytest.raises(DomainError):
        branch_width_of(k3, BranchDecomposition.build([("a", "b")], {"a": 1, "b": 2}))
    bad_degree = BranchDecomposition.build(
        [("a", "x"), ("b", "x"), ("c", "x"), ("d", "x")],
        {"a": 1, "b": 2, "c": 3, "d": 4},
    )
    with pytest.raises(DomainError):
        branch_width_of(Matroid.uniform(2, [1, 2, 3, 4]), bad_degree)


def test_conversion_requires_linear(k3):
    explicit = Matroid.from_independent_sets([1, 2, 3], [[1, 2], [2, 3], [1, 3]])
    with pytest.raises(DomainError):
        from_branch_decomposition(explicit, caterpillar([1, 2, 3]))


def conversion_cases(corpus_dir):
    for mpath in sorted((corpus_dir / "branch").glob("*.matroid.json")):
        name = mpath.name.replace(".matroid.json", "")
        bpath = corpus_dir / "branch" / f"{name}.branch.json"
        yield name, files.load_matroid(mpath), files.load_branch(bpath)


def test_corpus_conversions(corpus_dir):
    seen = 0
    for name, m, b in conversion_cases(corpus_dir):
        k = branch_width_of(m, b)
        assert k <= 3, name
        tree = from_branch_decomposition(m, b)
        report = tree.validate()
        assert report.ok, f"{name}: {report}"
        realized = tree.realize()
        assert realized.rank_equal(m), name
        bound = m.linear.field ** ((3 * k) // 2)
        assert tree.width() <= bound, (name, tree.width(), bound)
        seen += 1
    assert seen >= 5


def test_conversion_width1_bound(corpus_dir):
    m = files.load_matroid(corpus_dir / "branch" / "loops-gf2.matroid.json")
    b = files.load_branch(corpus_dir / "branch" / "loops-gf2.branch.json")
    assert branch_width_of(m, b) == 1
    tree = from_branch_decomposition(m, b)
    assert tree.width() <= m.linear.field


def test_conversion_two_elements():
    m = Matroid.from_linear({1: (1, 0), 2: (1, 1)}, 2)
    tree = from_branch_decomposition(m, caterpillar([1, 2]))
    assert tree.validate().ok
    assert tree.realize().rank_equal(m)


def test_conversion_single_element():
    m = Matroid.from_linear({1: (1,)}, 2)
    tree = from_branch_decomposition(m, caterpillar([1]))
    assert tree.validate().ok
    assert tree.realize().rank_equal(m)


def test_conversion_parallel_and_interaction():
    # the 3-element case where the two sides interact only through a sum
    # vector; exercises the boundary-space construction
    m = Matroid.from_linear({1: (1, 0), 2: (0, 1), 3: (1, 1)}, 2)
    b = BranchDecomposition.build(
        [("c", "la"), ("c", "lb"), ("c", "lz")], {"la": 1, "lb": 2, "lz": 3}
    )
    tree = from_branch_decomposition(m, b)
    assert tree.validate().ok
    assert tree.realize().rank_equal(m)
