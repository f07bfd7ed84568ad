"""Tutte polynomial: oracle, decomposition DP, and the standard identities."""

from fractions import Fraction

import pytest

from amwidth import zoo
from amwidth.matroid import Matroid
from amwidth.tutte import TuttePolynomial, tutte_bruteforce, tutte_decomposition

import oracles


def poly_of(pairs):
    return dict(pairs)


def test_u24_polynomial(u24):
    assert tutte_bruteforce(u24).coeff_dict() == {
        (2, 0): 1,
        (1, 0): 2,
        (0, 1): 2,
        (0, 2): 1,
    }


def test_k3_polynomial(k3):
    assert tutte_bruteforce(k3).coeff_dict() == {(2, 0): 1, (1, 0): 1, (0, 1): 1}


def test_single_coloop():
    assert tutte_bruteforce(Matroid.single(1)).coeff_dict() == {(1, 0): 1}
    assert tutte_bruteforce(Matroid.single(1, loop=True)).coeff_dict() == {(0, 1): 1}


def test_empty_matroid():
    assert tutte_bruteforce(Matroid.empty()).coeff_dict() == {(0, 0): 1}


def test_whitney_and_standard_agree(fano):
    p = tutte_bruteforce(fano)
    # re-expand the whitney form by hand with Fractions
    x, y = Fraction(3), Fraction(7)
    via_whitney = sum(
        c * (x - 1) ** a * (y - 1) ** b for a, b, c in p.whitney
    )
    assert p.evaluate(3, 7) == via_whitney


def test_counting_identities(k3, u24, fano, k4):
    for m in (k3, u24, fano, k4):
        p = tutte_bruteforce(m)
        assert p.evaluate(1, 1) == oracles.count_bases(m)
        assert p.evaluate(2, 1) == oracles.count_independent(m)
        assert p.evaluate(1, 2) == oracles.count_spanning(m)
        assert p.evaluate(2, 2) == 2 ** m.size


def test_evaluate_exact_rationals(u24):
    p = tutte_bruteforce(u24)
    v = p.evaluate(Fraction(1, 2), Fraction(1, 3))
    assert v == Fraction(1, 4) + 2 * Fraction(1, 2) + 2 * Fraction(1, 3) + Fraction(1, 9)


def test_str_rendering(u24, k3):
    assert str(tutte_bruteforce(u24)) == "x^2 + 2*x + 2*y + y^2"
    assert str(tutte_bruteforce(k3)) == "x^2 + x + y"


def test_dp_twosum_c4():
    tree = zoo.triangle_chain(2)
    poly = tutte_decomposition(tree)
    assert poly.coeff_dict() == {(3, 0): 1, (2, 0): 1, (1, 0): 1, (0, 1): 1}
    assert poly == tutte_bruteforce(tree.realize())


def test_dp_matches_bruteforce_on_corpus(corpus_decompositions):
    for name, tree in corpus_decompositions.items():
        if len(tree.ground()) > 14:
            continue
        dp = tutte_decomposition(tree)
        brute = tutte_bruteforce(tree.realize())
        assert dp == brute, name


def test_dp_fano_conversion(corpus_dir, fano):
    from amwidth import files
    from amwidth.branch import from_branch_decomposition

    m = files.load_matroid(corpus_dir / "branch" / "fano-gf2.matroid.json")
    b = files.load_branch(corpus_dir / "branch" / "fano-gf2.branch.json")
    tree = from_branch_decomposition(m, b)
    poly = tutte_decomposition(tree)
    assert poly == tutte_bruteforce(fano)
    assert poly.evaluate(1, 1) == 28  # Fano has 28 bases out of 35 triples
    assert oracles.count_bases(fano) == 28


def test_count_table_row_sums():
    tree = zoo.triangle_chain(3)
    _, tables = tutte_decomposition(tree, want_tables=True)
    for nid, table in tables.items():
        survivors = len(tree.ground(nid))
        assert table.total() == 2**survivors, nid


def test_dp_on_padded_chain():
    tree = zoo.triangle_chain(4, pad=3)
    assert tutte_decomposition(tree) == tutte_bruteforce(tree.realize())


def test_dp_scales_past_bruteforce():
    tree = zoo.triangle_chain(40)
    poly = tutte_decomposition(tree)
    n = 42  # realized cycle length
    want = {(i, 0): 1 for i in range(1, n)}
    want[(0, 1)] = 1
    assert poly.coeff_dict() == want
    assert poly.evaluate(1, 1) == n
