"""Labeled trees: sieve/web axioms, branch space metric, canonical maps."""

import random
from fractions import Fraction

import pytest

from topolab import maps as M
from topolab import prefix as P
from topolab import sieves as SV
from topolab.spaces import SeqSpace, q_space


@pytest.fixture(scope="module")
def non_mu():
    return SV.non_mu_sieve_on_Q()


@pytest.fixture(scope="module")
def cyl():
    return SV.cylinder_tree(SeqSpace())


def test_cylinder_tree_axioms(cyl):
    v = SV.check_sieve(cyl, cyl.space, 4)
    assert v.verdict == "Verified"


def test_singleton_sieve_axioms():
    tree = SV.singleton_sieve_on(q_space())
    assert SV.check_sieve(tree, tree.space, 4).verdict == "Verified"
    vs = SV.check_p_complete(tree, tree.branches, 6)
    assert all(v.verdict == "Verified" for v in vs)


def test_non_mu_axioms_and_planted_defect(non_mu):
    assert SV.check_sieve(non_mu, non_mu.space, 4).verdict == "Verified"
    vs = SV.check_p_complete(non_mu, non_mu.branches, 8)
    assert all(v.verdict == "Verified" for v in vs)
    assert SV.check_delta(non_mu, non_mu.branches[0], 3).verdict == "Verified"
    cert = SV.find_mu_refutation(non_mu, 3)
    assert "U" in cert, cert
    assert cert["mu"].verdict == "Refuted"
    assert cert["quasi_mu"].verdict == "Verified"


def test_broken_union_variant_refuted():
    tree = SV.broken_union_sieve_on_Q()
    v = SV.check_sieve(tree, tree.space, 4)
    assert v.verdict == "Refuted"
    assert v.witness_sets  # the uncovered shell gap is exhibited


def test_web_axioms_on_bisection_web():
    web = SV.bisection_web_on(q_space())
    assert SV.check_web(web, q_space(), 3, node_depth=2).verdict == "Verified"


def test_branch_distance_is_ultrametric(non_mu):
    rng = random.Random(31)
    branches = [SV.random_branch(non_mu, rng.randrange(10 ** 6))
                for _ in range(12)]
    for _ in range(150):
        a, b, c = (rng.choice(branches) for _ in range(3))
        dab = SV.branch_distance(a, b)
        dbc = SV.branch_distance(b, c)
        dac = SV.branch_distance(a, c)
        assert dab == SV.branch_distance(b, a)
        assert dab >= 0
        assert dac <= max(dab, dbc)
    b0 = non_mu.branches[0]
    assert SV.branch_distance(b0, b0) == 0


def test_sigma_ball_equals_cylinder(non_mu):
    sig = SV.sigma_space(non_mu)
    b = non_mu.branches[0]
    for n in (1, 2, 3):
        ball = sig.ball(b, n)
        cyl = P.cylinder(sig.carrier, b.entries(n))
        assert ball.key() == cyl.key()


def test_canonical_map_checks(non_mu):
    f = SV.canonical_map(non_mu)
    b = non_mu.branches[0]
    assert f(b) == Fraction(0)
    assert SV.check_canonical_near_continuity(f, b, 6).verdict == "Verified"
    v = SV.check_canonical_continuity(f, b, 6)
    assert v.verdict == "Refuted"
    assert v.witness_points
    rng = random.Random(33)
    pairs = []
    while len(pairs) < 12:
        br = SV.random_branch(non_mu, rng.randrange(10 ** 6))
        y = Fraction(rng.randrange(-8, 9), rng.choice((4, 8)))
        if f(br) != y:
            pairs.append((br, y))
    assert SV.check_canonical_closed_graph(f, pairs, 6).verdict == "Verified"


def test_surjection_sieve_nesting():
    f = M.identity_map(SeqSpace())
    tree = SV.sieve_from_surjection(f, 6)
    assert SV.check_surjection_nesting(tree, f, 6).verdict == "Verified"


def test_chain_interval_tree_axioms():
    sp = q_space()
    tree = SV.chain_interval_tree(
        sp, [("main", 1, lambda k: -Fraction(1, k), lambda k: Fraction(1, k))])
    assert SV.check_sieve(tree, sp, 4).verdict == "Verified"
    b = SV.Branch(tree, (("chain", "main", 1),), rule="main",
                  limit=Fraction(0))
    assert SV.check_delta(tree, b, 3).verdict == "Verified"
    vs = SV.check_p_complete(tree, [b], 6)
    assert all(v.verdict == "Verified" for v in vs)


def test_labeled_tree_parent_and_ancestor(non_mu):
    root = non_mu.roots()[0]
    kids = non_mu.children(root)
    assert kids
    for c in kids:
        assert non_mu.is_ancestor(root, c)
    grand = non_mu.children(kids[0])
    if grand:
        assert non_mu.is_ancestor(root, grand[0])
        assert not non_mu.is_ancestor(grand[0], root)
