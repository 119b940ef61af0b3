"""Probe bases, closures and the refinement/duplicate space zoo."""

import random
from fractions import Fraction

import pytest

from topolab import linear as L
from topolab.gallery import (cardinal_refine_space, dense_refine_identity_map,
                             genuine_star_space)
from topolab.spaces import (DiscreteSpace, DupSet, DuplicateSpace, SeqSpace,
                            SubSpace, SumSpace, TierError, Tagged,
                            build_registry, dyadic_space, q_space)

from conftest import rand_set


REGISTRY = build_registry()


@pytest.mark.parametrize("sid", sorted(REGISTRY))
def test_basis_deterministic_and_cumulative(sid):
    sp = REGISTRY[sid]
    b3 = sp.basis(3)
    assert b3 == sp.basis(3)  # repeatable
    b4 = sp.basis(4)
    assert len(b4) >= len(b3)
    assert b4[: len(b3)] == b3  # cumulative prefix


@pytest.mark.parametrize("sid", sorted(REGISTRY))
def test_neighborhoods_contain_their_point(sid):
    sp = REGISTRY[sid]
    for p in sp.sample_pool(4, seed=3)[:6]:
        hoods = sp.neighborhoods_of(p, 4)
        assert hoods
        for U in hoods:
            assert sp.set_contains(U, p)


@pytest.mark.parametrize("sid", sorted(REGISTRY))
def test_basic_open_in_exact_tier(sid):
    sp = REGISTRY[sid]
    for b in sp.basis(3)[:25]:
        x = getattr(b, "exact", b)
        if x is None or not hasattr(x, "is_empty"):
            continue  # probe-only basic
        try:
            assert sp.is_subset(x, sp.interior(x)) or sp.is_empty(x)
        except (TierError, NotImplementedError):
            break


def test_duplicate_W_is_basic_open_and_misses_Y():
    dup = DuplicateSpace("dup_q_t", q_space())
    base = q_space()
    rng = random.Random(9)
    for _ in range(40):
        U = rand_set(base, rng)
        Y = L.sample_points(U, 3, seed=rng.randrange(50))
        W = dup.make_W(U, Y)
        assert base.is_subset(W.l2, U) and base.is_subset(W.l1, U)
        for y in Y:
            assert not W.l1.contains(y)
            assert W.l2.contains(y)


def test_duplicate_level1_isolated_level2_closure():
    dup = DuplicateSpace("dup_q_t", q_space())
    base = q_space()
    s = dup.singleton1(Fraction(1, 3))
    assert dup.is_subset(s, dup.interior(s))  # level-1 points are isolated
    # closing a level-1 set adds its accumulation shadow on level 2
    a = dup.make(base.interval(Fraction(0), Fraction(1)), base.empty())
    cl = dup.closure(a)
    assert cl.l1 == a.l1  # level 1 gains nothing: its points are isolated
    assert base.is_subset(base.omega_acc(a.l1), cl.l2)
    assert cl.l2.contains(Fraction(1, 2)) and cl.l2.contains(Fraction(0))


def test_sum_space_componentwise():
    x, y = dyadic_space(), q_space()
    sm = SumSpace("sum_t", [x, y])
    a = sm.inject(0, x.interval(Fraction(0), Fraction(1)))
    b = sm.inject(1, y.interval(Fraction(0), Fraction(1)))
    u = sm.union(a, b)
    assert sm.set_contains(u, Tagged(0, Fraction(1, 2)))
    assert sm.set_contains(u, Tagged(1, Fraction(1, 3)))
    assert sm.is_empty(sm.intersect(a, b))  # tags keep components apart
    cl = sm.closure(a)
    assert sm.is_subset(a, cl)
    assert sm.is_empty(sm.intersect(cl, sm.inject(1, y.full())))


def test_discrete_space_everything_clopen():
    base = q_space()
    d = DiscreteSpace("disc_t", base)
    s = base.interval(Fraction(0), Fraction(1))
    assert d.closure(s) == s == d.interior(s)


def test_subspace_relative_closure():
    base = q_space()
    carrier = base.interval(Fraction(0), Fraction(2))
    sub = SubSpace("sub_t", base, carrier)
    a = base.interval(Fraction(0), Fraction(1))
    cl = sub.closure(a)
    assert sub.is_subset(cl, sub.full())
    assert cl.contains(Fraction(1))
    assert not cl.contains(Fraction(3))


def test_dense_refine_probe_tier_and_agreement():
    f = dense_refine_identity_map()
    dr = f.codomain
    base = q_space()
    with pytest.raises(TierError):
        dr.closure(base.interval(Fraction(0), Fraction(1)))
    rng = random.Random(13)
    hits = 0
    for _ in range(60):
        a = rand_set(base, rng)
        ref = dr._closure_refined(a)
        assert base.is_subset(a, ref)
        assert base.is_subset(ref, base.closure(a))
        for p in L.sample_points(ref, 3, seed=rng.randrange(40)):
            hits += 1
            assert ref.contains(p)
    assert hits > 50


def test_star_refine_star_parts():
    sp = genuine_star_space()
    base = sp.parent
    for k in (1, 2, 3):
        star = sp.star(k)
        part = sp.star_part(k)
        # the plain member sits inside its star; the extra part carries the
        # closure points that the core open set cannot reach
        assert base.is_subset(sp.family(k), star)
        assert not base.is_empty(part)
        assert base.is_empty(base.intersect(part, sp.V0))


def test_cardinal_refine_starred_membership_and_separation():
    sp = cardinal_refine_space()
    base = q_space()
    s2 = sp.starred(2)
    # V_2 members and every tail point x_g (g >= 2) belong to V_2*
    assert s2.contains(Fraction(0))
    assert s2.contains(sp.x_family(3))
    assert s2.contains(sp.x_family(10))
    assert not s2.contains(Fraction(3, 2))
    # exact disjointness probe against intervals
    far = base.interval(Fraction(-2), Fraction(-1))
    assert sp.starred_disjoint_from(2, far)
    catches_tail = base.interval(Fraction(1, 100), Fraction(1, 90))
    assert not sp.starred_disjoint_from(2, catches_tail)  # contains x_5 = 1/96


def test_seq_space_cylinder_diameter():
    sp = SeqSpace()
    from topolab.prefix import cylinder, p_diameter
    c = cylinder(sp.carrier, [0, 1])
    assert p_diameter(c) == Fraction(1, 3)
    assert p_diameter(cylinder(sp.carrier, [])) == 1


def test_pool_points_lie_in_pool_region():
    for sid in ("q", "x_dyadic", "m1", "field"):
        sp = REGISTRY[sid]
        reg = sp.pool_region()
        for p in sp.sample_pool(4, seed=1):
            assert reg.contains(p)
