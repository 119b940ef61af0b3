"""Exact set algebra: boolean laws, closure axioms, serialization."""

import random
from fractions import Fraction

import pytest

from topolab import linear as L
from topolab import prefix as P
from topolab.serial import parse_point, parse_set, serialize_point, serialize_set
from topolab.spaces import SeqSpace, q_space, m1_space, field_space

from conftest import rand_set, rand_fraction

SPACE_NAMES = ("q", "dyadic", "m1", "field")


def eq(space, a, b):
    return space.is_empty(space.difference(a, b)) and \
        space.is_empty(space.difference(b, a))


@pytest.mark.parametrize("name", SPACE_NAMES)
def test_boolean_laws(spaces, name):
    sp = spaces[name]
    rng = random.Random(1000 + hash(name) % 97)
    for _ in range(60):
        a, b, c = (rand_set(sp, rng) for _ in range(3))
        assert eq(sp, sp.union(a, b), sp.union(b, a))
        assert eq(sp, sp.intersect(a, b), sp.intersect(b, a))
        assert eq(sp, sp.union(a, sp.union(b, c)), sp.union(sp.union(a, b), c))
        assert eq(sp, sp.intersect(a, sp.intersect(b, c)),
                  sp.intersect(sp.intersect(a, b), c))
        # distributivity and De Morgan
        assert eq(sp, sp.intersect(a, sp.union(b, c)),
                  sp.union(sp.intersect(a, b), sp.intersect(a, c)))
        assert eq(sp, sp.complement(sp.union(a, b)),
                  sp.intersect(sp.complement(a), sp.complement(b)))
        # complement laws
        assert sp.is_empty(sp.intersect(a, sp.complement(a)))
        assert eq(sp, sp.union(a, sp.complement(a)), sp.full())
        assert eq(sp, sp.difference(a, b),
                  sp.intersect(a, sp.complement(b)))


@pytest.mark.parametrize("name", SPACE_NAMES)
def test_kuratowski_closure(spaces, name):
    sp = spaces[name]
    rng = random.Random(2000 + hash(name) % 97)
    for _ in range(40):
        a, b = rand_set(sp, rng), rand_set(sp, rng)
        ca = sp.closure(a)
        assert sp.is_subset(a, ca)
        assert eq(sp, sp.closure(ca), ca)  # idempotent
        assert eq(sp, sp.closure(sp.union(a, b)),
                  sp.union(ca, sp.closure(b)))  # additive
        # interior is the dual operator
        assert eq(sp, sp.interior(a),
                  sp.complement(sp.closure(sp.complement(a))))
        ia = sp.interior(a)
        assert sp.is_subset(ia, a)
        assert eq(sp, sp.interior(ia), ia)
    assert sp.is_empty(sp.closure(sp.empty()))


@pytest.mark.parametrize("name", SPACE_NAMES)
def test_point_membership_consistent(spaces, name):
    sp = spaces[name]
    rng = random.Random(3000 + hash(name) % 97)
    for _ in range(40):
        a = rand_set(sp, rng)
        for p in L.sample_points(a, 5, seed=rng.randrange(100)):
            assert a.contains(p)
            assert not sp.complement(a).contains(p)
            assert sp.closure(a).contains(p)


def test_enumerate_points_prefix_stable(spaces):
    sp = spaces["q"]
    rng = random.Random(7)
    for _ in range(20):
        a = rand_set(sp, rng)
        long = L.enumerate_points(a, 24)
        for n in (4, 9, 17):
            assert L.enumerate_points(a, n) == long[:n]
        assert len(long) == len(set(long)) or sp.is_empty(a)


def test_m1_nested_interval_union():
    sp = m1_space()
    big = sp.interval(Fraction(0), Fraction(10))
    for lo, hi in ((1, 2), (0, 5), (3, 10), (2, 2)):
        small = sp.interval(Fraction(lo), Fraction(hi))
        assert eq(sp, sp.union(big, small), big)
        assert eq(sp, sp.union(small, big), big)


def test_field_sqrt_ordering():
    x = L.fieldpoint(0, 1, 0, 0)  # sqrt(2)
    y = L.fieldpoint(0, 0, 1, 0)  # sqrt(3)
    assert L.cmp_pts(x, y) < 0
    assert L.cmp_pts(x * x, Fraction(2)) == 0
    assert L.cmp_pts(Fraction(7, 5), x) < 0 < L.cmp_pts(Fraction(3, 2), x)
    assert L.cmp_pts(Fraction(141, 100), x) < 0 < L.cmp_pts(Fraction(142, 100), x)
    assert L.cmp_pts(x * y, L.fieldpoint(0, 0, 0, 1)) == 0  # sqrt6


@pytest.mark.parametrize("name", SPACE_NAMES)
def test_serialize_roundtrip_sets(spaces, name):
    sp = spaces[name]
    rng = random.Random(4000 + hash(name) % 97)
    for _ in range(25):
        a = rand_set(sp, rng)
        text = serialize_set(a)
        back = parse_set(text, sp)
        assert eq(sp, a, back), text


def test_serialize_roundtrip_points():
    rng = random.Random(11)
    for _ in range(40):
        p = rand_fraction(rng)
        assert parse_point(serialize_point(p)) == p
    fp = L.fieldpoint(Fraction(1, 2), Fraction(-3), 0, Fraction(2, 7))
    assert parse_point(serialize_point(fp)) == fp


def test_diameter_monotone(spaces):
    sp = spaces["q"]
    rng = random.Random(5)
    for _ in range(30):
        a = rand_set(sp, rng)
        b = sp.intersect(a, rand_set(sp, rng))
        if sp.is_empty(b):
            continue
        da, db = L.diameter(a), L.diameter(b)
        if isinstance(da, Fraction) and isinstance(db, Fraction):
            assert db <= da


# ---------------------------------------------------------------------------
# prefix tries (sequence carriers)


def _rand_prefix_set(car, rng, depth=2):
    if depth == 0 or rng.random() < 0.35:
        pre = [rng.randrange(-2, 3) for _ in range(rng.randrange(0, 3))]
        return P.cylinder(car, pre)
    a = _rand_prefix_set(car, rng, depth - 1)
    b = _rand_prefix_set(car, rng, depth - 1)
    op = rng.randrange(4)
    if op == 0:
        return P.p_union(a, b)
    if op == 1:
        return P.p_intersect(a, b)
    if op == 2:
        return P.p_difference(a, b)
    return P.p_complement(a)


def test_prefix_trie_boolean_laws():
    car = SeqSpace().carrier
    rng = random.Random(21)
    for _ in range(60):
        a = _rand_prefix_set(car, rng)
        b = _rand_prefix_set(car, rng)
        assert P.p_union(a, b).key() == P.p_union(b, a).key()
        assert P.p_intersect(a, b).key() == P.p_intersect(b, a).key()
        assert P.p_difference(a, b).key() == \
            P.p_intersect(a, P.p_complement(b)).key()
        assert P.p_intersect(a, P.p_complement(a)).is_empty()
        assert P.p_union(a, P.p_complement(a)).key() == P.p_full(car).key()
        assert P.p_complement(P.p_complement(a)).key() == a.key()


def test_prefix_trie_membership():
    sp = SeqSpace()
    car = sp.carrier
    rng = random.Random(22)
    for _ in range(40):
        a = _rand_prefix_set(car, rng)
        for p in sp.sample_pool(6, seed=rng.randrange(50)):
            inside = a.contains(p)
            assert P.p_complement(a).contains(p) is not inside


# ---------------------------------------------------------------------------
# hypothesis-driven interval algebra on the rational line

from hypothesis import given, settings, strategies as st

_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=64)


def _iv(space, lo, hi, li, hi_i):
    if lo > hi:
        lo, hi = hi, lo
    return space.interval(lo, hi, li, hi_i)


@settings(max_examples=120, deadline=None)
@given(a=st.tuples(_fracs, _fracs, st.booleans(), st.booleans()),
       b=st.tuples(_fracs, _fracs, st.booleans(), st.booleans()))
def test_hyp_interval_lattice(a, b):
    sp = q_space()
    A, B = _iv(sp, *a), _iv(sp, *b)
    meet = sp.intersect(A, B)
    join = sp.union(A, B)
    assert sp.is_subset(meet, A) and sp.is_subset(meet, B)
    assert sp.is_subset(A, join) and sp.is_subset(B, join)
    # absorption
    assert eq(sp, sp.union(A, meet), A)
    assert eq(sp, sp.intersect(A, join), A)
    # closure respects inclusion
    assert sp.is_subset(sp.closure(meet), sp.closure(A))


@settings(max_examples=80, deadline=None)
@given(a=st.tuples(_fracs, _fracs, st.booleans(), st.booleans()))
def test_hyp_closure_interior_boundary(a):
    sp = q_space()
    A = _iv(sp, *a)
    cl, it = sp.closure(A), sp.interior(A)
    assert sp.is_subset(it, A) and sp.is_subset(A, cl)
    boundary = sp.difference(cl, it)
    assert sp.is_empty(sp.intersect(boundary, it))
    assert eq(sp, sp.union(it, boundary), cl)
