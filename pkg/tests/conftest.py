import random
from fractions import Fraction

import pytest

from topolab import linear as L
from topolab.spaces import (dyadic_space, field_space, m1_space, q_space)


def rand_fraction(rng, den_bits=5, span=4):
    den = 2 ** rng.randrange(den_bits) * rng.choice((1, 3, 5))
    num = rng.randrange(-span * den, span * den + 1)
    return Fraction(num, den)


def rand_interval(space, rng):
    a, b = sorted((rand_fraction(rng), rand_fraction(rng)))
    if a == b:
        b = a + Fraction(1, 8)
    return space.interval(a, b, rng.random() < 0.3, rng.random() < 0.3)


def rand_set(space, rng, depth=3):
    """Random normal form: intervals/points combined by the algebra ops."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.25:
            pts = L.sample_points(rand_interval(space, rng),
                                  rng.randrange(1, 4), seed=rng.randrange(99))
            if pts:
                return space.points(pts)
        return rand_interval(space, rng)
    a = rand_set(space, rng, depth - 1)
    b = rand_set(space, rng, depth - 1)
    op = rng.randrange(4)
    if op == 0:
        return space.union(a, b)
    if op == 1:
        return space.intersect(a, b)
    if op == 2:
        return space.difference(a, b)
    return space.complement(a)


@pytest.fixture(scope="session")
def spaces():
    return {"q": q_space(), "dyadic": dyadic_space(), "m1": m1_space(),
            "field": field_space()}
