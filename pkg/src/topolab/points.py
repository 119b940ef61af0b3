"""Point types shared by every carrier: rationals, the quartic field Q(sqrt2, sqrt3),
eventually-constant integer sequences, and tagged points for disjoint sums."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union


class _Inf:
    """Signed infinity sentinel for interval endpoints."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"

    def __eq__(self, other):
        return isinstance(other, _Inf) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))


NEG_INF = _Inf(-1)
POS_INF = _Inf(1)


from functools import lru_cache


@lru_cache(maxsize=None)
def _sqrt_bounds(n: int, k: int) -> tuple[Fraction, Fraction]:
    # rational bracket of sqrt(n) with width <= 2/10^k
    scale = 10 ** k
    lo = isqrt(n * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


@dataclass(frozen=True)
class FieldPoint:
    """a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational coefficients.

    Pure-rational values are never represented as FieldPoint; use fieldpoint()
    which collapses them to Fraction, so equality across the two types is sound.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def sign(self) -> int:
        return _field_sign(self)

    def __add__(self, other):
        o = _as_field(other)
        return fieldpoint(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldPoint(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-_as_field(other))

    def __rsub__(self, other):
        return _as_field(other) + (-self)

    def __mul__(self, other):
        o = _as_field(other)
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = o.a, o.b, o.c, o.d
        # (sqrt2)^2=2, (sqrt3)^2=3, (sqrt6)^2=6, sqrt2*sqrt3=sqrt6, sqrt2*sqrt6=2sqrt3, sqrt3*sqrt6=3sqrt2
        na = a * e + 2 * b * f + 3 * c * g + 6 * d * h
        nb = a * f + b * e + 3 * (c * h + d * g)
        nc = a * g + c * e + 2 * (b * h + d * f)
        nd = a * h + d * e + b * g + c * f
        return fieldpoint(na, nb, nc, nd)

    __rmul__ = __mul__

    def __repr__(self):
        return f"FieldPoint({self.a},{self.b},{self.c},{self.d})"


@lru_cache(maxsize=1 << 16)
def _field_sign(p: FieldPoint) -> int:
    # 1, sqrt2, sqrt3, sqrt6 are linearly independent over Q, so the value
    # is zero iff all coefficients are; otherwise refine rational brackets
    # until zero is excluded.
    if p.is_zero():
        return 0
    for k in range(2, 80):
        lo2, hi2 = _sqrt_bounds(2, k)
        lo3, hi3 = _sqrt_bounds(3, k)
        lo6, hi6 = _sqrt_bounds(6, k)

        def pick(coef, lo, hi, low_side):
            if (coef >= 0) == low_side:
                return coef * lo
            return coef * hi

        lo_val = p.a + pick(p.b, lo2, hi2, True) + pick(p.c, lo3, hi3, True) + pick(p.d, lo6, hi6, True)
        hi_val = p.a + pick(p.b, lo2, hi2, False) + pick(p.c, lo3, hi3, False) + pick(p.d, lo6, hi6, False)
        if lo_val > 0:
            return 1
        if hi_val < 0:
            return -1
    raise ArithmeticError(f"sign refinement did not converge for {p}")


def _as_field(x) -> FieldPoint:
    if isinstance(x, FieldPoint):
        return x
    return FieldPoint(Fraction(x), Fraction(0), Fraction(0), Fraction(0))


def fieldpoint(a, b=0, c=0, d=0) -> Union[Fraction, FieldPoint]:
    a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
    if not (b or c or d):
        return a
    return FieldPoint(a, b, c, d)


SQRT2 = fieldpoint(0, 1)
SQRT3 = fieldpoint(0, 0, 1)

LinPoint = Union[Fraction, FieldPoint]
Endpoint = Union[Fraction, FieldPoint, _Inf]


def cmp_pts(x: Endpoint, y: Endpoint) -> int:
    """Exact three-way comparison of endpoints (including infinities)."""
    if type(x) is Fraction and type(y) is Fraction:
        d = x._numerator * y._denominator - y._numerator * x._denominator
        return (d > 0) - (d < 0)
    if isinstance(x, _Inf):
        if isinstance(y, _Inf):
            return (x.sign > y.sign) - (x.sign < y.sign)
        return x.sign
    if isinstance(y, _Inf):
        return -y.sign
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return (x > y) - (x < y)
    d = _as_field(x) - _as_field(y)
    if isinstance(d, Fraction):
        return (d > 0) - (d < 0)
    return d.sign()


def pt_lt(x, y):
    return cmp_pts(x, y) < 0


def pt_le(x, y):
    return cmp_pts(x, y) <= 0


def pt_min(x, y):
    return x if pt_le(x, y) else y


def pt_max(x, y):
    return y if pt_le(x, y) else x


def pt_float(x) -> float:
    if isinstance(x, _Inf):
        return float("inf") * x.sign
    if isinstance(x, Fraction):
        return float(x)
    import math

    return float(x.a) + float(x.b) * math.sqrt(2) + float(x.c) * math.sqrt(3) + float(x.d) * math.sqrt(6)


@dataclass(frozen=True)
class SeqPoint:
    """Eventually-constant sequence of naturals: prefix then constant tail.

    Canonical: the prefix never ends with the tail value.
    """

    prefix: tuple[int, ...]
    tail: int

    def __post_init__(self):
        p = self.prefix
        while p and p[-1] == self.tail:
            p = p[:-1]
        object.__setattr__(self, "prefix", p)

    def entry(self, i: int) -> int:
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def entries(self, n: int) -> tuple[int, ...]:
        return tuple(self.entry(i) for i in range(n))

    def __repr__(self):
        inner = ",".join(map(str, self.prefix))
        return f"<{inner}|{self.tail}>"


def seqpoint(*prefix: int, tail: int = 0) -> SeqPoint:
    return SeqPoint(tuple(prefix), tail)


@dataclass(frozen=True)
class Tagged:
    """Point of a disjoint sum (or a duplicate level): component tag plus base point."""

    tag: int
    point: object

    def __repr__(self):
        return f"{self.tag}@{self.point!r}"
