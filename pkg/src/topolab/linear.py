"""Exact sets on linear carriers.

A linear carrier (the rational line, the quartic-field line, the scattered
compact-like set M1) splits into *atoms*: pairwise disjoint decidable pieces
(dyadic / non-dyadic rationals; Q1 / Q2 / H field classes; M1 itself).  A set
is stored as one normalized part per atom -- sorted disjoint intervals plus
finitely many extra points.  Boolean and closure operators work atom-wise,
which is what makes the normal form unique and complements representable.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cmp_to_key

from .points import (NEG_INF, POS_INF, FieldPoint, SQRT2, SQRT3, _Inf, cmp_pts,
                     fieldpoint, pt_float, pt_le, pt_lt)

_M1_ENUM_CAP = 20000


# ---------------------------------------------------------------------------
# atoms

class Atom:
    name: str
    dense = True  # dense in every real interval

    def contains(self, p) -> bool:
        raise NotImplementedError

    def sample(self, lo, hi, lo_in, hi_in):
        """Deterministic iterator over atom members of the interval."""
        raise NotImplementedError


def _rationals_between(lo, hi, lo_in, hi_in):
    """All rationals in the interval, by denominator then numerator."""
    for q in itertools.count(1):
        # integer numerator window for p/q in (lo, hi)
        if isinstance(lo, _Inf):
            p_lo = -q * 8 - 8  # arbitrary but deterministic window growth
        else:
            f = pt_float(lo) * q
            p_lo = int(f) - 2
        if isinstance(hi, _Inf):
            p_hi = q * 8 + 8
        else:
            f = pt_float(hi) * q
            p_hi = int(f) + 2
        for p in range(p_lo, p_hi + 1):
            v = Fraction(p, q)
            if v.denominator != q:
                continue  # already yielded in lowest terms
            c1 = cmp_pts(v, lo)
            c2 = cmp_pts(v, hi)
            if (c1 > 0 or (c1 == 0 and lo_in)) and (c2 < 0 or (c2 == 0 and hi_in)):
                yield v


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def _dyadics_between(lo, hi, lo_in, hi_in):
    """Dyadic rationals in the interval, by grid fineness then numerator."""
    for j in itertools.count(0):
        q = 1 << j
        if isinstance(lo, _Inf):
            p_lo = -8 * q - 8
        else:
            p_lo = int(pt_float(lo) * q) - 2
        if isinstance(hi, _Inf):
            p_hi = 8 * q + 8
        else:
            p_hi = int(pt_float(hi) * q) + 2
        for p in range(p_lo, p_hi + 1):
            v = Fraction(p, q)
            if v.denominator != q:
                continue  # already yielded on a coarser grid
            c1 = cmp_pts(v, lo)
            c2 = cmp_pts(v, hi)
            if (c1 > 0 or (c1 == 0 and lo_in)) and (c2 < 0 or (c2 == 0 and hi_in)):
                yield v


class DyadicAtom(Atom):
    name = "D"

    def contains(self, p):
        return isinstance(p, Fraction) and _is_dyadic(p)

    def sample(self, lo, hi, lo_in, hi_in):
        return _dyadics_between(lo, hi, lo_in, hi_in)


class NonDyadicAtom(Atom):
    name = "N"

    def contains(self, p):
        return isinstance(p, Fraction) and not _is_dyadic(p)

    def sample(self, lo, hi, lo_in, hi_in):
        return (q for q in _rationals_between(lo, hi, lo_in, hi_in) if not _is_dyadic(q))


class RationalAtom(Atom):
    """All of Q, used as the single rational class on the field line."""

    name = "Q1"

    def contains(self, p):
        return isinstance(p, Fraction)

    def sample(self, lo, hi, lo_in, hi_in):
        return _rationals_between(lo, hi, lo_in, hi_in)


class ShiftedRationalAtom(Atom):
    """Q + sqrt2."""

    name = "Q2"

    def contains(self, p):
        return isinstance(p, FieldPoint) and p.b == 1 and p.c == 0 and p.d == 0

    def sample(self, lo, hi, lo_in, hi_in):
        s = SQRT2
        lo2 = lo if isinstance(lo, _Inf) else lo - s
        hi2 = hi if isinstance(hi, _Inf) else hi - s
        return (q + s for q in _rationals_between(lo2, hi2, lo_in, hi_in))


class OutsideAtom(Atom):
    """Field points in neither Q1 nor Q2; sampled along the sqrt3 axis."""

    name = "H"

    def contains(self, p):
        if not isinstance(p, FieldPoint):
            return False
        return not (p.b == 1 and p.c == 0 and p.d == 0)

    def sample(self, lo, hi, lo_in, hi_in):
        inv = fieldpoint(0, 0, Fraction(1, 3))  # 1/sqrt3 = sqrt3/3
        lo2 = lo if isinstance(lo, _Inf) else lo * inv
        hi2 = hi if isinstance(hi, _Inf) else hi * inv
        return (q * SQRT3 for q in _rationals_between(lo2, hi2, lo_in, hi_in) if q != 0)


class M1Atom(Atom):
    """{1/n + 1/(n^2 m) : n, m >= 1} together with 0.  Not dense."""

    name = "M1"
    dense = False

    def contains(self, p):
        if not isinstance(p, Fraction):
            return False
        if p == 0:
            return True
        if p <= 0 or p > 2:
            return False
        # families (1/n, 1/n + 1/n^2] are pairwise disjoint, so <= 2 candidates
        n0 = int(1 / p)
        for n in (n0, n0 + 1):
            if n < 1:
                continue
            rem = p - Fraction(1, n)
            if rem <= 0:
                continue
            m = 1 / (n * n * rem)
            if m.denominator == 1 and m >= 1:
                return True
        return False

    def sample(self, lo, hi, lo_in, hi_in):
        def gen():
            if _pt_in_interval(Fraction(0), lo, lo_in, hi, hi_in):
                yield Fraction(0)
            for n in itertools.count(1):
                top = Fraction(1, n) + Fraction(1, n * n)
                if not isinstance(lo, _Inf) and cmp_pts(top, lo) <= 0:
                    return
                for m in range(1, 5 + n):
                    v = Fraction(1, n) + Fraction(1, n * n * m)
                    if _pt_in_interval(v, lo, lo_in, hi, hi_in):
                        yield v
        return gen()


class Line:
    def __init__(self, name: str, atoms: list[Atom]):
        self.name = name
        self.atoms = {a.name: a for a in atoms}

    def atom_of(self, p) -> str:
        for name, a in self.atoms.items():
            if a.contains(p):
                return name
        raise ValueError(f"{p!r} is not a carrier point of line {self.name}")

    def __repr__(self):
        return f"Line({self.name})"


QLINE = Line("q", [DyadicAtom(), NonDyadicAtom()])
FIELDLINE = Line("field", [RationalAtom(), ShiftedRationalAtom(), OutsideAtom()])
M1LINE = Line("m1", [M1Atom()])

LINES = {l.name: l for l in (QLINE, FIELDLINE, M1LINE)}


# ---------------------------------------------------------------------------
# intervals: (lo, lo_in, hi, hi_in); endpoints are Fraction, FieldPoint or inf

def _pt_in_interval(p, lo, lo_in, hi, hi_in):
    c1 = cmp_pts(p, lo)
    if c1 < 0 or (c1 == 0 and not lo_in):
        return False
    c2 = cmp_pts(p, hi)
    if c2 > 0 or (c2 == 0 and not hi_in):
        return False
    return True


def _iv_intersect(a, b):
    lo_a, la, hi_a, ha = a
    lo_b, lb, hi_b, hb = b
    c = cmp_pts(lo_a, lo_b)
    lo, li = (lo_a, la) if c > 0 else (lo_b, lb) if c < 0 else (lo_a, la and lb)
    c = cmp_pts(hi_a, hi_b)
    hi, hi_i = (hi_a, ha) if c < 0 else (hi_b, hb) if c > 0 else (hi_a, ha and hb)
    return (lo, li, hi, hi_i)


def _iv_raw_nonempty(iv):
    lo, li, hi, hi_i = iv
    c = cmp_pts(lo, hi)
    if c > 0:
        return False
    if c == 0:
        return li and hi_i and not isinstance(lo, _Inf)
    return True


def _complement_intervals(intervals):
    """Real-line complement of a sorted disjoint interval list."""
    out = []
    cur_lo, cur_li = NEG_INF, False
    for lo, li, hi, hi_i in intervals:
        out.append((cur_lo, cur_li, lo, not li and not isinstance(lo, _Inf)))
        cur_lo, cur_li = hi, not hi_i and not isinstance(hi, _Inf)
    out.append((cur_lo, cur_li, POS_INF, False))
    return [iv for iv in out if _iv_raw_nonempty(iv)]


def _split_at_points(intervals, points):
    """Remove finitely many points from a real interval union."""
    for p in points:
        nxt = []
        for iv in intervals:
            lo, li, hi, hi_i = iv
            if _pt_in_interval(p, *iv):
                left = (lo, li, p, False)
                right = (p, False, hi, hi_i)
                nxt.extend(x for x in (left, right) if _iv_raw_nonempty(x))
            else:
                nxt.append(iv)
        intervals = nxt
    return intervals


# ---------------------------------------------------------------------------
# M1 specifics

def _m1_infinite(lo, li, hi, hi_i) -> bool:
    """Does the interval contain infinitely many M1 members?"""
    if cmp_pts(hi, Fraction(0)) <= 0:
        return False
    if cmp_pts(lo, Fraction(0)) <= 0:
        return True
    # minimal 1/n >= lo is n = floor(1/lo); need 1/n < hi
    inv = 1 / lo if isinstance(lo, Fraction) else None
    if inv is None:
        raise UnsupportedTrace("field endpoints on the M1 carrier")
    n = int(inv)
    if n < 1:
        return False
    return cmp_pts(Fraction(1, n), hi) < 0


class UnsupportedTrace(Exception):
    pass


def _m1_members(lo, li, hi, hi_i):
    """Finite member list, or None when infinite."""
    if _m1_infinite(lo, li, hi, hi_i):
        return None
    out = []
    if _pt_in_interval(Fraction(0), lo, li, hi, hi_i):
        out.append(Fraction(0))
    if cmp_pts(hi, Fraction(0)) <= 0:
        return out
    for n in itertools.count(1):
        base = Fraction(1, n)
        top = base + Fraction(1, n * n)
        c = cmp_pts(top, lo)
        if c < 0 or (c == 0 and not li):
            break
        if cmp_pts(base, hi) >= 0:
            continue
        # members base + 1/(n^2 m); finite case guarantees lo > base here
        gap = (lo if isinstance(lo, Fraction) else None)
        if gap is None:
            raise UnsupportedTrace("field endpoints on the M1 carrier")
        lo_rem = gap - base
        if lo_rem <= 0:
            raise AssertionError("infinite family escaped the finiteness test")
        m_hi = int(1 / (n * n * lo_rem)) + 1
        if m_hi > _M1_ENUM_CAP:
            raise UnsupportedTrace("M1 enumeration exceeds cap")
        for m in range(1, m_hi + 1):
            v = base + Fraction(1, n * n * m)
            if _pt_in_interval(v, lo, li, hi, hi_i):
                out.append(v)
    return sorted(set(out))


def _m1_sup(lo, li, hi, hi_i):
    """(value, attained) of sup over an infinite-membership interval."""
    best = None
    if _pt_in_interval(Fraction(0), lo, li, hi, hi_i):
        best = Fraction(0)
    for n in itertools.count(1):
        base = Fraction(1, n)
        top = base + Fraction(1, n * n)
        if best is not None and top <= best:
            break
        if cmp_pts(lo, top) > 0:
            break
        if cmp_pts(base, hi) >= 0:
            continue
        # largest member below hi: smallest valid m
        if isinstance(hi, _Inf):
            m = 1
        else:
            rem = hi - base
            m = max(1, int(1 / (n * n * rem)))
            while not (cmp_pts(base + Fraction(1, n * n * m), hi) < 0
                       or (hi_i and cmp_pts(base + Fraction(1, n * n * m), hi) == 0)):
                m += 1
        v = base + Fraction(1, n * n * m)
        if _pt_in_interval(v, lo, li, hi, hi_i) and (best is None or v > best):
            best = v
    assert best is not None
    return best, True


def _m1_inf(lo, li, hi, hi_i):
    """(value, attained) of inf over an infinite-membership interval."""
    if cmp_pts(lo, Fraction(0)) <= 0:
        return Fraction(0), _pt_in_interval(Fraction(0), lo, li, hi, hi_i)
    best = None  # (value, attained)
    for n in itertools.count(1):
        base = Fraction(1, n)
        top = base + Fraction(1, n * n)
        c = cmp_pts(top, lo)
        if c < 0 or (c == 0 and not li):
            break
        if cmp_pts(base, hi) >= 0:
            continue
        if _m1_infinite(*_iv_intersect((lo, li, hi, hi_i), (base, False, top, True))):
            cand = (base, False)
        else:
            mem = _m1_members(*_iv_intersect((lo, li, hi, hi_i), (base, False, top, True)))
            if not mem:
                continue
            cand = (mem[0], True)
        if best is None or cand[0] < best[0]:
            best = cand
    assert best is not None
    return best


def _m1_gap_empty(x, y):
    """No M1 member strictly between x and y."""
    mem = _m1_members(x, False, y, False)
    return mem is not None and not mem


# ---------------------------------------------------------------------------
# parts

class Part:
    """Normalized atom part: sorted disjoint intervals plus extra points."""

    __slots__ = ("intervals", "points")

    def __init__(self, intervals, points):
        self.intervals = tuple(intervals)
        self.points = tuple(points)

    def key(self):
        return (self.intervals, self.points)

    def __eq__(self, other):
        return isinstance(other, Part) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_empty(self):
        return not self.intervals and not self.points

    def real_member(self, p):
        return any(_pt_in_interval(p, *iv) for iv in self.intervals) or any(
            cmp_pts(p, q) == 0 for q in self.points)


EMPTY_PART = Part((), ())


def _normalize_part(atom: Atom, intervals, points):
    points = list(points)
    # 1. endpoint flags only make sense for atom members
    cleaned = []
    for lo, li, hi, hi_i in intervals:
        if li and (isinstance(lo, _Inf) or not atom.contains(lo)):
            li = False
        if hi_i and (isinstance(hi, _Inf) or not atom.contains(hi)):
            hi_i = False
        iv = (lo, li, hi, hi_i)
        if not _iv_raw_nonempty(iv):
            continue
        if cmp_pts(lo, hi) == 0:
            points.append(lo)
        else:
            cleaned.append(iv)
    intervals = sorted(cleaned, key=cmp_to_key(lambda a, b: cmp_pts(a[0], b[0]) or cmp_pts(a[2], b[2])))

    if atom.dense:
        intervals, points = _merge_dense(atom, intervals, points)
    else:
        intervals, points = _finish_m1(intervals, points)

    points = [p for p in points if atom.contains(p)]
    uniq = []
    for p in sorted(set(points), key=cmp_to_key(cmp_pts)):
        if not any(_pt_in_interval(p, *iv) for iv in intervals):
            uniq.append(p)
    if intervals or uniq:
        return Part(tuple(intervals), tuple(uniq))
    return EMPTY_PART


def _merge_dense(atom, intervals, points):
    changed = True
    points = [p for p in points if atom.contains(p)]
    while changed:
        changed = False
        merged = []
        for iv in intervals:
            if not merged:
                merged.append(iv)
                continue
            lo1, li1, hi1, hii1 = merged[-1]
            lo2, li2, hi2, hii2 = iv
            c = cmp_pts(hi1, lo2)
            join = False
            if c > 0:
                join = True
            elif c == 0:
                p = hi1
                if hii1 or li2 or not atom.contains(p) or any(cmp_pts(p, q) == 0 for q in points):
                    join = True
                    points = [q for q in points if cmp_pts(p, q) != 0]
            if join:
                ch = cmp_pts(hi1, hi2)
                hi, hi_i = (hi2, hii2) if ch < 0 else (hi1, hii1) if ch > 0 else (hi1, hii1 or hii2)
                if cmp_pts(lo1, lo2) == 0:
                    li1 = li1 or li2
                merged[-1] = (lo1, li1, hi, hi_i)
            else:
                merged.append(iv)
        intervals = merged
        # absorb points sitting on excluded finite endpoints
        nxt_points = []
        for p in points:
            hit = False
            for i, (lo, li, hi, hi_i) in enumerate(intervals):
                if not li and not isinstance(lo, _Inf) and cmp_pts(p, lo) == 0:
                    intervals[i] = (lo, True, hi, hi_i)
                    hit = changed = True
                    break
                if not hi_i and not isinstance(hi, _Inf) and cmp_pts(p, hi) == 0:
                    intervals[i] = (lo, li, hi, True)
                    hit = changed = True
                    break
                if _pt_in_interval(p, lo, li, hi, hi_i):
                    hit = True
                    break
            if not hit:
                nxt_points.append(p)
        points = nxt_points
    return intervals, points


def _finish_m1(intervals, points):
    blocks = []
    for iv in intervals:
        mem = _m1_members(*iv)
        if mem is not None:
            points.extend(mem)
            continue
        lo, lat = _m1_inf(*iv)
        hi, hat = _m1_sup(*iv)
        blocks.append((lo, lat, hi, hat))
    blocks.sort(key=cmp_to_key(lambda a, b: cmp_pts(a[0], b[0])))
    points = sorted({p for p in points if M1Atom().contains(p)})
    changed = True
    while changed:
        changed = False
        merged = []
        for b in blocks:
            if merged and _m1_gap_empty(merged[-1][2], b[0]):
                lo, li, hi1, hat1 = merged[-1]
                ch = cmp_pts(hi1, b[2])
                hi, hat = ((b[2], b[3]) if ch < 0 else
                           (hi1, hat1) if ch > 0 else (hi1, hat1 or b[3]))
                if cmp_pts(lo, b[0]) == 0:
                    li = li or b[1]
                merged[-1] = (lo, li, hi, hat)
                changed = True
            else:
                merged.append(b)
        blocks = merged
        nxt = []
        for p in points:
            absorbed = False
            for i, (lo, li, hi, hi_i) in enumerate(blocks):
                if _pt_in_interval(p, lo, li, hi, hi_i):
                    absorbed = True
                    break
                if cmp_pts(p, lo) <= 0 and _m1_gap_empty(p, lo):
                    blocks[i] = (p, True, hi, hi_i)
                    absorbed = changed = True
                    break
                if cmp_pts(hi, p) <= 0 and _m1_gap_empty(hi, p):
                    blocks[i] = (lo, li, p, True)
                    absorbed = changed = True
                    break
            if not absorbed:
                nxt.append(p)
        points = nxt
    return blocks, points


# ---------------------------------------------------------------------------
# linear sets

class LinearSet:
    """Exact set on a linear carrier: one normalized part per atom."""

    def __init__(self, line: Line, parts: dict[str, Part]):
        self.line = line
        self.parts = {k: v for k, v in sorted(parts.items()) if not v.is_empty()}

    def key(self):
        return (self.line.name, tuple((k, v.key()) for k, v in self.parts.items()))

    def __eq__(self, other):
        return isinstance(other, LinearSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from .serial import serialize_set
        return f"LinearSet({serialize_set(self)})"

    @property
    def atoms(self):
        return set(self.parts)

    def is_empty(self):
        return not self.parts

    def contains(self, p) -> bool:
        for name, part in self.parts.items():
            if self.line.atoms[name].contains(p) and part.real_member(p):
                return True
        return False


def make_linear(line: Line, raw: dict[str, tuple]) -> LinearSet:
    parts = {}
    for name, (intervals, points) in raw.items():
        parts[name] = _normalize_part(line.atoms[name], intervals, points)
    return LinearSet(line, parts)


def empty_set(line: Line) -> LinearSet:
    return LinearSet(line, {})


def full_set(line: Line, atoms) -> LinearSet:
    return make_linear(line, {a: ([(NEG_INF, False, POS_INF, False)], []) for a in atoms})


def interval_set(line: Line, atoms, lo, hi, lo_in=False, hi_in=False) -> LinearSet:
    return make_linear(line, {a: ([(lo, lo_in, hi, hi_in)], []) for a in atoms})


def point_set(line: Line, pts) -> LinearSet:
    raw: dict[str, tuple] = {}
    for p in pts:
        a = line.atom_of(p)
        raw.setdefault(a, ([], []))[1].append(p)
    return make_linear(line, raw)


def _part_union(atom, a: Part, b: Part) -> Part:
    return _normalize_part(atom, list(a.intervals) + list(b.intervals), list(a.points) + list(b.points))


def _part_intersect(atom, a: Part, b: Part) -> Part:
    ivs = []
    for x in a.intervals:
        for y in b.intervals:
            iv = _iv_intersect(x, y)
            if _iv_raw_nonempty(iv):
                ivs.append(iv)
    pts = [p for p in a.points if b.real_member(p)] + [p for p in b.points if a.real_member(p)]
    return _normalize_part(atom, ivs, pts)


def _part_complement(atom, a: Part) -> Part:
    ivs = _complement_intervals(list(a.intervals))
    ivs = _split_at_points(ivs, list(a.points))
    return _normalize_part(atom, ivs, [])


def union(a: LinearSet, b: LinearSet) -> LinearSet:
    assert a.line is b.line
    parts = {}
    for name in a.atoms | b.atoms:
        parts[name] = _part_union(a.line.atoms[name], a.parts.get(name, EMPTY_PART), b.parts.get(name, EMPTY_PART))
    return LinearSet(a.line, parts)


def intersect(a: LinearSet, b: LinearSet) -> LinearSet:
    assert a.line is b.line
    parts = {}
    for name in a.atoms & b.atoms:
        parts[name] = _part_intersect(a.line.atoms[name], a.parts[name], b.parts[name])
    return LinearSet(a.line, parts)


def complement(a: LinearSet, atoms) -> LinearSet:
    parts = {}
    for name in atoms:
        parts[name] = _part_complement(a.line.atoms[name], a.parts.get(name, EMPTY_PART))
    return LinearSet(a.line, parts)


def difference(a: LinearSet, b: LinearSet) -> LinearSet:
    return intersect(a, complement(b, a.atoms))


def is_subset(a: LinearSet, b: LinearSet) -> bool:
    return difference(a, b).is_empty()


def meets(a: LinearSet, b: LinearSet) -> bool:
    return not intersect(a, b).is_empty()


def closure(a: LinearSet, atoms) -> LinearSet:
    raw = {name: ([], []) for name in atoms}
    for src, part in a.parts.items():
        atom = a.line.atoms[src]
        if not atom.dense:
            ivs, pts = raw.get(src) or raw.setdefault(src, ([], []))
            for lo, li, hi, hi_i in part.intervals:
                if cmp_pts(lo, Fraction(0)) == 0:
                    li = True  # 0 is the unique M1 accumulation point
                ivs.append((lo, li, hi, hi_i))
            pts.extend(part.points)
            continue
        for tgt in atoms:
            ivs, pts = raw[tgt]
            for lo, li, hi, hi_i in part.intervals:
                ivs.append((lo, True, hi, True))
            if tgt == src:
                pts.extend(part.points)
    return make_linear(a.line, raw)


def interior(a: LinearSet, atoms) -> LinearSet:
    return complement(closure(complement(a, atoms), atoms), atoms)


def omega_acc(a: LinearSet, atoms) -> LinearSet:
    raw = {name: ([], []) for name in atoms}
    for src, part in a.parts.items():
        atom = a.line.atoms[src]
        if not atom.dense:
            for lo, li, hi, hi_i in part.intervals:
                if cmp_pts(lo, Fraction(0)) == 0:
                    raw[src][1].append(Fraction(0))
            continue
        for tgt in atoms:
            ivs, _ = raw[tgt]
            for lo, li, hi, hi_i in part.intervals:
                ivs.append((lo, True, hi, True))
    return make_linear(a.line, raw)


def bounds(a: LinearSet):
    """(inf, sup) endpoints of the set, or None when empty."""
    lo = hi = None
    for part in a.parts.values():
        for l, _, h, _ in part.intervals:
            lo = l if lo is None or pt_lt(l, lo) else lo
            hi = h if hi is None or pt_lt(hi, h) else hi
        for p in part.points:
            lo = p if lo is None or pt_lt(p, lo) else lo
            hi = p if hi is None or pt_lt(hi, p) else hi
    if lo is None:
        return None
    return lo, hi


def diameter(a: LinearSet):
    """Exact diameter (sup - inf); POS_INF when unbounded; 0 for <=1 point."""
    b = bounds(a)
    if b is None:
        return Fraction(0)
    lo, hi = b
    if isinstance(lo, _Inf) or isinstance(hi, _Inf):
        return POS_INF
    return hi - lo


def sample_points(a: LinearSet, n: int, seed: int = 0):
    """Deterministic sample of n carrier points of the set (fewer when finite)."""
    import random

    gens = []
    explicit = []
    for name, part in a.parts.items():
        atom = a.line.atoms[name]
        explicit.extend(part.points)
        for iv in part.intervals:
            gens.append(atom.sample(iv[0], iv[2], iv[1], iv[3]))
    out = list(explicit)
    seen = set(out)
    active = gens
    while active and len(out) < max(n * 3, n + 5):
        nxt = []
        for g in active:
            try:
                v = next(g)
            except StopIteration:
                continue
            if v not in seen:
                seen.add(v)
                out.append(v)
            nxt.append(g)
        active = nxt
    rng = random.Random(seed)
    rng.shuffle(out)
    return out[:n]


def enumerate_points(a: LinearSet, n: int):
    """Deterministic prefix-stable enumeration: the first n points are a
    prefix of the first n+1, which paging constructions rely on."""
    gens = []
    out = []
    for name, part in sorted(a.parts.items()):
        atom = a.line.atoms[name]
        out.extend(sorted(part.points))
        for iv in part.intervals:
            gens.append(atom.sample(iv[0], iv[2], iv[1], iv[3]))
    seen = set(out)
    out = out[:n]
    active = gens
    while active and len(out) < n:
        nxt = []
        for g in active:
            try:
                v = next(g)
            except StopIteration:
                continue
            if v not in seen:
                seen.add(v)
                out.append(v)
            nxt.append(g)
        active = nxt
    return out[:n]


def pick_point(a: LinearSet):
    """First deterministic member, or None when empty."""
    for name, part in sorted(a.parts.items()):
        if part.points:
            return part.points[0]
        atom = a.line.atoms[name]
        for iv in part.intervals:
            for v in atom.sample(iv[0], iv[2], iv[1], iv[3]):
                return v
    return None
