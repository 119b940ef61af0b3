"""Spaces: a carrier plus a basis scheme and (when exact) Kuratowski operators.

Two tiers.  Exact spaces compute closure/interior/omega-limit sets exactly on
their set algebra.  Probe spaces (topology refinements) answer membership and
meets questions about basic sets but refuse exact closure through the public
interface; refinement constructors that genuinely need refined closures use
the internal exact formula of the dense refinement.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import linear as L
from . import prefix as P
from .points import NEG_INF, POS_INF, SeqPoint, Tagged, cmp_pts, fieldpoint


class TierError(Exception):
    """Raised when an exact operator is requested from a probe-tier space."""


class Space:
    tier = "exact"

    def __init__(self, sid: str):
        self.sid = sid
        self._basis_cache: dict[int, list] = {}

    # -- set algebra -------------------------------------------------------
    def empty(self): raise NotImplementedError
    def full(self): raise NotImplementedError
    def union(self, a, b): raise NotImplementedError
    def intersect(self, a, b): raise NotImplementedError
    def complement(self, a): raise NotImplementedError

    def difference(self, a, b):
        return self.intersect(a, self.complement(b))

    def is_empty(self, a):
        return a.is_empty()

    def is_subset(self, a, b):
        return self.is_empty(self.difference(a, b))

    def meets(self, a, b):
        return not self.is_empty(self.intersect(a, b))

    def set_contains(self, a, p):
        return a.contains(p)

    # -- topology ----------------------------------------------------------
    def closure(self, a): raise TierError(f"{self.sid}: probe tier, no exact closure")
    def interior(self, a): raise TierError(f"{self.sid}: probe tier, no exact interior")
    def omega_acc(self, a): raise TierError(f"{self.sid}: no exact omega-limit operator")

    def contains_point(self, p) -> bool:
        raise NotImplementedError

    # -- basis -------------------------------------------------------------
    def _level(self, d: int) -> list:
        raise NotImplementedError

    def basis(self, depth: int) -> list:
        """Cumulative deterministic basic-set enumeration, no empty sets."""
        if depth not in self._basis_cache:
            out, seen = [], set()
            for d in range(1, depth + 1):
                for b in self._level(d):
                    k = basic_key(b)
                    if k not in seen and not basic_is_empty(self, b):
                        seen.add(k)
                        out.append(b)
            self._basis_cache[depth] = out
        return self._basis_cache[depth]

    def neighborhoods_of(self, p, depth: int) -> list:
        return [b for b in self.basis(depth) if basic_contains(b, p)]

    def pool_region(self):
        """Bounded region the deterministic sample pool draws from; keeps
        pool points inside the radius covered by shallow basis levels."""
        return self.full()

    def sample_pool(self, n: int, seed: int = 0) -> list:
        return self.sample(self.pool_region(), n, seed)

    def sample(self, a, n, seed=0):
        raise NotImplementedError

    def pick_point(self, a):
        pts = self.sample(a, 1, 0)
        return pts[0] if pts else None

    def __repr__(self):
        return f"Space({self.sid})"


class ProbeSet:
    """Basic set known only through decidable membership / meets probes."""

    def __init__(self, sid, contains_fn, meets_fn, desc, exact=None):
        self.sid = sid
        self._contains = contains_fn
        self._meets = meets_fn
        self.desc = desc
        self.exact = exact  # optional exact materialization

    def contains(self, p):
        return self._contains(p)

    def meets_set(self, other):
        return self._meets(other)

    def __repr__(self):
        return f"ProbeSet({self.desc})"


def basic_key(b):
    if isinstance(b, ProbeSet):
        return ("probe", b.desc)
    return b.key()


def basic_contains(b, p):
    return b.contains(p)


def basic_is_empty(space, b):
    if isinstance(b, ProbeSet):
        return False  # constructors only emit nonempty probes
    return space.is_empty(b)


def basic_meets(space, a, b):
    """Meets check where either side may be a probe set."""
    if isinstance(a, ProbeSet) and isinstance(b, ProbeSet):
        raise TierError("meets of two probe sets is not supported")
    if isinstance(a, ProbeSet):
        return a.meets_set(b)
    if isinstance(b, ProbeSet):
        return b.meets_set(a)
    return space.meets(a, b)


# ---------------------------------------------------------------------------
# linear spaces

def _grid(d: int):
    h = Fraction(1, 2 ** (d - 1))
    return h


class LinearSpace(Space):
    def __init__(self, sid, line, atoms):
        super().__init__(sid)
        self.line = line
        self.atoms = frozenset(atoms)

    def empty(self): return L.empty_set(self.line)
    def full(self): return L.full_set(self.line, self.atoms)
    def union(self, a, b): return L.union(a, b)
    def intersect(self, a, b): return L.intersect(a, b)
    def complement(self, a): return L.complement(a, self.atoms)
    def closure(self, a): return L.closure(a, self.atoms)
    def interior(self, a): return L.interior(a, self.atoms)
    def omega_acc(self, a): return L.omega_acc(a, self.atoms)

    def contains_point(self, p):
        return any(self.line.atoms[a].contains(p) for a in self.atoms)

    def pool_region(self):
        return self.interval(Fraction(-2), Fraction(2))

    def interval(self, lo, hi, lo_in=False, hi_in=False):
        return L.interval_set(self.line, self.atoms, lo, hi, lo_in, hi_in)

    def points(self, pts):
        s = L.point_set(self.line, pts)
        return L.intersect(s, self.full())

    def sample(self, a, n, seed=0):
        return L.sample_points(a, n, seed)

    def pick_point(self, a):
        return L.pick_point(a)

    def _level(self, d):
        out = []
        h = _grid(d)
        if d <= 3:
            pts = [k * h for k in range(-d * 2 ** (d - 1), d * 2 ** (d - 1) + 1)]
            for i, a in enumerate(pts):
                for b in pts[i + 1:]:
                    out.append(self.interval(a, b))
        else:
            for mult in (1, 2, 4):
                w = mult * h
                k = -d * 2 ** (d - 1)
                while k * h + w <= d:
                    out.append(self.interval(k * h, k * h + w))
                    k += 1
        return out


def q_space():
    return LinearSpace("q", L.QLINE, {"D", "N"})


def dyadic_space():
    return LinearSpace("x_dyadic", L.QLINE, {"D"})


def nondyadic_space():
    return LinearSpace("y_nondyadic", L.QLINE, {"N"})


class M1Space(LinearSpace):
    """Scattered carrier: grid-interval traces plus singletons of the
    (isolated) nonzero pool points."""

    def _level(self, d):
        out = super()._level(d)
        for p in self.sample_pool(6 * d, seed=0):
            if p != 0:
                out.append(self.points([p]))
        return out


def m1_space():
    return M1Space("m1", L.M1LINE, {"M1"})


def field_space(sid="field", atoms=("Q1", "Q2", "H")):
    return LinearSpace(sid, L.FIELDLINE, set(atoms))


# ---------------------------------------------------------------------------
# sequence space

class SeqSpace(Space):
    def __init__(self, sid="seq", entry_cap=2):
        super().__init__(sid)
        self.carrier = P.SeqCarrier()
        self.entry_cap = entry_cap

    def empty(self): return P.p_empty(self.carrier)
    def full(self): return P.p_full(self.carrier)
    def union(self, a, b): return P.p_union(a, b)
    def intersect(self, a, b): return P.p_intersect(a, b)
    def complement(self, a): return P.p_complement(a)
    def closure(self, a): return P.p_closure(a)
    def interior(self, a): return P.p_interior(a)
    def omega_acc(self, a): return P.p_omega_acc(a)

    def contains_point(self, p):
        return isinstance(p, SeqPoint)

    def cylinder(self, prefix):
        return P.cylinder(self.carrier, tuple(prefix))

    def sample(self, a, n, seed=0):
        pts = list(a.added) + self.carrier.region_points(a.trie, n * 2)
        pts = [p for p in pts if a.contains(p)]
        rng = random.Random(seed)
        rng.shuffle(pts)
        return pts[:n]

    def _level(self, d):
        cap = min(d, self.entry_cap)
        out = []
        for length in range(0, d + 1):
            for prefix in itertools.product(range(cap + 1), repeat=length):
                out.append(self.cylinder(prefix))
        return out


# ---------------------------------------------------------------------------
# disjoint sums

class SumSet:
    def __init__(self, comps: dict):
        self.comps = {t: s for t, s in sorted(comps.items()) if not s.is_empty()}

    def key(self):
        return ("sum", tuple((t, s.key()) for t, s in self.comps.items()))

    def __eq__(self, other):
        return isinstance(other, SumSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from .serial import serialize_set
        return f"SumSet({serialize_set(self)})"

    def contains(self, p):
        if not isinstance(p, Tagged):
            return False
        s = self.comps.get(p.tag)
        return s is not None and s.contains(p.point)

    def is_empty(self):
        return not self.comps


class SumSpace(Space):
    def __init__(self, sid, comps: list[Space]):
        super().__init__(sid)
        self.comps = dict(enumerate(comps))

    def make(self, comps: dict) -> SumSet:
        return SumSet(comps)

    def _map(self, op, a, b=None):
        out = {}
        for t, sp in self.comps.items():
            x = a.comps.get(t, sp.empty()) if isinstance(a, SumSet) else a
            if b is None:
                out[t] = op(sp, x)
            else:
                y = b.comps.get(t, sp.empty())
                out[t] = op(sp, x, y)
        return SumSet(out)

    def empty(self): return SumSet({})
    def full(self): return SumSet({t: sp.full() for t, sp in self.comps.items()})
    def union(self, a, b): return self._map(lambda sp, x, y: sp.union(x, y), a, b)
    def intersect(self, a, b): return self._map(lambda sp, x, y: sp.intersect(x, y), a, b)
    def complement(self, a): return self._map(lambda sp, x: sp.complement(x), a)
    def closure(self, a): return self._map(lambda sp, x: sp.closure(x), a)
    def interior(self, a): return self._map(lambda sp, x: sp.interior(x), a)
    def omega_acc(self, a): return self._map(lambda sp, x: sp.omega_acc(x), a)

    def contains_point(self, p):
        return isinstance(p, Tagged) and p.tag in self.comps and self.comps[p.tag].contains_point(p.point)

    def pool_region(self):
        return SumSet({t: sp.pool_region() for t, sp in self.comps.items()})

    def inject(self, tag, s) -> SumSet:
        return SumSet({tag: s})

    def sample(self, a, n, seed=0):
        out = []
        per = max(1, n // max(1, len(a.comps)))
        for t, s in a.comps.items():
            out.extend(Tagged(t, p) for p in self.comps[t].sample(s, per + 1, seed + t))
        rng = random.Random(seed)
        rng.shuffle(out)
        return out[:n]

    def _level(self, d):
        out = []
        for t, sp in self.comps.items():
            for b in sp._level(d):
                out.append(SumSet({t: b}))
        return out


# ---------------------------------------------------------------------------
# Alexandrov-style duplicate

class DupSet:
    """Subset of a duplicate: (level-1 part, level-2 part) over the base line."""

    def __init__(self, l1, l2):
        self.l1 = l1
        self.l2 = l2

    def key(self):
        return ("dup", self.l1.key(), self.l2.key())

    def __eq__(self, other):
        return isinstance(other, DupSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from .serial import serialize_set
        return f"DupSet({serialize_set(self)})"

    def contains(self, p):
        if not isinstance(p, Tagged):
            return False
        part = self.l1 if p.tag == 1 else self.l2 if p.tag == 2 else None
        return part is not None and part.contains(p.point)

    def is_empty(self):
        return self.l1.is_empty() and self.l2.is_empty()


class DuplicateSpace(Space):
    """Two copies of a base line; level-1 points are isolated, level-2 points
    keep base neighborhoods that drop finitely many level-1 twins."""

    def __init__(self, sid, base: LinearSpace, pool_size=24):
        super().__init__(sid)
        self.base = base
        self.pool_size = pool_size

    def make(self, l1, l2) -> DupSet:
        return DupSet(l1, l2)

    def make_W(self, U, Y_points: list) -> DupSet:
        """Basic neighborhood: (U minus Y) on level 1, all of U on level 2."""
        Y = self.base.points(Y_points)
        return DupSet(self.base.difference(U, Y), U)

    def singleton1(self, x) -> DupSet:
        return DupSet(self.base.points([x]), self.base.empty())

    def empty(self): return DupSet(self.base.empty(), self.base.empty())
    def full(self): return DupSet(self.base.full(), self.base.full())
    def union(self, a, b): return DupSet(self.base.union(a.l1, b.l1), self.base.union(a.l2, b.l2))
    def intersect(self, a, b): return DupSet(self.base.intersect(a.l1, b.l1), self.base.intersect(a.l2, b.l2))
    def complement(self, a): return DupSet(self.base.complement(a.l1), self.base.complement(a.l2))

    def closure(self, a):
        # level-1 points are isolated; a level-2 point lies in the closure iff
        # its base point is in A2, a limit of A2, or an omega-limit of A1
        l2 = self.base.union(self.base.closure(a.l2), self.base.omega_acc(a.l1))
        return DupSet(a.l1, l2)

    def interior(self, a):
        return self.complement(self.closure(self.complement(a)))

    def contains_point(self, p):
        return isinstance(p, Tagged) and p.tag in (1, 2) and self.base.contains_point(p.point)

    def pool_region(self):
        r = self.base.pool_region()
        return DupSet(r, r)

    def pool(self, depth):
        return self.base.sample_pool(min(self.pool_size, 4 * depth), seed=0)

    def sample(self, a, n, seed=0):
        out = [Tagged(1, p) for p in self.base.sample(a.l1, n, seed)]
        out += [Tagged(2, p) for p in self.base.sample(a.l2, n, seed + 1)]
        rng = random.Random(seed)
        rng.shuffle(out)
        return out[:n]

    def _level(self, d):
        out = [self.singleton1(x) for x in self.pool(d)]
        for U in self.base._level(d):
            out.append(self.make_W(U, []))
            for y in self.pool(d):
                if U.contains(y):
                    out.append(self.make_W(U, [y]))
        return out


# ---------------------------------------------------------------------------
# discrete wrapper and generic subspace

class DiscreteSpace(Space):
    """Same set algebra as the base space, discrete topology."""

    def __init__(self, sid, base: Space):
        super().__init__(sid)
        self.base = base

    def empty(self): return self.base.empty()
    def full(self): return self.base.full()
    def union(self, a, b): return self.base.union(a, b)
    def intersect(self, a, b): return self.base.intersect(a, b)
    def complement(self, a): return self.base.complement(a)
    def closure(self, a): return a
    def interior(self, a): return a
    def omega_acc(self, a): return self.base.empty()

    def contains_point(self, p):
        return self.base.contains_point(p)

    def pool_region(self):
        return self.base.pool_region()

    def sample(self, a, n, seed=0):
        return self.base.sample(a, n, seed)

    def _level(self, d):
        out = []
        for p in self.base.sample_pool(4 * d, seed=0):
            out.append(_singleton_of(self.base, p))
        return out


def _singleton_of(space, p):
    if isinstance(space, LinearSpace):
        return space.points([p])
    if isinstance(space, SeqSpace):
        return P.p_points(space.carrier, [p])
    raise NotImplementedError


class SubSpace(Space):
    """Subspace on an exact carrier set of an exact parent."""

    def __init__(self, sid, parent: Space, carrier_set):
        super().__init__(sid)
        self.parent = parent
        self.carrier_set = carrier_set

    def empty(self): return self.parent.empty()
    def full(self): return self.carrier_set
    def union(self, a, b): return self.parent.union(a, b)
    def intersect(self, a, b): return self.parent.intersect(a, b)
    def complement(self, a): return self.parent.difference(self.carrier_set, a)

    def closure(self, a):
        return self.parent.intersect(self.parent.closure(a), self.carrier_set)

    def interior(self, a):
        return self.complement(self.closure(self.complement(a)))

    def omega_acc(self, a):
        return self.parent.intersect(self.parent.omega_acc(a), self.carrier_set)

    def contains_point(self, p):
        return self.carrier_set.contains(p)

    def sample(self, a, n, seed=0):
        return self.parent.sample(self.parent.intersect(a, self.carrier_set), n, seed)

    def _level(self, d):
        return [self.parent.intersect(b, self.carrier_set) for b in self.parent._level(d)]


# ---------------------------------------------------------------------------
# refinements (probe tier)

class DenseRefineSpace(Space):
    """Refine an exact parent by declaring U cap D open for a dense set D.

    Probe tier publicly; the refined closure is exactly computable and is
    exposed internally for constructions living on top of this space:
    cl'(A) = (cl(A cap D) cap D) u (cl(A) minus D).
    """

    tier = "probe"

    def __init__(self, sid, parent: Space, D):
        super().__init__(sid)
        cl = parent.closure(D)
        if cl != parent.full():
            raise ValueError("refining set must be dense in the parent")
        self.parent = parent
        self.D = D

    def empty(self): return self.parent.empty()
    def full(self): return self.parent.full()
    def union(self, a, b): return self.parent.union(a, b)
    def intersect(self, a, b): return self.parent.intersect(a, b)
    def complement(self, a): return self.parent.complement(a)

    def contains_point(self, p):
        return self.parent.contains_point(p)

    def pool_region(self):
        return self.parent.pool_region()

    def interval(self, lo, hi, lo_in=False, hi_in=False):
        return self.parent.interval(lo, hi, lo_in, hi_in)

    def points(self, pts):
        return self.parent.points(pts)

    def _closure_refined(self, a):
        p = self.parent
        inside = p.intersect(p.closure(p.intersect(a, self.D)), self.D)
        outside = p.difference(p.closure(a), self.D)
        return p.union(inside, outside)

    def _interior_refined(self, a):
        return self.complement(self._closure_refined(self.complement(a)))

    def sample(self, a, n, seed=0):
        return self.parent.sample(a, n, seed)

    def _level(self, d):
        out = []
        for U in self.parent._level(d):
            out.append(U)
            out.append(self.parent.intersect(U, self.D))
        return out


class StarBasic:
    """Structured basic of a star refinement: optional plain open U and
    optional starred member V_k; materializes to an exact set."""

    def __init__(self, U, k, exact):
        self.U = U
        self.k = k
        self.exact = exact

    def key(self):
        return ("star", None if self.U is None else self.U.key(), self.k)

    def contains(self, p):
        return self.exact.contains(p)

    def is_empty(self):
        return self.exact.is_empty()


class StarRefineSpace(Space):
    """Refinement by starred sets V* = V u (cl V minus V0) for a nested
    family V_1 > V_2 > ... of basic neighborhoods of a point x0 inside V0."""

    tier = "probe"

    def __init__(self, sid, parent: Space, x0, V0, family):
        super().__init__(sid)
        self.parent = parent
        self.x0 = x0
        self.V0 = V0
        self.family = family  # k -> exact open set, nested decreasing
        for k in range(1, 6):
            vk, vk1 = family(k), family(k + 1)
            if not _space_subset(parent, vk1, vk) or not vk.contains(x0):
                raise ValueError("star family must be a nested neighborhood chain of x0")

    def _cl(self, a):
        if isinstance(self.parent, DenseRefineSpace):
            return self.parent._closure_refined(a)
        return self.parent.closure(a)

    def star(self, k):
        V = self.family(k)
        p = self.parent
        return p.union(V, p.difference(self._cl(V), self.V0))

    def star_part(self, k):
        """The points a starred basic adds beyond its plain member."""
        p = self.parent
        return p.difference(self.star(k), self.family(k))

    def empty(self): return self.parent.empty()
    def full(self): return self.parent.full()
    def union(self, a, b): return self.parent.union(a, b)
    def intersect(self, a, b): return self.parent.intersect(a, b)
    def complement(self, a): return self.parent.complement(a)

    def contains_point(self, p):
        return self.parent.contains_point(p)

    def sample(self, a, n, seed=0):
        return self.parent.sample(a, n, seed)

    def _level(self, d):
        out = []
        for U in self.parent._level(d):
            if not U.contains(self.x0):
                out.append(StarBasic(U, None, U))
        for k in range(1, d + 1):
            sk = self.star(k)
            out.append(StarBasic(None, k, sk))
            for U in self.parent._level(d):
                out.append(StarBasic(U, k, self.parent.intersect(U, sk)))
        return out


class CardinalRefineSpace(Space):
    """Countable-index refinement: V_a* = V_a u {x_g : g >= a} where the x_g
    accumulate only inside every V_a.  Starred basics are probe sets."""

    tier = "probe"

    def __init__(self, sid, parent: Space, x0, V, v_family, x_family, kappa="omega"):
        super().__init__(sid)
        if kappa != "omega":
            raise ValueError("only the countable index case is supported")
        self.parent = parent
        self.x0 = x0
        self.V = V
        self.v_family = v_family
        self.x_family = x_family
        cl = parent._closure_refined if isinstance(parent, DenseRefineSpace) else parent.closure
        seen = set()
        for n in range(1, 8):
            xn = x_family(n)
            if not cl(v_family(n)).contains(xn) or V.contains(xn) or xn in seen:
                raise ValueError("x_n must be distinct points of cl(V_n) minus V")
            seen.add(xn)
            if not _space_subset(parent, v_family(n + 1), v_family(n)):
                raise ValueError("V_n must be nested decreasing")

    def _tail_meets(self, a: int, S) -> bool:
        """Does {x_g : g >= a} meet the exact set S?  Exact: the tail is a
        strictly decreasing positive sequence accumulating at 0."""
        for g in range(a, a + 64):
            if S.contains(self.x_family(g)):
                return True
        # beyond the bounded scan, x_g is tiny: S can still catch the tail
        # only via an interval part reaching down to 0
        from .linear import LinearSet, _pt_in_interval
        if not isinstance(S, LinearSet):
            return False
        x_probe = self.x_family(a + 64)
        for part in S.parts.values():
            for lo, li, hi, hi_i in part.intervals:
                if cmp_pts(lo, Fraction(0)) <= 0 and cmp_pts(Fraction(0), hi) < 0:
                    return True
                # interval with positive lo: finitely many tail points above lo
                if cmp_pts(x_probe, hi) < 0:
                    g = a + 64
                    while cmp_pts(Fraction(0), self.x_family(g)) < 0 and cmp_pts(lo, self.x_family(g)) < 0:
                        if _pt_in_interval(self.x_family(g), lo, li, hi, hi_i):
                            return True
                        g += 1
                        if g > a + 4096:
                            break
        return False

    def starred(self, a: int) -> ProbeSet:
        Va = self.v_family(a)

        def member(p):
            if Va.contains(p):
                return True
            g = a
            while True:
                xg = self.x_family(g)
                c = cmp_pts(xg, p)
                if c == 0:
                    return True
                if c < 0:
                    return False  # the tail is strictly decreasing
                g += 1
                if g > a + 4096:
                    return False

        def meet(S):
            return self.parent.meets(Va, S) or self._tail_meets(a, S)

        return ProbeSet(self.sid, member, meet, f"V*({a})", exact=None)

    def starred_disjoint_from(self, a: int, U) -> bool:
        """Exact check that V_a* misses the exact set U."""
        return not self.parent.meets(self.v_family(a), U) and not self._tail_meets(a, U)

    def empty(self): return self.parent.empty()
    def full(self): return self.parent.full()
    def union(self, a, b): return self.parent.union(a, b)
    def intersect(self, a, b): return self.parent.intersect(a, b)
    def complement(self, a): return self.parent.complement(a)

    def contains_point(self, p):
        return self.parent.contains_point(p)

    def sample(self, a, n, seed=0):
        return self.parent.sample(a, n, seed)

    def _level(self, d):
        out = []
        for U in self.parent._level(d):
            if not U.contains(self.x0):
                out.append(U)
        for a in range(1, d + 1):
            out.append(self.starred(a))
        return out


def _space_subset(space, a, b):
    return space.is_subset(a, b)


# ---------------------------------------------------------------------------
# registry

def build_registry():
    reg = {}

    def add(sp):
        reg[sp.sid] = sp
        return sp

    q = add(q_space())
    X = add(dyadic_space())
    Y = add(nondyadic_space())
    add(m1_space())
    add(field_space())
    add(SeqSpace())
    add(SumSpace("xsum", [dyadic_space(), nondyadic_space()]))
    add(DuplicateSpace("dup_q", q_space()))

    D = X_as_subset = L.full_set(L.QLINE, {"D"})
    add(DenseRefineSpace("dense_refine_q", q_space(), D))
    return reg
