"""Exact sets on sequence-like carriers (eventually-constant integer sequences,
and branch spaces of labeled trees).

A set is a finite-depth decision trie (cylinder combinations) plus finitely
many added/removed points.  Tries are canonical: a child equal to a leaf with
the node's default value is pruned, and childless nodes collapse to leaves,
so boolean-op results compare structurally.
"""

from __future__ import annotations

from fractions import Fraction

# trie: True | False | ("n", ((key, trie), ...sorted), default: bool)


def t_leaf(v: bool):
    return bool(v)


def t_node(children: dict, default: bool):
    items = tuple(sorted((k, c) for k, c in children.items() if c != default or not _is_leaf(c)))
    items = tuple((k, c) for k, c in items if not (_is_leaf(c) and c == default))
    if not items:
        return default
    return ("n", items, default)


def _is_leaf(t):
    return isinstance(t, bool)


def t_child(t, k):
    if _is_leaf(t):
        return t
    for key, c in t[1]:
        if key == k:
            return c
    return t[2]


def _keys(t):
    return () if _is_leaf(t) else tuple(k for k, _ in t[1])


def t_complement(t):
    if _is_leaf(t):
        return not t
    return ("n", tuple((k, t_complement(c)) for k, c in t[1]), not t[2])


def t_union(a, b):
    if a is True or b is True:
        return True
    if a is False:
        return b
    if b is False:
        return a
    keys = set(_keys(a)) | set(_keys(b))
    return t_node({k: t_union(t_child(a, k), t_child(b, k)) for k in keys}, a[2] or b[2])


def t_intersect(a, b):
    if a is False or b is False:
        return False
    if a is True:
        return b
    if b is True:
        return a
    keys = set(_keys(a)) | set(_keys(b))
    return t_node({k: t_intersect(t_child(a, k), t_child(b, k)) for k in keys}, a[2] and b[2])


def t_diff(a, b):
    return t_intersect(a, t_complement(b))


def t_member(t, point) -> bool:
    i = 0
    while not _is_leaf(t):
        t = t_child(t, point.entry(i))
        i += 1
    return t


def t_depth(t) -> int:
    if _is_leaf(t):
        return 0
    return 1 + max(t_depth(c) for _, c in t[1])


def path_trie(prefix: tuple) -> object:
    """The cylinder of all points extending the given prefix."""
    t = True
    for k in reversed(prefix):
        t = t_node({k: t}, False)
    return t


class SeqCarrier:
    """Carrier of eventually-constant nat sequences: no isolated points."""

    name = "seq"

    def isolation_depth(self, p):
        return None

    def trie_nonempty(self, t) -> bool:
        return t is not False  # every key continues to a full cylinder

    def region_points(self, t, limit, entry_cap=3):
        """Deterministic members of the trie region (eventually-0/constant tails)."""
        from .points import SeqPoint

        out = []

        def walk(t, prefix):
            if len(out) >= limit:
                return
            if _is_leaf(t):
                if t:
                    for tail in range(0, 2):
                        if len(out) >= limit:
                            return
                        out.append(SeqPoint(prefix, tail))
                return
            keys = sorted(set(_keys(t)) | set(range(entry_cap)))
            if t[2] and not any(k not in _keys(t) for k in keys):
                keys.append(max(keys) + 1)
            for k in keys:
                walk(t_child(t, k), prefix + (k,))

        walk(t, ())
        seen, uniq = set(), []
        for p in out:
            if p not in seen:
                seen.add(p)
                uniq.append(p)
        return uniq[:limit]


class PrefixSet:
    """Exact set over a sequence-like carrier."""

    def __init__(self, carrier, trie, added=frozenset(), removed=frozenset()):
        added = {p for p in added if not t_member(trie, p)}
        removed = {p for p in removed if t_member(trie, p)}
        # carve isolated points in/out of the trie so point sets only hold
        # non-isolated points; keeps closure/interior a pure rep transform
        for p in list(added):
            d = carrier.isolation_depth(p)
            if d is not None:
                trie = t_union(trie, path_trie(p.entries(d)))
                added.discard(p)
        for p in list(removed):
            d = carrier.isolation_depth(p)
            if d is not None:
                trie = t_diff(trie, path_trie(p.entries(d)))
                removed.discard(p)
        self.carrier = carrier
        self.trie = trie
        self.added = frozenset(added)
        self.removed = frozenset(removed)

    def key(self):
        return (self.carrier.name, self.trie, self.added, self.removed)

    def __eq__(self, other):
        return isinstance(other, PrefixSet) and self.key() == other.key()

    def __hash__(self):
        return hash((self.carrier.name, self.trie, frozenset(self.added), frozenset(self.removed)))

    def __repr__(self):
        from .serial import serialize_set
        return f"PrefixSet({serialize_set(self)})"

    def contains(self, p) -> bool:
        if t_member(self.trie, p):
            return p not in self.removed
        return p in self.added

    def is_empty(self):
        return not self.carrier.trie_nonempty(self.trie) and not self.added


def _merge_points(carrier, trie, *sets_and_fn):
    """Recompute added/removed from candidate points and a membership function."""
    member, candidates = sets_and_fn
    added, removed = set(), set()
    for p in candidates:
        want = member(p)
        have = t_member(trie, p)
        if want and not have:
            added.add(p)
        elif have and not want:
            removed.add(p)
    return PrefixSet(carrier, trie, added, removed)


def _cands(*sets):
    out = set()
    for s in sets:
        out |= s.added | s.removed
    return out


def p_union(a: PrefixSet, b: PrefixSet) -> PrefixSet:
    t = t_union(a.trie, b.trie)
    return _merge_points(a.carrier, t, lambda p: a.contains(p) or b.contains(p), _cands(a, b))


def p_intersect(a: PrefixSet, b: PrefixSet) -> PrefixSet:
    t = t_intersect(a.trie, b.trie)
    return _merge_points(a.carrier, t, lambda p: a.contains(p) and b.contains(p), _cands(a, b))


def p_complement(a: PrefixSet) -> PrefixSet:
    t = t_complement(a.trie)
    return _merge_points(a.carrier, t, lambda p: not a.contains(p), _cands(a))


def p_difference(a: PrefixSet, b: PrefixSet) -> PrefixSet:
    t = t_diff(a.trie, b.trie)
    return _merge_points(a.carrier, t, lambda p: a.contains(p) and not b.contains(p), _cands(a, b))


def p_subset(a: PrefixSet, b: PrefixSet) -> bool:
    return p_difference(a, b).is_empty()


def p_closure(a: PrefixSet) -> PrefixSet:
    # cylinders are clopen; finite point sets are closed; a removed
    # non-isolated point is a limit of its cylinder, so it comes back
    return PrefixSet(a.carrier, a.trie, a.added, frozenset())


def p_interior(a: PrefixSet) -> PrefixSet:
    # an added non-isolated point is never interior (isolated ones were carved
    # into the trie at construction)
    return PrefixSet(a.carrier, a.trie, frozenset(), a.removed)


def p_omega_acc(a: PrefixSet) -> PrefixSet:
    if not isinstance(a.carrier, SeqCarrier):
        raise NotImplementedError("omega_acc is only exact on the sequence carrier")
    return PrefixSet(a.carrier, a.trie, frozenset(), frozenset())


def cylinder(carrier, prefix: tuple) -> PrefixSet:
    return PrefixSet(carrier, path_trie(prefix))


def p_empty(carrier) -> PrefixSet:
    return PrefixSet(carrier, False)


def p_full(carrier) -> PrefixSet:
    return PrefixSet(carrier, True)


def p_points(carrier, pts) -> PrefixSet:
    return PrefixSet(carrier, False, frozenset(pts))


def common_prefix_len(a: PrefixSet):
    """Length of the longest shared prefix of all members; None when empty."""
    pts = list(a.added)
    paths = []

    def walk(t, prefix):
        if _is_leaf(t):
            if t:
                paths.append(prefix)
            return
        if t[2]:
            paths.append(prefix)  # default-true region spreads over many keys
            return
        for k, c in t[1]:
            walk(c, prefix + (k,))

    walk(a.trie, ())
    if not paths and not pts:
        return None
    seqs = paths + [p.entries(32) for p in pts]
    base = seqs[0]
    n = 0
    while all(len(s) > n and s[n] == base[n] for s in seqs) and n < len(base):
        n += 1
    # a default-true region at depth d allows divergence right after d
    return n


def p_diameter(a: PrefixSet):
    """Diameter under d(x, y) = 1/(first disagreement + 1)."""
    if a.is_empty():
        return Fraction(0)
    if a.trie is False and len(a.added) == 1:
        return Fraction(0)
    n = common_prefix_len(a)
    if a.trie is False:
        # finitely many points: exact max pairwise distance
        pts = list(a.added)
        best = Fraction(0)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                k = 0
                while pts[i].entry(k) == pts[j].entry(k):
                    k += 1
                best = max(best, Fraction(1, k + 1))
        return best
    return Fraction(1, n + 1)
