"""Maps between spaces, and bounded-but-exact property checkers.

Every checker returns a Verdict carrying a re-checkable certificate: the
witness sets/points are exact objects, and `recheck` replays the defining
inclusion or disjointness on them from scratch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .spaces import ProbeSet, StarBasic, Space, TierError, basic_contains


@dataclass
class Verdict:
    property: str
    subject: str
    verdict: str  # Verified | Refuted | Unknown | NotLaunchable
    depth: int
    witness_sets: dict = field(default_factory=dict)
    witness_points: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict == "Verified"

    def to_json(self):
        from .serial import serialize_point, serialize_set

        def ser_set(v):
            return serialize_set(v)

        return {
            "property": self.property,
            "subject": self.subject,
            "verdict": self.verdict,
            "depth": self.depth,
            "witness_sets": {k: ser_set(v) for k, v in self.witness_sets.items()},
            "witness_points": {k: serialize_point(v) for k, v in self.witness_points.items()},
            "detail": self.detail,
        }


class CMap:
    """Map with exact evaluation and (usually) exact preimages of exact sets."""

    def __init__(self, name, domain: Space, codomain: Space, eval_fn,
                 preimage_fn=None, image_fn=None, inverse_eval=None):
        self.name = name
        self.domain = domain
        self.codomain = codomain
        self._eval = eval_fn
        self._pre = preimage_fn
        self._img = image_fn
        self._inv = inverse_eval

    def __call__(self, p):
        return self._eval(p)

    def preimage(self, s):
        if isinstance(s, StarBasic):
            s = s.exact
        if self._pre is None:
            raise TierError(f"{self.name}: no exact preimage capability")
        return self._pre(s)

    def image(self, s):
        if self._img is None:
            raise TierError(f"{self.name}: no exact image capability")
        return self._img(s)

    @property
    def has_preimage(self):
        return self._pre is not None

    @property
    def has_image(self):
        return self._img is not None

    def __repr__(self):
        return f"CMap({self.name}: {self.domain.sid} -> {self.codomain.sid})"


def identity_map(space: Space) -> CMap:
    return CMap(f"id_{space.sid}", space, space, lambda p: p,
                preimage_fn=lambda s: s, image_fn=lambda s: s, inverse_eval=lambda p: p)


def compose(g: CMap, f: CMap) -> CMap:
    """f after g (g first)."""
    assert g.codomain.sid == f.domain.sid
    pre = None
    if g.has_preimage and f.has_preimage:
        pre = lambda s: g.preimage(f.preimage(s))
    img = None
    if g.has_image and f.has_image:
        img = lambda s: f.image(g.image(s))
    return CMap(f"{f.name}.{g.name}", g.domain, f.codomain,
                lambda p: f(g(p)), preimage_fn=pre, image_fn=img)


def inverse_map(f: CMap) -> CMap:
    """Inverse of a declared bijection; preimages of the inverse are images of f."""
    if f._inv is None:
        raise ValueError(f"{f.name} has no declared inverse evaluation")
    pre = (lambda s: f.image(s)) if f.has_image else None
    img = (lambda s: f.preimage(s)) if f.has_preimage else None
    return CMap(f"{f.name}^-1", f.codomain, f.domain, f._inv,
                preimage_fn=pre, image_fn=img, inverse_eval=f._eval)


def surjectivize(f: CMap, sid=None) -> CMap:
    """Extend f to F (+) E_d -> E with the identity on a discrete copy of E.

    The extension is automatically onto, and on the new summand every set is
    open, so near continuity and separation behavior of f are preserved.
    """
    from .spaces import DiscreteSpace, SumSpace, SumSet, Tagged

    ed = DiscreteSpace(f"{f.codomain.sid}_disc", f.codomain)
    dom = SumSpace(sid or f"{f.domain.sid}_plus_disc", [f.domain, ed])

    def ev(p):
        return f(p.point) if p.tag == 0 else p.point

    def pre(s):
        comps = {1: s}
        if f.has_preimage:
            comps[0] = f.preimage(s)
        return SumSet(comps)

    img = None
    if f.has_image:
        def img(s):
            out = f.codomain.empty()
            if 0 in s.comps:
                out = f.codomain.union(out, f.image(s.comps[0]))
            if 1 in s.comps:
                out = f.codomain.union(out, s.comps[1])
            return out

    return CMap(f"{f.name}+disc", dom, f.codomain, ev,
                preimage_fn=pre if f.has_preimage else None, image_fn=img)


# ---------------------------------------------------------------------------
# checkers

def _codomain_basics(f: CMap, depth):
    skipped = 0
    out = []
    for b in f.codomain.basis(depth):
        if isinstance(b, ProbeSet):
            skipped += 1
            continue
        out.append(b.exact if isinstance(b, StarBasic) else b)
    return out, skipped


def check_near_continuity(f: CMap, depth: int) -> Verdict:
    """f^-1(V) inside int cl f^-1(V) for every enumerated codomain basic V."""
    dom = f.domain
    basics, skipped = _codomain_basics(f, depth)
    checked = 0
    for V in basics:
        pre = f.preimage(V)
        if dom.is_empty(pre):
            continue
        hull = dom.interior(dom.closure(pre))
        if not dom.is_subset(pre, hull):
            bad = dom.difference(pre, hull)
            w = dom.pick_point(bad)
            return Verdict("near_continuity", f.name, "Refuted", depth,
                           witness_sets={"V": V, "preimage": pre},
                           witness_points={"escaping": w})
        checked += 1
    return Verdict("near_continuity", f.name, "Verified", depth,
                   detail={"basics_checked": checked, "probe_basics_skipped": skipped})


def check_feebly_open(f: CMap, depth: int) -> Verdict:
    """Nonempty enumerated opens have images with nonempty interior."""
    basics = [b for b in f.domain.basis(depth) if not isinstance(b, ProbeSet)]
    for U in basics:
        if isinstance(U, StarBasic):
            U = U.exact
        img = f.image(U)
        if f.codomain.is_empty(img):
            continue
        if f.codomain.is_empty(f.codomain.interior(img)):
            return Verdict("feebly_open", f.name, "Refuted", depth,
                           witness_sets={"U": U, "image": img})
    return Verdict("feebly_open", f.name, "Verified", depth,
                   detail={"basics_checked": len(basics)})


def check_continuity_at(f: CMap, points, depth: int) -> Verdict:
    """Bounded continuity check at finitely many points.

    Refuted at p with witness V when p lies in the exact closure of the
    preimage of the complement of V; Verified(bounded) when every enumerated
    V around f(p) pulls back over some enumerated U around p.
    """
    dom, cod = f.domain, f.codomain
    refuted = []
    for p in points:
        y = f(p)
        nY, _ = _codomain_basics(f, depth)
        found_bad = None
        ok = True
        for V in nY:
            if not V.contains(y):
                continue
            pre = f.preimage(V)
            copre = dom.complement(pre)
            if dom.set_contains(dom.closure(copre), p):
                found_bad = V
                break
            if not any(basic_contains(U, p) and dom.is_subset(
                    U.exact if isinstance(U, StarBasic) else U, pre)
                       for U in dom.basis(depth) if not isinstance(U, ProbeSet)):
                ok = False
        if found_bad is not None:
            refuted.append((p, found_bad))
        elif not ok:
            return Verdict("continuity", f.name, "Unknown", depth,
                           witness_points={"undecided_at": p})
    if refuted:
        p, V = refuted[0]
        return Verdict("continuity", f.name, "Refuted", depth,
                       witness_sets={"V": V}, witness_points={"at": p},
                       detail={"refuted_points": len(refuted), "points_checked": len(points)})
    return Verdict("continuity", f.name, "Verified", depth,
                   detail={"points_checked": len(points)})


def check_closed_graph(f: CMap, pairs, depth: int) -> Verdict:
    """Search (U, V) with U cap f^-1(V) empty for each off-graph pair (x, y).

    Never Refuted: an exhausted bounded search reports Unknown.
    """
    dom, cod = f.domain, f.codomain
    certs = []
    for x, y in pairs:
        if f(x) == y:
            raise ValueError("closed-graph pairs must be off the graph")
        got = None
        Vs = [V for V in cod.neighborhoods_of(y, depth) if not isinstance(V, ProbeSet)]
        Us = [U for U in dom.neighborhoods_of(x, depth) if not isinstance(U, ProbeSet)]
        for V in Vs:
            Vx = V.exact if isinstance(V, StarBasic) else V
            pre = f.preimage(Vx)
            for U in Us:
                Ux = U.exact if isinstance(U, StarBasic) else U
                if dom.is_empty(dom.intersect(Ux, pre)):
                    got = (U, V)
                    break
            if got:
                break
        if not got:
            return Verdict("closed_graph", f.name, "Unknown", depth,
                           witness_points={"x": x, "y": y},
                           detail={"note": "bounded search exhausted"})
        certs.append(got)
    U, V = certs[0] if certs else (None, None)
    v = Verdict("closed_graph", f.name, "Verified", depth,
                detail={"pairs_checked": len(pairs)})
    if certs:
        v.witness_sets = {"U_first": certs[0][0], "V_first": certs[0][1]}
    return v


def check_separating(f: CMap, pairs, depth: int) -> Verdict:
    """For x != y find (Vx, Vy) with cl f^-1(Vx) cap f^-1(Vy) and
    f^-1(Vx) cap cl f^-1(Vy) both empty (closures in the domain)."""
    dom, cod = f.domain, f.codomain
    found = []
    for x, y in pairs:
        fx, fy = f(x), f(y)
        if fx == fy:
            raise ValueError("separating pairs need distinct images")
        got = None
        Vxs = [V for V in cod.neighborhoods_of(fx, depth) if not isinstance(V, ProbeSet)]
        Vys = [V for V in cod.neighborhoods_of(fy, depth) if not isinstance(V, ProbeSet)]
        for Vx in Vxs:
            px = f.preimage(Vx.exact if isinstance(Vx, StarBasic) else Vx)
            cpx = dom.closure(px)
            for Vy in Vys:
                py = f.preimage(Vy.exact if isinstance(Vy, StarBasic) else Vy)
                if dom.is_empty(dom.intersect(cpx, py)) and \
                   dom.is_empty(dom.intersect(px, dom.closure(py))):
                    got = (Vx, Vy)
                    break
            if got:
                break
        if not got:
            return Verdict("separating", f.name, "Unknown", depth,
                           witness_points={"x": x, "y": y})
        found.append(got)
    v = Verdict("separating", f.name, "Verified", depth,
                detail={"pairs_checked": len(pairs)})
    if found:
        v.witness_sets = {"Vx_first": found[0][0], "Vy_first": found[0][1]}
    return v


def separating_inverse_certificate(f: CMap, pairs, depth: int) -> Verdict:
    """For a continuous nearly open bijection f, certify that f^-1 separates:
    given u != v in the codomain, pull them back and separate through f."""
    g = inverse_map(f)
    return check_separating(g, pairs, depth)


def sample_offgraph_pairs(f: CMap, n: int, seed: int = 0):
    rng = random.Random(seed)
    xs = f.domain.sample_pool(3 * n, seed)
    ys = f.codomain.sample_pool(3 * n, seed + 1)
    out = []
    for x in xs:
        for _ in range(4):
            y = ys[rng.randrange(len(ys))]
            if f(x) != y:
                out.append((x, y))
                break
        if len(out) >= n:
            break
    return out


def sample_point_pairs(space: Space, n: int, seed: int = 0):
    rng = random.Random(seed)
    pool = space.sample_pool(3 * n, seed)
    out = []
    while len(out) < n and len(pool) >= 2:
        a, b = rng.sample(pool, 2)
        if a != b:
            out.append((a, b))
    return out


_SCAN_CAP = 80  # witness candidates examined from the fine end of a basis


def check_hausdorff(space: Space, pairs, depth: int) -> Verdict:
    """Find disjoint enumerated basics around each sampled pair."""
    from .spaces import basic_meets

    for a, b in pairs:
        got = None
        # enumeration goes coarse-to-fine; disjoint witnesses live at the end
        for U in reversed(space.neighborhoods_of(a, depth)[-_SCAN_CAP:]):
            for V in reversed(space.neighborhoods_of(b, depth)[-_SCAN_CAP:]):
                try:
                    if isinstance(U, ProbeSet) and isinstance(V, ProbeSet):
                        continue
                    Ux = U.exact if isinstance(U, StarBasic) else U
                    Vx = V.exact if isinstance(V, StarBasic) else V
                    if not basic_meets(space, Ux, Vx):
                        got = (U, V)
                        break
                except TierError:
                    continue
            if got:
                break
        if not got:
            return Verdict("hausdorff", space.sid, "Unknown", depth,
                           witness_points={"a": a, "b": b})
    return Verdict("hausdorff", space.sid, "Verified", depth,
                   detail={"pairs_checked": len(pairs)})


def check_semi_regular(space: Space, points, depth: int) -> Verdict:
    """At each point: every enumerated basic around it shrinks to a
    regular-open basic around it.  Probe-tier spaces report Unknown."""
    if space.tier != "exact":
        return Verdict("semi_regular", space.sid, "Unknown", depth,
                       detail={"note": "probe-tier space"})
    for p in points:
        for B in space.neighborhoods_of(p, depth)[-_SCAN_CAP:]:
            ok = False
            for R in reversed(space.neighborhoods_of(p, depth)[-_SCAN_CAP:]):
                if not space.is_subset(R, B):
                    continue
                if space.interior(space.closure(R)) == R:
                    ok = True
                    break
            if not ok:
                return Verdict("semi_regular", space.sid, "Unknown", depth,
                               witness_sets={"B": B}, witness_points={"at": p})
    return Verdict("semi_regular", space.sid, "Verified", depth,
                   detail={"points_checked": len(points)})
