"""Labeled trees, web and sieve axioms, branch spaces, and canonical maps.

A LabeledTree is a lazily materialized tree whose nodes carry nonempty
exact sets over a fixed space.  Child lists are finite; countable fanout
is paged through residual nodes whose labels carry the not-yet-listed
remainder, so that the union axiom stays an exact finite identity at
every node.

Branches are finite node prefixes plus a continuation rule.  The branch
space Sigma carries the 1/(n+1) first-disagreement ultrametric; its
balls are exactly the prefix cylinders, so Sigma reuses the trie-based
exact set algebra.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linear as L
from . import prefix as P
from .maps import CMap, Verdict
from .spaces import SeqSpace, Space, TierError
from .points import SeqPoint

_EQ_BOUND = 64  # horizon for decidable branch equality
_LIMIT_DEPTH = 40  # where branch limit certificates are read off


class LabeledTree:
    """Lazily expandable tree with nonempty exact labels.

    `children_fn` must return a finite deterministic list; `label_fn`
    maps nodes to exact sets of `space`.  Optional per-node metadata:
    designated point (limit certificate), defect point (a member that a
    continuation rule keeps outside small neighborhoods of the
    designated point), main child (the distinguished continuation), and
    a chain flag (the subtree below the node is a single infinite
    chain, which makes branches through it isolated).
    """

    def __init__(self, name, space, roots, children_fn, label_fn,
                 designated_fn=None, defect_fn=None, main_child_fn=None,
                 chain_fn=None, defect_hull=None, branches=None):
        self.name = name
        self.space = space
        self._roots = list(roots)
        self._children_fn = children_fn
        self._label_fn = label_fn
        self._designated_fn = designated_fn
        self._defect_fn = defect_fn
        self._main_child_fn = main_child_fn
        self._chain_fn = chain_fn
        self.defect_hull = defect_hull
        self.branches = branches or []
        self._kids = {}
        self._labels = {}
        self._parent = {}

    def roots(self):
        return list(self._roots)

    def children(self, t):
        if t not in self._kids:
            kids = list(self._children_fn(t))
            self._kids[t] = kids
            for c in kids:
                self._parent.setdefault(c, set()).add(t)
        return list(self._kids[t])

    def label(self, t):
        if t not in self._labels:
            self._labels[t] = self._label_fn(t)
        return self._labels[t]

    def designated(self, t):
        return self._designated_fn(t) if self._designated_fn else None

    def defect(self, t):
        return self._defect_fn(t) if self._defect_fn else None

    def main_child(self, t):
        if self._main_child_fn is not None:
            c = self._main_child_fn(t)
            if c is not None:
                return c
        kids = self.children(t)
        return kids[0] if kids else None

    def chain(self, t):
        return bool(self._chain_fn(t)) if self._chain_fn else False

    def is_ancestor(self, a, b):
        """a precedes b in the buildup order, among materialized nodes
        (strict; overlapping-interval webs may give a node several
        parents, so this is upward reachability)."""
        frontier, seen = {b}, {b}
        while frontier:
            parents = set()
            for t in frontier:
                parents |= self._parent.get(t, set())
            if a in parents:
                return True
            frontier = parents - seen
            seen |= parents
        return False

    def nodes_to_depth(self, depth):
        """(node, depth) pairs, breadth first; depth 0 is the root level."""
        out = []
        frontier = self.roots()
        for d in range(depth + 1):
            for t in frontier:
                out.append((t, d))
            if d < depth:
                frontier = [c for t in frontier for c in self.children(t)]
        return out


class Branch:
    """Finite node prefix plus a continuation rule.

    Rules: "first" follows the first child forever, "main" follows the
    designated main child, "gen" consumes an explicit node generator.
    Equality is decided up to a fixed horizon; beyond it, branches with
    the deterministic rule kinds at the same node are equal.
    """

    def __init__(self, tree: LabeledTree, prefix, rule="first", gen=None,
                 limit=None):
        if not prefix:
            raise ValueError("branch prefix must be nonempty")
        self.tree = tree
        self.rule = rule
        self._gen = gen
        self._nodes = list(prefix)
        self._limit = limit

    def entry(self, i):
        while len(self._nodes) <= i:
            last = self._nodes[-1]
            if self.rule == "main":
                nxt = self.tree.main_child(last)
            elif self.rule == "gen":
                nxt = next(self._gen)
            else:
                kids = self.tree.children(last)
                nxt = kids[0] if kids else None
            if nxt is None:
                raise ValueError(f"branch cannot be extended below {last}")
            self._nodes.append(nxt)
        return self._nodes[i]

    def entries(self, n):
        return tuple(self.entry(i) for i in range(n))

    @property
    def limit(self):
        if self._limit is not None:
            return self._limit
        return self.tree.designated(self.entry(_LIMIT_DEPTH))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Branch) or other.tree is not self.tree:
            return False
        for i in range(_EQ_BOUND):
            if self.entry(i) != other.entry(i):
                return False
        return self.rule in ("first", "main") and other.rule in ("first", "main")

    def __hash__(self):
        return hash(self.entries(12))

    @property
    def branch_desc(self):
        head = ",".join(str(t) for t in self.entries(4))
        return f"branch<{head}...|{self.rule}>"

    def __repr__(self):
        return self.branch_desc


def branch_distance(a: Branch, b: Branch) -> Fraction:
    """1/(n+1) with n the first disagreement index; 0 for equal branches.
    Decidable for the deterministic rule kinds; raises otherwise."""
    if a.tree is not b.tree:
        raise ValueError("branches over different trees")
    for i in range(_EQ_BOUND):
        if a.entry(i) != b.entry(i):
            return Fraction(1, i + 1)
    if a.rule in ("first", "main") and b.rule in ("first", "main"):
        return Fraction(0)
    raise ValueError("branch equality undecidable beyond the horizon")


def diagonal_branch(branches, moduli):
    """Limit of a Cauchy branch sequence: entry i is read from the first
    branch past the stabilization modulus for index i."""
    tree = branches[0].tree
    n = len(moduli)
    prefix = tuple(branches[min(moduli[i], len(branches) - 1)].entry(i)
                   for i in range(n))
    rule = branches[-1].rule
    return Branch(tree, prefix if prefix else (branches[-1].entry(0),),
                  rule="first") if rule == "gen" else \
        Branch(tree, prefix, rule=rule)


def random_branch(tree: LabeledTree, seed, walk_depth=8) -> Branch:
    rng = random.Random(seed)
    node = rng.choice(tree.roots())
    prefix = [node]
    for _ in range(rng.randrange(walk_depth + 1)):
        kids = tree.children(prefix[-1])
        if not kids:
            break
        prefix.append(rng.choice(kids))
    return Branch(tree, tuple(prefix), rule="first")


# ---------------------------------------------------------------------------
# web and sieve axioms


def _basics_exact(space, depth):
    out = []
    for b in space.basis(depth):
        x = b.exact if hasattr(b, "exact") else b
        if x is None or not hasattr(x, "is_empty"):
            continue
        try:
            if not space.is_empty(x):
                out.append(x)
        except (TierError, NotImplementedError):
            continue
    return out


def _web_locate(tree, space, target, depth):
    """A node whose label sits inside `target`, searching only subtrees
    whose labels meet it."""
    frontier = tree.roots()
    for _ in range(depth + 1):
        nxt = []
        for t in frontier:
            lab = tree.label(t)
            if not space.meets(lab, target):
                continue
            if space.is_subset(lab, target):
                return t
            nxt.extend(tree.children(t))
        frontier = nxt
    return None


def _web_locate_below(tree, space, start, target, depth):
    frontier = tree.children(start)
    for _ in range(depth):
        nxt = []
        for t in frontier:
            lab = tree.label(t)
            if not space.meets(lab, target):
                continue
            if space.is_subset(lab, target):
                return t
            nxt.extend(tree.children(t))
        frontier = nxt
    return None


def check_web(tree: LabeledTree, space: Space, depth: int,
              node_depth: int = 3) -> Verdict:
    """Bounded pseudo-base axioms: every probe basic contains a label;
    below every shallow node, every probe basic cut into its label
    contains a deeper label."""
    basics = _basics_exact(space, depth)
    for B in basics:
        if _web_locate(tree, space, B, depth + node_depth) is None:
            return Verdict("web_axioms", tree.name, "Unknown", depth,
                           witness_sets={"uncovered": B},
                           detail={"failed": "pseudo-base of the space"})
    shallow = [t for t, d in tree.nodes_to_depth(node_depth)]
    for t in shallow:
        lab = tree.label(t)
        for B in basics:
            V = space.intersect(B, lab)
            if space.is_empty(V):
                continue
            if _web_locate_below(tree, space, t, V, depth + node_depth) is None:
                return Verdict("web_axioms", tree.name, "Unknown", depth,
                               witness_sets={"uncovered": V},
                               detail={"failed": "pseudo-base of a label",
                                       "node": str(t)})
    return Verdict("web_axioms", tree.name, "Verified", depth,
                   detail={"basics": len(basics), "nodes": len(shallow)})


def check_sieve(tree: LabeledTree, space: Space, depth: int) -> Verdict:
    """Exact union axioms: root labels cover the space, and every
    expanded node's label equals the union of its children's labels."""
    cover = space.empty()
    for r in tree.roots():
        cover = space.union(cover, tree.label(r))
    miss = space.difference(space.full(), cover)
    if not space.is_empty(miss):
        return Verdict("sieve_axioms", tree.name, "Refuted", depth,
                       witness_sets={"uncovered": miss},
                       detail={"failed": "root cover"})
    checked = 0
    for t, d in tree.nodes_to_depth(depth - 1 if depth > 0 else 0):
        kids = tree.children(t)
        if not kids:
            return Verdict("sieve_axioms", tree.name, "Refuted", depth,
                           detail={"failed": "childless node", "node": str(t)})
        u = space.empty()
        for c in kids:
            u = space.union(u, tree.label(c))
        lab = tree.label(t)
        extra = space.difference(u, lab)
        missing = space.difference(lab, u)
        if not space.is_empty(extra) or not space.is_empty(missing):
            w = missing if not space.is_empty(missing) else extra
            return Verdict("sieve_axioms", tree.name, "Refuted", depth,
                           witness_sets={"defect": w},
                           detail={"failed": "child union", "node": str(t)})
        checked += 1
    return Verdict("sieve_axioms", tree.name, "Verified", depth,
                   detail={"nodes_checked": checked})


def check_p_complete(tree: LabeledTree, branches, depth: int):
    """Per-branch certificate: the branch's limit point lies in every
    label up to the horizon."""
    out = []
    for b in branches:
        y = b.limit
        if y is None:
            out.append(Verdict("p_complete", tree.name, "Unknown", depth,
                               detail={"reason": "no limit certificate",
                                       "branch": b.branch_desc}))
            continue
        ok = all(tree.label(b.entry(k)).contains(y) for k in range(depth))
        out.append(Verdict("p_complete", tree.name,
                           "Verified" if ok else "Unknown", depth,
                           witness_points={"limit": y} if ok else {},
                           detail={"branch": b.branch_desc}))
    return out


def _diam(s):
    if isinstance(s, L.LinearSet):
        return L.diameter(s)
    if isinstance(s, P.PrefixSet):
        return P.p_diameter(s)
    raise TierError("no exact diameter on this carrier")


def check_delta(tree: LabeledTree, branch: Branch, depth: int) -> Verdict:
    """The closure intersection along the branch shrinks below 2^(3-depth)
    by the walk horizon, with a unique-candidate certificate; otherwise
    two separated points witness failure."""
    space = tree.space
    horizon = 2 ** depth + depth
    threshold = Fraction(8, 2 ** depth)
    inter = None
    for k in range(horizon):
        c = space.closure(tree.label(branch.entry(k)))
        inter = c if inter is None else space.intersect(inter, c)
        try:
            d = _diam(inter)
        except TierError:
            return Verdict("delta_sieve", tree.name, "Unknown", depth,
                           detail={"reason": "no exact diameter"})
        if d <= threshold:
            cand = branch.limit
            if cand is None or not inter.contains(cand):
                cand = space.pick_point(inter)
            return Verdict("delta_sieve", tree.name, "Verified", depth,
                           witness_points={"candidate": cand} if cand is not None else {},
                           detail={"stage": k + 1, "diameter": str(d),
                                   "threshold": str(threshold)})
    pts = space.sample(inter, 8)
    two = pts[:2] if len(pts) >= 2 else pts
    return Verdict("delta_sieve", tree.name, "Refuted", depth,
                   witness_points={f"p{i}": p for i, p in enumerate(two)},
                   detail={"diameter": str(_diam(inter)),
                           "threshold": str(threshold)})


def check_mu_properties(tree: LabeledTree, branch: Branch, y, U,
                        depth: int):
    """(mu, quasi-mu) verdicts for the branch at the open U around its
    limit y.

    mu: some branch label sits inside U; refuted via rule-backed defect
    points living in a separating hull disjoint from cl U.
    quasi-mu: beyond some branch node every later label meets U, with the
    limit point as the exact certificate.
    """
    space = tree.space
    if not U.contains(y):
        raise ValueError("y must lie in U")
    horizon = max(8, 4 * depth)
    labels = [tree.label(branch.entry(k)) for k in range(horizon)]
    mu = None
    for k, lab in enumerate(labels):
        if space.is_subset(lab, U):
            mu = Verdict("mu_sieve", tree.name, "Verified", depth,
                         witness_sets={"label": lab},
                         detail={"node_index": k, "branch": branch.branch_desc})
            break
    if mu is None:
        defects = [tree.defect(branch.entry(k)) for k in range(horizon)]
        H = tree.defect_hull
        if (H is not None and all(d is not None for d in defects)
                and all(labels[k].contains(defects[k]) and H.contains(defects[k])
                        and not U.contains(defects[k]) for k in range(horizon))
                and not space.meets(H, space.closure(U))):
            mu = Verdict("mu_sieve", tree.name, "Refuted", depth,
                         witness_sets={"separating_hull": H, "U": U},
                         witness_points={"first_defect": defects[0]},
                         detail={"branch": branch.branch_desc,
                                 "rule": "defect points stay in the hull at every later node"})
        else:
            mu = Verdict("mu_sieve", tree.name, "Unknown", depth,
                         detail={"branch": branch.branch_desc})
    # quasi-mu along the branch
    meets = [space.meets(lab, U) for lab in labels]
    t0 = None
    for i in range(horizon):
        if all(meets[i:]):
            t0 = i
            break
    if t0 is not None and all(labels[k].contains(y) for k in range(t0, horizon)):
        qmu = Verdict("quasi_mu_sieve", tree.name, "Verified", depth,
                      witness_points={"common_point": y},
                      detail={"from_node": t0, "branch": branch.branch_desc})
    elif t0 is not None:
        qmu = Verdict("quasi_mu_sieve", tree.name, "Verified", depth,
                      detail={"from_node": t0, "horizon": horizon,
                              "certified_by": "bounded meets only",
                              "branch": branch.branch_desc})
    else:
        qmu = Verdict("quasi_mu_sieve", tree.name, "Unknown", depth,
                      detail={"branch": branch.branch_desc})
    return mu, qmu


def find_mu_refutation(tree: LabeledTree, depth: int):
    """Search the shipped branches and probe opens around their limits for
    a branch that is quasi-mu but not mu; returns the certificate or an
    exhaustion report."""
    space = tree.space
    tried = 0
    for b in tree.branches:
        y = b.limit
        if y is None:
            continue
        for U in space.neighborhoods_of(y, depth):
            xu = U.exact if hasattr(U, "exact") else U
            if xu is None or not hasattr(xu, "is_empty"):
                continue
            tried += 1
            mu, qmu = check_mu_properties(tree, b, y, xu, depth)
            if mu.verdict == "Refuted" and qmu.verdict == "Verified":
                return {"branch": b, "y": y, "U": xu, "mu": mu,
                        "quasi_mu": qmu}
    return {"exhausted": True, "pairs_tried": tried, "depth": depth}


# ---------------------------------------------------------------------------
# the branch space Sigma


class SigmaCarrier:
    """Branches of a labeled tree as a sequence-like carrier; trie keys
    at level i are the tree's depth-i nodes."""

    def __init__(self, tree: LabeledTree):
        self.tree = tree
        self.name = f"sigma[{tree.name}]"

    def isolation_depth(self, b: Branch):
        for d in range(1, 33):
            if self.tree.chain(b.entry(d - 1)):
                return d
        return None

    def _walk_nonempty(self, t, node):
        if P._is_leaf(t):
            return bool(t)
        kids = self.tree.roots() if node is None else self.tree.children(node)
        explicit = dict(t[1])
        for k in kids:
            if self._walk_nonempty(explicit.get(k, t[2]), k):
                return True
        return False

    def trie_nonempty(self, t):
        return self._walk_nonempty(t, None)

    def region_points(self, t, limit, entry_cap=None):
        out = []

        def walk(t, node, prefix):
            if len(out) >= limit:
                return
            if P._is_leaf(t):
                if t and prefix:
                    out.append(Branch(self.tree, prefix, rule="first"))
                return
            kids = self.tree.roots() if node is None else self.tree.children(node)
            explicit = dict(t[1])
            for k in kids:
                walk(explicit.get(k, t[2]), k, prefix + (k,))

        walk(t, None, ())
        return out[:limit]


class SigmaSpace(Space):
    """Exact space of tree branches under the prefix-cylinder topology
    (the balls of the first-disagreement ultrametric)."""

    def __init__(self, tree: LabeledTree):
        super().__init__(f"sigma[{tree.name}]")
        self.tree = tree
        self.carrier = SigmaCarrier(tree)

    def empty(self): return P.p_empty(self.carrier)
    def full(self): return P.p_full(self.carrier)
    def union(self, a, b): return P.p_union(a, b)
    def intersect(self, a, b): return P.p_intersect(a, b)
    def complement(self, a): return P.p_complement(a)
    def closure(self, a): return P.p_closure(a)
    def interior(self, a): return P.p_interior(a)

    def contains_point(self, p):
        return isinstance(p, Branch) and p.tree is self.tree

    def cylinder(self, prefix):
        return P.cylinder(self.carrier, tuple(prefix))

    def ball(self, b: Branch, n: int):
        """Branches within distance < 1/(n+1) of b: exactly the cylinder
        over b's first n nodes."""
        return self.cylinder(b.entries(n))

    def sample(self, a, n, seed=0):
        pts = self.carrier.region_points(a.trie, n + len(a.removed) + 4)
        pts = [p for p in pts if a.contains(p)]
        pts.extend(p for p in a.added if a.contains(p))
        return pts[:n]

    def _level(self, d):
        out = []
        for t, dd in self.tree.nodes_to_depth(d):
            path = self._path_to(t)
            if path is not None:
                out.append(self.cylinder(path))
        return out

    def _path_to(self, t):
        path = [t]
        while path[0] not in self.tree._roots:
            parent = self.tree._parent.get(path[0])
            if parent is None:
                return None
            path.insert(0, parent)
        return tuple(path)


def sigma_space(tree: LabeledTree) -> SigmaSpace:
    return SigmaSpace(tree)


# ---------------------------------------------------------------------------
# the canonical map


def canonical_map(tree: LabeledTree) -> CMap:
    sigma = sigma_space(tree)

    def ev(b: Branch):
        y = b.limit
        if y is None:
            raise ValueError(f"branch without limit certificate: {b.branch_desc}")
        return y

    f = CMap(f"canonical[{tree.name}]", sigma, tree.space, ev)
    f.tree = tree
    return f


def check_canonical_closed_graph(f: CMap, pairs, depth: int) -> Verdict:
    """For each off-graph pair (branch, y): a branch node whose label
    closure misses y yields the certificate ball x basic."""
    tree, sigma, E = f.tree, f.domain, f.codomain
    checked = 0
    for b, y in pairs:
        if f(b) == y:
            continue
        checked += 1
        found = None
        for k in range(depth):
            clk = E.closure(tree.label(b.entry(k)))
            if not clk.contains(y):
                for V in E.neighborhoods_of(y, depth):
                    xv = V.exact if hasattr(V, "exact") else V
                    if xv is None or not hasattr(xv, "is_empty"):
                        continue
                    if not E.meets(xv, clk):
                        found = (k, xv)
                        break
                if found:
                    break
        if found is None:
            return Verdict("closed_graph", f.name, "Unknown", depth,
                           witness_points={"y": y},
                           detail={"branch": b.branch_desc})
    return Verdict("closed_graph", f.name, "Verified", depth,
                   detail={"pairs": checked})


def _main_chain_locate(tree, E, s, xu, cap):
    """Deep completion witness: walk the designated main chain below `s`
    (whose labels shrink in their open part but never clear the dragged
    defect), testing the off-chain siblings each step for a label inside
    the open set.  Cheap even when the witness sits thousands of levels
    down, because each step is one exact inclusion test per child."""
    t = s
    for _ in range(cap):
        nxt = tree.main_child(t)
        if nxt is None:
            return None
        for c in tree.children(t):
            if c != nxt and E.is_subset(tree.label(c), xu):
                return c
        if E.is_subset(tree.label(nxt), xu):
            return nxt
        t = nxt
    return None


def check_canonical_near_continuity(f: CMap, b: Branch, depth: int,
                                    path_depth: int = 2,
                                    descend: int = 8) -> Verdict:
    """Bounded run of the completion construction: for every probe open U
    around the branch limit, find the node past which labels keep meeting
    U, then confirm that every bounded path below it whose label meets U
    continues into a label inside U.  Paths whose labels already miss U
    (committed defect paths) are skipped and counted."""
    tree, E = f.tree, f.codomain
    y = f(b)
    horizon = max(8, 2 * depth)
    report = []
    for U in E.neighborhoods_of(y, depth):
        xu = U.exact if hasattr(U, "exact") else U
        if xu is None or not hasattr(xu, "is_empty"):
            continue
        labels = [tree.label(b.entry(k)) for k in range(horizon)]
        t0 = None
        for i in range(horizon):
            if all(E.meets(lab, xu) for lab in labels[i:]):
                t0 = i
                break
        if t0 is None:
            return Verdict("near_continuity", f.name, "Unknown", depth,
                           witness_sets={"U": xu},
                           detail={"reason": "no node with persistently meeting labels"})
        start = b.entry(t0)
        good = skipped = 0
        frontier = [start]
        for _ in range(path_depth):
            frontier = [c for t in frontier for c in tree.children(t)]
        for s in frontier:
            if not E.meets(tree.label(s), xu):
                skipped += 1
                continue
            hit = _web_locate_below(tree, E, s, xu, descend)
            if hit is None and E.is_subset(tree.label(s), xu):
                hit = s
            if hit is None:
                hit = _main_chain_locate(tree, E, s, xu, 4 * 2 ** depth)
            if hit is None:
                return Verdict("near_continuity", f.name, "Unknown", depth,
                               witness_sets={"U": xu},
                               detail={"reason": "no completion into U",
                                       "node": str(s)})
            good += 1
        report.append({"good_paths": good, "skipped_defect_paths": skipped})
    return Verdict("near_continuity", f.name, "Verified", depth,
                   detail={"opens_checked": len(report),
                           "paths": report,
                           "ball_index": "per-open quasi-mu node"})


def check_canonical_continuity(f: CMap, b: Branch, depth: int) -> Verdict:
    """Refute continuity at b by exhibiting, inside every ball around b,
    a branch committed away from some fixed open U around the limit."""
    tree, E = f.tree, f.codomain
    y = f(b)
    for U in E.neighborhoods_of(y, depth):
        xu = U.exact if hasattr(U, "exact") else U
        if xu is None or not hasattr(xu, "is_empty"):
            continue
        deviants = []
        for n in range(1, depth + 1):
            found = None
            for c in tree.children(b.entry(n - 1)):
                if c == b.entry(n):
                    continue
                if E.meets(tree.label(c), xu):
                    continue
                bn = Branch(tree, b.entries(n) + (c,), rule="first")
                if bn.limit is not None and not xu.contains(bn.limit):
                    found = bn
                    break
            if found is None:
                break
            deviants.append(found)
        if len(deviants) == depth:
            return Verdict("continuity", f.name, "Refuted", depth,
                           witness_sets={"U": xu},
                           witness_points={f"f(b^{n+1})": d.limit
                                           for n, d in enumerate(deviants)},
                           detail={"branch": b.branch_desc,
                                   "rule": "deviant branches exist at every ball radius"})
    return Verdict("continuity", f.name, "Unknown", depth,
                   detail={"branch": b.branch_desc})


# ---------------------------------------------------------------------------
# constructions


def _page_indices(total_pages, page):
    return range(8 * page, 8 * (page + 1))


def sieve_from_surjection(f: CMap, depth: int, fanout: int = 3) -> LabeledTree:
    """Chains of shrinking cylinders in the sequence-space domain, labeled
    by their images; countable fanout is paged through residual nodes."""
    F = f.domain
    if not isinstance(F, SeqSpace):
        raise ValueError("domain lacks a declared complete-metric structure")
    if not f.has_image:
        raise ValueError("image capability required")

    # node: ("c",) + prefix for a cylinder, ("r",) + prefix + (page,) for
    # the paged remainder of a cylinder's children
    def cyl_set(prefix):
        return F.cylinder(prefix)

    def node_dom(t):
        if t[0] == "c":
            return cyl_set(t[1:])
        prefix, page = t[1:-1], t[-1]
        s = cyl_set(prefix)
        for j in range(fanout * (page + 1)):
            s = F.difference(s, cyl_set(prefix + (j,)))
        return s

    def children(t):
        if t[0] == "c":
            prefix = t[1:]
            return [("c",) + prefix + (j,) for j in range(fanout)] + \
                   [("r",) + prefix + (0,)]
        prefix, page = t[1:-1], t[-1]
        lo = fanout * (page + 1)
        return [("c",) + prefix + (j,) for j in range(lo, lo + fanout)] + \
               [("r",) + prefix + (page + 1,)]

    def label(t):
        return f.image(node_dom(t))

    def designated(t):
        if t[0] != "c":
            return None
        return f(SeqPoint(t[1:], 0))

    tree = LabeledTree(f"sieve_from[{f.name}]", f.codomain, [("c",)],
                       children, label, designated_fn=designated)
    tree.node_dom = node_dom
    tree.branches = [Branch(tree, (("c",),), rule="first")]
    return tree


def check_surjection_nesting(tree: LabeledTree, f: CMap, depth: int) -> Verdict:
    """Lemma-style chain on the domain cylinders of a constructed sieve:
    each next domain set has closure inside the previous one and diameter
    at most 1/k at stage k."""
    F = f.domain
    b = tree.branches[0]
    prev = None
    for k in range(1, depth + 1):
        t = b.entry(k - 1)
        V = tree.node_dom(t)
        d = P.p_diameter(V)
        if d > Fraction(1, k):
            return Verdict("surjection_nesting", tree.name, "Refuted", depth,
                           detail={"stage": k, "diameter": str(d)})
        if prev is not None and not F.is_subset(F.closure(V), prev):
            return Verdict("surjection_nesting", tree.name, "Refuted", depth,
                           detail={"stage": k, "failed": "closure nesting"})
        prev = V
    return Verdict("surjection_nesting", tree.name, "Verified", depth,
                   detail={"stages": depth})


def cylinder_tree(space: SeqSpace, fanout: int = 3) -> LabeledTree:
    """The identity web/sieve on the sequence space: labels are the
    cylinders themselves."""
    from .maps import identity_map
    return sieve_from_surjection(identity_map(space), 0, fanout=fanout)


def bisection_web_on(space, radius: int = 4) -> LabeledTree:
    """Dyadic interval bisection on a linear space: level-d nodes are the
    open intervals of width 2^(1-d) on the half-step grid inside the
    working region (-radius, radius).  Pseudo-base checks at probe depth
    d need radius > d so every enumerated basic falls inside the region."""

    def iv(t):
        _, d, k = t
        h = Fraction(1, 2 ** d)
        return space.interval(k * h, (k + 2) * h)

    def roots():
        return [("b", 0, k) for k in range(-radius, radius - 1)]

    def children(t):
        _, d, k = t
        return [("b", d + 1, j) for j in (2 * k, 2 * k + 1, 2 * k + 2)]

    def designated(t):
        _, d, k = t
        return Fraction(k + 1, 2 ** d)

    return LabeledTree(f"bisection[{space.sid}]", space, roots(), children,
                       iv, designated_fn=designated)


def singleton_sieve_on(space, pool_depth: int = 6) -> LabeledTree:
    """Roots are singleton chains for pooled points plus a paged residual
    chain carrying the rest of the space."""
    pool = space.sample_pool(24, seed=0)
    seen = []
    for p in pool:
        if p not in seen:
            seen.append(p)

    def pts_upto(n):
        return seen[:min(n, len(seen))]

    def label(t):
        if t[0] == "pt":
            return space.intersect(space.full(), _point_set(space, [t[1]]))
        # ("res", j): everything except the first 8*(j+1) pooled points
        j = t[1]
        return space.difference(space.full(),
                                _point_set(space, pts_upto(8 * (j + 1))))

    def children(t):
        if t[0] == "pt":
            return [("pt", t[1], t[2] + 1)]
        j = t[1]
        page = seen[8 * (j + 1):8 * (j + 2)]
        return [("pt", p, 0) for p in page] + [("res", j + 1)]

    def designated(t):
        return t[1] if t[0] == "pt" else None

    def chain(t):
        return t[0] == "pt"

    roots = [("pt", p, 0) for p in pts_upto(8)] + [("res", 0)]
    tree = LabeledTree(f"singletons[{space.sid}]", space, roots, children,
                       label, designated_fn=designated, chain_fn=chain)
    tree.branches = [Branch(tree, (("pt", p, 0),), rule="first", limit=p)
                     for p in pts_upto(4)]
    return tree


def _point_set(space, pts):
    s = getattr(space, "points", None)
    if s is not None:
        return s(pts)
    out = space.empty()
    from .spaces import _singleton_of
    for p in pts:
        out = space.union(out, _singleton_of(space, p))
    return out


def _sqrt_half_shell(k):
    """The k-th bisection stage of a rational interval shrinking onto
    sqrt(1/2): strictly nested open rational intervals whose rational
    traces have closures with empty intersection."""
    c, e = Fraction(7, 10), Fraction(3, 4)
    for _ in range(k - 1):
        m = (c + e) / 2
        if m * m > Fraction(1, 2):
            e = m
        else:
            c = m
    return c, e


def non_mu_sieve_on_Q() -> LabeledTree:
    """A hand-built sieve on the rational line that is p-complete and
    quasi-mu along its main branch but not mu: the main chain's labels
    are shrinking symmetric intervals around 0 together with nested
    rational shells closing onto an irrational, so every label escapes
    the probe opens around 0 yet the escaping part evaporates in the
    rational closure intersection."""
    from .spaces import q_space
    space = q_space()

    def shell(k):
        c, e = _sqrt_half_shell(k)
        return space.interval(c, e)

    def m_label(k):
        iv = space.interval(-Fraction(1, k), Fraction(1, k))
        return space.union(iv, shell(k))

    def annulus(k):
        return space.difference(
            space.interval(-Fraction(1, k), Fraction(1, k)),
            space.interval(-Fraction(1, k + 1), Fraction(1, k + 1)))

    def gap(k):
        return space.difference(shell(k), shell(k + 1))

    def _reg_pts(reg, n, seed):
        return L.enumerate_points(reg, n)

    def _region(t):
        # ("ann", k, page) / ("gap", k, page) / ("rest", page)
        if t[0] == "ann":
            return annulus(t[1]), t[1]
        if t[0] == "gap":
            return gap(t[1]), 100 + t[1]
        return space.difference(space.full(), m_label(1)), 0

    def label(t):
        kind = t[0]
        if kind == "main":
            return m_label(t[1])
        if kind == "pt":
            return space.points([t[1]])
        reg, seed = _region(t)
        return space.difference(reg, space.points(_reg_pts(reg, 8 * t[-1], seed)))

    def children(t):
        kind = t[0]
        if kind == "main":
            k = t[1]
            return [("main", k + 1), ("ann", k, 0), ("gap", k, 0)]
        if kind == "pt":
            return [("pt", t[1], t[2] + 1)]
        reg, seed = _region(t)
        page = t[-1]
        pts = _reg_pts(reg, 8 * (page + 1), seed)[8 * page:]
        return [("pt", p, 0) for p in pts] + [t[:-1] + (page + 1,)]

    def designated(t):
        if t[0] == "main":
            return Fraction(0)
        if t[0] == "pt":
            return t[1]
        return None

    def defect(t):
        if t[0] == "main":
            c, e = _sqrt_half_shell(t[1])
            return (c + e) / 2
        return None

    def main_child(t):
        if t[0] == "main":
            return ("main", t[1] + 1)
        return None

    def chain(t):
        return t[0] == "pt"

    tree = LabeledTree("non_mu_sieve_on_Q", space,
                       [("main", 1), ("rest", 0)], children, label,
                       designated_fn=designated, defect_fn=defect,
                       main_child_fn=main_child, chain_fn=chain,
                       defect_hull=space.interval(Fraction(7, 10),
                                                  Fraction(3, 4), True, True))
    tree.branches = [Branch(tree, (("main", 1),), rule="main",
                            limit=Fraction(0))]
    return tree


def chain_interval_tree(space, chains, name="chain_tree") -> LabeledTree:
    """Tree from declared interval chains: for each (cname, start, lo_fn,
    hi_fn) an infinite chain of open-interval labels indexed k, whose
    children are the next chain node plus paged singletons of the annulus
    label(k) minus label(k+1); a residual root covers the rest of the
    space through paged singletons.  Chains must be nested decreasing."""

    def c_label(cname, k):
        _, _, lo, hi = _spec(cname)
        return space.interval(lo(k), hi(k))

    def _spec(cname):
        for sp in chains:
            if sp[0] == cname:
                return sp
        raise KeyError(cname)

    def _region(t):
        if t[0] == "ann":
            _, cname, k, _ = t
            return space.difference(c_label(cname, k), c_label(cname, k + 1))
        rest = space.full()
        for cname, start, _, _ in chains:
            rest = space.difference(rest, c_label(cname, start))
        return rest

    def label(t):
        if t[0] == "chain":
            return c_label(t[1], t[2])
        if t[0] == "pt":
            return space.points([t[1]])
        reg = _region(t)
        return space.difference(reg, space.points(L.enumerate_points(reg, 8 * t[-1])))

    def children(t):
        if t[0] == "chain":
            _, cname, k = t
            return [("chain", cname, k + 1), ("ann", cname, k, 0)]
        if t[0] == "pt":
            return [("pt", t[1], t[2] + 1)]
        reg = _region(t)
        page = t[-1]
        pts = L.enumerate_points(reg, 8 * (page + 1))[8 * page:]
        return [("pt", p, 0) for p in pts] + [t[:-1] + (page + 1,)]

    def designated(t):
        return t[1] if t[0] == "pt" else None

    def main_child(t):
        if t[0] == "chain":
            return ("chain", t[1], t[2] + 1)
        return None

    roots = [("chain", c[0], c[1]) for c in chains] + [("rest", 0)]
    return LabeledTree(name, space, roots, children, label,
                       designated_fn=designated, main_child_fn=main_child,
                       chain_fn=lambda t: t[0] == "pt")


def broken_union_sieve_on_Q() -> LabeledTree:
    """Deliberately defective variant: the shell part of each main label
    is missing from the children, so the exact union axiom fails with the
    shell gap as witness."""
    tree = non_mu_sieve_on_Q()
    base_children = tree._children_fn

    def children(t):
        kids = base_children(t)
        if t[0] == "main":
            kids = [c for c in kids if c[0] != "gap"]
        return kids

    broken = LabeledTree("broken_union_sieve_on_Q", tree.space,
                         tree.roots(), children, tree._label_fn,
                         designated_fn=tree._designated_fn,
                         defect_fn=tree._defect_fn,
                         main_child_fn=tree._main_child_fn,
                         chain_fn=tree._chain_fn,
                         defect_hull=tree.defect_hull)
    broken.branches = [Branch(broken, (("main", 1),), rule="main",
                              limit=Fraction(0))]
    return broken
