"""Topological games: schedules, legality calculus, bounded playouts,
strategy translation between a space and its starred refinement, and the
two proof strategies that convert a discontinuity witness into a tandem
Michael strategy for the second player.

Conventions
-----------
A play is a flat list of moves.  Non-tandem games alternate beta, alpha,
beta, ... on a single track.  Tandem games meander through two tracks:

    B1, A1, B1', A1', B2, A2, B2', A2', ...

where unprimed moves live on the plain track and primed moves on the
primed track.  Containment is per track: B_{k+1} inside A_k, and
B'_{k+1} inside A'_k, with B1' unconstrained.

Win evaluation is bounded but exact: the second player wins outright if
some finite intersection of move closures is already empty; the first
player wins certified if a designated limit point lies in every one of
its moves.  Everything else is left undecided at the recorded depth.
"""

from __future__ import annotations

import random
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction

from .maps import CMap, Verdict
from .spaces import (Space, StarBasic, StarRefineSpace, TierError,
                     basic_contains, _singleton_of)

PlyInfo = namedtuple("PlyInfo", "index mover track legality prev")

KINDS = ("BM", "Michael", "TandemBM", "TandemMichael")


@dataclass(frozen=True)
class GameSchedule:
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown game kind {self.kind!r}")

    @property
    def tandem(self):
        return self.kind.startswith("Tandem")

    @property
    def michael(self):
        return "Michael" in self.kind

    def ply(self, i: int) -> PlyInfo:
        """Mover, track, legality rule and constraining prior ply index."""
        if not self.tandem:
            mover = "beta" if i % 2 == 0 else "alpha"
            track = "plain"
            prev = None if i == 0 else i - 1
        else:
            m = i % 4
            track = "plain" if m < 2 else "primed"
            mover = "beta" if m % 2 == 0 else "alpha"
            if mover == "alpha":
                prev = i - 1
            elif i in (0, 2):
                prev = None  # B1 and B1' open the tracks
            else:
                prev = i - 3  # B_{k+1} in A_k on the same track
        if mover == "beta":
            legality = "set" if self.michael else "open"
        else:
            legality = "relopen" if self.michael else "open"
        return PlyInfo(i, mover, track, legality, prev)


@dataclass
class Move:
    index: int
    mover: str
    track: str
    sset: object
    open_witness: object = None
    prev: int | None = None
    nonempty_ok: bool = True
    containment_ok: bool = True
    open_ok: str = "n/a"  # yes | no | unverified | n/a
    note: str = ""

    @property
    def legal(self):
        return self.nonempty_ok and self.containment_ok and self.open_ok != "no"


@dataclass
class Play:
    kind: str
    space: Space
    primed_space: Space
    moves: list = field(default_factory=list)
    outcome: str = ""
    resigned_by: str = ""
    notes: list = field(default_factory=list)
    alpha_limit: dict = field(default_factory=dict)  # track -> point

    def track_space(self, track):
        return self.space if track == "plain" else self.primed_space

    def track_moves(self, track, mover=None):
        return [m for m in self.moves
                if m.track == track and (mover is None or m.mover == mover)]

    @property
    def legal(self):
        return all(m.legal for m in self.moves)

    def to_json(self):
        from .serial import serialize_point, serialize_set
        return {
            "kind": self.kind,
            "outcome": self.outcome,
            "resigned_by": self.resigned_by,
            "notes": list(self.notes),
            "moves": [{
                "index": m.index, "mover": m.mover, "track": m.track,
                "set": serialize_set(m.sset),
                "nonempty_ok": m.nonempty_ok,
                "containment_ok": m.containment_ok,
                "open_ok": m.open_ok,
                "note": m.note,
            } for m in self.moves],
            "alpha_limit": {t: serialize_point(p)
                            for t, p in self.alpha_limit.items()},
        }


class Strategy:
    """Deterministic move function over the full history.

    `fn(play, info)` returns a MoveChoice, or None to resign.  The
    optional `limit_point` is the designated point the strategy promises
    to keep inside every one of its own moves; it may be a callable
    taking the play (for strategies that commit on their first move).
    """

    def __init__(self, name, fn, limit_point=None):
        self.name = name
        self.fn = fn
        self.limit_point = limit_point

    def move(self, play, info):
        return self.fn(play, info)

    def limit_for(self, play):
        if callable(self.limit_point):
            return self.limit_point(play)
        return self.limit_point

    def __repr__(self):
        return f"Strategy({self.name})"


@dataclass
class MoveChoice:
    sset: object
    open_witness: object = None
    note: str = ""


def exact_of(s):
    """The exact carrier of a move set (star basics carry one alongside)."""
    if isinstance(s, StarBasic):
        return s.exact
    return s


def _openness(space, s):
    if isinstance(s, StarBasic):
        return "yes"  # basic open of the refinement by construction
    try:
        return "yes" if space.interior(s) == s else "no"
    except (TierError, NotImplementedError):
        return "unverified"


def _check_move(space, info, choice, prev_move):
    s = choice.sset
    xs = exact_of(s)
    m = Move(info.index, info.mover, info.track, s,
             open_witness=choice.open_witness, prev=info.prev,
             note=choice.note)
    try:
        m.nonempty_ok = not space.is_empty(xs)
    except (TierError, NotImplementedError):
        m.nonempty_ok = True
        m.note += " nonemptiness unverified;"
    if prev_move is not None:
        m.containment_ok = space.is_subset(xs, exact_of(prev_move.sset))
    if info.legality == "open":
        m.open_ok = _openness(space, s)
    elif info.legality == "relopen":
        U = choice.open_witness
        if U is None:
            m.open_ok = "unverified"
            m.note += " no relative-open witness;"
        else:
            m.open_ok = _openness(space, U)
            if prev_move is not None:
                want = space.intersect(exact_of(prev_move.sset), exact_of(U))
                if not (space.is_subset(xs, want) and space.is_subset(want, xs)):
                    m.open_ok = "no"
                    m.note += " move differs from prior-cap-witness;"
    else:  # arbitrary set move
        m.open_ok = "n/a"
    return m


def playout(schedule: GameSchedule, space: Space, alpha: Strategy,
            beta: Strategy, depth: int, primed_space: Space | None = None,
            tolerate_illegal: bool = False) -> Play:
    """Run `depth` plies, legality-checking each move exactly."""
    ps = primed_space if primed_space is not None else space
    play = Play(schedule.kind, space, ps)
    for i in range(depth):
        info = schedule.ply(i)
        strat = beta if info.mover == "beta" else alpha
        sp = play.track_space(info.track)
        choice = strat.move(play, info)
        if choice is None:
            play.outcome = "resigned"
            play.resigned_by = strat.name
            break
        prev = play.moves[info.prev] if info.prev is not None else None
        m = _check_move(sp, info, choice, prev)
        play.moves.append(m)
        if not m.legal and not tolerate_illegal:
            play.outcome = f"illegal:{strat.name}@{i}"
            break
    else:
        play.outcome = play.outcome or f"depth:{depth}"
    for track in ("plain", "primed") if schedule.tandem else ("plain",):
        p = alpha.limit_for(play)
        if p is not None:
            play.alpha_limit[track] = p
    return play


def replay_check(kind: str, space: Space, moves, primed_space=None):
    """Re-run the legality calculus of `kind` over recorded move sets.

    Used to confirm that a tandem play restricted to one track is a
    legal play of the corresponding non-tandem game, and that a Michael
    play whose second-player moves are all open is a legal BM play.
    """
    sched = GameSchedule(kind)
    ps = primed_space if primed_space is not None else space
    out = []
    for i, mv in enumerate(moves):
        info = sched.ply(i)
        sp = space if info.track == "plain" else ps
        prev = out[info.prev] if info.prev is not None else None
        choice = MoveChoice(mv.sset, open_witness=mv.open_witness)
        out.append(_check_move(sp, info, choice, prev))
    return out


def plain_track_moves(play: Play):
    return play.track_moves("plain")


def primed_track_moves(play: Play):
    return play.track_moves("primed")


# ---------------------------------------------------------------------------
# win evaluation


@dataclass
class WinReport:
    overall: str
    per_track: dict
    detail: dict = field(default_factory=dict)


def _track_outcome(play: Play, track: str):
    sp = play.track_space(track)
    amoves = play.track_moves(track, "alpha")
    if not amoves:
        return ("UndecidedNonempty", {"depth": 0})
    # exact finite-stage emptiness of the closure intersection
    try:
        inter = None
        for j, m in enumerate(amoves):
            c = sp.closure(exact_of(m.sset))
            inter = c if inter is None else sp.intersect(inter, c)
            if sp.is_empty(inter):
                return ("BetaWins", {"stage": j + 1})
    except (TierError, NotImplementedError):
        pass
    p = play.alpha_limit.get(track)
    if p is not None and all(exact_of(m.sset).contains(p) for m in amoves):
        return ("AlphaWinCertified", {"point": p})
    return ("UndecidedNonempty", {"depth": len(amoves)})


def check_win_bounded(play: Play) -> WinReport:
    tracks = ("plain", "primed") if GameSchedule(play.kind).tandem else ("plain",)
    per = {}
    detail = {}
    for t in tracks:
        v, d = _track_outcome(play, t)
        per[t] = v
        detail[t] = d
    if any(v == "BetaWins" for v in per.values()):
        overall = "BetaWins"
    elif all(v == "AlphaWinCertified" for v in per.values()):
        overall = "AlphaWinCertified"
    else:
        overall = "UndecidedNonempty"
    return WinReport(overall, per, detail)


# ---------------------------------------------------------------------------
# builtin strategies


def _interval_around(space, p, h):
    iv = getattr(space, "interval", None)
    if iv is not None:
        return iv(p - h, p + h)
    return None


def _shrink_to(point, h0=Fraction(1, 2)):
    p = point

    def fn(play, info):
        prev = play.moves[info.prev]
        sp = play.track_space(info.track)
        B = exact_of(prev.sset)
        if not B.contains(p):
            return None
        own = len(play.track_moves(info.track, "alpha"))
        h = h0 / (2 ** own)
        U = _interval_around(sp, p, h)
        if U is None:
            cands = [b for b in sp.basis(6) if basic_contains(b, p)]
            if not cands:
                return None
            U = exact_of(cands[-1])
        A = sp.intersect(B, exact_of(U))
        return MoveChoice(A, open_witness=U)

    return Strategy(f"shrink_to({point})", fn, limit_point=p)


def _shrink_adaptive(h0=Fraction(1, 4), avoid=None):
    """Commits to a designated point on its first move: the first sample
    of the opening second-player set, then plays halving basics around it
    for as long as that point survives."""

    def commit(play):
        first = [m for m in play.moves if m.mover == "beta"]
        if not first:
            return None
        sp = play.track_space(first[0].track)
        B = exact_of(first[0].sset)
        for z in sp.sample(B, 12):
            if avoid is None or z != avoid:
                return z
        return None

    def fn(play, info):
        prev = play.moves[info.prev]
        sp = play.track_space(info.track)
        B = exact_of(prev.sset)
        p = commit(play)
        own = len(play.track_moves(info.track, "alpha"))
        if p is not None and B.contains(p):
            h = h0 / (2 ** own)
            U = _interval_around(sp, p, h)
            if U is not None:
                A = sp.intersect(B, U)
                try:
                    if not sp.is_empty(A):
                        return MoveChoice(A, open_witness=U)
                except (TierError, NotImplementedError):
                    return MoveChoice(A, open_witness=U)
        # the committed point was lost: keep the play legal anyway
        z = None
        for c in sp.sample(B, 12):
            if avoid is None or c != avoid:
                z = c
                break
        if z is None:
            return None
        U = _interval_around(sp, z, h0 / (2 ** own))
        if U is None:
            return MoveChoice(B, open_witness=sp.full())
        A = sp.intersect(B, U)
        try:
            if sp.is_empty(A):
                return MoveChoice(B, open_witness=sp.full())
        except (TierError, NotImplementedError):
            pass
        return MoveChoice(A, open_witness=U)

    return Strategy("shrink_adaptive", fn, limit_point=commit)


def _singleton_isolated():
    def fn(play, info):
        prev = play.moves[info.prev]
        sp = play.track_space(info.track)
        B = exact_of(prev.sset)
        for z in sp.sample(B, 24):
            s = _singleton_of(sp, z)
            try:
                if sp.interior(s) == s:
                    return MoveChoice(s, open_witness=s,
                                      note=f"isolated point {z}")
            except (TierError, NotImplementedError):
                continue
        return None

    def limit(play):
        for m in play.moves:
            if m.mover == "alpha":
                return play.track_space(m.track).pick_point(exact_of(m.sset))
        return None

    return Strategy("singleton_isolated", fn, limit_point=limit)


def _random_beta(seed, bdepth=4):
    def fn(play, info):
        sp = play.track_space(info.track)
        rng = random.Random(seed * 1000003 + info.index)
        basics = [b for b in sp.basis(bdepth) if not isinstance(b, StarBasic)]
        rng.shuffle(basics)
        if info.prev is None:
            for b in basics:
                xb = exact_of(b)
                try:
                    if not sp.is_empty(xb):
                        return MoveChoice(xb)
                except (TierError, NotImplementedError):
                    return MoveChoice(xb)
            return None
        B = exact_of(play.moves[info.prev].sset)
        for b in basics:
            cand = sp.intersect(B, exact_of(b))
            try:
                if not sp.is_empty(cand):
                    return MoveChoice(cand)
            except (TierError, NotImplementedError):
                continue
        return MoveChoice(B, note="no basic met the prior move")

    return Strategy(f"random_beta({seed})", fn)


def _follow_basis(bdepth=6):
    def fn(play, info):
        sp = play.track_space(info.track)
        basics = sp.basis(bdepth)
        if info.prev is None:
            for b in basics:
                xb = exact_of(b)
                if not sp.is_empty(xb):
                    return MoveChoice(xb)
            return None
        B = exact_of(play.moves[info.prev].sset)
        for b in reversed(basics):
            xb = exact_of(b)
            if sp.is_subset(xb, B) and not sp.is_empty(xb):
                return MoveChoice(xb)
        return None

    return Strategy(f"follow_basis({bdepth})", fn)


def _alpha_basic_refine(bdepth=6):
    """First-player strategy supplying an explicit open witness: picks a
    point of the prior move and caps with the finest enumerated basic
    open around it."""

    def fn(play, info):
        prev = play.moves[info.prev]
        sp = play.track_space(info.track)
        B = exact_of(prev.sset)
        pts = sp.sample(B, 8)
        for v in pts:
            cands = [b for b in sp.basis(bdepth)
                     if not isinstance(b, StarBasic) and basic_contains(b, v)]
            for b in reversed(cands):
                U = exact_of(b)
                A = sp.intersect(B, U)
                try:
                    if not sp.is_empty(A):
                        return MoveChoice(A, open_witness=U)
                except (TierError, NotImplementedError):
                    return MoveChoice(A, open_witness=U)
        return None

    return Strategy(f"alpha_basic_refine({bdepth})", fn)


def builtin_strategy(name: str, **params) -> Strategy:
    if name == "shrink_to":
        return _shrink_to(params["point"], params.get("h0", Fraction(1, 2)))
    if name == "shrink_adaptive":
        return _shrink_adaptive(params.get("h0", Fraction(1, 4)),
                                params.get("avoid"))
    if name == "singleton_isolated":
        return _singleton_isolated()
    if name == "random_beta":
        return _random_beta(params["seed"], params.get("bdepth", 4))
    if name == "follow_basis":
        return _follow_basis(params.get("bdepth", 6))
    if name == "alpha_basic_refine":
        return _alpha_basic_refine(params.get("bdepth", 6))
    raise ValueError(f"unknown builtin strategy {name!r}")


# ---------------------------------------------------------------------------
# strategy translation between a space and its starred refinement


def random_beta_star(star_space: StarRefineSpace, seed, kmax=8, center=None):
    """Second-player strategy on the refinement that always plays starred
    basics U cap V_k*, chosen reproducibly inside the prior move.

    With `center` given, the strategy keeps that point inside every move
    for as long as the opponent preserves it, so a first-player strategy
    shrinking to the same point stays certified."""
    base = star_space.parent

    def feasible(U):
        return [k for k in range(1, kmax + 1)
                if not base.is_empty(base.intersect(U, star_space.family(k)))]

    def fn(play, info):
        rng = random.Random(seed * 1000003 + info.index)
        if info.prev is None:
            # opening move; half the seeds pick U around the pivot point
            # to exercise the pivot-avoidance case of the lifting
            x0 = star_space.x0
            if center is not None:
                r = abs(center - x0) / 4
                tries = [base.interval(center - r, center + r)]
            elif rng.random() < 0.5:
                tries = [base.interval(x0 - Fraction(1, 2), x0 + Fraction(1, 2))]
            else:
                c = Fraction(rng.randrange(1, 8), 8)
                tries = [base.interval(c / 2, c),
                         base.interval(x0 - Fraction(1, 2), x0 + Fraction(1, 2))]
            for U in tries:
                ks = feasible(U)
                if center is not None:
                    ks = [k for k in ks if star_space.family(k).contains(center)] or ks
                if not ks:
                    continue
                k = rng.choice(ks)
                W = StarBasic(U, k, base.intersect(U, star_space.star(k)))
                if not base.is_empty(exact_of(W)):
                    return MoveChoice(W)
            return None
        O = exact_of(play.moves[info.prev].sset)
        from .linear import _Inf, bounds
        b = bounds(O)
        if b is None:
            return None
        lo, hi = b
        if isinstance(lo, _Inf) or isinstance(hi, _Inf):
            lo, hi = -Fraction(2), Fraction(2)
        width = hi - lo
        # a strict subinterval of the prior move's hull, capped with V0 so
        # the move stays inside the prior one; fall back to the prior move
        a = lo + width * Fraction(rng.randrange(1, 4), 8)
        b = a + width * Fraction(1, 4)
        if center is not None and O.contains(center):
            cands_U = [O]
        else:
            cands_U = [base.intersect(base.interval(a, b), star_space.V0), O]
        for U in cands_U:
            ks = feasible(U)
            if center is not None:
                ks = [k for k in ks if star_space.family(k).contains(center)] or ks
            if not ks:
                continue
            k = rng.choice(ks)
            cand = StarBasic(U, k, base.intersect(U, star_space.star(k)))
            if (not base.is_empty(exact_of(cand))
                    and base.is_subset(exact_of(cand), O)):
                return MoveChoice(cand)
        return None

    return Strategy(f"random_beta_star({seed})", fn)


def _lift_first_move(star_space: StarRefineSpace, wstar: StarBasic):
    """W1 from W1*: the plain part, shrunk to avoid the pivot point when
    the pivot lies inside it."""
    base = star_space.parent
    U = wstar.U if wstar.U is not None else base.full()
    plain = base.intersect(U, star_space.family(wstar.k)) \
        if wstar.k is not None else U
    x0 = star_space.x0
    if base.is_empty(plain):
        return None, "plain part empty"
    if not plain.contains(x0):
        return plain, "pivot outside, lifted verbatim"
    for z in base.sample(plain, 24):
        if z != x0:
            r = abs(z - x0) / 2
            W1 = base.intersect(plain, base.interval(z - r, z + r))
            if not base.is_empty(W1) and not W1.contains(x0):
                return W1, f"shrunk around {z} to avoid the pivot"
    return None, "no pivot-avoiding open subset found"


def lift_strategy_baire(beta_star: Strategy, star_space: StarRefineSpace) -> Strategy:
    """Translate a refinement-side second-player strategy into a base-side
    one by replacing each starred basic with its plain open part (with
    pivot avoidance on the opening move).

    The base-side strategy replays the refinement-side game internally:
    the first player's open base moves are legal in the refinement as
    well, so the refinement history is reconstructible from the base
    history.
    """
    base = star_space.parent
    sched = GameSchedule("BM")

    def star_history(play):
        """Reconstruct the refinement-side play up to the current ply."""
        sp = Play("BM", star_space, star_space)
        for i, m in enumerate(play.moves):
            info = sched.ply(i)
            if info.mover == "beta":
                choice = beta_star.move(sp, info)
                if choice is None:
                    return sp, None
                prev = sp.moves[info.prev] if info.prev is not None else None
                sp.moves.append(_check_move(star_space, info, choice, prev))
            else:
                sp.moves.append(Move(i, "alpha", "plain", m.sset,
                                     prev=info.prev))
        return sp, True

    def fn(play, info):
        sp, ok = star_history(play)
        choice = beta_star.move(sp, sched.ply(info.index))
        if choice is None or not isinstance(choice.sset, StarBasic):
            return None
        wstar = choice.sset
        if info.prev is None:
            W, note = _lift_first_move(star_space, wstar)
            if W is None:
                return None
            return MoveChoice(W, note=note)
        U = wstar.U if wstar.U is not None else base.full()
        W = base.intersect(U, star_space.family(wstar.k)) \
            if wstar.k is not None else U
        if base.is_empty(W):
            return None
        return MoveChoice(W)

    s = Strategy(f"lift[{beta_star.name}]", fn)
    s.reconstruct = lambda play: star_history(play)[0]
    return s


def project_alpha(alpha: Strategy, star_space: StarRefineSpace) -> Strategy:
    """The mirror first-player strategy on the refinement: it makes the
    same open base moves (base opens remain open in the refinement)."""

    def fn(play, info):
        return alpha.move(play, info)

    s = Strategy(f"mirror[{alpha.name}]", fn, limit_point=alpha.limit_point)
    s.limit_for = alpha.limit_for
    return s


def lemma_chain_check(star_space: StarRefineSpace, base_play: Play,
                      star_play: Play) -> Verdict:
    """Exact per-ply check of the interleaving
    W_i* >= W_i >= O_i >= W_{i+1}* on a joint playout."""
    base = star_space.parent
    ws = [exact_of(m.sset) for m in star_play.track_moves("plain", "beta")]
    wb = [exact_of(m.sset) for m in base_play.track_moves("plain", "beta")]
    ob = [exact_of(m.sset) for m in base_play.track_moves("plain", "alpha")]
    n = min(len(ws), len(wb))
    for i in range(n):
        if not base.is_subset(wb[i], ws[i]):
            return Verdict("lemma_chain", star_space.sid, "Refuted", n,
                           witness_sets={"W_star": ws[i], "W": wb[i]},
                           detail={"ply": i, "failed": "W subset of W*"})
        if i < len(ob):
            if not base.is_subset(ob[i], wb[i]):
                return Verdict("lemma_chain", star_space.sid, "Refuted", n,
                               witness_sets={"W": wb[i], "O": ob[i]},
                               detail={"ply": i, "failed": "O subset of W"})
            if i + 1 < n and not base.is_subset(ws[i + 1], ob[i]):
                return Verdict("lemma_chain", star_space.sid, "Refuted", n,
                               witness_sets={"O": ob[i], "W_star_next": ws[i + 1]},
                               detail={"ply": i, "failed": "next W* subset of O"})
    return Verdict("lemma_chain", star_space.sid, "Verified", n,
                   detail={"plies": n})


def lemma_joint_playout(star_space: StarRefineSpace, beta_star: Strategy,
                        alpha: Strategy, depth: int):
    """Run the lifted base game, reconstruct the refinement-side game, and
    check the interleaving chain and certified-win transfer."""
    base = star_space.parent
    lifted = lift_strategy_baire(beta_star, star_space)
    bm = GameSchedule("BM")
    base_play = playout(bm, base, alpha, lifted, depth)
    star_play = lifted.reconstruct(base_play)
    star_play.alpha_limit = dict(base_play.alpha_limit)
    chain = lemma_chain_check(star_space, base_play, star_play)
    base_win = check_win_bounded(base_play)
    star_win = check_win_bounded(star_play)
    transfer_ok = (base_win.overall != "AlphaWinCertified"
                   or (star_win.overall == "AlphaWinCertified"
                       and base_win.detail["plain"] == star_win.detail["plain"]))
    return {
        "base_play": base_play,
        "star_play": star_play,
        "chain": chain,
        "base_win": base_win,
        "star_win": star_win,
        "win_transfer_ok": transfer_ok,
    }


# ---------------------------------------------------------------------------
# proof strategies for the second player in the tandem Michael game


def _int_cl_pre(f: CMap, S):
    """int cl f^{-1}(S), computed exactly in the domain.  Maps that lack
    an exact preimage can provide the operator directly as f.int_cl_pre."""
    hook = getattr(f, "int_cl_pre", None)
    if hook is not None:
        return hook(S)
    F = f.domain
    return F.interior(F.closure(f.preimage(S)))


def _pre_meets(f: CMap, L, S) -> bool:
    """L meets f^{-1}(S); equivalently f(L) meets S."""
    if f.has_preimage:
        return f.domain.meets(L, f.preimage(S))
    return f.codomain.meets(f.image(L), S)


def _launch_witness(f: CMap, x, O, depth: int):
    """Bounded-but-exact search for a discontinuity witness at x: every
    enumerated neighborhood U of x must escape O under f.  U escapes O
    iff U is not inside f^{-1}(O), equivalently f(U) is not inside O."""
    F = f.domain
    preO = f.preimage(O) if f.has_preimage else None
    nbhds = F.neighborhoods_of(x, depth)
    if not nbhds:
        return None, Verdict("beta_prime_launch", f.name, "NotLaunchable",
                             depth, detail={"reason": "no neighborhoods enumerated"})
    escapes = []
    for U in nbhds:
        xu = exact_of(U)
        if preO is not None:
            covered = F.is_empty(F.difference(xu, preO))
        else:
            covered = f.codomain.is_empty(
                f.codomain.difference(f.image(xu), exact_of(O)))
        if covered:
            return None, Verdict("beta_prime_launch", f.name, "NotLaunchable",
                                 depth, witness_sets={"U": xu},
                                 detail={"reason": "f(U) inside O",
                                         "checked": len(nbhds)})
        escapes.append(xu)
    return escapes, None


def _chains_from_history(play: Play, V0, W0):
    """Normalized V- and W-chains recovered from the first player's open
    witnesses, intersecting with the prior link (normalization events
    are reported)."""
    E = play.space
    V, W = [V0], [W0]
    normalized = []
    for m in play.moves:
        if m.mover != "alpha":
            continue
        U = m.open_witness if m.open_witness is not None else exact_of(m.sset)
        U = exact_of(U)
        if m.track == "plain":
            nxt = E.intersect(V[-1], U)
            if not E.is_subset(U, V[-1]):
                normalized.append(m.index)
            V.append(nxt)
        else:
            nxt = E.intersect(W[-1], U)
            if not E.is_subset(U, W[-1]):
                normalized.append(m.index)
            W.append(nxt)
    return V, W, normalized


def beta_prime_theorem1(f: CMap, x, O, W, launch_depth: int = 6):
    """Second-player tandem Michael strategy driven by the near-continuity
    recursion B_n = V_{n-1} cap f(int cl f^{-1}(W_{n-1})),
    B'_n = W_{n-1} cap f(int cl f^{-1}(V_n)).

    Returns (strategy, launch_verdict); the strategy is None when no
    bounded-verified discontinuity witness exists at x.
    """
    E = f.codomain
    fx = f(x)
    if not exact_of(O).contains(fx) or not exact_of(W).contains(fx):
        return None, Verdict("beta_prime_launch", f.name, "NotLaunchable",
                             launch_depth, detail={"reason": "O, W must be neighborhoods of f(x)"})
    if not E.is_subset(exact_of(W), exact_of(O)):
        return None, Verdict("beta_prime_launch", f.name, "NotLaunchable",
                             launch_depth, detail={"reason": "W must sit inside O"})
    escapes, refusal = _launch_witness(f, x, O, launch_depth)
    if refusal is not None:
        return None, refusal
    clW = E.closure(exact_of(W))
    sep_ok = E.is_subset(clW, exact_of(O))
    V0 = E.difference(E.full(), clW)
    W0 = exact_of(W)
    B1 = E.intersect(V0, f.image(_int_cl_pre(f, W0)))
    if E.is_empty(B1):
        return None, Verdict("beta_prime_launch", f.name, "NotLaunchable",
                             launch_depth, witness_sets={"B1": B1},
                             detail={"reason": "opening move empty"})

    def fn(play, info):
        V, Wc, _ = _chains_from_history(play, V0, W0)
        if info.track == "plain":
            B = E.intersect(V[-1], f.image(_int_cl_pre(f, Wc[-1])))
        else:
            B = E.intersect(Wc[-1], f.image(_int_cl_pre(f, V[-1])))
        if E.is_empty(B):
            return None
        return MoveChoice(B)

    strat = Strategy(f"beta_prime[{f.name}]", fn)
    strat.V0, strat.W0 = V0, W0
    strat.launch = Verdict("beta_prime_launch", f.name, "Verified",
                           launch_depth,
                           witness_sets={"B1": B1, "V0": V0, "W0": W0},
                           detail={"neighborhoods_checked": len(escapes),
                                   "closure_of_W_inside_O": sep_ok})
    return strat, strat.launch


def recheck_beta_prime_play(play: Play, f: CMap, strat: Strategy) -> Verdict:
    """Exact re-check of the three recursion identities on every recorded
    ply: the displayed forms of B_n and B'_n, the cap shape of each
    first-player move, and the nesting of both chains."""
    E = f.codomain
    V, W, normalized = _chains_from_history(play, strat.V0, strat.W0)
    vi = wi = 0
    fails = []
    for m in play.moves:
        if m.mover == "beta":
            if m.track == "plain":
                want = E.intersect(V[vi], f.image(_int_cl_pre(f, W[wi])))
            else:
                want = E.intersect(W[wi], f.image(_int_cl_pre(f, V[vi])))
            if exact_of(m.sset) != want or E.is_empty(want):
                fails.append((m.index, "second-player recursion identity"))
        else:
            if m.track == "plain":
                vi += 1
                want = E.intersect(exact_of(play.moves[m.prev].sset), V[vi])
            else:
                wi += 1
                want = E.intersect(exact_of(play.moves[m.prev].sset), W[wi])
            if exact_of(m.sset) != want:
                fails.append((m.index, "first-player cap identity"))
    for i in range(1, len(V)):
        if not E.is_subset(V[i], V[i - 1]):
            fails.append((i, "V-chain nesting"))
    for i in range(1, len(W)):
        if not E.is_subset(W[i], W[i - 1]):
            fails.append((i, "W-chain nesting"))
    verdict = "Verified" if not fails else "Refuted"
    return Verdict("beta_prime_invariants", f.name, verdict, len(play.moves),
                   detail={"fails": fails, "normalized_plies": normalized})


def _web_find(web, pred, depth, start=None):
    """Breadth-first search over web nodes (descendants of `start` when
    given) for a node whose label satisfies `pred`."""
    frontier = list(web.children(start)) if start is not None else list(web.roots())
    for _ in range(depth):
        nxt = []
        for t in frontier:
            if pred(web.label(t)):
                return t
            nxt.extend(web.children(t))
        frontier = nxt
    return None


def beta_prime_pcomplete(f: CMap, web, x, O, W, launch_depth: int = 6,
                         web_depth: int = 10):
    """Second-player tandem Michael strategy threading a chain of web
    nodes: B_k = V_{k-1} cap f(phi(t_{2k-2})),
    B'_k = W_{k-1} cap f(phi(t_{2k-1})), with each new node's label
    contained in the previous label capped with int cl f^{-1} of the
    first player's latest open."""
    E, F = f.codomain, f.domain
    fx = f(x)
    if not exact_of(O).contains(fx) or not exact_of(W).contains(fx):
        return None, Verdict("beta_prime_web_launch", f.name, "NotLaunchable",
                             launch_depth, detail={"reason": "O, W must be neighborhoods of f(x)"})
    if not E.is_subset(exact_of(W), exact_of(O)):
        return None, Verdict("beta_prime_web_launch", f.name, "NotLaunchable",
                             launch_depth, detail={"reason": "W must sit inside O"})
    escapes, refusal = _launch_witness(f, x, O, launch_depth)
    if refusal is not None:
        return None, refusal
    clW = E.closure(exact_of(W))
    V0 = E.difference(E.full(), clW)
    W0 = exact_of(W)
    icw = _int_cl_pre(f, W0)
    t0 = _web_find(web, lambda L: F.is_subset(L, icw) and _pre_meets(f, L, V0),
                   web_depth)
    if t0 is None:
        return None, Verdict("beta_prime_web_launch", f.name, "Unknown",
                             web_depth, detail={"reason": "web search exhausted"})
    B1 = E.intersect(V0, f.image(web.label(t0)))
    if E.is_empty(B1):
        return None, Verdict("beta_prime_web_launch", f.name, "NotLaunchable",
                             launch_depth, detail={"reason": "opening move empty"})

    state = {"chain": [t0]}

    def fn(play, info):
        V, Wc, _ = _chains_from_history(play, V0, W0)
        chain = state["chain"]
        if info.prev is None and info.track == "plain":
            return MoveChoice(E.intersect(V0, f.image(web.label(chain[0]))))
        t_prev = chain[-1]
        target = _int_cl_pre(f, V[-1] if info.track == "primed" else Wc[-1])
        want = F.intersect(web.label(t_prev), target)
        t = _web_find(web, lambda L: F.is_subset(L, want) and not F.is_empty(L),
                      web_depth, start=t_prev)
        if t is None:
            return None
        chain.append(t)
        if info.track == "primed":
            B = E.intersect(Wc[-1], f.image(web.label(t)))
        else:
            B = E.intersect(V[-1], f.image(web.label(t)))
        if E.is_empty(B):
            return None
        return MoveChoice(B)

    strat = Strategy(f"beta_prime_web[{f.name}]", fn)
    strat.V0, strat.W0 = V0, W0
    strat.web = web
    strat.state = state
    strat.launch = Verdict("beta_prime_web_launch", f.name, "Verified",
                           launch_depth,
                           witness_sets={"B1": B1, "phi_t0": web.label(t0)},
                           detail={"neighborhoods_checked": len(escapes)})
    return strat, strat.launch


def recheck_beta_prime_web_play(play: Play, f: CMap, strat: Strategy) -> Verdict:
    """Exact re-check of the web recursion on every recorded ply: the two
    displayed move identities, chain-ancestry of the threaded nodes, and
    the containment of each new node's label in the previous label capped
    with int cl f^{-1} of the governing open."""
    E, F = f.codomain, f.domain
    web = strat.web
    chain = strat.state["chain"]
    V, W, normalized = _chains_from_history(play, strat.V0, strat.W0)
    fails = []
    vi = wi = 0
    bi = 0  # beta moves consumed == chain nodes consumed
    for m in play.moves:
        if m.mover == "beta":
            t = chain[bi]
            src = f.image(web.label(t))
            if m.track == "plain":
                want = E.intersect(V[vi], src)
            else:
                want = E.intersect(W[wi], src)
            if exact_of(m.sset) != want or E.is_empty(want):
                fails.append((m.index, "second-player web identity"))
            if bi > 0:
                governing = V[vi] if m.track == "primed" else W[wi]
                cap = F.intersect(web.label(chain[bi - 1]),
                                  _int_cl_pre(f, governing))
                if not F.is_subset(web.label(t), cap):
                    fails.append((m.index, "node label containment"))
            bi += 1
        else:
            if m.track == "plain":
                vi += 1
            else:
                wi += 1
    for a, b in zip(chain, chain[1:]):
        if not web.is_ancestor(a, b):
            fails.append((str(a), "chain ancestry"))
    for i in range(1, len(V)):
        if not E.is_subset(V[i], V[i - 1]):
            fails.append((i, "V-chain nesting"))
    for i in range(1, len(W)):
        if not E.is_subset(W[i], W[i - 1]):
            fails.append((i, "W-chain nesting"))
    verdict = "Verified" if not fails else "Refuted"
    return Verdict("beta_prime_web_invariants", f.name, verdict,
                   len(play.moves),
                   detail={"fails": fails, "normalized_plies": normalized,
                           "chain_length": len(chain)})
