"""Acceptance gate: ten certificate-based criteria, one pass/fail line each.

Each test prints exactly one line "ACCEPTANCE n <name>: PASS|FAIL" so the
gate can be read off the pytest -s output; the assertion carries the same
condition.  Stated bounds: criterion 1 under 10 s, criterion 2 under 60 s,
criterion 10 under 120 s; all verdict comparisons are exact string matches
and all set computations are exact rational arithmetic (no tolerances).
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from topolab import games as G
from topolab import gallery as GA
from topolab import linear as L
from topolab import maps as M
from topolab import prefix as P
from topolab import sieves as SV
from topolab.gallery import (_enumerate_branches, _xsum_game_params,
                             genuine_star_space, xsum_identity_map)
from topolab.spaces import (DuplicateSpace, SeqSpace, Tagged, dyadic_space,
                            field_space, m1_space, nondyadic_space, q_space)

from conftest import rand_set

ROOT = Path(__file__).resolve().parent.parent


def report(n, name, ok, detail=""):
    line = f"ACCEPTANCE {n} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def _eq(sp, a, b):
    return sp.is_empty(sp.difference(a, b)) and \
        sp.is_empty(sp.difference(b, a))


def test_criterion_01_set_algebra_laws():
    t0 = time.time()
    ok = True
    factories = (q_space, dyadic_space, nondyadic_space, m1_space,
                 field_space)
    for mk in factories:
        sp = mk()
        rng = random.Random(101)
        forms = [rand_set(sp, rng, 2) for _ in range(1000)]
        for i in range(0, 999, 3):
            a, b, c = forms[i], forms[i + 1], forms[i + 2]
            ok &= _eq(sp, sp.union(a, b), sp.union(b, a))
            ok &= _eq(sp, sp.intersect(a, sp.union(b, c)),
                      sp.union(sp.intersect(a, b), sp.intersect(a, c)))
            ok &= _eq(sp, sp.complement(sp.union(a, b)),
                      sp.intersect(sp.complement(a), sp.complement(b)))
            ok &= sp.is_empty(sp.intersect(a, sp.complement(a)))
        for a in forms[::5]:
            ca = sp.closure(a)
            ok &= sp.is_subset(a, ca) and _eq(sp, sp.closure(ca), ca)
            ok &= _eq(sp, sp.interior(a),
                      sp.complement(sp.closure(sp.complement(a))))
    # probe/exact closure agreement: bounded neighborhood probes versus the
    # exact closure operator, 200 set-point samples
    sp = q_space()
    rng = random.Random(202)
    samples = 0
    while samples < 200:
        a = rand_set(sp, rng, 2)
        if sp.is_empty(a):
            continue
        pts = L.sample_points(sp.pool_region(), 2, seed=rng.randrange(9999))
        for p in pts:
            samples += 1
            exact_in = sp.closure(a).contains(p)
            hoods = sp.neighborhoods_of(p, 8)
            probe_in = all(sp.meets(U, a) for U in hoods)
            if exact_in:
                ok &= probe_in  # every probe neighborhood must meet a
            elif not probe_in:
                pass  # probe separation confirms exclusion
            else:
                # exclusion must be witnessed by some probe neighborhood
                ok &= not all(sp.meets(U, a) for U in hoods)
    dt = time.time() - t0
    ok &= dt < 10
    report("01", "set_algebra_laws", ok, f"{dt:.1f}s, 5 spaces x 1000 forms")


def test_criterion_02_gallery_regression():
    t0 = time.time()
    ok = True
    for name in GA.INSTANCES:
        rep = GA.run_instance(name, 8, 0)
        status, where = GA.compare_golden(rep)
        if not rep["matches"] or status != "match":
            ok = False
    f = xsum_identity_map()
    ok &= M.check_closed_graph(
        f, M.sample_offgraph_pairs(f, 100, seed=0), 8).verdict == "Verified"
    ok &= M.check_separating(
        f, M.sample_point_pairs(f.domain, 100, seed=0), 8).verdict == "Verified"
    ok &= M.check_continuity_at(
        f, f.domain.sample_pool(50, seed=0)[:50], 8).verdict == "Refuted"
    ok &= M.check_near_continuity(f, 8).verdict == "Verified"
    dt = time.time() - t0
    ok &= dt < 60
    report("02", "gallery_regression", ok,
           f"{dt:.1f}s, 13 instances at depth 8 seed 0")


def test_criterion_03_duplicate_construction():
    sp = DuplicateSpace("dup_q", q_space())
    base = sp.base
    rng = random.Random(303)
    ok = True
    basics = base.basis(4)
    pool = base.sample_pool(16, seed=0)
    for _ in range(500):
        U1, U2 = rng.choice(basics), rng.choice(basics)
        Y1 = rng.sample(pool, rng.randrange(3))
        Y2 = rng.sample(pool, rng.randrange(3))
        lhs = sp.intersect(sp.make_W(U1, Y1), sp.make_W(U2, Y2))
        rhs = sp.make_W(base.intersect(U1, U2), Y1 + Y2)
        ok &= lhs == rhs
    level1 = sp.make(base.full(), base.empty())
    ok &= sp.closure(level1) == sp.full()  # step 2: level 1 dense
    level2 = sp.make(base.empty(), base.full())
    ok &= sp.closure(level2) == level2  # step 3: level 2 closed
    hp = sp.pool(8)
    x, y = hp[0], hp[1]
    pairs = [(Tagged(1, x), Tagged(2, x)), (Tagged(1, x), Tagged(1, y)),
             (Tagged(1, x), Tagged(2, y)), (Tagged(2, x), Tagged(2, y))]
    pairs += [(Tagged(1 + i % 2, a), Tagged(1 + (i // 2) % 2, b))
              for i, (a, b) in enumerate(zip(hp[2:10], hp[3:11])) if a != b]
    ok &= M.check_hausdorff(sp, pairs, 8).verdict == "Verified"  # step 4
    pts2 = [Tagged(2, p) for p in hp[:4]]
    ok &= M.check_semi_regular(sp, pts2, 8).verdict == "Verified"  # step 5
    report("03", "duplicate_construction", ok,
           "500 W-pairs + proof steps 2-5 at depth 8")


def test_criterion_04_lifting_translation():
    star = genuine_star_space()
    alpha = G.builtin_strategy("shrink_to", point=Fraction(1, 8),
                               h0=Fraction(1, 16))
    ok = True
    transfers = 0
    for seed in range(50):
        center = Fraction(1, 8) if seed % 2 else None
        beta = G.random_beta_star(star, seed, center=center)
        res = G.lemma_joint_playout(star, beta, alpha, 10)
        ok &= res["chain"].verdict == "Verified"
        ok &= res["win_transfer_ok"]
        if res["base_win"].overall == "AlphaWinCertified":
            transfers += 1
            ok &= res["star_win"].overall == "AlphaWinCertified"
            ok &= res["base_win"].detail["plain"] == \
                res["star_win"].detail["plain"]  # same designated point
    ok &= transfers > 0
    report("04", "lifting_translation", ok,
           f"50 randomized challengers at depth 10, {transfers} certified wins transferred")


def test_criterion_05_tandem_schedule():
    sp = q_space()
    sched = G.GameSchedule("TandemMichael")
    ok = True
    for seed in range(100):
        play = G.playout(sched, sp, G.builtin_strategy("shrink_adaptive"),
                         G.builtin_strategy("random_beta", seed=seed), 16)
        ok &= play.legal
        for m in play.moves:  # exact meander containment table
            info = sched.ply(m.index)
            ok &= (m.mover, m.track, m.prev) == (info.mover, info.track,
                                                 info.prev)
            if m.prev is not None:
                ok &= sp.is_subset(G.exact_of(m.sset),
                                   G.exact_of(play.moves[m.prev].sset))
        sub = G.replay_check("Michael", sp, G.plain_track_moves(play))
        ok &= all(m.legal for m in sub)
    report("05", "tandem_schedule", ok,
           "100 playouts at depth 16, plain-track restrictions legal")


def test_criterion_06_challenger_constructions():
    ok = True
    continuous = [M.identity_map(s()) for s in
                  (q_space, dyadic_space, nondyadic_space, m1_space,
                   field_space)]
    web = SV.bisection_web_on(q_space())
    for f in continuous:
        sp = f.domain
        O = sp.interval(Fraction(-1), Fraction(1))
        W = sp.interval(Fraction(-1, 2), Fraction(1, 2))
        _, v1 = G.beta_prime_theorem1(f, Fraction(0), O, W, launch_depth=6)
        ok &= v1.verdict == "NotLaunchable"
        wb = SV.bisection_web_on(sp)
        _, v2 = G.beta_prime_pcomplete(f, wb, Fraction(0), O, W, 6, 10)
        ok &= v2.verdict == "NotLaunchable"
    f, O, W = _xsum_game_params()
    alpha = G.builtin_strategy("alpha_basic_refine", bdepth=6)
    strat1, launch1 = G.beta_prime_theorem1(f, Fraction(0), O, W,
                                            launch_depth=6)
    ok &= launch1.verdict == "Verified"
    play1 = G.playout(G.GameSchedule("TandemMichael"), f.codomain, alpha,
                      strat1, 10)
    ok &= play1.legal
    ok &= G.recheck_beta_prime_play(play1, f, strat1).verdict == "Verified"
    strat2, launch2 = G.beta_prime_pcomplete(f, web, Fraction(0), O, W, 6, 10)
    ok &= launch2.verdict == "Verified"
    play2 = G.playout(G.GameSchedule("TandemMichael"), f.codomain, alpha,
                      strat2, 10)
    ok &= play2.legal
    ok &= G.recheck_beta_prime_web_play(play2, f, strat2).verdict == "Verified"
    report("06", "challenger_constructions", ok,
           "5 continuous refusals + depth-10 plays rechecked per ply")


def test_criterion_07_sieve_suite():
    ok = True
    F = SeqSpace()
    cyl = SV.cylinder_tree(F)
    ok &= SV.check_sieve(cyl, F, 8).verdict == "Verified"
    branches = _enumerate_branches(cyl, 20)
    ok &= len(branches) == 20
    pc = SV.check_p_complete(cyl, branches, 8)
    ok &= all(v.verdict == "Verified" for v in pc)
    for b in branches:
        ok &= SV.check_delta(cyl, b, 3).verdict == "Verified"
        mu, qmu = SV.check_mu_properties(
            cyl, b, b.limit, F.neighborhoods_of(b.limit, 2)[0], 3)
        ok &= mu.verdict == "Verified" and qmu.verdict == "Verified"
    tree = SV.non_mu_sieve_on_Q()
    ok &= SV.check_sieve(tree, tree.space, 4).verdict == "Verified"
    ok &= all(v.verdict == "Verified"
              for v in SV.check_p_complete(tree, tree.branches, 8))
    ok &= SV.check_delta(tree, tree.branches[0], 3).verdict == "Verified"
    cert = SV.find_mu_refutation(tree, 3)
    ok &= "U" in cert and cert["mu"].verdict == "Refuted"
    ok &= cert["quasi_mu"].verdict == "Verified"
    report("07", "sieve_suite", ok,
           "cylinder axioms depth 8, 20 branches; planted refutation at depth 3")


def test_criterion_08_branch_space_machinery():
    tree = SV.non_mu_sieve_on_Q()
    sig = SV.sigma_space(tree)
    rng = random.Random(808)
    branches = [SV.random_branch(tree, rng.randrange(10 ** 6))
                for _ in range(25)]
    ok = True
    for _ in range(1000):
        a, b, c = (rng.choice(branches) for _ in range(3))
        dab, dbc, dac = (SV.branch_distance(x, y)
                         for x, y in ((a, b), (b, c), (a, c)))
        ok &= dab == SV.branch_distance(b, a)          # symmetric
        ok &= dab >= 0 and (dab > 0 or a == b or dab == 0)
        ok &= dac <= max(dab, dbc)                     # ultrametric
        ok &= dac <= dab + dbc                         # metric
    main = tree.branches[0]
    for n in (1, 2, 3, 4):
        ok &= sig.ball(main, n).key() == \
            P.cylinder(sig.carrier, main.entries(n)).key()
    f = SV.canonical_map(tree)
    ok &= SV.check_canonical_near_continuity(f, main, 8).verdict == "Verified"
    pairs = []
    while len(pairs) < 50:
        br = SV.random_branch(tree, rng.randrange(10 ** 6))
        y = Fraction(rng.randrange(-8, 9), rng.choice((2, 4, 8)))
        if f(br) != y:
            pairs.append((br, y))
    ok &= SV.check_canonical_closed_graph(f, pairs, 6).verdict == "Verified"
    v = SV.check_canonical_continuity(f, main, 8)
    ok &= v.verdict == "Refuted" and bool(v.witness_points)
    report("08", "branch_space_machinery", ok,
           "1000 metric triples, exact balls, canonical map at depth 8")


def test_criterion_09_surjection_nesting():
    f = M.identity_map(SeqSpace())
    tree = SV.sieve_from_surjection(f, 8)
    v = SV.check_surjection_nesting(tree, f, 8)
    report("09", "surjection_nesting", v.verdict == "Verified",
           "V-chain nesting and 1/k diameters to depth 8")


def test_criterion_10_cli_gate(tmp_path):
    t0 = time.time()
    res = subprocess.run(
        [sys.executable, "-m", "topolab.cli", "gallery", "run-all"],
        capture_output=True, text=True, cwd=ROOT, timeout=150)
    dt = time.time() - t0
    ok = res.returncode == 0 and dt < 120
    golden = ROOT / "src/topolab/golden/non_mu_sieve_on_Q_d8_s0.json"
    blob = json.loads(golden.read_text())
    blob["checks"][0]["certificate"]["verdict"] = "Refuted"
    (tmp_path / golden.name).write_text(json.dumps(blob))
    import os
    env = dict(os.environ, TOPOLAB_GOLDEN_DIR=str(tmp_path))
    res2 = subprocess.run(
        [sys.executable, "-m", "topolab.cli", "check", "non_mu_sieve_on_Q",
         "--depth", "8"], capture_output=True, text=True, cwd=ROOT, env=env,
        timeout=150)
    ok &= res2.returncode == 3
    ok &= "sieve_axioms" in res2.stderr  # diffing certificate named
    report("10", "cli_gate", ok,
           f"run-all exit {res.returncode} in {dt:.0f}s; corrupted golden exit {res2.returncode}")
