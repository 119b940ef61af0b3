"""Game schedules, playouts, strategy lifting and the β′ constructions."""

import random
from fractions import Fraction

import pytest

from topolab import games as G
from topolab import maps as M
from topolab import sieves as SV
from topolab.gallery import (_xsum_game_params, genuine_star_space,
                             xsum_identity_map)
from topolab.spaces import SeqSpace, q_space


def test_meander_schedule_table():
    s = G.GameSchedule("TandemMichael")
    expected = [
        ("beta", "plain", None), ("alpha", "plain", 0),
        ("beta", "primed", None), ("alpha", "primed", 2),
        ("beta", "plain", 1), ("alpha", "plain", 4),
        ("beta", "primed", 3), ("alpha", "primed", 6),
        ("beta", "plain", 5), ("alpha", "plain", 8),
    ]
    for i, (mover, track, prev) in enumerate(expected):
        ply = s.ply(i)
        assert (ply.mover, ply.track, ply.prev) == (mover, track, prev)
        assert ply.legality == ("set" if mover == "beta" else "relopen")


def test_plain_schedule_alternates():
    s = G.GameSchedule("BM")
    for i in range(8):
        ply = s.ply(i)
        assert ply.mover == ("beta" if i % 2 == 0 else "alpha")
        assert ply.track == "plain"
        assert ply.legality == "open"
        assert ply.prev == (None if i == 0 else i - 1)


def test_playout_bm_alpha_wins_with_shrink():
    sp = q_space()
    play = G.playout(G.GameSchedule("BM"), sp,
                     G.builtin_strategy("shrink_adaptive"),
                     G.builtin_strategy("random_beta", seed=0), 10)
    assert play.legal
    win = G.check_win_bounded(play)
    assert win.overall == "AlphaWinCertified"


def test_replay_check_agrees_with_playout():
    sp = q_space()
    play = G.playout(G.GameSchedule("Michael"), sp,
                     G.builtin_strategy("shrink_adaptive"),
                     G.builtin_strategy("random_beta", seed=5), 8)
    replayed = G.replay_check("Michael", sp, play.moves)
    assert all(m.legal for m in replayed)


def test_illegal_move_is_flagged():
    sp = q_space()

    def bad_alpha(play, info):
        # plays a set disjoint from beta's previous move
        return G.MoveChoice(sp.interval(Fraction(50), Fraction(51)))

    play = G.playout(G.GameSchedule("BM"), sp, G.Strategy("bad", bad_alpha),
                     G.builtin_strategy("random_beta", seed=6), 4,
                     tolerate_illegal=True)
    assert not play.legal
    assert any(not m.containment_ok for m in play.moves)


def test_singleton_isolated_certifies_alpha_win():
    from topolab.spaces import m1_space
    sp = m1_space()
    play = G.playout(G.GameSchedule("Michael"), sp,
                     G.builtin_strategy("singleton_isolated"),
                     G.builtin_strategy("random_beta", seed=7, bdepth=4), 8)
    win = G.check_win_bounded(play)
    assert win.overall == "AlphaWinCertified"
    assert play.alpha_limit


def test_lemma_joint_playout_transfer():
    star = genuine_star_space()
    for seed in (0, 3, 11):
        beta = G.random_beta_star(star, seed, center=Fraction(1, 8))
        res = G.lemma_joint_playout(
            star, beta, G.builtin_strategy("shrink_to",
                                           point=Fraction(1, 8),
                                           h0=Fraction(1, 16)), 10)
        assert res["chain"].verdict == "Verified", res["chain"].detail
        assert res["win_transfer_ok"]


def test_beta_prime_theorem1_launch_and_recheck():
    f, O, W = _xsum_game_params()
    strat, launch = G.beta_prime_theorem1(f, Fraction(0), O, W, launch_depth=6)
    assert launch.verdict == "Verified"
    play = G.playout(G.GameSchedule("TandemMichael"), f.codomain,
                     G.builtin_strategy("alpha_basic_refine", bdepth=6),
                     strat, 10)
    assert play.legal
    rc = G.recheck_beta_prime_play(play, f, strat)
    assert rc.verdict == "Verified"


def test_beta_prime_refuses_continuous_map():
    sp = q_space()
    _, v = G.beta_prime_theorem1(
        M.identity_map(sp), Fraction(0),
        sp.interval(Fraction(-1), Fraction(1)),
        sp.interval(Fraction(-1, 2), Fraction(1, 2)), launch_depth=6)
    assert v.verdict == "NotLaunchable"
    assert "f(U) inside O" in str(v.detail)


def test_beta_prime_pcomplete_launch_and_recheck():
    f, O, W = _xsum_game_params()
    web = SV.bisection_web_on(q_space())
    strat, launch = G.beta_prime_pcomplete(f, web, Fraction(0), O, W, 6, 10)
    assert launch.verdict == "Verified"
    play = G.playout(G.GameSchedule("TandemMichael"), f.codomain,
                     G.builtin_strategy("alpha_basic_refine", bdepth=6),
                     strat, 10)
    assert play.legal
    rc = G.recheck_beta_prime_web_play(play, f, strat)
    assert rc.verdict == "Verified"


def test_tandem_playouts_meander_containment():
    sp = q_space()
    sched = G.GameSchedule("TandemMichael")
    for seed in range(5):
        play = G.playout(sched, sp,
                         G.builtin_strategy("shrink_adaptive"),
                         G.builtin_strategy("random_beta", seed=seed), 12)
        assert play.legal
        # spot-check the meander containments recorded by prev
        for m in play.moves:
            if m.prev is not None:
                prev = play.moves[m.prev]
                assert sp.is_subset(G.exact_of(m.sset),
                                    G.exact_of(prev.sset))
        # the plain-track restriction is a legal Michael play
        sub = G.replay_check("Michael", sp, G.plain_track_moves(play))
        assert all(m.legal for m in sub)
