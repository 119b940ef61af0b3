"""Map checkers: continuity family, separation, graph certificates."""

import json
from fractions import Fraction

import pytest

from topolab import maps as M
from topolab.gallery import (dense_refine_identity_map, seq_projection_map,
                             wilhelm_map, xsum_identity_map)
from topolab.spaces import q_space


def test_identity_all_checks_verified():
    f = M.identity_map(q_space())
    assert M.check_near_continuity(f, 5).verdict == "Verified"
    assert M.check_feebly_open(f, 5).verdict == "Verified"
    pts = q_space().sample_pool(4, seed=2)[:10]
    assert M.check_continuity_at(f, pts, 5).verdict == "Verified"


def test_xsum_identity_discontinuous_but_nearly_continuous():
    f = xsum_identity_map()
    assert M.check_near_continuity(f, 6).verdict == "Verified"
    v = M.check_continuity_at(f, [Fraction(0)], 6)
    assert v.verdict == "Refuted"
    assert v.witness_points  # a concrete point where continuity breaks


def test_closed_graph_is_never_refuted():
    f = xsum_identity_map()
    pairs = M.sample_offgraph_pairs(f, 30, seed=4)
    v = M.check_closed_graph(f, pairs, 8)
    assert v.verdict in ("Verified", "Unknown")
    assert v.verdict == "Verified"


def test_separating_certificates():
    f = xsum_identity_map()
    pairs = M.sample_point_pairs(f.domain, 30, seed=5)
    v = M.check_separating(f, pairs, 8)
    assert v.verdict == "Verified"


def test_hausdorff_on_q():
    sp = q_space()
    pairs = M.sample_point_pairs(sp, 25, seed=6)
    assert M.check_hausdorff(sp, pairs, 8).verdict == "Verified"


def test_semi_regular_on_q():
    sp = q_space()
    pts = sp.sample_pool(4, seed=7)[:8]
    assert M.check_semi_regular(sp, pts, 6).verdict == "Verified"


def test_wilhelm_map_shape():
    f = wilhelm_map()
    for p in f.domain.sample_pool(4, seed=8)[:10]:
        q = f(p)
        assert f.codomain.contains_point(q)
    assert f.has_preimage


def test_seq_projection_evaluates_first_entry():
    f = seq_projection_map()
    for p in f.domain.sample_pool(4, seed=9)[:10]:
        assert f(p) == p.entry(0)
        assert f.codomain.contains_point(f(p))


def test_dense_refine_identity_near_continuity():
    f = dense_refine_identity_map()
    assert M.check_near_continuity(f, 5).verdict == "Verified"


def test_verdict_json_roundtrip():
    f = xsum_identity_map()
    v = M.check_continuity_at(f, [Fraction(0)], 5)
    blob = json.dumps(v.to_json(), sort_keys=True, default=str)
    back = json.loads(blob)
    assert back["verdict"] == v.verdict
    assert back["property"] == v.property


def test_compose_and_inverse():
    sp = q_space()
    ident = M.identity_map(sp)
    gg = M.compose(ident, ident)
    for p in sp.sample_pool(3, seed=10)[:8]:
        assert gg(p) == p
    inv = M.inverse_map(ident)
    for p in sp.sample_pool(3, seed=11)[:8]:
        assert inv(p) == p
