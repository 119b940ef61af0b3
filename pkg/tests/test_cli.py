"""Command-line interface: parsing, exit codes, tree description files."""

import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from topolab import cli

TREES = Path(__file__).resolve().parent.parent / "trees"


def run_cli(*args, stdin=None, env=None):
    import os
    full = dict(os.environ)
    if env:
        full.update(env)
    return subprocess.run([sys.executable, "-m", "topolab.cli", *args],
                         capture_output=True, text=True, input=stdin,
                         env=full, timeout=300)


def test_parse_print_identity():
    cases = [
        ["check", "xsum_identity", "--depth", "8", "--seed", "0",
         "--format", "json"],
        ["play", "bm", "--space", "q", "--alpha", "shrink_adaptive",
         "--beta", "random_beta:3", "--depth", "8", "--format", "text"],
        ["sieve", "verify", "trees/non_mu.sieve", "--checks", "s,p",
         "--depth", "6", "--format", "text"],
        ["gallery", "run-all", "--depth", "8", "--seed", "0",
         "--format", "json"],
        ["gallery", "list", "--format", "text"],
    ]
    for argv in cases:
        cmd = cli.parse_args(argv)
        assert cli.parse_args(cmd.to_argv()) == cmd


def test_strategy_spec_parsing():
    assert cli.parse_strategy_spec("shrink_adaptive") == ("shrink_adaptive", {})
    name, params = cli.parse_strategy_spec("shrink_to:1/8")
    assert (name, params) == ("shrink_to", {"point": Fraction(1, 8)})
    name, params = cli.parse_strategy_spec("shrink_to:point=1/8,h0=1/16")
    assert params == {"point": Fraction(1, 8), "h0": Fraction(1, 16)}
    name, params = cli.parse_strategy_spec("random_beta:5")
    assert params == {"seed": Fraction(5)}
    with pytest.raises(cli.UsageError):
        cli.parse_strategy_spec("singleton_isolated:oops")


def test_sieve_grammar_parses_chain_file():
    tree, expects = cli.parse_sieve_file(str(TREES / "shrinking_chain.sieve"))
    assert tree.name == "chain_tree"
    assert expects == {"s": "Verified", "p": "Verified", "delta": "Verified"}
    assert tree.branches and tree.branches[0].limit == 0


def test_sieve_grammar_builder_file():
    tree, expects = cli.parse_sieve_file(str(TREES / "non_mu.sieve"))
    assert tree.name == "non_mu_sieve_on_Q"
    assert expects["mu"] == "Refuted"


def test_sieve_grammar_rejects_bad_directive(tmp_path):
    bad = tmp_path / "bad.sieve"
    bad.write_text("space q\nfrobnicate 1 2\n")
    with pytest.raises(cli.UsageError, match="bad.sieve:2"):
        cli.parse_sieve_file(str(bad))


def test_expression_parser_is_fraction_exact():
    fn = cli._expr_fn("-1/k")
    assert fn(3) == Fraction(-1, 3)
    fn2 = cli._expr_fn("1/k + 1/(k*k)")
    assert fn2(2) == Fraction(3, 4)


def test_exit_code_2_on_bad_input():
    assert run_cli("check", "no_such_instance").returncode == 2
    assert run_cli("play", "bm", "--space", "nope", "--alpha", "a",
                   "--beta", "b").returncode == 2
    assert run_cli("sieve", "verify", "/nonexistent.sieve").returncode == 2
    assert run_cli().returncode == 2


def test_sieve_verify_exit_codes(tmp_path):
    ok = run_cli("sieve", "verify", str(TREES / "shrinking_chain.sieve"),
                 "--checks", "s,p,delta")
    assert ok.returncode == 0, ok.stderr
    bad = tmp_path / "wrong.sieve"
    bad.write_text("builder non_mu_on_Q\nexpect delta Refuted\n")
    res = run_cli("sieve", "verify", str(bad), "--checks", "delta")
    assert res.returncode == 3
    assert "delta" in res.stdout


def test_check_exit_3_on_corrupted_golden(tmp_path):
    src = TREES.parent / "src/topolab/golden/non_mu_sieve_on_Q_d8_s0.json"
    blob = json.loads(src.read_text())
    blob["checks"][0]["certificate"]["verdict"] = "Refuted"
    (tmp_path / src.name).write_text(json.dumps(blob, indent=2,
                                                sort_keys=True))
    res = run_cli("check", "non_mu_sieve_on_Q", "--depth", "8",
                  env={"TOPOLAB_GOLDEN_DIR": str(tmp_path)})
    assert res.returncode == 3
    assert "sieve_axioms" in res.stderr  # the diffing certificate is named


def test_play_manual_mode_reads_stdin():
    moves = "q{D: (-1,1); N: (-1,1)}\nq{D: (-1/4,1/4); N: (-1/4,1/4)}\n"
    res = run_cli("play", "bm", "--space", "q", "--alpha", "shrink_adaptive",
                  "--beta", "unused", "--manual", "beta", "--depth", "4",
                  stdin=moves)
    assert res.returncode == 0, res.stderr
    assert "manual" in res.stdout
    assert "AlphaWinCertified" in res.stdout


def test_gallery_list_names_all_instances():
    res = run_cli("gallery", "list")
    assert res.returncode == 0
    names = res.stdout.split()
    assert len(names) == 13
    assert "non_mu_sieve_on_Q" in names
