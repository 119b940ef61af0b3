"""Command-line front end: checks, game plays, sieve verification, gallery.

Exit codes: 0 success / expectations met, 2 input or usage error,
3 expectation or golden-report mismatch (the report names the diffing
certificate).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import gallery as GA
from . import games as G
from . import maps as M
from . import sieves as SV
from .serial import parse_set, serialize_set
from .spaces import build_registry


@dataclass
class Command:
    kind: str  # check | play | sieve | gallery
    args: dict = field(default_factory=dict)
    fmt: str = "text"
    output: str = None

    def to_argv(self):
        a = self.args
        if self.kind == "check":
            out = ["check", a["instance"], "--depth", str(a["depth"]),
                   "--seed", str(a["seed"])]
        elif self.kind == "play":
            out = ["play", a["schedule"], "--space", a["space"],
                   "--alpha", a["alpha"], "--beta", a["beta"],
                   "--depth", str(a["depth"])]
            if a.get("manual"):
                out += ["--manual", a["manual"]]
        elif self.kind == "sieve":
            out = ["sieve", "verify", a["file"], "--checks", a["checks"],
                   "--depth", str(a["depth"])]
        else:
            out = ["gallery", a["mode"]]
            if a["mode"] == "run-all":
                out += ["--depth", str(a["depth"]), "--seed", str(a["seed"])]
                if a.get("write_golden"):
                    out.append("--write-golden")
        out += ["--format", self.fmt]
        if self.output:
            out += ["--output", self.output]
        return out


class UsageError(Exception):
    pass


def parse_args(argv) -> Command:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--output", default=None)
    p = argparse.ArgumentParser(prog="topolab", add_help=True)
    sub = p.add_subparsers(dest="kind", parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    pc = sub.add_parser("check")
    pc.add_argument("instance")
    pc.add_argument("--depth", type=int, default=8)
    pc.add_argument("--seed", type=int, default=0)

    pp = sub.add_parser("play")
    pp.add_argument("schedule",
                    choices=("bm", "michael", "tandem-bm", "tandem-michael"))
    pp.add_argument("--space", required=True)
    pp.add_argument("--alpha", required=True)
    pp.add_argument("--beta", required=True)
    pp.add_argument("--depth", type=int, default=8)
    pp.add_argument("--manual", choices=("alpha", "beta"), default=None)

    ps = sub.add_parser("sieve")
    ps.add_argument("mode", choices=("verify",))
    ps.add_argument("file")
    ps.add_argument("--checks", default="s,p,delta,mu")
    ps.add_argument("--depth", type=int, default=6)

    pg = sub.add_parser("gallery")
    pg.add_argument("mode", choices=("list", "run-all"))
    pg.add_argument("--depth", type=int, default=8)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--write-golden", action="store_true")

    try:
        ns = p.parse_args(argv)
    except SystemExit as e:
        raise UsageError(f"argument error (code {e.code})") from e
    if ns.kind is None:
        raise UsageError("missing subcommand")
    args = {k: v for k, v in vars(ns).items()
            if k not in ("kind", "format", "output")}
    if ns.kind == "gallery":
        args["write_golden"] = args.pop("write_golden", False)
    return Command(ns.kind, args, fmt=ns.format, output=ns.output)


# ---------------------------------------------------------------------------
# strategy / space resolution

_SCHEDULES = {"bm": "BM", "michael": "Michael", "tandem-bm": "TandemBM",
              "tandem-michael": "TandemMichael"}

# bare first value of a spec maps to this parameter
_DEFAULT_PARAM = {"shrink_to": "point", "random_beta": "seed",
                  "follow_basis": "bdepth", "alpha_basic_refine": "bdepth",
                  "shrink_adaptive": "h0", "thm81": "instance",
                  "web91": "instance"}


def _parse_value(text):
    try:
        return Fraction(text)
    except ValueError:
        return text


def parse_strategy_spec(spec: str):
    """"name", "name:bare" or "name:k=v,k=v" into (name, params)."""
    name, _, rest = spec.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            if "=" in item:
                k, _, v = item.partition("=")
                params[k.strip()] = _parse_value(v.strip())
            else:
                key = _DEFAULT_PARAM.get(name)
                if key is None:
                    raise UsageError(f"strategy {name!r} takes named parameters only")
                params[key] = _parse_value(item.strip())
    return name, params


def _resolve_strategy(spec: str, role: str):
    """A strategy, plus the game space it insists on (None = any)."""
    name, params = parse_strategy_spec(spec)
    if name in ("thm81", "web91"):
        inst = params.pop("instance", "xsum_identity")
        if inst != "xsum_identity":
            raise UsageError(f"{name} strategy is shipped for xsum_identity only")
        f, O, W = GA._xsum_game_params()
        if name == "thm81":
            strat, verdict = G.beta_prime_theorem1(f, Fraction(0), O, W,
                                                   launch_depth=6)
        else:
            from .spaces import q_space
            web = SV.bisection_web_on(q_space())
            strat, verdict = G.beta_prime_pcomplete(f, web, Fraction(0), O, W,
                                                    6, 10)
        if strat is None:
            raise UsageError(f"{name} refused to launch: {verdict.verdict}")
        return strat, f.codomain
    try:
        ip = {k: (int(v) if isinstance(v, Fraction) and v.denominator == 1
                  and k in ("seed", "bdepth") else v)
              for k, v in params.items()}
        return G.builtin_strategy(name, **ip), None
    except (KeyError, TypeError) as e:
        raise UsageError(f"unknown {role} strategy {name!r}: {e}") from e


def _manual_strategy(space, stream):
    """Moves read line by line: a serialized set, optionally followed by
    " | " and a serialized relative-open witness."""

    def fn(play, info):
        line = stream.readline()
        if not line or not line.strip():
            return None
        text = line.strip()
        wit = None
        if "|" in text:
            text, _, wt = text.partition("|")
            wit = parse_set(wt.strip(), space)
        return G.MoveChoice(parse_set(text.strip(), space), open_witness=wit,
                            note="manual")

    return G.Strategy("manual", fn)


# ---------------------------------------------------------------------------
# sieve description files

_INT_RE = re.compile(r"(?<![\w.])(\d+)(?![\w.])")


def _expr_fn(expr: str):
    code = _INT_RE.sub(r"F(\1)", expr)

    def fn(k):
        return eval(code, {"__builtins__": {}},
                    {"F": Fraction, "k": Fraction(k)})

    return fn


def _singleton_on_q():
    from .spaces import q_space
    return SV.singleton_sieve_on(q_space())


_BUILDERS = {
    "non_mu_on_Q": SV.non_mu_sieve_on_Q,
    "singleton_on_Q": _singleton_on_q,
}


def parse_sieve_file(path: str):
    """Declarative tree description: `space SID`, `builder NAME`,
    `chain NAME START : LO_EXPR HI_EXPR`, `residual NAME`,
    `branch NAME NODE RULE [LIMIT]`, `expect PROP VERDICT`."""
    reg = build_registry()
    space = None
    chains = []
    branches = []
    expects = {}
    builder = None
    with open(path) as fh:
        for ln, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "space":
                    space = reg[parts[1]]
                elif parts[0] == "builder":
                    builder = _BUILDERS[parts[1]]
                elif parts[0] == "chain":
                    name, start = parts[1], int(parts[2])
                    if parts[3] != ":":
                        raise ValueError("expected ':' after chain start")
                    chains.append((name, start, _expr_fn(parts[4]),
                                   _expr_fn(parts[5])))
                elif parts[0] == "residual":
                    pass  # the residual root is always constructed
                elif parts[0] == "branch":
                    limit = Fraction(parts[4]) if len(parts) > 4 else None
                    branches.append((parts[1], parts[2], parts[3], limit))
                elif parts[0] == "expect":
                    expects[parts[1]] = parts[2]
                else:
                    raise ValueError(f"unknown directive {parts[0]!r}")
            except (IndexError, KeyError, ValueError) as e:
                raise UsageError(f"{path}:{ln}: {e}") from e
    if builder is not None:
        tree = builder()
    else:
        if space is None or not chains:
            raise UsageError(f"{path}: need a builder, or a space and at least one chain")
        tree = SV.chain_interval_tree(space, chains)
        tree.branches = []
        for _, node, rule, limit in branches:
            root = next((r for r in tree.roots() if r[1] == node), None)
            if root is None:
                raise UsageError(f"{path}: branch names unknown chain {node!r}")
            tree.branches.append(SV.Branch(tree, (root,), rule=rule, limit=limit))
    return tree, expects


def run_sieve_checks(tree, checks, depth):
    sp = tree.space
    out = {}
    certs = {}
    wanted = [c.strip() for c in checks.split(",") if c.strip()]
    b = tree.branches[0] if tree.branches else None
    for c in wanted:
        if c == "s":
            v = SV.check_sieve(tree, sp, min(depth, 4))
            out["s"], certs["s"] = v.verdict, v.to_json()
        elif c == "p":
            if b is None:
                out["p"] = "Unknown"
                continue
            vs = SV.check_p_complete(tree, tree.branches, depth)
            out["p"] = ("Verified" if all(v.verdict == "Verified" for v in vs)
                        else "Unknown")
            certs["p"] = [v.to_json() for v in vs]
        elif c == "delta":
            if b is None:
                out["delta"] = "Unknown"
                continue
            v = SV.check_delta(tree, b, min(depth, 3))
            out["delta"], certs["delta"] = v.verdict, v.to_json()
        elif c in ("mu", "quasi_mu"):
            cert = certs.get("_mu_search")
            if cert is None:
                cert = SV.find_mu_refutation(tree, min(depth, 3))
                certs["_mu_search"] = cert
            if "U" in cert:
                out["mu"] = "Refuted"
                out["quasi_mu"] = cert["quasi_mu"].verdict
                certs["mu"] = cert["mu"].to_json()
                certs["quasi_mu"] = cert["quasi_mu"].to_json()
            else:
                out["mu"] = "NoRefutationFound"
                out["quasi_mu"] = "Unknown"
                certs["mu"] = cert
        else:
            raise UsageError(f"unknown sieve check {c!r}")
    certs.pop("_mu_search", None)
    return out, certs


# ---------------------------------------------------------------------------
# execution


def _emit(cmd: Command, payload, text_fn):
    body = (json.dumps(payload, indent=2, sort_keys=True, default=str)
            if cmd.fmt == "json" else text_fn(payload))
    if cmd.output:
        with open(cmd.output, "w") as fh:
            fh.write(body + "\n")
    else:
        print(body)


def _exec_check(cmd):
    a = cmd.args
    if a["instance"] not in GA.INSTANCES:
        raise UsageError(f"unknown instance {a['instance']!r}")
    rep = GA.run_instance(a["instance"], a["depth"], a["seed"])
    status, where = GA.compare_golden(rep)
    payload = {"report": rep, "golden": status, "golden_detail": where}

    def text(p):
        lines = [GA.report_text(p["report"]), f"golden: {p['golden']} ({p['golden_detail']})"]
        return "\n".join(lines)

    _emit(cmd, payload, text)
    if not rep["matches"]:
        bad = next(c for c in rep["checks"] if not c["match"])
        print(f"expectation mismatch: {bad['property']}", file=sys.stderr)
        return 3
    if status == "mismatch":
        print(f"golden mismatch: {where}", file=sys.stderr)
        return 3
    return 0


def _exec_play(cmd):
    a = cmd.args
    reg = build_registry()
    if a["space"] not in reg:
        raise UsageError(f"unknown space {a['space']!r}; known: {sorted(reg)}")
    space = reg[a["space"]]
    manual = a.get("manual")
    alpha = beta = None
    need = None
    if manual != "alpha":
        alpha, sp_a = _resolve_strategy(a["alpha"], "alpha")
        need = need or sp_a
    if manual != "beta":
        beta, sp_b = _resolve_strategy(a["beta"], "beta")
        need = need or sp_b
    if need is not None:
        space = need  # theorem-backed strategies fix the game space
    if alpha is None:
        alpha = _manual_strategy(space, sys.stdin)
    if beta is None:
        beta = _manual_strategy(space, sys.stdin)
    sched = G.GameSchedule(_SCHEDULES[a["schedule"]])
    play = G.playout(sched, space, alpha, beta, a["depth"])
    win = G.check_win_bounded(play)
    payload = {"play": play.to_json(), "win": {"overall": win.overall,
                                              "per_track": win.per_track}}

    def text(p):
        lines = [f"{a['schedule']} on {a['space']}: {p['play']['outcome']}"]
        for m in p["play"]["moves"]:
            ok = (m["nonempty_ok"] and m["containment_ok"]
                  and m["open_ok"] != "no")
            lines.append(f"  ply {m['index']} {m['mover']}/{m['track']}: "
                         f"{m['set']} legal={ok}"
                         + (f" note={m['note'].strip()}" if m.get("note") else ""))
        lines.append(f"win: {p['win']['overall']}")
        return "\n".join(lines)

    _emit(cmd, payload, text)
    return 0


def _exec_sieve(cmd):
    a = cmd.args
    tree, expects = parse_sieve_file(a["file"])
    verdicts, certs = run_sieve_checks(tree, a["checks"], a["depth"])
    mismatches = {k: (expects[k], v) for k, v in verdicts.items()
                  if k in expects and expects[k] != v}
    payload = {"tree": tree.name, "verdicts": verdicts, "expected": expects,
               "mismatches": {k: {"expected": e, "got": g}
                              for k, (e, g) in mismatches.items()},
               "certificates": certs}

    def text(p):
        lines = [f"sieve {p['tree']}"]
        for k, v in p["verdicts"].items():
            exp = p["expected"].get(k)
            mark = "" if exp is None or exp == v else f"  EXPECTED {exp}"
            lines.append(f"  {k}: {v}{mark}")
        return "\n".join(lines)

    _emit(cmd, payload, text)
    return 3 if mismatches else 0


def _exec_gallery(cmd):
    a = cmd.args
    if a["mode"] == "list":
        payload = {"instances": list(GA.INSTANCES)}
        _emit(cmd, payload, lambda p: "\n".join(p["instances"]))
        return 0
    code = 0
    reports = {}
    failures = []
    for name in GA.INSTANCES:
        rep = GA.run_instance(name, a["depth"], a["seed"])
        if a.get("write_golden"):
            GA.write_golden(rep)
        status, where = GA.compare_golden(rep)
        reports[name] = {"matches": rep["matches"], "golden": status,
                         "golden_detail": where, "report": rep}
        if not rep["matches"]:
            bad = next(c for c in rep["checks"] if not c["match"])
            failures.append(f"{name}: expectation mismatch at {bad['property']}")
            code = 3
        elif status == "mismatch":
            failures.append(f"{name}: golden mismatch at {where}")
            code = 3
    payload = {"reports": reports, "failures": failures}

    def text(p):
        lines = []
        for name, r in p["reports"].items():
            lines.append(f"{name}: expectations={'ok' if r['matches'] else 'MISMATCH'} "
                         f"golden={r['golden']}")
        lines.extend(p["failures"])
        return "\n".join(lines)

    _emit(cmd, payload, text)
    for f in failures:
        print(f, file=sys.stderr)
    return code


def execute(cmd: Command) -> int:
    try:
        if cmd.kind == "check":
            return _exec_check(cmd)
        if cmd.kind == "play":
            return _exec_play(cmd)
        if cmd.kind == "sieve":
            return _exec_sieve(cmd)
        if cmd.kind == "gallery":
            return _exec_gallery(cmd)
        raise UsageError(f"unknown command {cmd.kind!r}")
    except UsageError:
        raise
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    try:
        cmd = parse_args(sys.argv[1:] if argv is None else argv)
        return execute(cmd)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
