"""``surgcalc`` command-line interface.

Exit codes: 0 success, 1 domain failure or oracle violation, 2 usage or
parse error.  ``--format json`` output carries ``"schema": "surgcalc/1"``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .certify import THEOREMS, Characterizing, applicable_theorems, best_bound, certify
from .jsj import jsj
from .knots import KnotSemanticError, KnotSyntaxError, normalize, parse, to_text
from .oracle import (
    CablePattern,
    ComposingPattern,
    OracleViolation,
    ParamBox,
    check_cable_patterns,
    check_composing_h1,
    check_filled_pattern_h1,
    check_rs_lemma,
    check_torus_cable_matching,
    rs_lemma_witnesses,
    scan_composing_h1,
)
from .slopes import parse_slope
from .surgery import SurgeryError, surger

SCHEMA = "surgcalc/1"


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _expr(text):
    try:
        return parse(text)
    except (KnotSyntaxError, KnotSemanticError) as exc:
        raise UsageError(str(exc)) from None


def _slope(text):
    try:
        return parse_slope(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- text renderers ------------------------------------------------------------

def _seifert_text(data):
    cones = ",".join(map(str, data["cone_orders"])) or "-"
    fibres = ", ".join(f"{k}={v}" for k, v in data["fibre_slopes"].items())
    return f"boundaries={data['boundary_count']} cones={{{cones}}} fibres[{fibres}]"


def _jsj_text(graph):
    lines = []
    for piece in graph["pieces"]:
        params = " ".join(f"{k}={v}" for k, v in piece["params"].items())
        line = f"[{piece['id']}] {piece['type']} {params}  ({piece['knot']})"
        if piece["seifert"]:
            line += "\n      " + _seifert_text(piece["seifert"])
        lines.append(line)
    for e in graph["edges"]:
        lines.append(f"torus {e['from']}:{e['boundary']} -- {e['to']}  framed by {e['framing']}")
    return "\n".join(lines)


def _surger_text(d):
    lines = [f"S^3_K({d['slope']}) for K = {d['knot']}",
             f"H_1 order: {d['h1_order']}"]
    for step in d["reduction_trace"]:
        lines.append(f"cable reduction C({step['r']},{step['s']}): "
                     f"{step['slope_before']} -> {step['slope_after']}")
    for piece in d["pieces"]:
        tag = "*" if piece["surgered"] else " "
        body = {k: v for k, v in piece.items() if k not in ("id", "surgered", "type")}
        lines.append(f"{tag}[{piece['id']}] {piece['type']} {json.dumps(body, sort_keys=True)}")
    for w in d["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def _report_text(d):
    if d["check"] == "rs-lemma-sharpness":
        status = f"{len(d['witnesses'])} witness(es) with rs != r's'"
    else:
        status = "clean" if d["ok"] else f"{len(d['violations'])} violation(s)"
    lines = [f"{d['check']}: {status}; {d['checked']} case(s) checked"]
    lines += [f"  {k}: {v}" for k, v in d["stats"].items()]
    for v in d["violations"][:20]:
        lines.append("  violation: " + json.dumps(v, sort_keys=True))
    for v in d["witnesses"][:5]:
        lines.append("  witness: " + json.dumps(v, sort_keys=True))
    return "\n".join(lines)


# -- commands --------------------------------------------------------------------

def cmd_parse(args):
    e = normalize(_expr(args.expr))
    return {"expr": to_text(e)}, to_text(e)


def cmd_jsj(args):
    e = _expr(args.expr)
    d = jsj(e).to_dict()
    return {"knot": to_text(normalize(e)), "jsj": d}, _jsj_text(d)


def cmd_surger(args):
    e, slope = _expr(args.expr), _slope(args.slope)
    try:
        d = surger(e, slope).to_dict()
    except SurgeryError as exc:
        raise DomainError(str(exc)) from None
    return d, _surger_text(d)


def cmd_certify(args):
    e, slope = _expr(args.expr), _slope(args.slope)
    try:
        verdict = certify(e, slope)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    d = {"knot": to_text(normalize(e)), "slope": str(slope), **verdict.to_dict()}
    text = str(verdict)
    if isinstance(verdict, Characterizing):
        text += f"\n  threshold |q| >= {verdict.threshold_used}: {d['citation']}"
    return d, text


def cmd_bound(args):
    e = _expr(args.expr)
    rules = applicable_theorems(e)
    best = best_bound(e)
    d = {"knot": to_text(normalize(e)),
         "best": best.to_dict() if best else None,
         "rules": [b.to_dict() for b in rules]}
    if best is None:
        text = f"no effective bound for {d['knot']}"
    else:
        text = "\n".join([f"|q| >= {best.qmin} ({THEOREMS[best.theorem_id][0]})"]
                         + [f"  {b.theorem_id}: |q| >= {b.qmin}  {b.citation}" for b in rules])
    return d, text


def _box(args, **defaults):
    fields = {}
    for name in ("a", "b", "c", "d", "q", "s", "s2", "m", "n", "coef"):
        lo = getattr(args, f"{name}_min", None)
        hi = getattr(args, f"{name}_max", None)
        if lo is not None or hi is not None:
            base = defaults.get(name, getattr(ParamBox, name))
            fields[name] = (base[0] if lo is None else lo, base[1] if hi is None else hi)
    for name in ("r", "r2", "p"):
        hi = getattr(args, f"{name}_max", None)
        if hi is not None:
            fields[name] = (-hi, hi)
    try:
        return ParamBox(**{**defaults, **fields})
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_oracle(args):
    which = args.check
    if which == "h1":
        box = _box(args, r=(-7, 7), s=(2, 6), p=(-50, 50), q=(1, 9))
        if args.kind == "cable":
            if (args.r is None) != (args.s is None):
                raise UsageError("--r and --s must be given together")
            if args.r is not None:
                try:
                    pattern = CablePattern(args.r, args.s)
                    report = check_filled_pattern_h1(pattern, box)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
            else:
                report = check_cable_patterns(box)
        else:
            if args.n_summands < 2:
                raise UsageError("--n-summands must be >= 2")
            report = check_filled_pattern_h1(ComposingPattern(args.n_summands), box)
    elif which == "rs-lemma":
        defaults = dict(r=(-30, 30), s=(-30, 30), r2=(-30, 30), s2=(-30, 30), q=(3, 50))
        if args.sharpness:
            report = rs_lemma_witnesses(_box(args, **{**defaults, "q": (2, 2)}))
        else:
            box = _box(args, **defaults)
            if box.q[0] <= 2:
                raise UsageError("rs-lemma requires --q-min >= 3 (use --sharpness for |q| = 2)")
            report = check_rs_lemma(box)
    elif which == "torus-cable":
        report = check_torus_cable_matching(_box(args))
    else:
        if args.slopes is not None:
            if args.m is None or args.n is None:
                raise UsageError("--slopes needs --m and --n")
            if args.m == 0 and args.n == 0:
                raise UsageError("(m, n) = (0, 0) is not a filling slope")
            s1, s2 = (_slope(x) for x in args.slopes)
            try:
                homologous = check_composing_h1(args.m, args.n, (s1, s2))
            except OracleViolation as exc:
                d = {"check": "composing-h1", "ok": False, "homologous": None, "error": str(exc)}
                return d, f"violation: {exc}", 1
            d = {"check": "composing-h1", "ok": True, "m": args.m, "n": args.n,
                 "slopes": [str(s1), str(s2)], "homologous": homologous}
            return d, "homologous" if homologous else "not homologous"
        report = scan_composing_h1(_box(args))
    d = report.to_dict()
    if args.check == "rs-lemma" and args.sharpness:
        # a sharpness search succeeds when it finds witnesses
        d["ok"] = bool(report.witnesses)
    return d, _report_text(d), 0 if d["ok"] else 1


# -- argument parsing ---------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--quiet", action="store_true", help="suppress output; exit code only")

    parser = argparse.ArgumentParser(
        prog="surgcalc",
        description="Surgery calculus for satellite knots: JSJ pieces, fillings, "
                    "characterizing-slope certificates and brute-force oracles.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, slope=False):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("expr", help='knot expression, e.g. "C(5,2;T(3,2))"')
        if slope:
            p.add_argument("slope", help="slope p/q (write -- before negative slopes)")
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, "parse and normalize an expression")
    add("jsj", cmd_jsj, "JSJ decomposition of the knot exterior")
    add("surger", cmd_surger, "JSJ pieces of the surgered manifold", slope=True)
    add("certify", cmd_certify, "characterizing-slope certificate", slope=True)
    add("bound", cmd_bound, "effective threshold on |q|")

    oracle = sub.add_parser("oracle", help="brute-force verification", parents=[common])
    checks = oracle.add_subparsers(dest="check", required=True)

    def box_flags(p, names, signed=()):
        for name in names:
            p.add_argument(f"--{name}-min", dest=f"{name}_min", type=int)
            p.add_argument(f"--{name}-max", dest=f"{name}_max", type=int)
        for name in signed:
            p.add_argument(f"--{name}-max", dest=f"{name}_max", type=int,
                           help=f"search {name} in [-N, N]")

    h1 = checks.add_parser("h1", parents=[common], help="H_1 of filled pattern spaces")
    h1.add_argument("--kind", choices=("cable", "composing"), default="cable")
    h1.add_argument("--r", type=int, help="single cable pattern (with --s)")
    h1.add_argument("--s", type=int)
    h1.add_argument("--n-summands", type=int, default=2,
                    help="composing pattern with this many summand slots")
    box_flags(h1, ("q", "s"), signed=("r", "p"))
    h1.set_defaults(func=cmd_oracle)

    rs = checks.add_parser("rs-lemma", parents=[common],
                           help="|qrs-p| = |qr's'-p| = 1 and |q| > 2 imply rs = r's'")
    rs.add_argument("--sharpness", action="store_true", help="search |q| = 2 for witnesses")
    box_flags(rs, ("q", "s", "s2"), signed=("r", "r2", "p"))
    rs.set_defaults(func=cmd_oracle)

    tc = checks.add_parser("torus-cable", parents=[common],
                           help="torus knot / cable matching system: |q| <= |a| + 1")
    box_flags(tc, ("a", "b", "c", "d", "q", "s", "s2"), signed=("r", "r2", "p"))
    tc.set_defaults(func=cmd_oracle)

    ch = checks.add_parser("composing-h1", parents=[common],
                           help="homologous slopes in a filled composing space")
    ch.add_argument("--m", type=int)
    ch.add_argument("--n", type=int)
    ch.add_argument("--slopes", nargs=2, metavar=("SIGMA1", "SIGMA2"))
    box_flags(ch, ("m", "n", "coef"))
    ch.set_defaults(func=cmd_oracle)
    return parser


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code = 0
    try:
        result = args.func(args)
    except UsageError as exc:
        if not args.quiet:
            print(f"surgcalc: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        if args.format == "json" and not args.quiet:
            out.write(json.dumps({"schema": SCHEMA, "error": str(exc)}, sort_keys=True) + "\n")
        if not args.quiet:
            print(f"surgcalc: {exc}", file=sys.stderr)
        return 1
    if len(result) == 3:
        data, text, code = result
    else:
        data, text = result
    if not args.quiet:
        if args.format == "json":
            out.write(json.dumps({"schema": SCHEMA, "command": args.command, **data},
                                 sort_keys=True, indent=2) + "\n")
        else:
            out.write(text + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
