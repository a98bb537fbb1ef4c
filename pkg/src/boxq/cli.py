"""Command-line front end.

Subcommands: suite, reduce, table, ideal-member, module-check.
Exit codes: 0 all verified; 1 at least one failing check (with witness);
2 at least one inconclusive bounded search and no failures; 3 usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import ideal, modverify, presets, rewrite, runner
from .ncpoly import ParseError, format_poly, letter_code, parse_poly
from .qcoeff import SpecializedField


def _err(msg):
    print("boxq: %s" % msg, file=sys.stderr)
    return 3


def _read_config_file(path, cfg_dict):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("%s:%d: expected key = value" % (path, lineno))
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key in ("n_exp", "m_rac", "n_power", "r_min", "r_max", "degree_slack", "dihedral_len"):
                cfg_dict[key] = int(value)
            elif key == "specializations":
                cfg_dict["specializations"] = tuple(
                    Fraction(v.strip()) for v in value.split(",") if v.strip()
                )
            else:
                raise ValueError("%s:%d: unknown key %r" % (path, lineno, key))
    return cfg_dict


def _build_suite_config(args):
    cfg_dict = {}
    path = args.config or os.environ.get("BOXQ_CONFIG")
    if path:
        _read_config_file(path, cfg_dict)
    for key in ("n_exp", "m_rac", "n_power", "r_min", "r_max", "degree_slack", "dihedral_len"):
        val = getattr(args, key)
        if val is not None:
            cfg_dict[key] = val
    if args.spec:
        cfg_dict["specializations"] = tuple(Fraction(s) for s in args.spec)
    cfg = runner.SuiteConfig(**cfg_dict)
    cfg.no_timing = args.no_timing
    cfg.validate()
    return cfg


def _cmd_suite(args):
    try:
        cfg = _build_suite_config(args)
    except (ValueError, OSError, ZeroDivisionError) as exc:
        return _err(str(exc))
    report = runner.run_suite(cfg, parallelism=args.parallelism)
    if args.output == "json":
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        for r in report.results:
            engines = ",".join(e.engine for e in r.engines)
            status = {"verified": "PASS", "residual": "FAIL", "inconclusive": "OPEN"}.get(
                r.verdict, "ERR "
            )
            line = "%s %-28s [%s]" % (status, r.instance.name, engines)
            if not cfg.no_timing:
                line += "  %.3fs" % r.seconds
            if r.witness:
                line += "  " + r.witness
            print(line)
        c = report.counts()
        line = "summary: %d verified, %d residual, %d inconclusive, %d error" % (
            c["verified"],
            c["residual"],
            c["inconclusive"],
            c["error"],
        )
        if not cfg.no_timing:
            line += " (%.1fs)" % report.seconds
        print(line)
    return report.exit_code


def _cmd_reduce(args):
    try:
        strategy = rewrite.parse_strategy(args.strategy)
        poly = parse_poly(args.expr)
    except (ParseError, ValueError) as exc:
        return _err(str(exc))
    try:
        nf = rewrite.reduce_poly(poly, strategy)
    except rewrite.RewriteError as exc:
        return _err(str(exc))
    if args.output == "json":
        print(
            json.dumps(
                [
                    {"term": format_poly_term(w), "coeff": str(c)}
                    for w, c in nf.sorted_terms()
                ]
            )
        )
    else:
        print(format_poly(nf))
    return 0


def format_poly_term(w):
    from .ncpoly import NCPoly

    return format_poly(NCPoly.word(w)) if w else "1"


def _cmd_table(args):
    try:
        tables = presets.preset_tables(args.preset, args.index % 4)
    except KeyError as exc:
        return _err(str(exc.args[0]))
    if args.output == "json":
        print(json.dumps(presets.format_tables(tables, "json"), indent=2))
    else:
        print(presets.format_tables(tables, "text"))
    return 0


def _parse_alphabet(text):
    out = []
    for token in text.split(","):
        token = token.strip()
        inv = token.endswith("^-1")
        if inv:
            token = token[:-3]
        if len(token) != 2 or token[0] != "x" or token[1] not in "0123":
            raise ValueError("bad alphabet token %r" % token)
        out.append(letter_code(int(token[1]), -1 if inv else 1))
    return tuple(out)


def _parse_relations(text):
    out = []
    for token in text.split(","):
        token = token.strip()
        if token.startswith("weyl") and token[4:] in "0123" and len(token) == 5:
            out.append(ideal.RelationId("weyl", int(token[4])))
        elif token.startswith("serre") and token[5:] in "0123" and len(token) == 6:
            out.append(ideal.RelationId("serre", int(token[5])))
        else:
            raise ValueError("bad relation token %r (use weyl0..weyl3, serre0..serre3)" % token)
    return out


def _cmd_ideal_member(args):
    try:
        target = parse_poly(args.expr)
        if args.relations:
            relations = _parse_relations(args.relations)
        else:
            relations = [ideal.RelationId("weyl", i) for i in range(4)] + [
                ideal.RelationId("serre", i) for i in range(4)
            ]
        if args.alphabet:
            alphabet = _parse_alphabet(args.alphabet)
        else:
            letters = sorted({c for w in target.terms for c in w})
            alphabet = tuple(letters) or (0, 2)
        bound = args.bound
        if bound is None:
            bound = (target.degree() if not target.is_zero() else 0) + 2
        field = SpecializedField(Fraction(args.spec)) if args.spec else ideal.GenericField
        query = ideal.MembershipQuery(
            target=target,
            relations=relations,
            alphabet=alphabet,
            degree_bound=bound,
            linear_index=args.linear_in,
            field=field,
        )
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        return _err(str(exc))
    try:
        verdict = ideal.member(query)
    except ideal.ResourceLimit as exc:
        return _err(str(exc))
    checked = verdict.is_member and ideal.verify_certificate(query, verdict)
    payload = {
        "status": verdict.status,
        "bound": bound,
        "rows": verdict.rows_used,
        "certificate_recomputed": checked,
    }
    if verdict.is_member:
        payload["certificate"] = [
            {
                "coeff": field.to_str(c) if args.spec else str(c),
                "left": format_poly_term(u),
                "relation": str(relations[ri]) if isinstance(ri, int) else str(ri),
                "right": format_poly_term(v),
            }
            for c, u, ri, v in verdict.certificate
        ]
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("status: %s (bound %d, %d rows)" % (verdict.status, bound, verdict.rows_used))
        if verdict.is_member:
            print("certificate entries: %d, recomputed: %s" % (len(verdict.certificate), checked))
    if not verdict.is_member:
        return 2
    return 0 if checked else 1


def _cmd_module_check(args):
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            module = modverify.load_module(fh.read())
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _err("unreadable module file: %s" % exc)
    report = modverify.verify_module(module)
    if args.output == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        js = report.to_json()
        print("dimension %d over %s" % (js["dimension"], js["field"]))
        for section in ("relations", "invertibility", "nilpotency", "theorems", "ladder"):
            items = js[section]
            bad = [it for it in items if it.get("ok") is False]
            skipped = [it for it in items if "skipped" in it]
            print(
                "%-13s %d checks, %d failed, %d skipped"
                % (section, len(items), len(bad), len(skipped))
            )
            for it in bad:
                print("  FAIL %s: %s" % (it, it.get("witness", "")))
        print("passed: %s" % js["passed"])
    return 0 if report.passed() else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="boxq",
        description="Exact symbolic verification for the q-deformed four-generator algebra",
    )
    sub = ap.add_subparsers(dest="command")

    ps = sub.add_parser("suite", help="run the identity verification suite")
    ps.add_argument("--n-exp", dest="n_exp", type=int, default=None)
    ps.add_argument("--m-rac", dest="m_rac", type=int, default=None)
    ps.add_argument("--n-power", dest="n_power", type=int, default=None)
    ps.add_argument("--r-min", dest="r_min", type=int, default=None)
    ps.add_argument("--r-max", dest="r_max", type=int, default=None)
    ps.add_argument("--degree-slack", dest="degree_slack", type=int, default=None)
    ps.add_argument(
        "--dihedral-len",
        dest="dihedral_len",
        type=int,
        default=None,
        help="word length bound for the symmetry-group checks (default 6)",
    )
    ps.add_argument("--spec", action="append", default=None, help="rational specialization q0")
    ps.add_argument("--config", default=None, help="key = value config file")
    ps.add_argument("--output", choices=("text", "json"), default="text")
    ps.add_argument("--parallelism", type=int, default=1)
    ps.add_argument("--no-timing", action="store_true")
    ps.set_defaults(func=_cmd_suite)

    pr = sub.add_parser("reduce", help="reduce an expression with a strategy")
    pr.add_argument("--strategy", required=True, help="e.g. weyl-left:x1,serre:x0/x2")
    pr.add_argument("--output", choices=("text", "json"), default="text")
    pr.add_argument("expr")
    pr.set_defaults(func=_cmd_reduce)

    pt = sub.add_parser("table", help="regenerate a named coefficient table")
    pt.add_argument("preset", help="lemma9.1, thm9.3 or thm9.4")
    pt.add_argument("--index", type=int, default=0)
    pt.add_argument("--output", choices=("text", "json"), default="text")
    pt.set_defaults(func=_cmd_table)

    pm = sub.add_parser("ideal-member", help="bounded-degree ideal membership")
    pm.add_argument("--bound", type=int, default=None)
    pm.add_argument("--alphabet", default=None, help="e.g. x0,x1,x2 or x0^-1")
    pm.add_argument("--linear-in", dest="linear_in", type=int, default=None)
    pm.add_argument("--spec", default=None, help="rational q0 for a specialized query")
    pm.add_argument("--relations", default=None, help="e.g. weyl0,serre2")
    pm.add_argument("--output", choices=("text", "json"), default="text")
    pm.add_argument("expr")
    pm.set_defaults(func=_cmd_ideal_member)

    pc = sub.add_parser("module-check", help="verify a module file")
    pc.add_argument("file")
    pc.add_argument("--output", choices=("text", "json"), default="text")
    pc.set_defaults(func=_cmd_module_check)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "func", None):
        ap.print_help(sys.stderr)
        return 3
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
