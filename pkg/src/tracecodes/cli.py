"""Command line front end.  One JSON object per run on stdout, diagnostics on stderr.

Exit codes: 0 ok, 1 verification failure, 2 usage / parameter error,
3 enumeration ceiling exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

from . import __version__, config
from . import charsums as cs
from . import sss
from .codes import build_code, build_defining_set, code_report, puncture_representatives
from .codes import weight_distribution
from .errors import (
    DegenerateSchemeError,
    DomainError,
    EmptyDefiningSetError,
    IntegrityError,
    ParameterError,
    ResourceError,
    UsageError,
)
from .field import FieldCtx
from .planar import PlanarSpec, build_Df_code, check_df_conditions, compare_with_CD
from .planar import inadmissibility, nonlinearity_measure
from .theory import griesmer_min_length, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class Failure(Exception):
    """Raised by a command whose result is a failed verification."""

    def __init__(self, result):
        super().__init__("verification failed")
        self.result = result


def _log(msg: str):
    print(msg, file=sys.stderr)


# -- building codes from flags ----------------------------------------------------

def _code_from(p, m, punctured=False, planar=None, modulus=None):
    """Returns (code, warnings)."""
    ctx = FieldCtx(p, m, modulus)
    if planar:
        return build_Df_code(PlanarSpec.parse(planar), ctx, punctured)
    D = build_defining_set(ctx)
    if punctured:
        D = puncture_representatives(D)
    return build_code(ctx, D), []


def _code_from_kind(p, m, kind, modulus=None):
    if kind.startswith("planar:"):
        body = kind[len("planar:"):]
        punct = body.endswith(":punctured")
        if punct:
            body = body[: -len(":punctured")]
        return _code_from(p, m, punct, body, modulus)[0]
    if kind not in ("full", "punctured"):
        raise ParameterError(f"unknown code kind {kind!r}")
    return _code_from(p, m, kind == "punctured", None, modulus)[0]


# -- commands -------------------------------------------------------------------

def cmd_construct(args):
    code, warnings = _code_from(args.p, args.m, args.punctured, args.planar)
    for w in warnings:
        _log("warning: " + w)
    result = code_report(code, weight_distribution(code))
    result["defining_set_size"] = len(code.defining_set)
    if warnings:
        result["warnings"] = warnings
    if args.out:
        Path(args.out).write_text(json.dumps(result, indent=2) + "\n", encoding="utf-8")
    return result, code.ctx


def _parse_range(text: str):
    try:
        ps, ms = text.split(":")
        lo, _, hi = ms.partition("-")
        primes = [int(v) for v in ps.split(",") if v]
        degrees = list(range(int(lo), int(hi or lo) + 1))
    except ValueError:
        raise ParameterError(f"bad --range {text!r}, expected like '3,5:2-5'") from None
    return [(p, m) for p in primes for m in degrees]


def _lemma_summary(checks, details: bool):
    by_lemma: Counter = Counter()
    failed: Counter = Counter()
    printed_off: Counter = Counter()
    for c in checks:
        by_lemma[c.lemma] += 1
        if not c.passed:
            failed[c.lemma] += 1
        if "printed_form" in c.extra:
            pf = c.extra["printed_form"]
            if c.exact:
                off = pf != c.enumerated
            else:
                off = abs(pf - c.enumerated) > cs.tolerance(c.q)
            if off:
                printed_off[c.lemma] += 1
    out = {
        "checks": dict(by_lemma),
        "failed": dict(failed),
        "printed_form_disagreements": dict(printed_off),
        "pass": not failed,
    }
    if details:
        out["details"] = [c.to_json() for c in checks]
    else:
        out["failures"] = [c.to_json() for c in checks if not c.passed]
    return out


def cmd_verify(args):
    if args.range:
        cells = _parse_range(args.range)
    elif args.p is not None and args.m is not None:
        cells = [(args.p, args.m)]
    else:
        raise ParameterError("give --p and --m, or --range")
    theorems = args.theorems or not args.all_lemmas
    out = []
    ok = True
    for p, m in cells:
        ctx = FieldCtx(p, m)
        cell = {"p": p, "m": m}
        if theorems:
            reports = [verify(p, m, False), verify(p, m, True)]
            cell["theorems"] = reports
            ok &= all(r["pass"] for r in reports)
        if args.all_lemmas:
            checks = cs.lemma_suite(ctx, weil_samples=args.weil_samples, seed=args.seed)
            cell["lemmas"] = _lemma_summary(checks, args.details)
            ok &= cell["lemmas"]["pass"]
        out.append(cell)
        _log(f"verify p={p} m={m}: {'pass' if ok else 'FAIL'}")
    result = {"cells": out, "pass": bool(ok)}
    if not ok:
        raise Failure(result)
    return result, FieldCtx(*cells[0]) if len(cells) == 1 else None


def _planar_spec(args) -> PlanarSpec:
    if args.param:
        return PlanarSpec.parse(args.family + ":" + ",".join(args.param))
    return PlanarSpec.parse(args.family)


def cmd_planar(args):
    ctx = FieldCtx(args.p, args.m)
    spec = _planar_spec(args)
    if args.compare:
        result = compare_with_CD(spec, ctx, args.punctured)
        for w in result["warnings"]:
            _log("warning: " + w)
        return result, ctx
    pf = nonlinearity_measure(spec, ctx)
    reasons = inadmissibility(spec, ctx)
    return {
        "family": spec.family,
        "params": spec.params,
        "p": ctx.p,
        "m": ctx.m,
        "admissible": not reasons,
        "reasons": reasons,
        "conditions": check_df_conditions(spec, ctx),
        "P_f": f"{pf.numerator}/{pf.denominator}",
        "planar": pf == Fraction(1, ctx.q),
    }, ctx


def _sss_code(args):
    code, warnings = _code_from(args.p, args.m, args.punctured, args.planar)
    for w in warnings:
        _log("warning: " + w)
    return code


def cmd_sss_setup(args):
    code = _sss_code(args)
    scheme = sss.setup(code)
    return {
        "p": code.p, "m": code.m, "kind": code.kind, "n": code.n, "k": code.k,
        "participants": scheme.participants,
        "dual_generator": scheme.H.tolist(),
    }, code.ctx


def cmd_sss_deal(args):
    code = _sss_code(args)
    scheme = sss.setup(code)
    d = sss.deal(scheme, args.secret, args.seed)
    bundle = sss.share_bundle(code, d)
    Path(args.bundle).write_text(json.dumps(bundle, indent=2) + "\n", encoding="utf-8")
    _log(f"wrote {len(d.shares)} shares to {args.bundle}")
    return {"bundle": str(args.bundle), "participants": scheme.participants,
            "seed": args.seed, "kind": code.kind}, code.ctx


def _parse_coalition(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParameterError(f"bad --coalition {text!r}, expected like '1,4,7'") from None


def cmd_sss_recover(args):
    path = Path(args.bundle)
    if not path.is_file():
        raise ParameterError(f"bundle file not found: {path}")
    bundle = json.loads(path.read_text(encoding="utf-8"))
    code = _code_from_kind(bundle["p"], bundle["m"], bundle["kind"], bundle.get("modulus"))
    scheme = sss.setup(code)
    values = {int(e["participant"]): int(e["value"]) for e in bundle["shares"]}
    coalition = _parse_coalition(args.coalition) if args.coalition else sorted(values)
    missing = [i for i in coalition if i not in values]
    if missing:
        raise ParameterError(f"bundle has no share for participants {missing}")
    secret = sss.recover(scheme, coalition, [values[i] for i in coalition])
    status = "recovered" if secret is not None else "not an access set"
    _log(status)
    return {"coalition": coalition, "status": status, "secret": secret}, code.ctx


def cmd_sss_structure(args):
    code = _sss_code(args)
    report = sss.structure_report(code, threads=args.threads)
    report["participant_count"] = sss.participant_count_report(code)
    if args.export:
        sets = report["structure"]["minimal_access_sets"]
        Path(args.export).write_text(json.dumps(sets) + "\n", encoding="utf-8")
    if not args.full:
        report["structure"].pop("minimal_access_sets")
    ok = all(c["pass"] for c in report["checks"])
    report["pass"] = ok
    if not ok:
        raise Failure(report)
    return report, code.ctx


def cmd_bounds(args):
    g = griesmer_min_length(args.p, args.k, args.d)
    return {"p": args.p, "n": args.n, "k": args.k, "d": args.d, "griesmer": g,
            "feasible": args.n >= g, "optimal": args.n == g}, None


# -- rendering --------------------------------------------------------------------

def _pretty(result) -> str:
    lines = []
    if isinstance(result, dict) and "weights" in result and "n" in result:
        lines.append(f"[{result['n']}, {result['k']}, {result['d']}] over GF({result['p']})"
                     f"  kind={result['kind']}")
        lines.append(f"{'weight':>8} {'count':>10}")
        lines += [f"{row['w']:>8} {row['A']:>10}" for row in result["weights"]]
        return "\n".join(lines)
    if isinstance(result, dict) and "cells" in result:
        for cell in result["cells"]:
            for r in cell.get("theorems", []):
                lines.append(f"p={cell['p']} m={cell['m']} {r['theorem']:<15} "
                             f"{'pass' if r['pass'] else 'FAIL'}")
            if "lemmas" in cell:
                lm = cell["lemmas"]
                lines.append(f"p={cell['p']} m={cell['m']} lemmas {sum(lm['checks'].values())} checks "
                             f"{'pass' if lm['pass'] else 'FAIL'}")
        return "\n".join(lines)
    return json.dumps(result, indent=2)


def _emit(args, command, result, ctx, started):
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "pretty", "command", "sss_command")}
    manifest = {
        "command": command,
        "parameters": params,
        "modulus": list(ctx.modulus) if ctx is not None else None,
        "version": __version__,
        "wall_time": round(time.perf_counter() - started, 6),
    }
    if args.pretty:
        print(_pretty(result))
    else:
        print(json.dumps({"manifest": manifest, "result": result}))


# -- parser ---------------------------------------------------------------------

def _field_args(sp, need_m=True):
    sp.add_argument("--p", type=int, required=True, help="odd prime")
    sp.add_argument("--m", type=int, required=need_m, help="extension degree")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tracecodes", description=__doc__.splitlines()[0])
    ap.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--config", help="JSON file with ceiling / planar_ceiling")
    ap.add_argument("--ceiling", type=int, help="max codewords to enumerate")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="build a code and measure n, k, d and weights")
    _field_args(sp)
    sp.add_argument("--punctured", action="store_true")
    sp.add_argument("--planar", metavar="FAMILY[:k=..|:u=..]")
    sp.add_argument("--out", help="also write the report to this file")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check closed forms against enumeration")
    sp.add_argument("--p", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--range", help="grid like '3,5:2-5'")
    sp.add_argument("--theorems", action="store_true")
    sp.add_argument("--all-lemmas", action="store_true")
    sp.add_argument("--weil-samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--details", action="store_true", help="include every lemma check")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("planar", help="planarity and D_f experiments")
    _field_args(sp)
    sp.add_argument("--family", required=True)
    sp.add_argument("--param", action="append", help="k=.. or u=.. (repeatable)")
    sp.add_argument("--compare", action="store_true", help="compare C_{D_f} with C_D")
    sp.add_argument("--punctured", action="store_true")
    sp.set_defaults(func=cmd_planar)

    sp = sub.add_parser("sss", help="secret sharing on the dual code")
    ssub = sp.add_subparsers(dest="sss_command", required=True)
    for name, func in (("setup", cmd_sss_setup), ("deal", cmd_sss_deal),
                       ("structure", cmd_sss_structure)):
        s = ssub.add_parser(name)
        _field_args(s)
        s.add_argument("--punctured", action="store_true")
        s.add_argument("--planar")
        s.set_defaults(func=func)
        if name == "deal":
            s.add_argument("--secret", type=int, required=True)
            s.add_argument("--seed", type=int, required=True)
            s.add_argument("--bundle", default="shares.json")
        if name == "structure":
            s.add_argument("--export", help="write minimal access sets to this file")
            s.add_argument("--full", action="store_true", help="list every minimal access set")
    s = ssub.add_parser("recover")
    s.add_argument("--bundle", required=True)
    s.add_argument("--coalition", help="participant indices like 1,4,7 (default: all)")
    s.set_defaults(func=cmd_sss_recover)

    sp = sub.add_parser("bounds", help="Griesmer bound")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_bounds)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command + (f" {args.sss_command}" if args.command == "sss" else "")
    started = time.perf_counter()
    config.reset()
    try:
        if args.config:
            if not Path(args.config).is_file():
                raise ParameterError(f"config file not found: {args.config}")
            config.load_config(args.config)
        if args.ceiling is not None:
            config.set_ceiling(args.ceiling)
        result, ctx = args.func(args)
    except Failure as f:
        _emit(args, command, f.result, None, started)
        return EXIT_FAIL
    except IntegrityError as e:
        _log(f"error: {e}")
        return EXIT_FAIL
    except ResourceError as e:
        _log(f"error: {e}")
        return EXIT_RESOURCE
    except (ParameterError, EmptyDefiningSetError, DegenerateSchemeError, DomainError,
            UsageError) as e:
        _log(f"error: {e}")
        return EXIT_USAGE
    _emit(args, command, result, ctx, started)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
