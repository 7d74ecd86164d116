"""Command line: ``skewpack gen|pack|verify|oracle|render|bench``.

Exit codes: 0 success, 1 verification failure (or an oracle optimum above
``--max-bins``), 2 usage or input error, 3 internal invariant violation.
Errors are reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import jsonio
from .core import (FreenessViolation, InvariantViolation, SkewnessError, SkewpackError,
                   StructuralError, rat, validate_layout)
from .grouping import ScheduleResolutionError
from .guillotine import NotGuillotinable, count_stages, extract_guillotine_tree
from .instances import PROFILES, gen_lower_bound, gen_random_skewed
from .oracle import ExceedsMax, OracleBudgetExceeded, oracle_opt
from .runner import ALGORITHMS, rules_by_name, run_algorithm
from .skewedcpack import GridTooLarge

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text):
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError, StructuralError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _emit(obj, out):
    text = jsonio.dumps(obj)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fail(kind, message, code, **extra):
    payload = {"error": kind, "message": message, "exit_code": code}
    payload.update(extra)
    sys.stderr.write(json.dumps(jsonio._plain(payload), sort_keys=True) + "\n")
    return code


# ---------------------------------------------------------------- subcommands


def cmd_gen(a):
    if a.family == "lowerbound":
        inst, ref = gen_lower_bound(a.m, a.k, a.eps)
        if a.reference:
            jsonio.write_json(a.reference, jsonio.layout_to_json(ref))
    else:
        inst = gen_random_skewed(a.n, a.delta_w, a.delta_h, a.seed, a.profile)
    _emit(jsonio.instance_to_json(inst), a.output)
    return EXIT_OK


def cmd_pack(a):
    inst = jsonio.read_instance(a.instance)
    params = {"eps": a.eps, "delta_w": a.delta_w, "delta_h": a.delta_h,
              "f_override": a.f_override, "max_candidates": a.max_candidates,
              "max_bins": a.max_bins}
    res = run_algorithm(a.algo, inst, params)
    meta = dict(res.layout.meta)
    meta.setdefault("rules", res.rules_name)
    layout = type(res.layout)(res.layout.bins, res.layout.discarded, meta)
    _emit(jsonio.layout_to_json(layout), a.output)
    return EXIT_OK


def cmd_verify(a):
    inst = jsonio.read_instance(a.instance)
    layout = jsonio.read_layout(a.layout)
    name = a.rules or layout.meta.get("rules", "whole")
    rep = validate_layout(inst, layout, rules_by_name(name))
    problems = [v.to_json() for v in rep.violations]
    stages = []
    if a.guillotine or a.stages is not None:
        for b in layout.bins:
            tree = extract_guillotine_tree(b, check=False) if rep.ok else None
            if tree is None:
                stages.append(None)
                continue
            if isinstance(tree, NotGuillotinable):
                stages.append(None)
                problems.append({"kind": "not_guillotinable", "bin": b.bin_index,
                                 "items": list(tree.items),
                                 "message": f"bin {b.bin_index} is not guillotinable"})
                continue
            st = count_stages(tree)
            stages.append(st)
            if a.stages is not None and st > a.stages:
                problems.append({"kind": "too_many_stages", "bin": b.bin_index, "items": [],
                                 "message": f"bin {b.bin_index} needs {st} stages "
                                            f"(limit {a.stages})"})
    ok = not problems
    out = {"ok": ok, "rules": name, "bins": layout.num_bins, "violations": problems}
    if stages:
        out["stages"] = stages
    sys.stdout.write(jsonio.dumps(out))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_oracle(a):
    inst = jsonio.read_instance(a.instance)
    try:
        opt, layout = oracle_opt(inst, guillotine=a.guillotine, max_bins=a.max_bins,
                                 node_limit=a.node_limit)
    except ExceedsMax as exc:
        return _fail("exceeds_max", str(exc), EXIT_VERIFY)
    if a.output:
        jsonio.write_json(a.output, jsonio.layout_to_json(layout))
    sys.stdout.write(f"{opt}\n")
    return EXIT_OK


def cmd_render(a):
    from .render import render_svg

    layout = jsonio.read_layout(a.layout)
    items = jsonio.read_instance(a.instance).items if a.instance else None
    svg = render_svg(layout, items, cuts=a.cuts)
    if a.output in (None, "-"):
        sys.stdout.write(svg)
    else:
        Path(a.output).write_text(svg)
    return EXIT_OK


def cmd_bench(a):
    from .bench import run_bench

    instances = []
    for path in a.instances:
        instances.append((Path(path).stem, jsonio.read_instance(path)))
    for s in range(a.random):
        inst = gen_random_skewed(a.n, a.delta_w, a.delta_h, a.seed + s, a.profile)
        instances.append((f"random-{a.profile}-{a.seed + s}", inst))
    if a.lowerbound:
        for m in range(1, a.lowerbound + 1):
            inst, _ = gen_lower_bound(m, 1, a.eps)
            instances.append((f"lowerbound-m{m}-k1", inst))
    if not instances:
        raise UsageError("bench needs instance files, --random N or --lowerbound M")
    algos = [s.strip() for s in a.algos.split(",") if s.strip()]
    for algo in algos:
        if algo not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {algo!r}")
    params = {"eps": a.eps, "delta_w": a.delta_w, "delta_h": a.delta_h}
    report = run_bench(instances, algos, params, with_oracle=a.oracle, timing=a.timing,
                       workers=a.workers)
    bad = [r for r in report.rows if not r.valid]
    if a.output:
        jsonio.write_json(a.output, report.to_json())
    sys.stdout.write(report.table())
    if bad:
        return _fail("invalid_layout", f"{len(bad)} benchmark layout(s) failed validation",
                     EXIT_VERIFY)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser():
    p = _Parser(prog="skewpack", description="Bin packing of skewed rectangles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--family", choices=("lowerbound", "random"), required=True)
    g.add_argument("--m", type=int, default=1)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--eps", type=_rational, default=rat("1/5"))
    g.add_argument("--n", type=int, default=20)
    g.add_argument("--delta-w", type=_rational, default=rat("1/16"))
    g.add_argument("--delta-h", type=_rational, default=rat("1/16"))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--profile", choices=sorted(PROFILES), default="balanced")
    g.add_argument("--reference", help="write the reference layout (lowerbound family)")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    k = sub.add_parser("pack", help="pack an instance")
    k.add_argument("instance")
    k.add_argument("--algo", choices=ALGORITHMS, required=True)
    k.add_argument("--eps", type=_rational)
    k.add_argument("--delta-w", type=_rational)
    k.add_argument("--delta-h", type=_rational)
    k.add_argument("--f-override", type=_rational)
    k.add_argument("--max-candidates", type=int)
    k.add_argument("--max-bins", type=int)
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_pack)

    v = sub.add_parser("verify", help="validate a layout")
    v.add_argument("instance")
    v.add_argument("layout")
    v.add_argument("--rules", choices=("whole", "sliceable", "s2bp"))
    v.add_argument("--guillotine", action="store_true")
    v.add_argument("--stages", type=int)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact optimum of a tiny instance")
    o.add_argument("instance")
    o.add_argument("--guillotine", action="store_true")
    o.add_argument("--max-bins", type=int)
    o.add_argument("--node-limit", type=int, default=200000)
    o.add_argument("-o", "--output", help="write the optimal layout")
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("render", help="draw a layout as SVG")
    r.add_argument("layout")
    r.add_argument("--instance")
    r.add_argument("--cuts", action="store_true", help="draw guillotine cuts")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)

    b = sub.add_parser("bench", help="benchmark packers")
    b.add_argument("instances", nargs="*")
    b.add_argument("--algos", default="nfdh,skewed4pack")
    b.add_argument("--random", type=int, default=0, help="number of random instances")
    b.add_argument("--lowerbound", type=int, default=0, help="lower-bound family m = 1..M")
    b.add_argument("--n", type=int, default=50)
    b.add_argument("--profile", choices=sorted(PROFILES), default="balanced")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--eps", type=_rational, default=rat("1/4"))
    b.add_argument("--delta-w", type=_rational, default=rat("1/16"))
    b.add_argument("--delta-h", type=_rational, default=rat("1/16"))
    b.add_argument("--oracle", action="store_true", help="compute oracle optima when tiny")
    b.add_argument("--timing", action="store_true", help="record runtimes")
    b.add_argument("--workers", type=int)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except InvariantViolation as exc:
        return _fail("invariant_violation", str(exc), EXIT_INTERNAL)
    except (FreenessViolation, SkewnessError) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_USAGE,
                     offenders=getattr(exc, "offenders", []))
    except (StructuralError, ScheduleResolutionError, GridTooLarge, OracleBudgetExceeded,
            ValueError, OSError, json.JSONDecodeError) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_USAGE)
    except SkewpackError as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_INTERNAL)
    except (AssertionError, ArithmeticError, KeyError, TypeError) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_INTERNAL)


def run_cli(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
