"""Command-line harness: construction, invariants, prediction, verification,
flatness runs; human-readable tables on stdout and an optional JSON report.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 invalid input
(characteristic 2, composite characteristic, r < 1, unknown flags).  The
JSON payload is byte-identical across repeated runs with the same flags;
timings go to stdout only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .invariants import hilbert_series, krull_dimension, leading_term_ideal
from .moduli import (
    ModuliSpec,
    construct_space,
    default_window,
    verify_flatness,
    verify_space,
)
from .p1geom import O, predict_betti
from .polyalg import CoefficientField, format_ideal
from .syzygy import koszul_betti


def _field(char: int) -> CoefficientField:
    return CoefficientField(char)


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _emit_json(path, payload):
    _write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _print_lines(lines):
    width = max((len(line.claim) for line in lines), default=0)
    for line in lines:
        print(f"  {line.claim.ljust(width)}  [{line.verdict:>15}]  {line.computed}")
        print(f"  {''.ljust(width)}   expected: {line.anchor}")


def _betti_rows(table):
    return {str(n): {str(j): v for j, v in row.items()} for n, row in table.rows_dict().items()}


def cmd_construct(args, out=sys.stdout):
    I = construct_space(args.space, args.r, _field(args.char))
    text = format_ideal(I.generators)
    print(f"{args.space}_{args.r} over {I.ring.field}: {len(I.generators)} generators "
          f"in {I.ring.nvars} variables", file=out)
    print(text, file=out)
    if args.out:
        _write(args.out, text + "\n")
    if args.json:
        _emit_json(args.json, {
            "space": args.space, "r": args.r, "characteristic": args.char,
            "generators": text.splitlines(),
            "variables": list(I.ring.variables),
        })
    return 0


def cmd_export(args, out=sys.stdout):
    if not args.out:
        print("export needs --out PATH", file=sys.stderr)
        return 2
    I = construct_space(args.space, args.r, _field(args.char))
    _write(args.out, format_ideal(I.generators) + "\n")
    print(f"wrote {len(I.generators)} generators to {args.out}", file=out)
    return 0


def cmd_invariants(args, out=sys.stdout):
    t0 = time.perf_counter()
    I = construct_space(args.space, args.r, _field(args.char))
    dim = krull_dimension(I)
    payload = {
        "space": args.space, "r": args.r, "characteristic": args.char,
        "dimension": dim, "multiplicity": None, "hilbert_numerator": None,
        "betti": None, "verdicts": None,
    }
    print(f"{args.space}_{args.r} over {I.ring.field}", file=out)
    print(f"  dimension: {dim}", file=out)
    if I.is_homogeneous():
        hs = hilbert_series(leading_term_ideal(I))
        num, d = hs.simplified()
        payload["hilbert_numerator"] = list(num)
        payload["multiplicity"] = sum(num)
        print(f"  hilbert numerator (simplified): {list(num)} / (1-t)^{d}", file=out)
        print(f"  multiplicity: {sum(num)}", file=out)
    else:
        print("  inhomogeneous ideal: no graded invariants", file=out)
    print(f"  [{time.perf_counter() - t0:.2f}s]", file=out)
    if args.json:
        _emit_json(args.json, payload)
    return 0


def cmd_betti(args, out=sys.stdout):
    if args.space not in ("A", "B0"):
        print("betti runs on the homogeneous spaces A and B0", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    I = construct_space(args.space, args.r, _field(args.char))
    W = I.ring.variables if args.space == "A" else tuple(v for v in I.ring.variables if v != "alpha")
    window = default_window(W)
    if args.max_hom is not None or args.max_deg is not None:
        window = (args.max_hom if args.max_hom is not None else window[0],
                  args.max_deg if args.max_deg is not None else window[1])
    table = koszul_betti(I, W, window)
    print(f"{args.space}_{args.r} over {I.ring.field}, window {window}, "
          f"{'certified' if table.euler_certified else 'NOT certified'}", file=out)
    print(str(table), file=out)
    print(f"  [{time.perf_counter() - t0:.2f}s]", file=out)
    if args.json:
        _emit_json(args.json, {
            "space": args.space, "r": args.r, "characteristic": args.char,
            "betti": _betti_rows(table), "certified": table.euler_certified,
            "module_generator_degrees": list(table.module_generator_degrees),
        })
    return 0


def cmd_predict(args, out=sys.stdout):
    if args.space == "A":
        table = predict_betti(O(*([-1] * (2 * args.r))))
    elif args.space == "B0":
        table = predict_betti(O(*([-2] + [-1] * (2 * args.r))), module_generator_degrees=(0, 1))
    else:
        print("predict covers the homogeneous spaces A and B0", file=sys.stderr)
        return 2
    print(f"predicted Betti table for {args.space}_{args.r}:", file=out)
    print(str(table), file=out)
    if args.json:
        _emit_json(args.json, {"space": args.space, "r": args.r, "betti": _betti_rows(table)})
    return 0


def cmd_verify(args, out=sys.stdout):
    t0 = time.perf_counter()
    report = verify_space(ModuliSpec(args.space, args.r, _field(args.char)))
    print(f"verify {args.space}_{args.r} over char {args.char}: {report.overall}", file=out)
    _print_lines(report.lines)
    print(f"  [{time.perf_counter() - t0:.2f}s]", file=out)
    if args.json:
        payload = dict(report.data)
        payload["overall"] = report.overall
        payload["lines"] = [
            {"claim": l.claim, "anchor": l.anchor, "computed": l.computed, "verdict": l.verdict}
            for l in report.lines
        ]
        payload["tool_version"] = __version__
        _emit_json(args.json, payload)
    return 0 if report.overall == "pass" else 1


def cmd_flatness(args, out=sys.stdout):
    if args.char in (0, None):
        print("flatness needs --char p for an odd prime p", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    report = verify_flatness("C", args.r, args.char)
    print(f"flatness C_{args.r} at p={args.char}: "
          f"{'pass' if report.criterion_satisfied else 'fail'}", file=out)
    _print_lines(report.lines)
    for c in report.conclusions:
        print(f"  conclusion (cited): {c}", file=out)
    print(f"  [{time.perf_counter() - t0:.2f}s]", file=out)
    if args.json:
        _emit_json(args.json, {
            "space": "C", "r": args.r, "characteristic": args.char,
            "dimension": report.generic_fiber["dim"],
            "multiplicity": None, "hilbert_numerator": None, "betti": None,
            "verdicts": {
                "cm": None, "gorenstein": None, "type": None,
                "components": report.special_fiber["components"],
                "intersection_equal": report.special_fiber["reduced_certified"],
                "flat_criterion": report.criterion_satisfied,
            },
            "generic_fiber": report.generic_fiber,
            "special_fiber": report.special_fiber,
            "conclusions": report.conclusions,
            "tool_version": __version__,
        })
    return 0 if report.criterion_satisfied else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilmoduli",
                                     description="exact verification of moduli of nilpotent 2x2 matrices")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in [
        ("construct", cmd_construct), ("invariants", cmd_invariants),
        ("betti", cmd_betti), ("predict", cmd_predict),
        ("verify", cmd_verify), ("flatness", cmd_flatness), ("export", cmd_export),
    ]:
        p = sub.add_parser(name)
        p.add_argument("--space", choices=["A", "B0", "B", "C"], required=name != "flatness",
                       default="C" if name == "flatness" else None)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--char", type=int, default=0)
        p.add_argument("--max-hom", type=int, default=None, dest="max_hom")
        p.add_argument("--max-deg", type=int, default=None, dest="max_deg")
        p.add_argument("--json", type=str, default=None)
        p.add_argument("--out", type=str, default=None)
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.r < 1:
            print("r must be at least 1", file=sys.stderr)
            return 2
        return args.fn(args)
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
