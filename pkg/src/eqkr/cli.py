"""Command-line front end.

  eqkr compute --group SU3 --involution sigmaR --format json
  eqkr verify  --group SU2 --involution trivial --suite all

Exit codes: 0 success; 2 specification parse/validation error;
3 unclassifiable representation (supply an override table);
4 internal invariant violation; 5 verification failure (report still
emitted).  Output bytes are a function of (spec, seed) only.
"""

from __future__ import annotations

import argparse
import json
import sys

from .groups import DominanceError, UnsupportedGroupError, build_root_data, parse_group
from .presentation import PresentationError, build_kr_presentation
from .realstruct import (
    Involution,
    InvolutionSpecError,
    UnclassifiableError,
    split_fundamentals,
)
from .serialize import (
    presentation_json,
    presentation_text,
    report_json,
    report_text,
)
from .verifier import DEFAULT_SEED, DEFAULT_TRUNCATION, SUITES, run_suite

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_UNCLASSIFIABLE = 3
EXIT_INTERNAL = 4
EXIT_VERIFY = 5


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="eqkr",
        description="generators-and-relations presentations of equivariant "
                    "KR-theory rings",
        epilog="--sensitivity-probe injects a named fault into the verifier "
               "(self-test of the suite's ability to fail)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--group", required=True,
                        help="group spec, e.g. SU3, Sp2, U2, SU2xSU2")
        sp.add_argument("--involution", default="trivial",
                        help="trivial | sigmaR | sigmaH, or a comma list "
                             "for products")
        sp.add_argument("--override", metavar="FILE",
                        help="JSON file with type overrides "
                             '{"overrides": [{"weight": [..], "type": "R"}]}')
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--truncate", type=int, default=DEFAULT_TRUNCATION,
                        metavar="D", help="irrep dimension bound for tables")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--out", metavar="FILE", help="write output here")

    sp = sub.add_parser("compute", help="build and emit a presentation")
    common(sp)

    sp = sub.add_parser("verify", help="run property checks")
    common(sp)
    sp.add_argument("--suite", choices=SUITES, default="fast")
    sp.add_argument("--sensitivity-probe", metavar="NAME", default=None,
                    help=argparse.SUPPRESS)
    return ap


def _load_overrides(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    out = {}
    for entry in data.get("overrides", []):
        out[tuple(int(x) for x in entry["weight"])] = entry["type"]
    return out


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build(args):
    rd = build_root_data(parse_group(args.group))
    overrides = _load_overrides(args.override) if args.override else None
    inv = Involution(rd, _involution_names(args.involution, rd),
                     overrides=overrides)
    split = split_fundamentals(rd, inv)
    return build_kr_presentation(rd, inv, split)


def _involution_names(text, rd):
    if "," in text:
        return tuple(x.strip() for x in text.split(","))
    return text


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            p = _build(args)
            render = presentation_json if args.format == "json" else presentation_text
            _emit(render(p, args.truncate, args.seed), args.out)
            return EXIT_OK
        # verify
        wants_group_checks = args.suite in ("fast", "all")
        p = None
        un_rank = None
        spec = parse_group(args.group)
        if any(fam == "U" for fam, n in spec.factors):
            un_rank = next(n for fam, n in spec.factors if fam == "U")
        if wants_group_checks or args.suite == "weyl":
            try:
                p = _build(args)
            except UnclassifiableError:
                if wants_group_checks:
                    raise
                p = None  # the weyl suite runs without a presentation
        report = run_suite(p, args.suite, args.seed, args.truncate,
                           un_rank=un_rank,
                           probe=getattr(args, "sensitivity_probe", None))
        render = report_json if args.format == "json" else report_text
        _emit(render(report), args.out)
        return EXIT_OK if report.passed else EXIT_VERIFY
    except (UnsupportedGroupError, InvolutionSpecError, DominanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except UnclassifiableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCLASSIFIABLE
    except PresentationError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
