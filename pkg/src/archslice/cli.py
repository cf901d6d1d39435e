"""Command-line front end: ``archslice {parse,graph,slice} FILE``.

Exit status is 0 on success, 1 for parse/validation/criterion errors and
2 for usage or I/O problems.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .aifg import AifgError, build_aifg, to_dot, to_json
from .flow import FlowError
from .model import validate
from .parser import ParseError, parse, render, spec_to_json
from .slicer import CriterionError, SliceDirection, SlicingCriterion, slice_spec

FORMATS = {
    "parse": ("text", "json"),
    "graph": ("dot", "json"),
    "slice": ("text", "json"),
}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="archslice",
                         description="Parse, graph and slice WRIGHT-style architecture specs.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def common(p):
        p.add_argument("input", help="specification file (.wrt)")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        p.add_argument("-f", "--format")

    common(sub.add_parser("parse", help="check a file and print it in canonical form"))
    common(sub.add_parser("graph", help="export the information flow graph"))
    sp = sub.add_parser("slice", help="compute a backward or forward architectural slice")
    common(sp)
    way = sp.add_mutually_exclusive_group(required=True)
    way.add_argument("--backward", dest="direction", action="store_const",
                     const=SliceDirection.BACKWARD)
    way.add_argument("--forward", dest="direction", action="store_const",
                     const=SliceDirection.FORWARD)
    sp.add_argument("--instance", required=True)
    sp.add_argument("--elements",
                    help="comma-separated ports/roles (default: all of the instance)")
    return ap


def _load(path: str):
    """Read and validate; returns (spec, None) or (None, error text)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        spec = parse(text)
    except ParseError as exc:
        return None, f"{path}:{exc}"
    diags = validate(spec)
    if diags:
        return None, "\n".join(d.format(path) for d in diags)
    return spec, None


def _execute(args, spec) -> str:
    fmt = args.format
    if args.command == "parse":
        return render(spec) if fmt == "text" else spec_to_json(spec)
    if args.command == "graph":
        g = build_aifg(spec)
        return to_dot(g, spec.name) if fmt == "dot" else to_json(g)

    decl = spec.type_of(args.instance)
    if decl is None:
        raise CriterionError(f"unknown instance {args.instance}")
    if args.elements:
        elements = [e.strip() for e in args.elements.split(",") if e.strip()]
    else:
        elements = [e.name for e in decl.elements]
    result = slice_spec(spec, SlicingCriterion(args.instance, frozenset(elements)),
                        args.direction)
    return render(result.spec) if fmt == "text" else result.to_json()


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        allowed = FORMATS[args.command]
        if args.format is None:
            args.format = allowed[0]
        if args.format not in allowed:
            raise UsageError(f"archslice {args.command}: --format must be one of "
                             f"{', '.join(allowed)}")
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 2

    try:
        spec, err = _load(args.input)
    except OSError as exc:
        print(f"{args.input}: {exc.strerror or exc}", file=stderr)
        return 2
    except UnicodeDecodeError as exc:
        print(f"{args.input}: not UTF-8 ({exc.reason})", file=stderr)
        return 2
    if err:
        print(err, file=stderr)
        return 1

    try:
        out = _execute(args, spec)
    except (CriterionError, AifgError, FlowError) as exc:
        print(f"{args.input}: {exc}", file=stderr)
        return 1

    if args.output:
        try:
            Path(args.output).write_text(out, encoding="utf-8")
        except OSError as exc:
            print(f"{args.output}: {exc.strerror or exc}", file=stderr)
            return 2
    else:
        stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
