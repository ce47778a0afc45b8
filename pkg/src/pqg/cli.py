"""Command-line front end: ``pqg check|modular|dual|double|rep|zoo``."""
from __future__ import annotations

import argparse
import os
import sys

from . import pipeline, zoo
from .pipeline import Context, dumps, run_pipeline
from .repcat import ConversionFailed, module_comodule_correspondence, yd_double_correspondence
from .specio import ParseError, ValidationError, attach_rep, emit_spec, parse_spec, rep_object

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_COLORS = {"pass": "32", "fail": "31", "skipped": "33", "absent": "36"}


def _color_on(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, status: str, stream) -> str:
    if not _color_on(stream):
        return text
    return f"\033[{_COLORS.get(status, '0')}m{text}\033[0m"


def _diag(path: str, exc: Exception) -> None:
    err = sys.stderr
    label = _paint("error", "fail", err)
    if isinstance(exc, ParseError):
        print(f"{path}:{exc.line}:{exc.col}: {label}: {exc.msg}", file=err)
    elif isinstance(exc, ValidationError):
        for line, col, msg in exc.diagnostics:
            print(f"{path}:{line}:{col}: {label}: {msg}", file=err)
    else:
        print(f"{path}: {label}: {exc}", file=err)


def _load(path: str, conductor: int | None):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_spec(text, conductor=conductor)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _summary(report: dict) -> None:
    out = sys.stdout
    for name, sec in report["stages"].items():
        status = sec["status"]
        tag = _paint(f"{status.upper():7s}", status, out)
        note = sec.get("first_failure") or sec.get("failed_at") or sec.get("error") or sec.get("reason") or ""
        print(f"{tag} {name}" + (f"  ({note})" if note else ""), file=out)


def _exit_code(report: dict) -> int:
    return EXIT_OK if report["passed"] else EXIT_FAIL


# -- commands --------------------------------------------------------------------------

def cmd_check(args) -> int:
    doc = _load(args.file, args.conductor)
    stages = args.stages.split(",") if args.stages else None
    report = run_pipeline(doc.quantum_groupoid(), stages, rep_doc=doc)
    if args.json:
        _write(dumps(report), args.json)
    if args.json != "-":
        _summary(report)
    return _exit_code(report)


def cmd_modular(args) -> int:
    doc = _load(args.file, args.conductor)
    report = run_pipeline(doc.quantum_groupoid(), ["modular"])
    _write(dumps(report["stages"]["modular"]), args.json)
    return _exit_code(report)


def _through(doc, stage: str) -> tuple[dict, Context]:
    ctx = Context(doc.quantum_groupoid())
    report = run_pipeline(ctx.qg, [stage], ctx=ctx)
    return report, ctx


def cmd_dual(args) -> int:
    doc = _load(args.file, args.conductor)
    report, ctx = _through(doc, "dual")
    if args.json:
        _write(dumps(report["stages"]["dual"]), args.json)
    if ctx.dual is None:
        _summary(report)
        return EXIT_FAIL
    _write(emit_spec(ctx.dual.qg), args.output)
    return _exit_code(report)


def cmd_double(args) -> int:
    doc = _load(args.file, args.conductor)
    report, ctx = _through(doc, "double")
    if args.json:
        _write(dumps({"schema": pipeline.SCHEMA, "double": report["stages"]["double"]}), args.json)
    if ctx.double is None:
        _summary(report)
        return EXIT_FAIL
    _write(emit_spec(ctx.double.qg), args.output)
    return _exit_code(report)


def _needs_double(doc) -> bool:
    return doc.module_over == "double" or (doc.module is not None and doc.comodule is not None)


def cmd_rep(args) -> int:
    doc = _load(args.file, args.conductor)
    if not doc.has_rep:
        print(f"{args.file}: {_paint('error', 'fail', sys.stderr)}: no [space] section", file=sys.stderr)
        return EXIT_INPUT
    stages = ["rep", "double"] if _needs_double(doc) else ["rep"]
    ctx = Context(doc.quantum_groupoid())
    report = run_pipeline(ctx.qg, stages, rep_doc=doc, ctx=ctx)
    if args.action == "check":
        if args.json:
            _write(dumps(report), args.json)
        if args.json != "-":
            _summary(report)
        return _exit_code(report)
    if report["stages"]["rep"]["status"] == "skipped" or ctx.dual is None:
        _summary(report)
        return EXIT_FAIL
    qg, hd, d, D = ctx.qg, ctx.hd, ctx.dual, ctx.double
    acting = {"A": qg.algebra, "dual": d.qg.algebra, "double": D.qg.algebra if D else None}.get(doc.module_over)
    V = rep_object(doc, acting)
    try:
        if V.action is not None and V.coaction is not None or doc.module_over == "double":
            if D is None:
                _summary(report)
                return EXIT_FAIL
            conv = yd_double_correspondence(qg, hd, d, D, V)
            over = "double" if V.coaction is not None else "A"
            target = D.qg.algebra if over == "double" else qg.algebra
        elif V.coaction is not None or doc.module_over == "dual":
            conv = module_comodule_correspondence(qg, hd, d, V)
            over = "dual" if V.coaction is not None else None
            target = d.qg.algebra if over else None
        else:
            print(f"{args.file}: {_paint('error', 'fail', sys.stderr)}: a module over A has no conversion",
                  file=sys.stderr)
            return EXIT_INPUT
    except ConversionFailed as exc:
        print(f"{args.file}: {_paint('error', 'fail', sys.stderr)}: conversion failed, {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write(emit_spec(attach_rep(doc, conv.result, over, target)), args.output)
    return EXIT_OK if all(conv.checks.values()) else EXIT_FAIL


def cmd_zoo(args) -> int:
    if args.action == "list":
        for name in zoo.names():
            print(name)
        return EXIT_OK
    if not args.name:
        print("zoo emit needs a fixture name", file=sys.stderr)
        return EXIT_INPUT
    try:
        qg = zoo.get(args.name)
    except KeyError:
        print(f"unknown fixture {args.name!r}; see 'pqg zoo list'", file=sys.stderr)
        return EXIT_INPUT
    _write(emit_spec(qg), args.output)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pqg", description="Exact verification of finite partial quantum groupoids.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp):
        sp.add_argument("file")
        sp.add_argument("--conductor", type=int, default=None, help="override the declared cyclotomic conductor")
        return sp

    sp = with_file(sub.add_parser("check", help="run the verification pipeline"))
    sp.add_argument("--stages", help="comma-separated subset of " + ",".join(pipeline.STAGES))
    sp.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    sp.set_defaults(func=cmd_check)

    sp = with_file(sub.add_parser("modular", help="print the modular data as JSON"))
    sp.add_argument("--json", default="-", help="output path (default stdout)")
    sp.set_defaults(func=cmd_modular)

    for name, fn, what in (("dual", cmd_dual, "dual"), ("double", cmd_double, "Drinfeld double")):
        sp = with_file(sub.add_parser(name, help=f"emit the spec file of the {what}"))
        sp.add_argument("-o", "--output", help="output path (default stdout)")
        sp.add_argument("--json", help=f"write the {name} report section here")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("rep", help="check or convert module/comodule sections")
    sp.add_argument("action", choices=("check", "convert"))
    with_file(sp)
    sp.add_argument("-o", "--output", help="converted spec file (default stdout)")
    sp.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    sp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("zoo", help="list or emit built-in fixtures")
    sp.add_argument("action", choices=("list", "emit"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("-o", "--output", help="output path (default stdout)")
    sp.set_defaults(func=cmd_zoo)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:  # parse and validation errors, bad --stages, unreadable files
        _diag(getattr(args, "file", "<input>"), exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
