"""Command-line front end.

Exit codes: 0 success, 1 no match, 2 bad path (or a path of the wrong kind
for the subcommand), 3 document of the wrong shape, 4 I/O or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Callable, Optional

from . import demos, iris, laws
from .core import LengthMismatch
from .finite import Sizes
from .lattice import NoPathError, OpticKind, leq, over, preview, set_all, to_list
from .path import PathError, PathTypeError, compile_path, infer_kind, parse_path
from .value import dumps, is_number, kind_of

EXIT_OK = 0
EXIT_NO_MATCH = 1
EXIT_PATH = 2
EXIT_SHAPE = 3
EXIT_IO = 4


class InputError(Exception):
    pass


def _need(kind: str, fn: Callable) -> Callable:
    def checked(v):
        if kind_of(v) != kind or (kind == "number" and not is_number(v)):
            raise PathTypeError(f"expected {kind}, found {kind_of(v)}")
        return fn(v)

    return checked


MODIFIERS = {
    "uppercase": _need("text", str.upper),
    "lowercase": _need("text", str.lower),
    "incr": _need("number", lambda x: x + 1),
    "neg": _need("number", lambda x: -x),
}


def _numbers(xs):
    for x in xs:
        if not is_number(x):
            raise PathTypeError(f"expected number, found {kind_of(x)}")
    return xs


def _nonempty(name, xs):
    if not xs:
        raise PathTypeError(f"{name} of no values")
    return xs


def _concat(xs):
    if all(isinstance(x, str) for x in xs):
        return "".join(xs)
    if all(isinstance(x, list) for x in xs):
        return [y for x in xs for y in x]
    raise PathTypeError("concat needs all texts or all arrays")


AGGREGATES = {
    "sum": lambda xs: math.fsum(_numbers(xs)),
    "mean": lambda xs: math.fsum(_numbers(_nonempty("mean", xs))) / len(xs),
    "max": lambda xs: max(_numbers(_nonempty("max", xs))),
    "min": lambda xs: min(_numbers(_nonempty("min", xs))),
    "concat": _concat,
}


def _number_out(x):
    # 6.0 prints as 6 like the integer inputs it came from
    if isinstance(x, float) and x.is_integer() and abs(x) < 2**53:
        return int(x)
    return x


def _read_document(path: Optional[str]):
    try:
        if path is None:
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as f:
                text = f.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(str(exc)) from exc
    return _parse_json(text, "input document")


def _parse_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from exc


def _compiled(path_text: str, required: Optional[OpticKind] = None):
    ast = parse_path(path_text)
    optic = compile_path(ast)
    if required is not None and not leq(optic.kind, required):
        raise NoPathError(f"path {path_text!r} is a {optic.kind}, this command needs at most {required}")
    return optic


def _cmd_get(args, out):
    optic = _compiled(args.path, OpticKind.AFFINE)
    doc = _read_document(args.input)
    r = preview(optic, doc)
    if r is None:
        out.write("null\n")
        return EXIT_NO_MATCH
    out.write(dumps(r.value) + "\n")
    return EXIT_OK


def _cmd_list(args, out):
    optic = _compiled(args.path, OpticKind.TRAVERSAL)
    doc = _read_document(args.input)
    out.write(dumps(to_list(optic, doc)) + "\n")
    return EXIT_OK


def _cmd_set(args, out):
    optic = _compiled(args.path)
    value = _parse_json(args.value, "value")
    doc = _read_document(args.input)
    out.write(dumps(set_all(optic, doc, value)) + "\n")
    return EXIT_OK


def _cmd_over(args, out):
    optic = _compiled(args.path)
    doc = _read_document(args.input)
    out.write(dumps(over(optic, MODIFIERS[args.fn], doc)) + "\n")
    return EXIT_OK


def _cmd_agg(args, out):
    optic = _compiled(args.path, OpticKind.TRAVERSAL)
    doc = _read_document(args.input)
    result = AGGREGATES[args.fn](to_list(optic, doc))
    out.write(dumps(_number_out(result)) + "\n")
    return EXIT_OK


def _cmd_kind(args, out):
    out.write(f"{infer_kind(parse_path(args.path))}\n")
    return EXIT_OK


def _parse_sizes(text: str) -> Sizes:
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be integers: {text!r}") from None
    if len(parts) != 4 or min(parts) < 1:
        raise argparse.ArgumentTypeError("sizes are four positive integers s,t,a,b")
    return Sizes(*parts)


def _parse_query(text: str) -> iris.Measurements:
    try:
        return iris.Measurements(*(float(p) for p in text.split(",")))
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError("query is four numbers, comma-separated") from None


def _cmd_laws(args, out):
    results = laws.run_suites(args.suite or None, seed=args.seed, sizes=args.sizes)
    out.write(laws.report(results) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NO_MATCH


def _cmd_demo(args, out):
    if args.name == "address":
        out.write(demos.demo_address())
    elif args.name == "mail":
        out.write(demos.demo_mail())
    else:
        flowers = iris.load_iris(args.data)
        if args.query is not None:
            out.write(demos.demo_classify(args.query, flowers))
        else:
            out.write(demos.demo_iris(args.agg, flowers))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clearoptic", description="Optics over JSON documents")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("--input", "-i", help="JSON document (default: standard input)")
        return p

    for name, helptext in (
        ("get", "print the single focus of PATH"),
        ("preview", "print the focus of PATH if it matches"),
    ):
        p = with_input(sub.add_parser(name, help=helptext))
        p.add_argument("path")
        p.set_defaults(run=_cmd_get)

    p = with_input(sub.add_parser("list", help="print all foci of PATH as an array"))
    p.add_argument("path")
    p.set_defaults(run=_cmd_list)

    p = with_input(sub.add_parser("set", help="replace every focus of PATH with VALUE"))
    p.add_argument("path")
    p.add_argument("value", help="a JSON value")
    p.set_defaults(run=_cmd_set)

    p = with_input(sub.add_parser("over", help="apply FN to every focus of PATH"))
    p.add_argument("path")
    p.add_argument("fn", choices=sorted(MODIFIERS))
    p.set_defaults(run=_cmd_over)

    p = with_input(sub.add_parser("agg", help="fold the foci of PATH with FN"))
    p.add_argument("path")
    p.add_argument("fn", choices=sorted(AGGREGATES))
    p.set_defaults(run=_cmd_agg)

    p = sub.add_parser("kind", help="print the optic kind of PATH")
    p.add_argument("path")
    p.set_defaults(run=_cmd_kind)

    p = sub.add_parser("laws", help="run the law suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sizes", type=_parse_sizes, default=Sizes(2, 2, 2, 2), help="s,t,a,b")
    p.add_argument("--suite", action="append", choices=sorted(laws.SUITES), help="repeatable; default all")
    p.set_defaults(run=_cmd_laws)

    p = sub.add_parser("demo", help="run a worked example")
    p.add_argument("name", choices=("address", "mail", "iris"))
    p.add_argument("--agg", choices=sorted(iris.FOLDS), default="mean")
    p.add_argument("--query", type=_parse_query, help="classify these measurements instead")
    p.add_argument("--data", help="iris CSV (default: bundled copy)")
    p.set_defaults(run=_cmd_demo)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except (PathError, NoPathError) as exc:
        err.write(f"path error: {exc}\n")
        return EXIT_PATH
    except (PathTypeError, LengthMismatch) as exc:
        err.write(f"document error: {exc}\n")
        return EXIT_SHAPE
    except (InputError, iris.DatasetError) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
