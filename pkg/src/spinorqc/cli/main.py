"""Command-line entry point: ``spinorqc eval|repl|check|encode|decode|schema``."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from ..algebra import Multivector
from ..errors import SpinorQCError
from ..scalar import Scalar
from ..spinor import QubitAmplitudes, decode_qubit, encode_qubit
from ..tensor import MultiQubitAmplitudes, as_tensor, decode_state, encode_state
from . import checks
from .evaluator import EvalError, Evaluator, current_mode, render
from .parser import ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_QUBITS = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _scalar(text: str) -> Scalar:
    try:
        return Scalar.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spinorqc", description="Algebraic spinor quantum computing toolkit over Cl(1,3).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate one expression")
    e.add_argument("expr")

    sub.add_parser("repl", help="interactive session with let bindings")

    c = sub.add_parser("check", help="run verification suites")
    c.add_argument("suite", choices=checks.SELECTORS)
    c.add_argument("--json", action="store_true", help="emit the JSON report")
    c.add_argument("--samples", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--a", type=_scalar, default=None, metavar="p/q")
    c.add_argument("--b", type=_scalar, default=None, metavar="p/q")
    c.add_argument("--c", type=_scalar, default=None, metavar="p/q")
    c.add_argument("--theta", type=int, default=1, help="braid angle in units of pi/4")

    enc = sub.add_parser("encode", help="amplitude JSON file to an ideal element")
    enc.add_argument("file", help="path, or - for stdin")

    dec = sub.add_parser("decode", help="ideal element to amplitude JSON")
    dec.add_argument("expr", nargs="?", help="expression text (default: read --file)")
    dec.add_argument("--file", help="read the expression from a file, or - for stdin")

    sub.add_parser("schema", help="print the check-report JSON schema")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_eval(args) -> int:
    print(render(Evaluator().run(args.expr)))
    return EXIT_OK


def cmd_repl(args) -> int:
    ev = Evaluator()
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            print("spinorqc> ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            return EXIT_OK
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            return EXIT_OK
        try:
            print(render(ev.run(line)))
        except (ParseError, EvalError) as exc:
            print(exc, file=sys.stderr)


def cmd_check(args) -> int:
    if args.samples is not None and args.samples < 0:
        raise UsageError("--samples must be non-negative")
    report = checks.run_checks(
        args.suite, samples=args.samples, seed=args.seed, a=args.a, b=args.b, c=args.c, theta=args.theta,
        mode=current_mode(),
    )
    if args.json:
        print(checks.to_json(report))
    else:
        print("\n".join(checks.summary_lines(report)))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_encode(args) -> int:
    try:
        data = json.loads(_read(args.file))
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None
    try:
        if isinstance(data, dict) and "amps" in data:
            if int(data.get("n", 0)) > MAX_QUBITS:
                raise UsageError(f"at most {MAX_QUBITS} qubits")
            print(encode_state(MultiQubitAmplitudes.from_json(json.dumps(data))))
        elif isinstance(data, dict) and "a1" in data:
            print(encode_qubit(QubitAmplitudes.from_json(json.dumps(data))))
        else:
            raise UsageError('expected {"n": .., "amps": [[re, im], ..]} or {"a1": .., "a4": ..}')
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SpinorQCError):
            raise
        raise UsageError(f"malformed amplitude file: {exc}") from None
    return EXIT_OK


def cmd_decode(args) -> int:
    if args.expr is None and args.file is None:
        raise UsageError("give an expression or --file")
    text = args.expr if args.expr is not None else _read(args.file)
    value = Evaluator().run(text.strip())
    if isinstance(value, Multivector):
        print(decode_qubit(value).to_json())
        return EXIT_OK
    t = as_tensor(value)
    if t.n > MAX_QUBITS:
        raise UsageError(f"at most {MAX_QUBITS} qubits")
    print(decode_state(t).to_json())
    return EXIT_OK


def cmd_schema(args) -> int:
    print(schema_text(), end="")
    return EXIT_OK


def schema_text() -> str:
    return resources.files("spinorqc").joinpath("schema/check_report.schema.json").read_text(encoding="utf-8")


COMMANDS = {
    "eval": cmd_eval,
    "repl": cmd_repl,
    "check": cmd_check,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "schema": cmd_schema,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SpinorQCError, UsageError, OSError) as exc:
        print(f"spinorqc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
