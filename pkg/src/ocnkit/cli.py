"""Command-line front end.

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 inconclusive,
64 usage error, 65 malformed input, 66 unreadable input, 74 output failure.
The default ``--format`` comes from ``OCNKIT_FORMAT`` (else ``text``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .core import OcnError, accepts, as_word, bounded_equiv, parse_ocn, serialize_ocn
from .determinizer import (
    Inconclusive,
    NotUniformDet,
    UniformDet,
    decide_uniform_det,
    unary_language_dfa,
)
from .dot import export_dot
from .reductions import (
    GADGET_NAMES,
    LcmConfig,
    finite_reach_dfa,
    flow_violation_ocn,
    gadget,
    gadget_c_zero_docn,
    initial_config_gadget,
    lcm_reach,
    lcm_to_ocn,
    parse_lcm,
    serialize_lcm,
    violation_gadget,
    wrap_forall,
    wrap_uniform_lb,
    zero_fr_reduction,
)
from .unary import mcr

EXIT_OK, EXIT_NO, EXIT_INCONCLUSIVE = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_NOINPUT, EX_IOERR = 64, 65, 66, 74

DEFAULT_HORIZON = 64
DEFAULT_CONFIRM_WINDOW = 16
DEFAULT_MAX_COUNTER = 25
DEFAULT_MAX_LEN = 100
FORMATS = ("text", "json", "dot")

_VERDICT_EXIT = {UniformDet: EXIT_OK, NotUniformDet: EXIT_NO, Inconclusive: EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class InputError(Exception):
    """Unreadable input file; carries the exit code to use."""

    def __init__(self, message: str, code: int = EX_NOINPUT):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


# --- helpers ----------------------------------------------------------------

def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_ocn(path: str):
    return parse_ocn(_read(path))


def _load_lcm(path: str):
    return parse_lcm(_read(path))


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror}", EX_IOERR) from None
    else:
        sys.stdout.write(text)


def _json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _no_dot(args) -> None:
    if args.format == "dot":
        raise UsageError(f"--format dot is not available for '{args.command}'")


def _emit_ocn(args, ocn) -> None:
    if args.format == "dot":
        _emit(args, export_dot(ocn))
    elif args.format == "json":
        _emit(args, _json({"ocn": serialize_ocn(ocn)}))
    else:
        _emit(args, serialize_ocn(ocn))


def _parse_config(text: str, width: int) -> LcmConfig:
    parts = text.split()
    if not parts:
        raise UsageError("configuration needs a location")
    try:
        values = tuple(int(v) for v in parts[1:])
    except ValueError:
        raise UsageError(f"bad configuration {text!r}") from None
    values = values + (0,) * (width - len(values))
    if len(values) != width:
        raise UsageError(f"configuration {text!r} has more than {width} counter values")
    return LcmConfig(parts[0], values)


# --- commands ---------------------------------------------------------------

def cmd_member(args) -> int:
    _no_dot(args)
    ocn = _load_ocn(args.ocn)
    word = as_word(args.word)
    ok = accepts(ocn, word, args.counter)
    if args.format == "json":
        _emit(args, _json({"accepted": ok, "word": list(word), "counter": args.counter}))
    else:
        _emit(args, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_NO


def cmd_mcr(args) -> int:
    _no_dot(args)
    m = mcr(_load_ocn(args.ocn), args.horizon, args.confirm_window)
    if args.format == "json":
        _emit(args, _json(m.to_dict()))
    else:
        cells = ["-" if v is None else str(v) for v in m.prefix]
        tail = "none" if m.tail is None else "N={} k={} d={}".format(*m.tail)
        _emit(args, f"prefix: {' '.join(cells)}\ntail: {tail}")
    return EXIT_OK if m.tail is not None else EXIT_INCONCLUSIVE


def _decide(args):
    return decide_uniform_det(
        _load_ocn(args.ocn),
        horizon=args.horizon,
        confirm_window=args.confirm_window,
        max_counter=args.max_counter,
        max_len=args.max_len,
    )


def _verdict_text(verdict) -> str:
    lines = [f"verdict: {verdict.kind}"]
    if isinstance(verdict, NotUniformDet):
        (n1, c1), (n2, c2) = verdict.witness
        lines.append(f"witness: ({n1}, {c1}) ({n2}, {c2})")
    elif isinstance(verdict, Inconclusive):
        lines.append(f"reason: {verdict.reason}")
    else:
        lines.append(f"verified: lengths <= {verdict.verified_horizon}, counters <= {verdict.verified_counter}")
        lines.append(serialize_ocn(verdict.docn).rstrip("\n"))
    return "\n".join(lines)


def cmd_uniform_det(args) -> int:
    verdict = _decide(args)
    if args.format == "json":
        _emit(args, _json(verdict.to_dict()))
    elif args.format == "dot":
        if not isinstance(verdict, UniformDet):
            print(_verdict_text(verdict), file=sys.stderr)
        else:
            _emit(args, export_dot(verdict.docn))
    else:
        _emit(args, _verdict_text(verdict))
    return _VERDICT_EXIT[type(verdict)]


def cmd_synth(args) -> int:
    verdict = _decide(args)
    if not isinstance(verdict, UniformDet):
        print(_verdict_text(verdict), file=sys.stderr)
        return _VERDICT_EXIT[type(verdict)]
    _emit_ocn(args, verdict.docn)
    return EXIT_OK


def cmd_regularize(args) -> int:
    lang = unary_language_dfa(_load_ocn(args.ocn), args.counter, args.horizon, args.confirm_window)
    if args.format == "json":
        _emit(args, _json(lang.to_dict()))
    elif args.format == "dot":
        _emit(args, export_dot(lang.dfa))
    else:
        _emit(args, f"regex: {lang.regex}\nexact: {str(lang.exact).lower()}\n{serialize_ocn(lang.dfa)}")
    return EXIT_OK if lang.exact else EXIT_INCONCLUSIVE


def cmd_equiv(args) -> int:
    _no_dot(args)
    a, b = _load_ocn(args.a), _load_ocn(args.b)
    if args.mode == "fixed":
        report = bounded_equiv(a, b, counter=args.counter, max_len=args.max_len)
    else:
        report = bounded_equiv(a, b, max_counter=args.max_counter, max_len=args.max_len)
    if args.format == "json":
        _emit(args, _json(report.to_dict()))
    elif report:
        _emit(args, f"agree ({report.words_checked} word/counter pairs)")
    else:
        cex = report.counterexample
        _emit(args, f"differ: word {' '.join(cex.word) or '(empty)'!s} counter {cex.counter}: "
                    f"first={str(cex.verdict_a).lower()} second={str(cex.verdict_b).lower()}")
    return EXIT_OK if report else EXIT_NO


def cmd_lcm_reach(args) -> int:
    _no_dot(args)
    lcm = _load_lcm(args.lcm)
    init = _parse_config(args.init, len(lcm.counters))
    result = lcm_reach(lcm, init, args.cap)
    if args.format == "json":
        _emit(args, _json(result.to_dict()))
    else:
        lines = [f"{c.location} {' '.join(map(str, c.values))}".rstrip() for c in sorted(result.configs)]
        lines.append(f"saturated: {str(result.saturated).lower()}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_dot(args) -> int:
    _emit(args, export_dot(_load_ocn(args.ocn)))
    return EXIT_OK


def _counter_index(lcm, name: str) -> int:
    if name in lcm.counters:
        return lcm.counters.index(name)
    raise UsageError(f"unknown counter {name!r}")


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "gadget":
        if args.name in ("C-det", "c-det"):
            return _gen_ocn(args, gadget_c_zero_docn())
        if args.name is None or args.name.upper() not in GADGET_NAMES:
            raise UsageError(f"gadget needs a name: one of {', '.join(GADGET_NAMES)}, C-det")
        return _gen_ocn(args, gadget(args.name))
    if kind in ("wrap-forall", "wrap-uniform"):
        if args.input is None:
            raise UsageError(f"{kind} needs an input .ocn file")
        wrap = wrap_forall if kind == "wrap-forall" else wrap_uniform_lb
        try:
            return _gen_ocn(args, wrap(_load_ocn(args.input)))
        except ValueError as exc:
            if isinstance(exc, OcnError):
                raise
            raise UsageError(str(exc)) from None

    if args.input is None:
        raise UsageError(f"{kind} needs an input .lcm file")
    lcm = _load_lcm(args.input)
    if kind == "zero-fr":
        if args.init is None:
            raise UsageError("zero-fr needs --init")
        new, start = zero_fr_reduction(lcm, _parse_config(args.init, len(lcm.counters)))
        _no_dot(args)
        if args.format == "json":
            _emit(args, _json({"lcm": serialize_lcm(new), "start": start}))
        else:
            _emit(args, f"; start: {start}\n{serialize_lcm(new)}")
        return EXIT_OK
    start = args.start or lcm.locations[0]
    if kind == "lcm-ocn":
        return _gen_ocn(args, lcm_to_ocn(lcm, start))
    if kind == "finite-reach":
        return _gen_ocn(args, finite_reach_dfa(lcm, start, args.bound))
    if kind == "initial-gadget":
        return _gen_ocn(args, initial_config_gadget(lcm, start))
    if kind == "flow":
        return _gen_ocn(args, flow_violation_ocn(lcm, start))
    if kind == "violation":
        if args.transition is None or args.counter is None:
            raise UsageError("violation needs --transition and --counter")
        if not 0 <= args.transition < len(lcm.transitions):
            raise UsageError(f"transition index {args.transition} out of range")
        i = _counter_index(lcm, args.counter)
        return _gen_ocn(args, violation_gadget(lcm, args.transition, i))
    raise UsageError(f"unknown generator {kind!r}")


def _gen_ocn(args, ocn) -> int:
    _emit_ocn(args, ocn)
    return EXIT_OK


GENERATORS = (
    "gadget", "wrap-forall", "wrap-uniform", "lcm-ocn", "finite-reach", "zero-fr",
    "violation", "initial-gadget", "flow",
)


# --- parser -----------------------------------------------------------------

def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{value} is negative")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get("OCNKIT_FORMAT", "text")
    if default_format not in FORMATS:
        default_format = "text"

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_format,
                        help="output format (default: $OCNKIT_FORMAT or text)")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    analysis = _Parser(add_help=False)
    analysis.add_argument("--horizon", type=_nonneg, default=DEFAULT_HORIZON,
                          help=f"exact MCR prefix length (default {DEFAULT_HORIZON})")
    analysis.add_argument("--confirm-window", type=_positive, default=DEFAULT_CONFIRM_WINDOW,
                          help=f"indices a periodic law must hold on (default {DEFAULT_CONFIRM_WINDOW})")

    verify = _Parser(add_help=False)
    verify.add_argument("--max-counter", type=_nonneg, default=DEFAULT_MAX_COUNTER,
                        help=f"largest initial counter checked (default {DEFAULT_MAX_COUNTER})")
    verify.add_argument("--max-len", type=_nonneg, default=DEFAULT_MAX_LEN,
                        help=f"longest word checked (default {DEFAULT_MAX_LEN})")

    parser = _Parser(prog="ocnkit", description="One-counter net toolkit.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("member", parents=[common], help="does the OCN accept a word from a counter")
    p.add_argument("ocn")
    p.add_argument("--counter", type=_nonneg, default=0)
    p.add_argument("--word", default="", help="whitespace-separated tokens")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("mcr", parents=[common, analysis], help="minimal counter relation of a unary OCN")
    p.add_argument("ocn")
    p.set_defaults(func=cmd_mcr)

    p = sub.add_parser("uniform-det", parents=[common, analysis, verify],
                       help="decide uniform determinizability of a unary OCN")
    p.add_argument("ocn")
    p.set_defaults(func=cmd_uniform_det)

    p = sub.add_parser("synth", parents=[common, analysis, verify],
                       help="emit the equivalent DOCN of a unary OCN")
    p.add_argument("ocn")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("regularize", parents=[common, analysis],
                       help="regex and DFA for a unary OCN's language at one counter")
    p.add_argument("ocn")
    p.add_argument("--counter", type=_nonneg, default=0)
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("equiv", parents=[common], help="bounded language comparison")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mode", choices=("fixed", "uniform"), default="fixed")
    p.add_argument("--counter", type=_nonneg, default=0, help="counter for --mode fixed")
    p.add_argument("--max-counter", type=_nonneg, default=DEFAULT_MAX_COUNTER,
                   help="counters 0..N for --mode uniform")
    p.add_argument("--max-len", type=_nonneg, default=8)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("gen", parents=[common], help="generate a construction")
    p.add_argument("kind", choices=GENERATORS)
    p.add_argument("name", nargs="?", help="gadget name (A, B, C, C-det)")
    p.add_argument("--input", "-i", help="input .ocn (wrappers) or .lcm (reductions)")
    p.add_argument("--start", help="LCM start location (default: first declared)")
    p.add_argument("--bound", type=_nonneg, default=3, help="counter bound for finite-reach")
    p.add_argument("--init", help="LCM configuration, e.g. 'l0 2 1' (zero-fr)")
    p.add_argument("--transition", type=int, help="transition index (violation)")
    p.add_argument("--counter", help="counter name (violation)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("lcm-reach", parents=[common], help="bounded reachability of an LCM")
    p.add_argument("lcm")
    p.add_argument("--init", required=True, help="configuration, e.g. 'l0 0 0'")
    p.add_argument("--cap", type=_nonneg, default=5)
    p.set_defaults(func=cmd_lcm_reach)

    p = sub.add_parser("dot", parents=[common], help="render an OCN as Graphviz DOT")
    p.add_argument("ocn")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ocnkit {args.command}: {exc}", file=sys.stderr)
        return EX_USAGE
    except InputError as exc:
        print(f"ocnkit {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except (OcnError, ValueError) as exc:
        print(f"ocnkit {args.command}: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
