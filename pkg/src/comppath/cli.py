"""Command-line entry point: ``comppath <area> <verb> ...``.

Exit codes: 0 success or true, 1 false or rejected, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from . import engine, lam
from .groups import (abelianize, format_word, parse_presentation, parse_word,
                     polygon_presentation, reduce_word, surface_presentation,
                     vankampen_pushout, words_equal)
from .groups.solvers import UnsupportedPresentation
from .groups.words import UnknownGenerator, WordSyntaxError
from .rules import RuleError
from .scripts import ScriptSyntaxError, bundled_paper_suite, parse_script, verify_script
from .terms import ParseError, format_path_term, parse_path_term


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    stdout: str
    stderr: str = ""


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="comppath", description="computational paths toolkit")
    areas = top.add_subparsers(dest="area", required=True)

    def rewriting_flags(p):
        p.add_argument("--strategy", choices=engine.STRATEGIES, default="leftmost-innermost")
        p.add_argument("--fuel", type=int, default=None)
        p.add_argument("--strict-rule39", action="store_true",
                       help="rule 39 returns u instead of v")
        p.add_argument("--trace", action="store_true", help="emit step lines")

    path = areas.add_parser("path", help="path-term rewriting").add_subparsers(dest="verb", required=True)
    p = path.add_parser("normalize", help="print the normal form")
    p.add_argument("term", nargs="?")
    rewriting_flags(p)
    p = path.add_parser("eq", help="decide rw-equality")
    p.add_argument("left")
    p.add_argument("right", nargs="?")
    rewriting_flags(p)
    p = path.add_parser("trace", help="print the normalization trace")
    p.add_argument("term", nargs="?")
    rewriting_flags(p)

    lm = areas.add_parser("lambda", help="lambda terms and their paths").add_subparsers(dest="verb", required=True)
    p = lm.add_parser("reduce", help="normal-order beta/eta normal form")
    p.add_argument("term", nargs="?")
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--trace", action="store_true")
    p = lm.add_parser("path", help="labelled path between two terms")
    p.add_argument("source")
    p.add_argument("target", nargs="?")
    p.add_argument("--max-steps", type=int, default=12)
    p.add_argument("--all", action="store_true", help="every shortest path")
    p.add_argument("--skeleton", action="store_true", help="drop congruence suffixes")

    sc = areas.add_parser("script", help="proof scripts").add_subparsers(dest="verb", required=True)
    p = sc.add_parser("verify", help="replay a script file")
    p.add_argument("file")
    p.add_argument("--strict-rule39", action="store_true")
    p.add_argument("--trace", action="store_true")

    gr = areas.add_parser("group", help="surface groups").add_subparsers(dest="verb", required=True)
    p = gr.add_parser("reduce", help="canonical form of a word")
    p.add_argument("word", nargs="?")
    p.add_argument("--surface", default=None)
    p = gr.add_parser("equal", help="decide equality of two words")
    p.add_argument("left")
    p.add_argument("right", nargs="?")
    p.add_argument("--surface", required=True)
    p = gr.add_parser("abelianize", help="abelian invariants")
    p.add_argument("presentation", nargs="?")
    p.add_argument("--surface", default=None)
    p = gr.add_parser("pushout", help="amalgamated presentation")
    p.add_argument("--u", required=True, help="'gens: ... ; rels: ...'")
    p.add_argument("--v", required=True)
    p.add_argument("--amalgam", action="append", default=[],
                   help="'word-in-U | word-in-V', once per intersection generator")
    p = gr.add_parser("presentation", help="presentation of a surface or polygon")
    p.add_argument("--surface", default=None)
    p.add_argument("--boundary", default=None, help="polygon edge word")

    st = areas.add_parser("suite", help="bundled proof scripts").add_subparsers(dest="verb", required=True)
    p = st.add_parser("paper", help="verify every bundled script")
    p.add_argument("--strict-rule39", action="store_true")
    return top


def _arg_or_stdin(value: Optional[str], stdin, what: str) -> str:
    if value is not None and value != "-":
        return value
    # stdin may be a callable so that it is only read when an operand is missing
    text = (stdin() if callable(stdin) else stdin).strip()
    if not text:
        raise UsageError(f"missing {what} (argument or stdin)")
    return text


def _two(first: str, second: Optional[str], stdin: str) -> tuple[str, str]:
    if second is not None:
        return first, second
    return first, _arg_or_stdin(None, stdin, "second operand")


def _path(args, stdin, out) -> int:
    opts = dict(strict_rule39=args.strict_rule39)
    if args.verb == "eq":
        s, t = (parse_path_term(x) for x in _two(args.left, args.right, stdin))
        ok, trace = engine.rw_equal(s, t, args.strategy, args.fuel, **opts)
        if args.trace and trace is not None:
            out.extend(trace.lines())
        out.append("true" if ok else "false")
        return 0 if ok else 1
    term = parse_path_term(_arg_or_stdin(args.term, stdin, "term"))
    nf, trace = engine.normalize(term, args.strategy, args.fuel, **opts)
    if args.verb == "trace":
        out.extend(trace.lines())
        return 0
    if args.trace:
        out.extend(trace.lines())
    out.append(format_path_term(nf))
    return 0


def _lambda(args, stdin, out) -> int:
    if args.verb == "reduce":
        t = lam.parse_lambda(_arg_or_stdin(args.term, stdin, "term"))
        nf, steps = lam.reduce(t, args.max_steps)
        if args.trace:
            out.extend(f"{s.label} : {lam.format_lambda(s.after)}" for s in steps)
        out.append(lam.format_lambda(nf))
        return 0
    m, n = (lam.parse_lambda(x) for x in _two(args.source, args.target, stdin))
    show = (lambda p: format_path_term(lam.skeleton(p))) if args.skeleton else format_path_term
    if args.all:
        paths = lam.all_shortest_paths(m, n, args.max_steps)
        out.extend(show(p) for p in paths)
        return 0 if paths else 1
    p = lam.find_path(m, n, args.max_steps)
    if p is None:
        out.append("no path")
        return 1
    out.append(show(p))
    return 0


def _script(args, stdin, out) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(str(e)) from None
    report = verify_script(parse_script(text, args.file), strict_rule39=args.strict_rule39)
    if args.trace:
        for rec in report.records:
            out.append(f"{rec.step.format()} : {format_path_term(rec.after)}")
    out.append(report.verdict)
    out.append(f"final: {format_path_term(report.final)}")
    return 0 if report.accepted else 1


def _group(args, stdin, out) -> int:
    if args.verb == "reduce":
        w = parse_word(_arg_or_stdin(args.word, stdin, "word"))
        out.append(format_word(reduce_word(w, args.surface)))
        return 0
    if args.verb == "equal":
        u, v = (parse_word(x) for x in _two(args.left, args.right, stdin))
        ok = words_equal(u, v, args.surface)
        out.append("true" if ok else "false")
        return 0 if ok else 1
    if args.verb == "abelianize":
        if args.surface:
            p = surface_presentation(args.surface)
        else:
            p = parse_presentation(_arg_or_stdin(args.presentation, stdin, "presentation"))
        inv = abelianize(p)
        out.append(str(inv))
        return 0
    if args.verb == "pushout":
        pu, pv = parse_presentation(args.u), parse_presentation(args.v)
        pairs = []
        for item in args.amalgam:
            left, bar, right = item.partition("|")
            if not bar:
                raise UsageError(f"amalgam {item!r} needs 'word-in-U | word-in-V'")
            pairs.append((parse_word(left), parse_word(right)))
        out.append(str(vankampen_pushout(pu, pv, pairs)))
        return 0
    if (args.surface is None) == (args.boundary is None):
        raise UsageError("give exactly one of --surface or --boundary")
    if args.surface:
        out.append(str(surface_presentation(args.surface)))
    else:
        out.append(str(polygon_presentation(parse_word(args.boundary))))
    return 0


def _suite(args, stdin, out) -> int:
    results = bundled_paper_suite(strict_rule39=args.strict_rule39)
    ok = 0
    for name, rep in results:
        out.append(f"{name}: {rep.verdict}")
        ok += rep.accepted
    out.append(f"{ok}/{len(results)} scripts accepted")
    return 0 if ok == len(results) else 1


_DISPATCH = {"path": _path, "lambda": _lambda, "script": _script, "group": _group, "suite": _suite}

# errors that mean "bad input" rather than "false"
_INPUT_ERRORS = (ParseError, lam.LambdaSyntaxError, ScriptSyntaxError, WordSyntaxError,
                 UnknownGenerator, UnsupportedPresentation, UsageError, RuleError, ValueError)


def run_command(argv: Sequence[str], stdin: Union[str, Callable[[], str]] = "") -> CommandOutcome:
    parser = _build_parser()
    err = io.StringIO()
    with contextlib.redirect_stderr(err), contextlib.redirect_stdout(io.StringIO()) as help_out:
        try:
            args = parser.parse_args(list(argv))
        except SystemExit as e:
            code = 0 if e.code == 0 else 2
            return CommandOutcome(code, help_out.getvalue(), err.getvalue())
    out: list[str] = []
    try:
        code = _DISPATCH[args.area](args, stdin, out)
    except RuntimeError as e:
        # fuel or step budget exhausted
        return CommandOutcome(1, "", f"error: {e}\n")
    except _INPUT_ERRORS as e:
        return CommandOutcome(2, "", f"error: {e}\n")
    return CommandOutcome(code, "".join(line + "\n" for line in out), err.getvalue())


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    def stdin() -> str:
        return "" if sys.stdin is None or sys.stdin.isatty() else sys.stdin.read()

    res = run_command(argv, stdin)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
