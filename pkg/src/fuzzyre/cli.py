"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 when a
verification (``fuzz``) finds a mismatch. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .algebra import STRUCTURES, ConfigurationError, make_structure
from .automaton import UnknownLetterError, degree, degree_table, from_nfa
from .fixtures import UnknownFixture, fixture_record, load_fixture
from .fuzz import run_fuzz
from .lift import lift
from .position import Nfa, glushkov
from .reduction import factor_automaton, greatest_right_invariant
from .regex import BudgetExceeded, RegexSyntaxError, parse, render
from .serialize import dumps, format_degree, from_document, to_document, to_dot
from .synthesis import base_relation, closure, synthesize_full, synthesize_reduced

__all__ = ["run", "main", "build_parser"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _structure_args(p):
    p.add_argument("--structure", choices=STRUCTURES, default="godel",
                   help="truth-value structure (default: godel)")
    p.add_argument("--tolerance", type=float, default=None,
                   help="value equality tolerance (default: 0 for godel/boolean, 1e-9 otherwise)")


def _source_args(p, fixture=True, automaton=False):
    p.add_argument("--expr", help="fuzzy regular expression, e.g. '0.2((0.1(xy)*)*+y)'")
    if fixture:
        p.add_argument("--nfa-fixture", metavar="NAME",
                       help="use a bundled crisp automaton instead of the position automaton")
    if automaton:
        p.add_argument("--automaton", metavar="FILE", help="automaton JSON document ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="fuzzyre", description="Fuzzy regular expressions to fuzzy finite automata.")
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="parse an expression and print its normal rendering")
    p.add_argument("--expr", required=True)
    _structure_args(p)

    p = sub.add_parser("lift", help="print the lifted expression and its scalar table")
    p.add_argument("--expr", required=True)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    _structure_args(p)

    p = sub.add_parser("build", help="synthesize the fuzzy automaton and print it as JSON")
    _source_args(p)
    _structure_args(p)
    p.add_argument("--reduced", action="store_true", help="use the reduced construction")
    p.add_argument("--closure", action="store_true",
                   help="add the base relation R and its closure R_A to the document")

    p = sub.add_parser("eval", help="membership degrees of words")
    _source_args(p, automaton=True)
    _structure_args(p)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--word", action="append", default=[],
                   help="word to evaluate (repeatable); 'eps' or '' is the empty word")
    p.add_argument("--max-len", type=int, help="print every word up to this length")

    p = sub.add_parser("minimize", help="factor by the greatest right invariant crisp equivalence")
    _source_args(p, automaton=True)
    _structure_args(p)
    p.add_argument("--full", action="store_true", help="start from the full instead of the reduced automaton")

    p = sub.add_parser("export", help="write an automaton as JSON or DOT")
    _source_args(p)
    _structure_args(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--stage", choices=("nfa", "fuzzy", "minimized"), default="fuzzy")
    p.add_argument("--reduced", action="store_true")

    p = sub.add_parser("fuzz", help="compare synthesized automata with the direct semantics")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--structure", action="append", choices=STRUCTURES,
                   help="restrict to a structure (repeatable; default: all four)")
    return top


def _lm(args):
    return make_structure(args.structure, args.tolerance)


def _expression(args, lm):
    expr = args.expr
    fixture = getattr(args, "nfa_fixture", None)
    if expr is None and fixture:
        expr = fixture_record(_stem(fixture))["expr"]
    if expr is None:
        raise UsageError("an expression is required (--expr)")
    return parse(expr, lm)


def _stem(name):
    return name[:-4] if name.endswith("_nfa") else name


def _crisp(args, lm):
    """The lift of the expression and the crisp automaton it is synthesized from."""
    alpha = _expression(args, lm)
    lr = lift(alpha, lm)
    if getattr(args, "nfa_fixture", None):
        nfa = load_fixture(args.nfa_fixture)
        if not isinstance(nfa, Nfa):
            raise UsageError(f"fixture {args.nfa_fixture!r} is not a crisp automaton")
    else:
        nfa = glushkov(lr.alpha_r)
    return lr, nfa


def _fuzzy(args, lm, reduced):
    if getattr(args, "automaton", None):
        text = sys.stdin.read() if args.automaton == "-" else open(args.automaton, encoding="utf-8").read()
        a = from_document(json.loads(text))
        return from_nfa(a, lm) if isinstance(a, Nfa) else a
    lr, nfa = _crisp(args, lm)
    return (synthesize_reduced if reduced else synthesize_full)(nfa, lr, lm)


def _word_text(w):
    return "".join(w) if w else "eps"


def _cmd_check(args, out):
    out.write(render(parse(args.expr, _lm(args))) + "\n")


def _cmd_lift(args, out):
    lm = _lm(args)
    lr = lift(parse(args.expr, lm), lm)
    if args.json:
        doc = {"alpha_r": render(lr.alpha_r), "x_alphabet": list(lr.x_alphabet),
               "phi": {k: lr.phi[k] for k in lr.alphabet}}
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    out.write(render(lr.alpha_r) + "\n")
    for k in lr.alphabet:
        out.write(f"{k}\t{format_degree(lr.phi[k])}\n")


def _cmd_build(args, out):
    lm = _lm(args)
    lr, nfa = _crisp(args, lm)
    a = (synthesize_reduced if args.reduced else synthesize_full)(nfa, lr, lm)
    doc = to_document(a)
    if args.closure:
        c = closure(base_relation(nfa, lr, lm), lm)
        doc["closure"] = {"R": c.base.tolist(), "R_A": c.matrix.tolist()}
    out.write(dumps(doc))


def _parse_word(text):
    text = text.strip()
    return () if text in ("", "eps", "ε") else tuple(text)


def _cmd_eval(args, out):
    lm = _lm(args)
    if not args.word and args.max_len is None:
        raise UsageError("give --word or --max-len")
    a = _fuzzy(args, lm, args.reduced)
    from_expr = not getattr(args, "automaton", None)
    for text in args.word:
        u = _parse_word(text)
        try:
            v = degree(a, u)
        except UnknownLetterError:
            if not from_expr:
                raise
            # letters outside the expression have degree 0
            v = lm.zero
        out.write(f"{_word_text(u)}\t{format_degree(v)}\n")
    if args.max_len is not None:
        for w, v in degree_table(a, args.max_len).items():
            out.write(f"{w or 'eps'}\t{format_degree(v)}\n")


def _minimized(a):
    p = greatest_right_invariant(a)
    return p, factor_automaton(a, p, check=True)


def _cmd_minimize(args, out, err):
    lm = _lm(args)
    a = _fuzzy(args, lm, reduced=not args.full)
    p, q = _minimized(a)
    out.write(dumps(q))
    blocks = " ".join("{" + ",".join(a.labels[s] for s in b) + "}" for b in p.blocks())
    err.write(f"states before: {a.n_states}\nstates after: {q.n_states}\nblocks: {blocks}\n")


def _cmd_export(args, out):
    lm = _lm(args)
    if args.stage == "nfa":
        _, a = _crisp(args, lm)
    else:
        a = _fuzzy(args, lm, args.reduced)
        if args.stage == "minimized":
            a = _minimized(a)[1]
    out.write(dumps(a) if args.format == "json" else to_dot(a))


def _cmd_fuzz(args, out, err):
    if args.cases < 0 or args.max_depth < 0 or args.max_len < 0:
        raise UsageError("--cases, --max-depth and --max-len must be non-negative")
    if args.cases == 0:
        out.write("0 cases\n")
        return 0
    structures = tuple(args.structure) if args.structure else STRUCTURES
    t0 = time.perf_counter()
    checked, bad = run_fuzz(args.cases, args.seed, args.max_depth, args.max_len, structures)
    dt = time.perf_counter() - t0
    if bad is not None:
        err.write(f"mismatch ({bad.variant} automaton, {bad.structure}) on case {bad.case}: "
                  f"{bad.expr!r} at word {bad.word or 'eps'!r}\n")
        err.write(bad.reproducer() + "\n")
        return 2
    out.write(f"{checked} cases over {', '.join(structures)}: all agree ({dt:.1f} s)\n")
    return 0


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        cmd = args.command
        if cmd == "check":
            _cmd_check(args, out)
        elif cmd == "lift":
            _cmd_lift(args, out)
        elif cmd == "build":
            _cmd_build(args, out)
        elif cmd == "eval":
            _cmd_eval(args, out)
        elif cmd == "minimize":
            _cmd_minimize(args, out, err)
        elif cmd == "export":
            _cmd_export(args, out)
        elif cmd == "fuzz":
            return _cmd_fuzz(args, out, err)
        return 0
    except UsageError as e:
        err.write(f"{e}\n")
        return 1
    except SystemExit as e:  # --help and --version
        return 0 if e.code in (0, None) else 1
    except (RegexSyntaxError, ConfigurationError, UnknownFixture, UnknownLetterError,
            BudgetExceeded, ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        err.write(f"fuzzyre: error: {msg}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
