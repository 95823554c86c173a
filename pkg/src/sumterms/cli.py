"""The ``sumterms`` command line.

Exit status is 0 on success, 1 when the domain says no (a parse failure,
an underivable goal, a rejected derivation, a failed isomorphism check)
and 2 on usage errors.  A term argument of ``-`` is read from stdin.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass

from . import aq
from .errors import SumtermsError
from .fspec import check_text, check_trace, dump_derivation, dump_trace, load_trace, normalize, prove
from .fspec.serialize import TRACE_FORMAT
from .paradox import (
    Policy, corpus_text, regress_report, run_bracket_paradox, run_paradox, run_script,
)
from .paradox.regress import DECLARED
from .semantics import BACKEND_NAMES, backend, check_isomorphism, evaluate
from .sign import RenderStyle, render

POLICIES = ("naive", "sumterm", "foundational", "pragmatic", "no-split", "fixed-signature")
LEVELS = ("sign", "aq", "aq-bp", "value")


@dataclass(frozen=True)
class Outcome:
    code: int
    out: str = ""
    err: str = ""


class _Fail(Exception):
    """A domain-level "no" that still has output to show."""

    def __init__(self, payload, text: str):
        super().__init__(text)
        self.payload, self.text = payload, text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.format_usage()}{self.prog}: error: {message}\n")


class _Usage(Exception):
    pass


# -- helpers -------------------------------------------------------------

_stdin_cache: list[str] = []


def _arg(value: str) -> str:
    if value != "-":
        return value
    if not _stdin_cache:
        _stdin_cache.append(sys.stdin.read().strip())
    return _stdin_cache[0]


def _term(value: str):
    return aq.parse_aq(_arg(value))


def _text(a) -> str:
    return render(a).text


def _read_file(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(fmt: str, payload, text: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n"
    return text if text.endswith("\n") else text + "\n"


# -- verbs -----------------------------------------------------------------

def _cmd_parse(ns):
    b = aq.parse(_arg(ns.term))
    text = render(b.aq, RenderStyle(ns.style)).text
    return {"aq": aq.to_json(b.aq), "text": text}, text


def _cmd_eq(ns):
    a, b = _arg(ns.left), _arg(ns.right)
    if ns.level == "sign":
        result = a == b
    elif ns.level == "aq-bp":
        result = aq.eq_aq_bp(a, b)
    elif ns.level == "aq":
        result = aq.eq_aq(a, b)
    else:
        result = evaluate(aq.parse_aq(a)) == evaluate(aq.parse_aq(b))
    return {"level": ns.level, "equal": result}, "true" if result else "false"


def _cmd_eval(ns):
    be = backend(ns.backend, ns.sort)
    value = str(evaluate(_term(ns.term), be))
    return {"backend": str(be), "value": value}, value


def _cmd_normalize(ns):
    trace = normalize(_term(ns.term), strategy=ns.strategy, seed=ns.seed)
    if ns.trace:
        return None, dump_trace(trace)
    nf = _text(trace.normal_form)
    return {"normal_form": nf, "steps": len(trace)}, nf


def _cmd_prove(ns):
    lhs, rhs = _term(ns.lhs), _term(ns.rhs)
    result = prove(lhs, rhs)
    if not result:
        a, b = _text(result.lhs_normal_form), _text(result.rhs_normal_form)
        raise _Fail({"error": "NotDerivable", "normal_forms": [a, b]},
                    f"NotDerivable: normal forms {a} and {b}")
    if ns.trace:
        return None, dump_derivation(result)
    goal = f"{_text(lhs)} = {_text(rhs)}"
    return {"goal": goal, "steps": len(result)}, f"derivable: {goal} ({len(result)} steps)"


def _cmd_check(ns):
    text = _read_file(ns.file)
    first = text.lstrip().split("\n", 1)[0]
    if TRACE_FORMAT in first:
        result = check_trace(load_trace(text))
    else:
        result = check_text(text)
    payload = {"ok": result.ok, "step": result.index, "reason": result.reason}
    if not result:
        raise _Fail(payload, str(result))
    return payload, str(result)


def _cmd_split(ns):
    a = _term(ns.term)
    left, right = _text(aq.split_left(a)), _text(aq.split_right(a))
    payload = {"left": left, "right": right, "sumterm": aq.is_sumterm(a)}
    return payload, f"l_s: {left}\nr_s: {right}"


def _cmd_summand(ns):
    a = _term(ns.term)
    s = _text(aq.summand(a, ns.k))
    return {"summand": s, "length": aq.length(a)}, s


def _cmd_subst(ns):
    r = _text(aq.substitute(_term(ns.target), ns.var, _term(ns.replacement)))
    return {"result": r}, r


def _cmd_let(ns):
    r = _text(aq.let_in(ns.var, _term(ns.binding), _term(ns.body), unit=ns.unit))
    return {"result": r}, r


def _cmd_tuple(ns):
    t = aq.parse_sumtuple(_arg(ns.tuple))
    valid = aq.sumtuple_valid(t)
    return {"tuple": str(t), "valid": valid}, "valid" if valid else "invalid"


def _cmd_iso(ns):
    b1, b2 = backend(ns.left, ns.sort), backend(ns.right, ns.sort)
    report = check_isomorphism(b1, b2, ns.bound)
    payload = {"left": str(b1), "right": str(b2), "bound": ns.bound, "checked": report.checked,
               "counterexamples": list(report.counterexamples)}
    text = report.verdict() if not ns.verbose else report.text()
    if not report.ok:
        raise _Fail(payload, text)
    return payload, text


def _cmd_paradox(ns):
    if ns.bracket:
        trace = run_bracket_paradox(ns.bracket.replace("-", "_"), spaces=ns.spaces)
    else:
        options = {"lint": ns.lint}
        if ns.foundational_check:
            options["foundational_check"] = True
        policy = Policy.named(ns.policy, **options)
        if ns.script:
            trace = run_script(_read_file(ns.script), policy)
        elif ns.corpus:
            trace = run_script(corpus_text(ns.corpus), policy)
        else:
            trace = run_paradox(policy)
    return trace.to_json(), trace.text()


def _cmd_regress(ns):
    report = regress_report(disabled=tuple(ns.disable))
    return report.to_json(), report.text()


# -- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    p = _Parser(prog="sumterms", description="Signs, AQs and values of elementary arithmetic.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help):
        sp = sub.add_parser(name, help=help, parents=[fmt])
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("parse", _cmd_parse, "parse a sign and render its AQ")
    sp.add_argument("term")
    sp.add_argument("--style", choices=[s.value for s in RenderStyle], default="minimal")

    sp = verb("eq", _cmd_eq, "compare two signs at an equality level")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--level", choices=LEVELS, default="aq")

    sp = verb("eval", _cmd_eval, "evaluate a closed AQ in a backend")
    sp.add_argument("term")
    sp.add_argument("--backend", choices=BACKEND_NAMES, default="decimal")
    sp.add_argument("--sort", choices=("nat", "int"))

    sp = verb("normalize", _cmd_normalize, "rewrite a closed AQ to its decimal normal form")
    sp.add_argument("term")
    sp.add_argument("--strategy", choices=("innermost", "random"), default="innermost")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trace", action="store_true", help="emit the rewrite trace")

    sp = verb("prove", _cmd_prove, "derive a closed equation from the axioms")
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.add_argument("--trace", action="store_true", help="emit the derivation")

    sp = verb("check", _cmd_check, "independently check a derivation or trace file")
    sp.add_argument("file")

    sp = verb("split", _cmd_split, "left and right summand (0 and 0 unless a sumterm)")
    sp.add_argument("term")

    sp = verb("summand", _cmd_summand, "k-th summand (1-based)")
    sp.add_argument("term")
    sp.add_argument("k", type=int)

    sp = verb("subst", _cmd_subst, "substitute a term for a variable")
    sp.add_argument("target")
    sp.add_argument("var")
    sp.add_argument("replacement")

    sp = verb("let", _cmd_let, "let var = binding in body")
    sp.add_argument("var")
    sp.add_argument("binding")
    sp.add_argument("body")
    sp.add_argument("--unit", action="store_true", help="treat the binding as bracketed")

    sp = verb("tuple", _cmd_tuple, "check a sumtuple (a,b;c)")
    sp.add_argument("tuple")

    sp = verb("iso", _cmd_iso, "check the isomorphism between two backends")
    sp.add_argument("left", choices=BACKEND_NAMES)
    sp.add_argument("right", choices=BACKEND_NAMES)
    sp.add_argument("--sort", choices=("nat", "int"), default="nat")
    sp.add_argument("--bound", type=int, default=64)
    sp.add_argument("--verbose", action="store_true")

    sp = verb("paradox", _cmd_paradox, "run a claim script under a policy")
    sp.add_argument("--policy", choices=POLICIES, default="naive")
    sp.add_argument("--lint", choices=("off", "warn", "error"), default="warn")
    sp.add_argument("--foundational-check", action="store_true")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--script", help="script file, or - for stdin")
    src.add_argument("--corpus", help="name of a bundled script")
    src.add_argument("--bracket", choices=("aq", "aq-bp"), help="run the bracket counting script")
    sp.add_argument("--spaces", action="store_true", help="with --bracket aq-bp: count spaces instead")

    sp = verb("regress", _cmd_regress, "which counting operator breaks which equality level")
    sp.add_argument("--disable", action="append", default=[], choices=tuple(DECLARED))
    return p


def dispatch(argv) -> Outcome:
    _stdin_cache.clear()
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(io.StringIO()) as buf:
            ns = parser.parse_args(argv)
    except _Usage as exc:
        return Outcome(2, err=str(exc))
    except SystemExit as exc:  # --help
        return Outcome(exc.code or 0, out=buf.getvalue())
    try:
        payload, text = ns.fn(ns)
    except _Fail as exc:
        return Outcome(1, out=_emit(ns.format, exc.payload, exc.text))
    except SumtermsError as exc:
        name = type(exc).__name__
        if ns.format == "json":
            return Outcome(1, err=_emit("json", {"error": name, "message": str(exc)}, ""))
        return Outcome(1, err=f"error: {name}: {exc}\n")
    except (OSError, ValueError) as exc:
        return Outcome(1, err=f"error: {type(exc).__name__}: {exc}\n")
    if payload is None:
        return Outcome(0, out=text)
    return Outcome(0, out=_emit(ns.format, payload, text))


def main(argv=None) -> int:
    result = dispatch(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.out)
    sys.stderr.write(result.err)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
