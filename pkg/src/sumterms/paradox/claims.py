"""Claims and scripts.

A script has one claim per line::

    <lhs> <eqsym> <rhs> BY <rule>

``eqsym`` is ``=`` (same value), ``=_AQ`` (same AQ) or ``=_AQ^bp`` (same AQ
with the same redundant brackets).  A side is either a plain term or one
operator application ``op(arg)`` with ``op`` among ``l_s``, ``r_s`` (left and
right summand of a sumterm), ``#_bp`` (bracket pairs in the argument sign)
and ``#_sp`` (spaces in the argument sign).  The argument is kept verbatim.

Rules::

    AQ            the sides are equal as AQs (bracket-aware for =_AQ^bp)
    ARITH         the sides have the same value (plain sides, = only)
    DEF           one side is an operator application, the other its value
    CONG k        op(X) ~ op(Y) from step k claiming X ~' Y
    SYM k         step k read backwards
    TRANS k1 ...  chain the listed steps, each used left to right

Blank lines and lines starting with ``#`` followed by a space are comments.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..aq import parse
from ..errors import ParseError, ScriptError, SumtermsError
from ..terms import variables

EQ = "="
EQ_AQ = "=_AQ"
EQ_BP = "=_AQ^bp"
EQ_SYMBOLS = (EQ, EQ_AQ, EQ_BP)
RANK = {EQ: 0, EQ_AQ: 1, EQ_BP: 2}

SPLIT_OPS = ("l_s", "r_s")
COUNT_OPS = ("#_bp", "#_sp")
OPERATORS = SPLIT_OPS + COUNT_OPS

RULES = ("AQ", "ARITH", "DEF", "CONG", "SYM", "TRANS")
_REFS = {"AQ": (0, 0), "ARITH": (0, 0), "DEF": (0, 0), "CONG": (1, 1), "SYM": (1, 1), "TRANS": (2, None)}

_OP_APP = re.compile(r"^(l_s|r_s|#_bp|#_sp)\((.*)\)$", re.S)


@dataclass(frozen=True)
class Plain:
    text: str

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class OpApp:
    op: str
    arg: str

    @property
    def text(self) -> str:
        return f"{self.op}({self.arg})"

    def __str__(self):
        return self.text


Side = Plain | OpApp


def _balanced(s: str) -> bool:
    depth = 0
    for c in s:
        depth += (c == "(") - (c == ")")
        if depth < 0:
            return False
    return depth == 0


def parse_side(text: str) -> Side:
    text = text.strip()
    if not text:
        raise ScriptError("empty side")
    m = _OP_APP.match(text)
    if m and _balanced(m.group(2)):
        arg = m.group(2)
        _check_term(arg)
        return OpApp(m.group(1), arg)
    if any(op + "(" in text for op in OPERATORS) or "#" in text:
        raise ScriptError(f"operator applications must form a whole side: {text!r}")
    _check_term(text)
    return Plain(text)


def _check_term(text: str) -> None:
    try:
        parse(text)
    except SumtermsError as exc:
        raise ScriptError(f"cannot read term {text!r}: {exc}") from exc


def side_variables(side: Side) -> set:
    return variables(parse(side.arg if isinstance(side, OpApp) else side.text).aq)


@dataclass(frozen=True)
class Claim:
    lhs: Side
    eq: str
    rhs: Side

    def __str__(self):
        return f"{self.lhs} {self.eq} {self.rhs}"

    @property
    def operators(self) -> set:
        return {s.op for s in (self.lhs, self.rhs) if isinstance(s, OpApp)}


def parse_claim(text: str) -> Claim:
    depth, found = 0, []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "=" and depth == 0:
            for sym in (EQ_BP, EQ_AQ, EQ):
                if text.startswith(sym, i):
                    found.append((i, sym))
                    i += len(sym) - 1
                    break
        i += 1
    if len(found) != 1:
        raise ScriptError(f"a claim needs exactly one equality sign: {text!r}")
    pos, sym = found[0]
    return Claim(parse_side(text[:pos]), sym, parse_side(text[pos + len(sym):]))


@dataclass(frozen=True)
class Justification:
    rule: str
    refs: tuple = ()

    def __str__(self):
        return " ".join([self.rule, *map(str, self.refs)])


def parse_justification(text: str) -> Justification:
    parts = text.split()
    if not parts or parts[0] not in RULES:
        raise ScriptError(f"unknown rule {text.strip()!r}; expected one of {', '.join(RULES)}")
    try:
        refs = tuple(int(p) for p in parts[1:])
    except ValueError as exc:
        raise ScriptError(f"step references must be numbers: {text.strip()!r}") from exc
    lo, hi = _REFS[parts[0]]
    if len(refs) < lo or (hi is not None and len(refs) > hi):
        raise ScriptError(f"{parts[0]} takes {lo if lo == hi else f'at least {lo}'} step reference(s)")
    return Justification(parts[0], refs)


@dataclass(frozen=True)
class ScriptLine:
    claim: Claim
    justification: Justification

    def __str__(self):
        return f"{self.claim} BY {self.justification}"


def parse_line(text: str) -> ScriptLine:
    if " BY " not in text:
        raise ScriptError(f"missing ' BY <rule>': {text!r}")
    claim, just = text.rsplit(" BY ", 1)
    return ScriptLine(parse_claim(claim), parse_justification(just))


def parse_script(text: str) -> list[ScriptLine]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("# ") or line == "#":
            continue
        try:
            out.append(parse_line(line))
        except (ScriptError, ParseError) as exc:
            raise ScriptError(f"line {lineno}: {exc}") from exc
    return out


def format_script(lines) -> str:
    return "".join(f"{line}\n" for line in lines)
