"""Reasoning policies over one shared step checker.

Every policy sees the same rules; they differ only in which congruence
steps they allow, which symbols they accept and whether derived closed
identities are compared against normal forms of the integer specification.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ..aq import eq_aq, eq_aq_bp, parse, split_left, split_right
from ..errors import SignatureViolation, SumtermsError
from ..semantics import evaluate
from ..sign import count_bracket_pairs, count_spaces, render_text
from .claims import (
    EQ, EQ_AQ, EQ_BP, RANK, SPLIT_OPS, Claim, Justification, OpApp, Plain, side_variables,
)


class Mode(enum.Enum):
    NAIVE = "naive"
    SUMTERM = "sumterm"
    FOUNDATIONAL = "foundational"
    PRAGMATIC = "pragmatic"
    NO_SPLIT = "no-split"
    FIXED_SIGNATURE = "fixed-signature"


class Lint(enum.Enum):
    OFF = "off"
    WARN = "warn"
    ERROR = "error"


LEVEL_SYMBOL = {"value": EQ, "aq": EQ_AQ, "aq_bp": EQ_BP}


@dataclass(frozen=True)
class Policy:
    """``level`` is the equality a congruence premise must reach in sumterm mode."""

    mode: Mode = Mode.NAIVE
    lint: Lint = Lint.WARN
    foundational_check: bool = False
    level: str = "aq"

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "lint", Lint(self.lint))
        if self.level not in LEVEL_SYMBOL:
            raise ValueError(f"unknown level {self.level!r}")

    @classmethod
    def named(cls, name: str, **options) -> "Policy":
        mode = Mode(name)
        if mode is Mode.FOUNDATIONAL:
            options.setdefault("foundational_check", True)
        return cls(mode, **options)

    @property
    def checks_foundations(self) -> bool:
        return self.foundational_check or self.mode is Mode.FOUNDATIONAL


@dataclass(frozen=True)
class Decision:
    status: str  # "admitted", "warned" or "rejected"
    reason: str = ""

    @property
    def admitted(self) -> bool:
        return self.status != "rejected"

    def __str__(self):
        return self.status + (f": {self.reason}" if self.reason else "")


ADMITTED = Decision("admitted")


class Rejected(Exception):
    pass


# -- meanings of sides ---------------------------------------------------------

def apply_operator(app: OpApp):
    """The value of an operator application as a bracketed AQ."""
    if app.op in SPLIT_OPS:
        arg = parse(app.arg).aq
        return parse(render_text(split_left(arg) if app.op == "l_s" else split_right(arg)))
    count = count_bracket_pairs(app.arg) if app.op == "#_bp" else count_spaces(app.arg)
    return parse(str(count))


def _equal_at(eq: str, a, b) -> bool:
    """a, b are bracketed AQs."""
    if eq == EQ_BP:
        return eq_aq_bp(a, b)
    if eq == EQ_AQ:
        return eq_aq(a, b)
    if eq_aq(a, b):
        return True
    try:
        return evaluate(a.aq) == evaluate(b.aq)
    except SumtermsError:
        return False


def _same_side(a, b) -> bool:
    """Chain-link identity of two sides."""
    if isinstance(a, OpApp) or isinstance(b, OpApp):
        return isinstance(a, OpApp) and isinstance(b, OpApp) and a.op == b.op and a.arg.strip() == b.arg.strip()
    return eq_aq_bp(a.text, b.text)


# -- signature checks ----------------------------------------------------------------

def signature_check(claim: Claim, policy: Policy) -> None:
    if policy.mode is Mode.NO_SPLIT:
        bad = sorted(claim.operators & set(SPLIT_OPS))
        if bad:
            raise SignatureViolation(f"{', '.join(bad)} is excluded: no sum splitting functions")
    elif policy.mode is Mode.FIXED_SIGNATURE:
        bad = sorted(claim.operators)
        if bad:
            raise SignatureViolation(f"{', '.join(bad)} is outside the arithmetic signature")
        if side_variables(claim.lhs) or side_variables(claim.rhs):
            raise SignatureViolation("variables are outside the arithmetic signature")


# -- the step checker ---------------------------------------------------------------------

def check_step(claim: Claim, justification: Justification, policy: Policy, premises=()) -> Decision:
    """Decide one step; ``premises`` are the claims of the cited steps, in order.

    Raises SignatureViolation for out-of-signature symbols under the
    no-split and fixed-signature policies.
    """
    signature_check(claim, policy)
    try:
        return _RULES[justification.rule](claim, policy, tuple(premises), justification)
    except Rejected as exc:
        return Decision("rejected", str(exc))
    except SumtermsError as exc:
        return Decision("rejected", f"{type(exc).__name__}: {exc}")


def _plain_pair(claim: Claim, rule: str):
    if isinstance(claim.lhs, OpApp) or isinstance(claim.rhs, OpApp):
        raise Rejected(f"{rule} applies to plain terms only")
    return parse(claim.lhs.text), parse(claim.rhs.text)


def _rule_aq(claim, policy, premises, j):
    a, b = _plain_pair(claim, "AQ")
    need = EQ_BP if claim.eq == EQ_BP else EQ_AQ
    if not _equal_at(need, a, b):
        raise Rejected(f"{claim.lhs} not {need} {claim.rhs}")
    return ADMITTED


def _rule_arith(claim, policy, premises, j):
    if claim.eq != EQ:
        raise Rejected(f"ARITH establishes = only, not {claim.eq}")
    a, b = _plain_pair(claim, "ARITH")
    va, vb = evaluate(a.aq), evaluate(b.aq)
    if va != vb:
        raise Rejected(f"{claim.lhs} has value {va}, {claim.rhs} has value {vb}")
    return ADMITTED


def _rule_def(claim, policy, premises, j):
    apps = [s for s in (claim.lhs, claim.rhs) if isinstance(s, OpApp)]
    if len(apps) != 1:
        raise Rejected("DEF needs exactly one operator application")
    app = apps[0]
    other = claim.rhs if app is claim.lhs else claim.lhs
    value = apply_operator(app)
    if not _equal_at(claim.eq, value, parse(other.text)):
        raise Rejected(f"{app} is {render_text(value.aq)}, not {other}")
    return ADMITTED


def _rule_cong(claim, policy, premises, j):
    (prem,) = premises
    if not (isinstance(claim.lhs, OpApp) and isinstance(claim.rhs, OpApp) and claim.lhs.op == claim.rhs.op):
        raise Rejected("CONG needs the same operator applied on both sides")
    if not (isinstance(prem.lhs, Plain) and isinstance(prem.rhs, Plain)):
        raise Rejected(f"step {j.refs[0]} must relate plain terms")
    if claim.lhs.arg.strip() != prem.lhs.text or claim.rhs.arg.strip() != prem.rhs.text:
        raise Rejected(f"arguments do not match the sides of step {j.refs[0]}")
    if RANK[claim.eq] > RANK[prem.eq]:
        raise Rejected(f"{claim.eq} cannot be concluded from a {prem.eq} premise")
    op = claim.lhs.op
    if policy.mode is Mode.SUMTERM:
        need = LEVEL_SYMBOL[policy.level]
        if RANK[prem.eq] < RANK[need]:
            a, b = parse(prem.lhs.text), parse(prem.rhs.text)
            if not _equal_at(need, a, b):
                raise Rejected(f"{prem.lhs} not {need} {prem.rhs}")
            raise Rejected(f"step {j.refs[0]} states {prem.eq} where {need} is required")
    if policy.mode is Mode.PRAGMATIC and op in SPLIT_OPS and policy.lint is not Lint.OFF:
        if RANK[prem.eq] < RANK[EQ_AQ] and not eq_aq(prem.lhs.text, prem.rhs.text):
            msg = f"equals for equals as argument of {op}: {prem.lhs} and {prem.rhs} differ as AQs"
            if policy.lint is Lint.ERROR:
                raise Rejected(msg)
            return Decision("warned", msg)
    return ADMITTED


def _rule_sym(claim, policy, premises, j):
    (prem,) = premises
    if not (_same_side(claim.lhs, prem.rhs) and _same_side(claim.rhs, prem.lhs)):
        raise Rejected(f"not the reverse of step {j.refs[0]}")
    if RANK[claim.eq] > RANK[prem.eq]:
        raise Rejected(f"{claim.eq} cannot be concluded from a {prem.eq} premise")
    return ADMITTED


def _rule_trans(claim, policy, premises, j):
    if not _same_side(claim.lhs, premises[0].lhs) or not _same_side(claim.rhs, premises[-1].rhs):
        raise Rejected("chain endpoints differ from the claim")
    for (k1, a), (k2, b) in zip(zip(j.refs, premises), zip(j.refs[1:], premises[1:])):
        if not _same_side(a.rhs, b.lhs):
            raise Rejected(f"steps {k1} and {k2} do not chain")
    weakest = min(RANK[p.eq] for p in premises)
    if RANK[claim.eq] > weakest:
        raise Rejected(f"{claim.eq} cannot be concluded from a chain with a weaker link")
    return ADMITTED


_RULES = {
    "AQ": _rule_aq,
    "ARITH": _rule_arith,
    "DEF": _rule_def,
    "CONG": _rule_cong,
    "SYM": _rule_sym,
    "TRANS": _rule_trans,
}


def closed_plain(claim: Claim) -> bool:
    return (
        isinstance(claim.lhs, Plain) and isinstance(claim.rhs, Plain)
        and not side_variables(claim.lhs) and not side_variables(claim.rhs)
    )


def plain_value_pair(claim: Claim):
    return evaluate(parse(claim.lhs.text).aq), evaluate(parse(claim.rhs.text).aq)


__all__ = [
    "Mode", "Lint", "Policy", "Decision", "check_step", "signature_check", "apply_operator",
    "closed_plain", "LEVEL_SYMBOL",
]
