"""Normalization of closed AQs to elements of Z_d, with replayable traces.

Rules are applied one at a time at explicit positions.  Commutativity is
never used blindly: each use is part of a fixed local manoeuvre, so the
process terminates.

Two derived rules shorten traces.  ``NatAdd`` (``sigma + tau -> rho`` by
column addition) is expanded by the prover into a chain of +1 equations.
``NegSum`` (``(-x)+(-y) -> -(x+y)``) is a lemma proved once, with variables,
from Assoc, Comm, AddZero and AddOpp; :func:`negsum_chain` gives that proof
as a primitive trace.
"""
from __future__ import annotations

import random as _random
from dataclasses import dataclass

from .. import decimal as dec
from ..config import get_config
from ..errors import OpenTerm, ScaleError, SortError
from ..semantics import DecimalValue, is_decimal_normal_form
from ..terms import ONE, ZERO, AQ, Const, Neg, Sum, Var, replace, subterm
from .axioms import Axiom, instance, plus_one_digits

NAT_ADD = "NatAdd"
NEG_SUM = "NegSum"
DERIVED_RULES = (NAT_ADD, NEG_SUM)


def derived_sides(rule: str, b: dict):
    if rule == NAT_ADD:
        return Sum((Const(b["sigma"]), Const(b["tau"]))), Const(b["rho"])
    x, y = b["x"], b["y"]
    return Sum((Neg(x), Neg(y))), Neg(Sum((x, y)))


@dataclass(frozen=True, eq=False, slots=True)
class TraceStep:
    rule: str
    reverse: bool
    path: tuple
    bindings: dict
    result: AQ
    premise: "RewriteTrace | None" = None
    lhs: AQ | None = None
    rhs: AQ | None = None

    def sides(self):
        """The (lhs, rhs) of the equation instance, in stated orientation."""
        return self.lhs, self.rhs


class RewriteTrace:
    """A start term, the rule applications that rewrite it, and its normal form."""

    def __init__(self, start: AQ, steps=(), normal_form: AQ | None = None, factory=None):
        self.start = start
        self._steps = None if factory is not None else tuple(steps)
        self._factory = factory
        self.normal_form = normal_form if normal_form is not None else (
            self._steps[-1].result if self._steps else start
        )

    @property
    def steps(self) -> tuple:
        if self._steps is None:
            self._steps = tuple(self._factory())
        return self._steps

    def terms(self):
        """start, then the result of each step."""
        yield self.start
        for s in self.steps:
            yield s.result

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        return f"RewriteTrace({self.start!r} ->* {self.normal_form!r}, {len(self.steps)} steps)"


class _Rewriter:
    def __init__(self, start: AQ, rng: _random.Random | None = None):
        self.current = start
        self.start = start
        self.steps: list[TraceStep] = []
        self.rng = rng

    def trace(self) -> RewriteTrace:
        return RewriteTrace(self.start, self.steps, self.current)

    # -- single steps ------------------------------------------------------

    def apply(self, rule, path=(), reverse=False, premise=None, **bindings):
        if rule in DERIVED_RULES:
            lhs, rhs = derived_sides(rule, bindings)
        else:
            lhs, rhs, _ = instance(rule, bindings)
        old, new = (rhs, lhs) if reverse else (lhs, rhs)
        here = subterm(self.current, path)
        if here != old:
            raise AssertionError(f"{rule} does not match {here!r} at {path}")
        self.current = replace(self.current, path, new)
        name = rule.value if isinstance(rule, Axiom) else rule
        self.steps.append(TraceStep(name, reverse, tuple(path), bindings, self.current, premise, lhs, rhs))
        return new

    def succ(self, path, sigma: str) -> str:
        """Rewrite ``sigma + 1`` at path to its numeral with a +1 equation."""
        if sigma == "0":
            self.apply(Axiom.COMM, path, x=ZERO, y=ONE)
            self.apply(Axiom.ADD_ZERO, path, x=ONE)
            return "1"
        if sigma == "9":
            self.apply(Axiom.NINE_ONE, path)
            return "10"
        if len(sigma) == 1:
            self.apply(Axiom.DIGIT_SUCC, path, reverse=True, d=sigma)
            return subterm(self.current, path).digits
        head, last = sigma[:-1], sigma[-1]
        if last != "9":
            self.apply(Axiom.APPEND_SUCC, path, sigma=head, d=last)
            return subterm(self.current, path).digits
        premise = successor_trace(head)
        tau = premise.normal_form.digits
        self.apply(Axiom.CARRY_COND, path, premise=premise, sigma=head, tau=tau)
        return tau + "0"

    def pred(self, path, tau: str) -> str:
        """Rewrite the numeral ``tau`` at path to ``tau- + 1``."""
        if tau == "1":
            self.apply(Axiom.ADD_ZERO, path, reverse=True, x=ONE)
            self.apply(Axiom.COMM, path, x=ONE, y=ZERO)
            return "0"
        if tau == "10":
            self.apply(Axiom.NINE_ONE, path, reverse=True)
            return "9"
        if len(tau) == 1:
            d = dec.pred(tau)
            self.apply(Axiom.DIGIT_SUCC, path, d=d)
            return d
        head, last = tau[:-1], tau[-1]
        if last != "0":
            d = str(int(last) - 1)
            self.apply(Axiom.APPEND_SUCC, path, reverse=True, sigma=head, d=d)
            return head + d
        sigma = dec.pred(head)
        premise = successor_trace(sigma)
        self.apply(Axiom.CARRY_COND, path, reverse=True, premise=premise, sigma=sigma, tau=head)
        return sigma + "9"

    def split_numeral(self, path, left: str, right: str):
        """Rewrite the numeral left+right at path into ``left + right``."""
        total = dec.add(left, right)
        if right == "1":
            self.pred(path, total)
        elif left == "1":
            self.pred(path, total)
            self.apply(Axiom.COMM, path, x=Const(right), y=ONE)
        else:
            self.apply(NAT_ADD, path, reverse=True, sigma=left, tau=right, rho=total)

    def negsum_fold(self, path, a, b):
        """(-a)+(-b) -> -(a+b)."""
        self.apply(NEG_SUM, path, x=a, y=b)

    def negsum_unfold(self, path, a, b):
        """-(a+b) -> (-a)+(-b)."""
        self.apply(NEG_SUM, path, reverse=True, x=a, y=b)

    # -- combining normal forms --------------------------------------------

    def coin(self) -> bool:
        return self.rng is not None and self.rng.random() < 0.5

    def neg_nf(self, path):
        arg = subterm(self.current, path).arg
        if arg == ZERO:
            n0 = Neg(ZERO)
            self.apply(Axiom.ADD_ZERO, path, reverse=True, x=n0)
            self.apply(Axiom.COMM, path, x=n0, y=ZERO)
            self.apply(Axiom.ADD_OPP, path, x=ZERO)
        elif isinstance(arg, Neg):
            self.apply(Axiom.DOUBLE_NEG, path, x=arg.arg)

    def add_nf(self, path):
        a, b = subterm(self.current, path).args
        if b == ZERO:
            self.apply(Axiom.ADD_ZERO, path, x=a)
        elif a == ZERO:
            self.apply(Axiom.COMM, path, x=a, y=b)
            self.apply(Axiom.ADD_ZERO, path, x=b)
        elif isinstance(a, Const) and isinstance(b, Const):
            self.add_positive(path, a.digits, b.digits)
        elif isinstance(a, Const):
            self.sub_nf(path, a.digits, b.arg.digits)
        elif isinstance(b, Const):
            self.apply(Axiom.COMM, path, x=a, y=b)
            self.sub_nf(path, b.digits, a.arg.digits)
        else:
            self.negsum_fold(path, a.arg, b.arg)
            self.add_positive(tuple(path) + (0,), a.arg.digits, b.arg.digits)

    def add_positive(self, path, sigma: str, tau: str):
        if tau == "1":
            self.succ(path, sigma)
        elif sigma == "1":
            self.apply(Axiom.COMM, path, x=ONE, y=Const(tau))
            self.succ(path, tau)
        else:
            if self.coin():
                self.apply(Axiom.COMM, path, x=Const(sigma), y=Const(tau))
                sigma, tau = tau, sigma
            self.apply(NAT_ADD, path, sigma=sigma, tau=tau, rho=dec.add(sigma, tau))

    def sub_nf(self, path, sigma: str, tau: str):
        """sigma + (-tau) at path, both positive."""
        path = tuple(path)
        c = dec.compare(sigma, tau)
        s, t = Const(sigma), Const(tau)
        if c == 0:
            self.apply(Axiom.ADD_OPP, path, x=s)
        elif c > 0:
            delta = dec.sub(sigma, tau)
            d = Const(delta)
            self.split_numeral(path + (0,), delta, tau)
            self.apply(Axiom.ASSOC, path, x=d, y=t, z=Neg(t))
            self.apply(Axiom.ADD_OPP, path + (1,), x=t)
            self.apply(Axiom.ADD_ZERO, path, x=d)
        else:
            delta = dec.sub(tau, sigma)
            d = Const(delta)
            self.split_numeral(path + (1, 0), delta, sigma)
            self.negsum_unfold(path + (1,), d, s)
            self.apply(Axiom.COMM, path + (1,), x=Neg(d), y=Neg(s))
            self.apply(Axiom.ASSOC, path, reverse=True, x=s, y=Neg(s), z=Neg(d))
            self.apply(Axiom.ADD_OPP, path + (0,), x=s)
            self.apply(Axiom.COMM, path, x=ZERO, y=Neg(d))
            self.apply(Axiom.ADD_ZERO, path, x=Neg(d))

    # -- strategies --------------------------------------------------------

    def random_redexes(self):
        """Run to normal form, choosing a random applicable move each time."""
        rng = self.rng
        while not is_decimal_normal_form(self.current):
            moves = []
            stack = [(self.current, ())]
            while stack:
                t, pos = stack.pop()
                if isinstance(t, Sum):
                    stack.extend((c, pos + (i,)) for i, c in enumerate(t.args))
                    if len(t.args) > 2:
                        moves.append(("poly", pos))
                        continue
                    a, b = t.args
                    if isinstance(a, Sum) and len(a.args) == 2:
                        moves.append(("assoc", pos))
                    if is_decimal_normal_form(a) and is_decimal_normal_form(b):
                        moves.append(("add", pos))
                elif isinstance(t, Neg):
                    stack.append((t.arg, pos + (0,)))
                    if isinstance(t.arg, Neg):
                        moves.append(("dneg", pos))
                    elif t.arg == ZERO:
                        moves.append(("neg", pos))
            if not moves:
                raise AssertionError(f"stuck at {self.current!r}")
            kind, pos = moves[rng.randrange(len(moves))]
            t = subterm(self.current, pos)
            if kind == "poly":
                self.apply(Axiom.POLY_INFIX, pos, args=t.args)
            elif kind == "assoc":
                (x, y), z = t.args[0].args, t.args[1]
                self.apply(Axiom.ASSOC, pos, x=x, y=y, z=z)
            elif kind == "add":
                self.add_nf(pos)
            elif kind == "dneg":
                self.apply(Axiom.DOUBLE_NEG, pos, x=t.arg.arg)
            else:
                self.neg_nf(pos)


def _negsum_moves(a: AQ, b: AQ):
    s0 = Sum((Neg(a), Neg(b)))
    ab = Sum((a, b))
    nab = Neg(ab)
    return [
        (Axiom.ADD_ZERO, (), True, dict(x=s0)),
        (Axiom.ADD_OPP, (1,), True, dict(x=ab)),
        (Axiom.ASSOC, (), True, dict(x=s0, y=ab, z=nab)),
        (Axiom.ASSOC, (0,), False, dict(x=Neg(a), y=Neg(b), z=ab)),
        (Axiom.COMM, (0, 1, 1), False, dict(x=a, y=b)),
        (Axiom.ASSOC, (0, 1), True, dict(x=Neg(b), y=b, z=a)),
        (Axiom.COMM, (0, 1, 0), False, dict(x=Neg(b), y=b)),
        (Axiom.ADD_OPP, (0, 1, 0), False, dict(x=b)),
        (Axiom.COMM, (0, 1), False, dict(x=ZERO, y=a)),
        (Axiom.ADD_ZERO, (0, 1), False, dict(x=a)),
        (Axiom.COMM, (0,), False, dict(x=Neg(a), y=a)),
        (Axiom.ADD_OPP, (0,), False, dict(x=a)),
        (Axiom.COMM, (), False, dict(x=ZERO, y=nab)),
        (Axiom.ADD_ZERO, (), False, dict(x=nab)),
    ]


def negsum_chain(a: AQ, b: AQ) -> RewriteTrace:
    """``(-a)+(-b)`` rewritten to ``-(a+b)`` with primitive equations only."""
    r = _Rewriter(Sum((Neg(a), Neg(b))))
    for rule, rel, rev, bind in _negsum_moves(a, b):
        r.apply(rule, rel, rev, **bind)
    return r.trace()


def _check_closed(a: AQ):
    stack = [a]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            raise OpenTerm(f"variable {t.name} in a term to normalize")
        if isinstance(t, Neg):
            stack.append(t.arg)
        elif isinstance(t, Sum):
            stack.extend(t.args)


def _innermost(t: AQ, prefix: tuple, segments: list) -> AQ:
    """Normal form of t; the local rewrites used are appended to segments.

    Each rewrite runs on a small local term (the node with normalized
    children) and is lifted to the global position when the trace is read.
    """
    if isinstance(t, Const):
        return t
    if isinstance(t, Neg):
        arg = _innermost(t.arg, prefix + (0,), segments)
        r = _Rewriter(Neg(arg))
        r.neg_nf(())
        if r.steps:
            segments.append((prefix, r.steps))
        return r.current
    if len(t.args) > 2:
        r = _Rewriter(t)
        while len(r.current.args) > 2:
            r.apply(Axiom.POLY_INFIX, (), args=r.current.args)
        if r.steps:
            segments.append((prefix, r.steps))
        t = r.current
    a = _innermost(t.args[0], prefix + (0,), segments)
    b = _innermost(t.args[1], prefix + (1,), segments)
    r = _Rewriter(Sum((a, b)))
    r.add_nf(())
    if r.steps:
        segments.append((prefix, r.steps))
    return r.current


def _lift(start: AQ, segments: list) -> list:
    if len(segments) == 1 and not segments[0][0]:
        return segments[0][1]
    out = []
    current = start
    for prefix, steps in segments:
        for s in steps:
            current = replace(current, prefix, s.result)
            out.append(TraceStep(s.rule, s.reverse, prefix + s.path, s.bindings, current, s.premise, s.lhs, s.rhs))
    return out


def normalize(a: AQ, strategy: str = "innermost", seed: int | None = None) -> RewriteTrace:
    """Rewrite a closed AQ to its normal form in Z_d.

    ``strategy`` is ``"innermost"`` (deterministic) or ``"random"`` (random
    choice of redex and of operand order, reproducible through ``seed``).
    """
    _check_closed(a)
    if is_decimal_normal_form(a):
        return RewriteTrace(a)
    if strategy == "innermost":
        segments: list = []
        nf = _innermost(a, (), segments)
        return RewriteTrace(a, normal_form=nf, factory=lambda: _lift(a, segments))
    if strategy == "random":
        r = _Rewriter(a, _random.Random(seed))
        r.random_redexes()
        return r.trace()
    raise ValueError(f"unknown strategy {strategy!r}")


def successor_trace(sigma: str) -> RewriteTrace:
    """``sigma + 1`` rewritten to its numeral (the premise of a carry)."""
    r = _Rewriter(Sum((Const(sigma), ONE)))
    r.succ((), sigma)
    return r.trace()


def successor_chain_add(m: DecimalValue, n: DecimalValue, bound: int | None = None) -> RewriteTrace:
    """m + n computed by n uses of the +1 equations.

    Each round moves one unit from the right operand to the left:
    ``acc + (k+1)`` becomes ``(acc+1) + k`` and ``acc+1`` is rewritten to
    its numeral.  Only the normal form is computed eagerly; the step list is
    regenerated when first asked for.
    """
    bound = get_config().successor_bound if bound is None else bound
    if m.negative or n.negative:
        raise SortError("successor chains add naturals only")
    count = int(n.digits)
    if count > bound:
        raise ScaleError(f"successor chain of length {count} exceeds bound {bound}")
    acc = m.digits
    for _ in range(count):
        acc = plus_one_digits(acc)
    start = Sum((Const(m.digits), Const(n.digits)))

    def steps():
        r = _Rewriter(start)
        if n.digits == "0":
            r.apply(Axiom.ADD_ZERO, (), x=Const(m.digits))
            return r.steps
        left, rest = m.digits, n.digits
        while rest != "1":
            rest = r.pred((1,), rest)
            r.apply(Axiom.COMM, (1,), x=Const(rest), y=ONE)
            r.apply(Axiom.ASSOC, (), reverse=True, x=Const(left), y=ONE, z=Const(rest))
            left = r.succ((0,), left)
        r.succ((), left)
        return r.steps

    return RewriteTrace(start, normal_form=Const(acc), factory=steps)
