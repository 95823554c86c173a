"""Equational proof objects and the proof generator.

A derivation is a DAG of immutable step nodes.  Every node records the
equation it claims (``lhs``, ``rhs``); the checker in :mod:`.checker`
re-derives each claim locally from the node's kind and premises.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import decimal as dec
from ..config import get_config
from ..errors import ScaleError
from ..terms import ONE, ZERO, AQ, Const, Neg, Sum, Var, replace
from .axioms import Axiom, instance
from .rewrite import NAT_ADD, NEG_SUM, RewriteTrace, negsum_chain, normalize


class Step:
    __slots__ = ()
    kind = "?"

    def premises(self) -> tuple:
        return ()


@dataclass(frozen=True, eq=False, slots=True)
class AxiomStep(Step):
    axiom: str
    bindings: dict
    lhs: AQ
    rhs: AQ
    premise: Step | None = None
    kind = "axiom"

    def premises(self):
        return (self.premise,) if self.premise is not None else ()


@dataclass(frozen=True, eq=False, slots=True)
class Refl(Step):
    term: AQ
    kind = "refl"

    @property
    def lhs(self):
        return self.term

    @property
    def rhs(self):
        return self.term


@dataclass(frozen=True, eq=False, slots=True)
class Sym(Step):
    of: Step
    lhs: AQ
    rhs: AQ
    kind = "sym"

    def premises(self):
        return (self.of,)


@dataclass(frozen=True, eq=False, slots=True)
class Trans(Step):
    first: Step
    second: Step
    lhs: AQ
    rhs: AQ
    kind = "trans"

    def premises(self):
        return (self.first, self.second)


@dataclass(frozen=True, eq=False, slots=True)
class Cong(Step):
    """From ``u = v`` infer ``C[u] = C[v]`` for the context at ``path``."""

    path: tuple
    of: Step
    lhs: AQ
    rhs: AQ
    kind = "cong"

    def premises(self):
        return (self.of,)


@dataclass(frozen=True, eq=False, slots=True)
class Inst(Step):
    """From ``u = v`` infer the instance with variables replaced per ``bindings``."""

    of: Step
    bindings: dict
    lhs: AQ
    rhs: AQ
    kind = "inst"

    def premises(self):
        return (self.of,)


def substitute_vars(t: AQ, bindings: dict) -> AQ:
    if isinstance(t, Var):
        return bindings.get(t.name, t)
    if isinstance(t, Neg):
        return Neg(substitute_vars(t.arg, bindings))
    if isinstance(t, Sum):
        return Sum(tuple(substitute_vars(c, bindings) for c in t.args))
    return t


def inst(s: Step, bindings: dict) -> Inst:
    return Inst(s, bindings, substitute_vars(s.lhs, bindings), substitute_vars(s.rhs, bindings))


def sym(s: Step) -> Step:
    if isinstance(s, Refl):
        return s
    if isinstance(s, Sym):
        return s.of
    return Sym(s, s.rhs, s.lhs)


def trans(a: Step | None, b: Step | None) -> Step | None:
    if a is None or isinstance(a, Refl):
        return b
    if b is None or isinstance(b, Refl):
        return a
    return Trans(a, b, a.lhs, b.rhs)


def cong(context: AQ, path: tuple, s: Step) -> Step:
    """Lift ``s`` into ``context`` whose subterm at path is ``s.lhs``."""
    if not path:
        return s
    return Cong(tuple(path), s, context, replace(context, path, s.rhs))


def topological(root: Step) -> list:
    """Premises before conclusions, each node once (iterative)."""
    order, seen = [], set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in reversed(node.premises()):
            if id(p) not in seen:
                stack.append((p, False))
    return order


@dataclass(frozen=True, eq=False)
class Derivation:
    lhs: AQ
    rhs: AQ
    root: Step

    @property
    def goal(self) -> tuple:
        return self.lhs, self.rhs

    @property
    def steps(self) -> list:
        return topological(self.root)

    def __len__(self):
        return len(self.steps)

    def __bool__(self):
        # without this, truth testing would fall back to __len__ and walk the proof
        return True


@dataclass(frozen=True)
class NotDerivable:
    """The two sides have distinct normal forms, hence denote distinct values."""

    lhs: AQ
    rhs: AQ
    lhs_normal_form: AQ
    rhs_normal_form: AQ

    def __bool__(self):
        return False


def axiom_step(axiom: Axiom, premise: Step | None = None, **bindings) -> AxiomStep:
    lhs, rhs, _ = instance(axiom, bindings)
    return AxiomStep(str(axiom), bindings, lhs, rhs, premise)


class Prover:
    """Builds derivations; successor and addition lemmas are shared between goals."""

    def __init__(self, proof_bound: int | None = None):
        self.proof_bound = get_config().proof_bound if proof_bound is None else proof_bound
        self._succ: dict[str, Step] = {}
        self._add: dict[tuple, Step] = {}
        self._top: dict[str, str] = {}
        self._negsum: Step | None = None

    @property
    def negsum_lemma(self) -> Step:
        """``(-x)+(-y) = -(x+y)`` for variables x and y."""
        if self._negsum is None:
            self._negsum = self.trace_step(negsum_chain(Var("x"), Var("y")))
        return self._negsum

    def succ_step(self, sigma: str) -> Step:
        """``sigma + 1 = sigma'`` from the +1 equations."""
        hit = self._succ.get(sigma)
        if hit is not None:
            return hit
        if sigma == "0":
            s = trans(axiom_step(Axiom.COMM, x=ZERO, y=ONE), axiom_step(Axiom.ADD_ZERO, x=ONE))
        elif sigma == "9":
            s = axiom_step(Axiom.NINE_ONE)
        elif len(sigma) == 1:
            s = sym(axiom_step(Axiom.DIGIT_SUCC, d=sigma))
        elif sigma[-1] != "9":
            s = axiom_step(Axiom.APPEND_SUCC, sigma=sigma[:-1], d=sigma[-1])
        else:
            premise = self.succ_step(sigma[:-1])
            s = axiom_step(Axiom.CARRY_COND, premise, sigma=sigma[:-1], tau=premise.rhs.digits)
        self._succ[sigma] = s
        return s

    def add_step(self, sigma: str, tau: str) -> Step:
        """``sigma + tau = rho`` by unfolding the smaller operand into +1 steps."""
        if dec.compare(tau, sigma) > 0:
            swap = axiom_step(Axiom.COMM, x=Const(sigma), y=Const(tau))
            return trans(swap, self.add_step(tau, sigma))
        if int(tau) > self.proof_bound:
            raise ScaleError(f"addition proof with operand {tau} exceeds bound {self.proof_bound}")
        if tau == "0":
            return axiom_step(Axiom.ADD_ZERO, x=Const(sigma))
        done = self._add.get((sigma, tau))
        if done is not None:
            return done
        k = self._top.get(sigma)
        if k is None:
            k, last = "1", self.succ_step(sigma)
            self._add[(sigma, "1")] = last
        else:
            last = self._add[(sigma, k)]
        while dec.compare(k, tau) < 0:
            # sigma + (k+1) = sigma + (k + 1) = (sigma+k)+1 = rho_k + 1 = rho_(k+1)
            nxt = dec.succ(k)
            s, kc, rho = Const(sigma), Const(k), last.rhs
            split = cong(Sum((s, Const(nxt))), (1,), sym(self.succ_step(k)))
            reassoc = sym(axiom_step(Axiom.ASSOC, x=s, y=kc, z=ONE))
            inner = cong(reassoc.rhs, (0,), last)
            last = trans(trans(trans(split, reassoc), inner), self.succ_step(rho.digits))
            self._add[(sigma, nxt)] = last
            k = nxt
        self._top[sigma] = k
        return last

    def rule_step(self, step) -> Step:
        """The equation old = new used by one rewrite step."""
        b = step.bindings
        if step.rule == NAT_ADD:
            s = self.add_step(b["sigma"], b["tau"])
        elif step.rule == NEG_SUM:
            s = inst(self.negsum_lemma, {"x": b["x"], "y": b["y"]})
        elif step.rule == Axiom.CARRY_COND.value:
            s = self.succ_step(b["sigma"] + "9")
        else:
            s = AxiomStep(step.rule, b, step.lhs, step.rhs)
        return sym(s) if step.reverse else s

    def trace_step(self, trace: RewriteTrace) -> Step | None:
        """``start = normal_form`` from a rewrite trace (None when empty)."""
        out = None
        current = trace.start
        for st in trace.steps:
            out = trans(out, cong(current, st.path, self.rule_step(st)))
            current = st.result
        return out

    def prove(self, lhs: AQ, rhs: AQ):
        left, right = normalize(lhs), normalize(rhs)
        if left.normal_form != right.normal_form:
            return NotDerivable(lhs, rhs, left.normal_form, right.normal_form)
        a, b = self.trace_step(left), self.trace_step(right)
        root = trans(a, sym(b) if b is not None else None) or Refl(lhs)
        return Derivation(lhs, rhs, root)


def prove(lhs: AQ, rhs: AQ, prover: Prover | None = None):
    """A derivation of ``lhs = rhs`` or :class:`NotDerivable`."""
    return (prover or Prover()).prove(lhs, rhs)
