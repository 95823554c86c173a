"""Independent verification of derivations and rewrite traces.

Nothing here calls the prover or the rewriter: axiom instances, positions
and the digit successor table are rebuilt locally so that a bug in the
generator cannot hide itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..config import get_config
from ..errors import ScriptError, SumtermsError
from ..terms import Const, Neg, Sum, Var

_NEXT = {"0": "1", "1": "2", "2": "3", "3": "4", "4": "5", "5": "6", "6": "7", "7": "8", "8": "9"}
_PLUS_ONE = {"DigitSucc", "NineOne", "AppendSucc", "CarryCond"}


class Reject(Exception):
    pass


@dataclass
class CheckResult:
    ok: bool
    index: int | None = None
    reason: str = ""
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok" + "".join(f" ({n})" for n in self.notes)
        return f"rejected at step {self.index}: {self.reason}"


# -- local term helpers ------------------------------------------------------

def _at(t, path):
    for i in path:
        if isinstance(t, Sum) and 0 <= i < len(t.args):
            t = t.args[i]
        elif isinstance(t, Neg) and i == 0:
            t = t.arg
        else:
            raise Reject(f"position {list(path)} does not exist")
    return t


def _put(t, path, new):
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(t, Sum) and 0 <= head < len(t.args):
        return Sum(t.args[:head] + (_put(t.args[head], rest, new),) + t.args[head + 1:])
    if isinstance(t, Neg) and head == 0:
        return Neg(_put(t.arg, rest, new))
    raise Reject(f"position {list(path)} does not exist")


def _subst(t, b):
    if isinstance(t, Var):
        return b.get(t.name, t)
    if isinstance(t, Neg):
        return Neg(_subst(t.arg, b))
    if isinstance(t, Sum):
        return Sum(tuple(_subst(c, b) for c in t.args))
    return t


def _numeral(name, value, positive=True):
    ok = (
        isinstance(value, str) and value.isascii() and value.isdigit()
        and (value[0] != "0" or (value == "0" and not positive))
    )
    if not ok:
        raise Reject(f"{name}={value!r} is not a {'positive ' if positive else ''}decimal")
    return value


def _digit(value, allowed):
    if not (isinstance(value, str) and len(value) == 1 and value in allowed):
        raise Reject(f"digit {value!r} outside {allowed}")
    return value


def _term(b, name):
    if name not in b:
        raise Reject(f"missing binding {name}")
    return b[name]


def axiom_sides(axiom: str, b: dict):
    """(lhs, rhs, premise equation or None) of an axiom instance."""
    if axiom == "Assoc":
        x, y, z = _term(b, "x"), _term(b, "y"), _term(b, "z")
        return Sum((Sum((x, y)), z)), Sum((x, Sum((y, z)))), None
    if axiom == "Comm":
        x, y = _term(b, "x"), _term(b, "y")
        return Sum((x, y)), Sum((y, x)), None
    if axiom == "AddZero":
        x = _term(b, "x")
        return Sum((x, Const("0"))), x, None
    if axiom == "AddOpp":
        x = _term(b, "x")
        return Sum((x, Neg(x))), Const("0"), None
    if axiom == "DoubleNeg":
        x = _term(b, "x")
        return Neg(Neg(x)), x, None
    if axiom == "DigitSucc":
        d = _digit(_term(b, "d"), "12345678")
        return Const(_NEXT[d]), Sum((Const(d), Const("1"))), None
    if axiom == "NineOne":
        return Sum((Const("9"), Const("1"))), Const("10"), None
    if axiom == "AppendSucc":
        s = _numeral("sigma", _term(b, "sigma"))
        d = _digit(_term(b, "d"), "012345678")
        return Sum((Const(s + d), Const("1"))), Const(s + _NEXT[d]), None
    if axiom == "CarryCond":
        s = _numeral("sigma", _term(b, "sigma"))
        t = _numeral("tau", _term(b, "tau"))
        return Sum((Const(s + "9"), Const("1"))), Const(t + "0"), (Sum((Const(s), Const("1"))), Const(t))
    if axiom == "PolyInfix":
        args = tuple(_term(b, "args"))
        if len(args) < 3:
            raise Reject("PolyInfix needs at least three summands")
        return Sum(args), Sum(args[:-2] + (Sum(args[-2:]),)), None
    raise Reject(f"unknown axiom {axiom!r}")


# -- derivations ---------------------------------------------------------------

def _walk(root, skip):
    """Post-order over (node, in_premise) pairs, pruning pairs in ``skip``.

    ``in_premise`` marks nodes below the premise of a carry step, where only
    the +1 equations may be used.
    """
    order, seen = [], set()
    push, pop = (stack := [(root, False, False)]).append, stack.pop
    while stack:
        node, frag, done = pop()
        if done:
            order.append((node, frag))
            continue
        key = 2 * id(node) + frag
        if key in seen or key in skip:
            continue
        seen.add(key)
        push((node, frag, True))
        inner = frag or (node.kind == "axiom" and node.axiom == "CarryCond")
        for p in reversed(node.premises()):
            push((p, inner, False))
    return order


def _local(node, fragment: bool):
    kind = node.kind
    if kind == "axiom":
        if fragment and node.axiom not in _PLUS_ONE:
            raise Reject(f"{node.axiom} is outside the +1 fragment allowed in a carry premise")
        lhs, rhs, premise = axiom_sides(node.axiom, node.bindings)
        if node.lhs != lhs or node.rhs != rhs:
            raise Reject(f"{node.axiom} instance does not match its claimed equation")
        if premise is None:
            if node.premise is not None:
                raise Reject(f"{node.axiom} takes no premise")
        else:
            if node.premise is None:
                raise Reject(f"{node.axiom} is conditional and lacks a premise derivation")
            if (node.premise.lhs, node.premise.rhs) != premise:
                raise Reject(f"{node.axiom} premise proves the wrong equation")
    elif kind == "refl":
        if node.lhs != node.rhs:
            raise Reject("reflexivity with different sides")
    elif kind == "sym":
        if node.lhs != node.of.rhs or node.rhs != node.of.lhs:
            raise Reject("symmetry does not swap its premise")
    elif kind == "trans":
        if node.first.rhs != node.second.lhs:
            raise Reject("transitivity premises do not chain")
        if node.lhs != node.first.lhs or node.rhs != node.second.rhs:
            raise Reject("transitivity conclusion does not match its premises")
    elif kind == "inst":
        b = node.bindings
        if not all(isinstance(k, str) for k in b):
            raise Reject("instantiation keys must be variable names")
        if _subst(node.of.lhs, b) != node.lhs or _subst(node.of.rhs, b) != node.rhs:
            raise Reject("instantiation does not match its premise")
    elif kind == "cong":
        path = tuple(node.path)
        if _at(node.lhs, path) != node.of.lhs or _at(node.rhs, path) != node.of.rhs:
            raise Reject("congruence premise is not at the stated position")
        if _put(node.lhs, path, node.of.rhs) != node.rhs:
            raise Reject("congruence changes the context")
    else:
        raise Reject(f"unknown step kind {kind!r}")


def check(derivation, cache: dict | None = None) -> CheckResult:
    """Verify every step and that the root proves the stated goal.

    ``cache`` (a dict shared across calls) lets a batch of derivations that
    share lemma nodes check each node once.  It maps node ids to the nodes
    themselves, which keeps them alive so an id is never reused.
    """
    order = _walk(derivation.root, cache if cache is not None else ())
    for index, (node, frag) in enumerate(order):
        try:
            _local(node, frag)
        except Reject as exc:
            return CheckResult(False, index, f"{node.kind}: {exc}")
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            return CheckResult(False, index, f"{node.kind}: malformed step ({exc})")
        if cache is not None:
            cache[2 * id(node) + frag] = node
    root = derivation.root
    if root.lhs != derivation.lhs or root.rhs != derivation.rhs:
        return CheckResult(False, max(len(order) - 1, 0), "derivation does not end at the goal")
    return CheckResult(True)


# -- rewrite traces --------------------------------------------------------------

def _count_up(sigma: str, times: int) -> str:
    for _ in range(times):
        i = len(sigma) - 1
        while i >= 0 and sigma[i] == "9":
            i -= 1
        sigma = ("1" if i < 0 else sigma[:i] + _NEXT[sigma[i]]) + "0" * (len(sigma) - 1 - i)
    return sigma


def _nat_add_ok(b: dict, bound: int, notes: list) -> tuple:
    s = _numeral("sigma", _term(b, "sigma"))
    t = _numeral("tau", _term(b, "tau"))
    r = _numeral("rho", _term(b, "rho"))
    small = min(int(s), int(t))
    if small <= bound:
        got = _count_up(max(s, t, key=lambda v: (len(v), v)), small)
    else:
        got = str(int(s) + int(t))
        notes.append(f"NatAdd {s}+{t} checked arithmetically")
    if got != r:
        raise Reject(f"NatAdd claims {s}+{t}={r}")
    return Sum((Const(s), Const(t))), Const(r)


def _negsum_proof_ok() -> bool:
    """Replay, with variables, the primitive proof of (-x)+(-y) = -(x+y)."""
    global _NEGSUM_OK
    if _NEGSUM_OK is None:
        x, y = Var("x"), Var("y")
        s0, xy = Sum((Neg(x), Neg(y))), Sum((x, y))
        z, nxy = Const("0"), Neg(xy)
        moves = [
            ("AddZero", (), True, {"x": s0}),
            ("AddOpp", (1,), True, {"x": xy}),
            ("Assoc", (), True, {"x": s0, "y": xy, "z": nxy}),
            ("Assoc", (0,), False, {"x": Neg(x), "y": Neg(y), "z": xy}),
            ("Comm", (0, 1, 1), False, {"x": x, "y": y}),
            ("Assoc", (0, 1), True, {"x": Neg(y), "y": y, "z": x}),
            ("Comm", (0, 1, 0), False, {"x": Neg(y), "y": y}),
            ("AddOpp", (0, 1, 0), False, {"x": y}),
            ("Comm", (0, 1), False, {"x": z, "y": x}),
            ("AddZero", (0, 1), False, {"x": x}),
            ("Comm", (0,), False, {"x": Neg(x), "y": x}),
            ("AddOpp", (0,), False, {"x": x}),
            ("Comm", (), False, {"x": z, "y": nxy}),
            ("AddZero", (), False, {"x": nxy}),
        ]
        current = s0
        try:
            for rule, path, rev, b in moves:
                lhs, rhs, _ = axiom_sides(rule, b)
                old, new = (rhs, lhs) if rev else (lhs, rhs)
                if _at(current, path) != old:
                    raise Reject(rule)
                current = _put(current, path, new)
            _NEGSUM_OK = current == nxy
        except Reject:
            _NEGSUM_OK = False
    return _NEGSUM_OK


_NEGSUM_OK = None


def _is_normal(t) -> bool:
    if isinstance(t, Const):
        return True
    return isinstance(t, Neg) and isinstance(t.arg, Const) and t.arg.digits != "0"


def check_trace(trace, bound: int | None = None, premise: bool = False) -> CheckResult:
    """Replay a rewrite trace step by step."""
    bound = get_config().proof_bound if bound is None else bound
    notes: list = []
    current = trace.start
    for index, st in enumerate(trace.steps):
        try:
            if premise and st.rule not in _PLUS_ONE:
                raise Reject(f"{st.rule} is outside the +1 fragment allowed in a carry premise")
            if st.rule == "NatAdd":
                lhs, rhs = _nat_add_ok(st.bindings, bound, notes)
                cond = None
            elif st.rule == "NegSum":
                if not _negsum_proof_ok():
                    raise Reject("the NegSum lemma does not replay")
                x, y = _term(st.bindings, "x"), _term(st.bindings, "y")
                lhs, rhs, cond = Sum((Neg(x), Neg(y))), Neg(Sum((x, y))), None
            else:
                lhs, rhs, cond = axiom_sides(st.rule, st.bindings)
            old, new = (rhs, lhs) if st.reverse else (lhs, rhs)
            if _at(current, tuple(st.path)) != old:
                raise Reject(f"{st.rule} does not match the term at {list(st.path)}")
            current = _put(current, tuple(st.path), new)
            if current != st.result:
                raise Reject("recorded result differs from the replayed one")
            if cond is not None:
                if st.premise is None:
                    raise Reject("conditional step lacks its premise trace")
                if (st.premise.start, st.premise.normal_form) != cond:
                    raise Reject("premise trace proves the wrong equation")
                sub = check_trace(st.premise, bound, premise=True)
                if not sub:
                    raise Reject(f"premise: {sub.reason}")
        except Reject as exc:
            return CheckResult(False, index, f"{st.rule}: {exc}")
        except (KeyError, TypeError, ValueError) as exc:
            return CheckResult(False, index, f"{st.rule}: malformed step ({exc})")
    if current != trace.normal_form:
        return CheckResult(False, len(trace.steps), "trace does not end at its normal form")
    if not premise and not _is_normal(current):
        return CheckResult(False, len(trace.steps), "final term is not a normal form")
    return CheckResult(True, notes=notes)


def check_text(text: str) -> CheckResult:
    """Check a derivation given in the line-oriented JSON format."""
    from .serialize import load_derivation

    try:
        d = load_derivation(text)
    except (ScriptError, ValueError, SumtermsError) as exc:
        return CheckResult(False, None, f"unreadable derivation: {exc}")
    return check(d)
