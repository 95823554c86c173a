"""Digit successor table and the axiom families of the integer specification.

Equations, in their stated orientation::

    Assoc       (x+y)+z = x+(y+z)
    Comm        x+y = y+x
    AddZero     x+0 = x
    AddOpp      x+(-x) = 0
    DoubleNeg   -(-x) = x
    DigitSucc   d' = d+1               d in 1..8
    NineOne     9+1 = 10
    AppendSucc  sigma d + 1 = sigma d'  d in 0..8
    CarryCond   sigma+1 = tau  ->  sigma 9 + 1 = tau 0

``sigma`` and ``tau`` range over positive decimals (no leading zero), so
``sigma d`` is always a numeral of at least two digits.  ``PolyInfix`` is
the law tying a poly-infix sum to binary sums,
``t1+...+tn+t(n+1) = t1+...+(tn+t(n+1))``.
"""
from __future__ import annotations

import enum

from ..errors import DomainError
from ..terms import ONE, ZERO, Const, Neg, Sum, is_positive_decimal


class Axiom(str, enum.Enum):
    ASSOC = "Assoc"
    COMM = "Comm"
    ADD_ZERO = "AddZero"
    ADD_OPP = "AddOpp"
    DOUBLE_NEG = "DoubleNeg"
    DIGIT_SUCC = "DigitSucc"
    NINE_ONE = "NineOne"
    APPEND_SUCC = "AppendSucc"
    CARRY_COND = "CarryCond"
    POLY_INFIX = "PolyInfix"

    def __str__(self):
        return self.value


PLUS_ONE_FAMILY = frozenset({Axiom.DIGIT_SUCC, Axiom.NINE_ONE, Axiom.APPEND_SUCC, Axiom.CARRY_COND})

_SUCCESSOR = dict(zip("012345678", "123456789"))


def digit_successor(d):
    """d' for a digit d in 0..8; 9 has no successor digit."""
    key = str(d)
    if key not in _SUCCESSOR:
        raise DomainError(f"digit {d} has no successor digit")
    succ = _SUCCESSOR[key]
    return int(succ) if isinstance(d, int) else succ


def _positive(name, digits):
    if not isinstance(digits, str) or not is_positive_decimal(digits):
        raise DomainError(f"{name} must be a positive decimal, got {digits!r}")


def _digit(d, allowed):
    if not isinstance(d, str) or d not in allowed:
        raise DomainError(f"digit {d!r} outside {allowed}")


def instance(axiom: Axiom, b: dict):
    """Instantiate an axiom; returns (lhs, rhs, premise) with premise an
    equation pair for CarryCond and None otherwise."""
    if not isinstance(axiom, Axiom):
        axiom = Axiom(axiom)
    if axiom is Axiom.ASSOC:
        x, y, z = b["x"], b["y"], b["z"]
        return Sum((Sum((x, y)), z)), Sum((x, Sum((y, z)))), None
    if axiom is Axiom.COMM:
        x, y = b["x"], b["y"]
        return Sum((x, y)), Sum((y, x)), None
    if axiom is Axiom.ADD_ZERO:
        return Sum((b["x"], ZERO)), b["x"], None
    if axiom is Axiom.ADD_OPP:
        return Sum((b["x"], Neg(b["x"]))), ZERO, None
    if axiom is Axiom.DOUBLE_NEG:
        return Neg(Neg(b["x"])), b["x"], None
    if axiom is Axiom.DIGIT_SUCC:
        d = b["d"]
        _digit(d, "12345678")
        return Const(digit_successor(d)), Sum((Const(d), ONE)), None
    if axiom is Axiom.NINE_ONE:
        return Sum((Const("9"), ONE)), Const("10"), None
    if axiom is Axiom.APPEND_SUCC:
        sigma, d = b["sigma"], b["d"]
        _positive("sigma", sigma)
        _digit(d, "012345678")
        return Sum((Const(sigma + d), ONE)), Const(sigma + digit_successor(d)), None
    if axiom is Axiom.CARRY_COND:
        sigma, tau = b["sigma"], b["tau"]
        _positive("sigma", sigma)
        _positive("tau", tau)
        premise = (Sum((Const(sigma), ONE)), Const(tau))
        return Sum((Const(sigma + "9"), ONE)), Const(tau + "0"), premise
    if axiom is Axiom.POLY_INFIX:
        args = tuple(b["args"])
        if len(args) < 3:
            raise DomainError("PolyInfix needs at least three summands")
        return Sum(args), Sum(args[:-2] + (Sum(args[-2:]),)), None
    raise DomainError(f"unknown axiom {axiom}")


def plus_one_digits(sigma: str) -> str:
    """The numeral for sigma+1, computed with the +1 equations only."""
    if sigma == "0":
        return "1"
    if sigma == "9":
        return "10"
    last = sigma[-1]
    if last != "9":
        return sigma[:-1] + _SUCCESSOR[last]
    return plus_one_digits(sigma[:-1]) + "0"
