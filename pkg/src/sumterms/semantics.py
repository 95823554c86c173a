"""Semantic backends for naturals and integers and the meaning function.

Five carriers are provided: decimal digit sequences (the projection
semantics), Peano numerals, pairs of naturals modulo ``(a,b) ~ (c,d) iff
a+d = b+c``, sign-magnitude integers, and finite von Neumann ordinals built
as hereditarily finite sets.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import decimal as dec
from .config import get_config
from .errors import OpenTerm, ScaleError, SortError
from .terms import AQ, Const, Neg, Sum, Var, is_positive_decimal, is_decimal_natural


# -- values ----------------------------------------------------------------

@dataclass(frozen=True)
class DecimalValue:
    """An element of Z_d: ``0``, a positive decimal, or its opposite."""

    digits: str
    negative: bool = False

    def __post_init__(self):
        if not is_decimal_natural(self.digits):
            raise ValueError(f"not a decimal natural: {self.digits!r}")
        if self.negative and self.digits == "0":
            raise ValueError("zero carries no sign")

    @classmethod
    def of(cls, n: int) -> "DecimalValue":
        return cls(str(abs(n)), n < 0)

    @classmethod
    def parse(cls, text: str) -> "DecimalValue":
        text = text.strip()
        if text.startswith("-"):
            return cls(text[1:], True)
        return cls(text)

    @property
    def is_zero(self) -> bool:
        return self.digits == "0"

    def to_int(self) -> int:
        return -int(self.digits) if self.negative else int(self.digits)

    def __str__(self):
        return ("-" if self.negative else "") + self.digits


@dataclass(frozen=True)
class PeanoValue:
    count: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("Peano numerals are natural")

    def render(self, cap: int | None = None) -> str:
        cap = get_config().peano_render_cap if cap is None else cap
        if self.count > cap:
            return f"S^{self.count}(0)"
        return "S(" * self.count + "0" + ")" * self.count

    def __str__(self):
        return self.render()


@dataclass(frozen=True, eq=False)
class EqcInt:
    """The class of the pair (a, b), standing for a - b."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("pair components are naturals")

    def canonical(self) -> "EqcInt":
        m = min(self.a, self.b)
        return EqcInt(self.a - m, self.b - m)

    def equivalent(self, other: "EqcInt") -> bool:
        return self.a + other.b == self.b + other.a

    def __eq__(self, other):
        return isinstance(other, EqcInt) and self.equivalent(other)

    def __hash__(self):
        c = self.canonical()
        return hash((c.a, c.b))

    def __str__(self):
        c = self.canonical()
        return f"[({c.a},{c.b})]"


@dataclass(frozen=True)
class SignedInt:
    """An element of {0} u {0,1} x N+; sign bit 1 means negative."""

    sign: int
    magnitude: int

    def __post_init__(self):
        if self.sign not in (0, 1) or self.magnitude < 0:
            raise ValueError("bad signed integer")
        if self.magnitude == 0 and self.sign != 0:
            raise ValueError("zero carries no sign")

    def __str__(self):
        if self.magnitude == 0:
            return "0"
        return f"({self.sign},{self.magnitude})"


_ORDINALS: dict = {}


def _intern(s: frozenset) -> frozenset:
    return _ORDINALS.setdefault(s, s)


@dataclass(frozen=True)
class OrdinalValue:
    """A finite von Neumann ordinal n = {0, ..., n-1}."""

    elements: frozenset

    @property
    def index(self) -> int:
        return len(self.elements)

    def is_transitive(self) -> bool:
        return all(x <= self.elements for x in self.elements)

    def is_well_ordered(self) -> bool:
        # on a finite transitive set of ordinals membership must be a strict
        # linear order: exactly one of x in y, x == y, y in x for each pair
        elems = list(self.elements)
        for x in elems:
            if x in x:
                return False
            for y in elems:
                if x is not y and (x in y) == (y in x):
                    return False
        return True

    def __str__(self):
        return _hf_text(self.elements)


def _hf_text(s: frozenset) -> str:
    if not s:
        return "{}"
    return "{" + ",".join(sorted((_hf_text(x) for x in s), key=len)) + "}"


def ordinal_successor(s: frozenset) -> frozenset:
    return _intern(s | frozenset((s,)))


def ordinal(n: int) -> OrdinalValue:
    s = _intern(frozenset())
    for _ in range(n):
        s = ordinal_successor(s)
    return OrdinalValue(s)


# -- backends --------------------------------------------------------------

NAT, INT = "nat", "int"


@dataclass(frozen=True)
class Backend:
    name: str
    sort: str = INT

    def __post_init__(self):
        if self.name not in _OPS:
            raise ValueError(f"unknown backend {self.name!r}")
        if self.sort not in (NAT, INT):
            raise ValueError(f"unknown sort {self.sort!r}")
        if self.sort == INT and not _OPS[self.name].has_int:
            raise SortError(f"backend {self.name} has sort nat only")

    @property
    def ops(self):
        return _OPS[self.name]

    def __str__(self):
        return f"{self.name}-{self.sort}"


class _DecimalOps:
    has_int = True

    def zero(self):
        return DecimalValue("0")

    def succ(self, v):
        return self.add(v, DecimalValue("1"))

    def from_digits(self, digits):
        return DecimalValue(digits)

    def add(self, v, w):
        neg, mag = dec.add_signed(v.negative, v.digits, w.negative, w.digits)
        return DecimalValue(mag, neg)

    def neg(self, v):
        return v if v.is_zero else DecimalValue(v.digits, not v.negative)

    def key(self, v):
        return v

    def is_negative(self, v):
        return v.negative


class _PeanoOps:
    has_int = False

    def zero(self):
        return PeanoValue(0)

    def succ(self, v):
        return PeanoValue(v.count + 1)

    def from_digits(self, digits):
        return PeanoValue(int(digits))

    def add(self, v, w):
        return PeanoValue(v.count + w.count)

    def key(self, v):
        return v

    def is_negative(self, v):
        return False


class _EqcOps:
    has_int = True

    def zero(self):
        return EqcInt(0, 0)

    def succ(self, v):
        return EqcInt(v.a + 1, v.b)

    def from_digits(self, digits):
        return EqcInt(int(digits), 0)

    def add(self, v, w):
        return EqcInt(v.a + w.a, v.b + w.b)

    def neg(self, v):
        return EqcInt(v.b, v.a)

    def key(self, v):
        c = v.canonical()
        return (c.a, c.b)

    def is_negative(self, v):
        return v.b > v.a


class _SignedOps:
    has_int = True

    def zero(self):
        return SignedInt(0, 0)

    def succ(self, v):
        return self.add(v, SignedInt(0, 1))

    def from_digits(self, digits):
        return SignedInt(0, int(digits))

    def add(self, v, w):
        if v.sign == w.sign:
            return SignedInt(v.sign, v.magnitude + w.magnitude)
        if v.magnitude >= w.magnitude:
            return self._signed(v.sign, v.magnitude - w.magnitude)
        return self._signed(w.sign, w.magnitude - v.magnitude)

    def _signed(self, sign, magnitude):
        return SignedInt(sign if magnitude else 0, magnitude)

    def neg(self, v):
        return self._signed(1 - v.sign, v.magnitude)

    def key(self, v):
        return v

    def is_negative(self, v):
        return v.sign == 1


class _OrdinalOps:
    has_int = False

    def __init__(self):
        self.bound = None

    def _limit(self):
        return get_config().ordinal_bound if self.bound is None else self.bound

    def _check(self, n):
        if n > self._limit():
            raise ScaleError(f"ordinal {n} exceeds desk-scale bound {self._limit()}")

    def zero(self):
        return ordinal(0)

    def succ(self, v):
        self._check(v.index + 1)
        return OrdinalValue(ordinal_successor(v.elements))

    def from_digits(self, digits):
        self._check(int(digits))
        return ordinal(int(digits))

    def add(self, v, w):
        # ordinal addition: take |w| successor steps from v
        self._check(v.index + w.index)
        s = v.elements
        for _ in range(w.index):
            s = ordinal_successor(s)
        return OrdinalValue(s)

    def key(self, v):
        return v.elements

    def is_negative(self, v):
        return False


_OPS = {
    "decimal": _DecimalOps(),
    "peano": _PeanoOps(),
    "eqc": _EqcOps(),
    "signed": _SignedOps(),
    "ordinal": _OrdinalOps(),
}

BACKEND_NAMES = tuple(_OPS)

DECIMAL_INT = Backend("decimal", INT)
DECIMAL_NAT = Backend("decimal", NAT)


def backend(name: str, sort: str | None = None) -> Backend:
    if sort is None:
        sort = INT if _OPS[name].has_int else NAT
    return Backend(name, sort)


# -- meaning ---------------------------------------------------------------

def evaluate(a: AQ, backend: Backend = DECIMAL_INT):
    """The value of a closed AQ in the given backend.

    Sums fold binary addition from the left; under a nat-sorted backend any
    opposite is a sort error.
    """
    ops = backend.ops
    nat = backend.sort == NAT

    def go(t):
        if isinstance(t, Const):
            return ops.from_digits(t.digits)
        if isinstance(t, Var):
            raise OpenTerm(f"variable {t.name} has no value")
        if isinstance(t, Neg):
            if nat:
                raise SortError(f"opposite under nat-sorted backend {backend}")
            return ops.neg(go(t.arg))
        acc = go(t.args[0])
        for c in t.args[1:]:
            acc = ops.add(acc, go(c))
        return acc

    v = go(a)
    if nat and ops.is_negative(v):
        raise SortError(f"negative result under nat-sorted backend {backend}")
    return v


def embed(v: DecimalValue) -> AQ:
    if v.negative:
        return Neg(Const(v.digits))
    return Const(v.digits)


def projection_check(a: AQ) -> bool:
    """Meaning is idempotent: evaluating the embedded value gives it back."""
    v = evaluate(a, DECIMAL_INT)
    return evaluate(embed(v), DECIMAL_INT) == v


def is_decimal_normal_form(t: AQ) -> bool:
    """True iff t is the embedding of an element of Z_d."""
    if isinstance(t, Const):
        return True
    return isinstance(t, Neg) and isinstance(t.arg, Const) and is_positive_decimal(t.arg.digits)


# -- isomorphism harness ---------------------------------------------------

@dataclass
class IsoReport:
    left: Backend
    right: Backend
    bound: int
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    mapping: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def verdict(self) -> str:
        status = "isomorphic" if self.ok else f"{len(self.counterexamples)} counterexample(s)"
        return f"verdict {self.left} <-> {self.right} bound {self.bound}: {self.checked} identities checked, {status}"

    def text(self) -> str:
        return "\n".join(self.lines + [self.verdict()]) + "\n"


def check_isomorphism(b1: Backend, b2: Backend, bound: int) -> IsoReport:
    """Check the 0,1,successor-preserving map between two backends up to ``bound``.

    The map is built by stepping both successor functions from zero in
    lockstep (and taking opposites for integer sorts); it is then checked for
    injectivity and for preserving addition and opposite wherever the result
    stays within the bound.
    """
    if b1.sort != b2.sort:
        raise SortError(f"{b1} and {b2} do not share a sort")
    if bound < 2:
        raise ValueError("bound must be at least 2")
    o1, o2 = b1.ops, b2.ops
    if "ordinal" in (b1.name, b2.name) and bound > _OPS["ordinal"]._limit():
        raise ScaleError(f"ordinal backend bound {bound} exceeds desk-scale limit")
    report = IsoReport(b1, b2, bound)
    out = report.lines

    def fail(msg):
        report.counterexamples.append(msg)
        out.append("FAIL " + msg)

    left = {0: o1.zero()}
    right = {0: o2.zero()}
    for k in range(1, bound + 1):
        left[k] = o1.succ(left[k - 1])
        right[k] = o2.succ(right[k - 1])
    indices = list(range(bound + 1))
    if b1.sort == INT:
        for k in range(1, bound + 1):
            left[-k] = o1.neg(left[k])
            right[-k] = o2.neg(right[k])
        indices = list(range(-bound, bound + 1))

    index_of_left = {}
    index_of_right = {}
    for k in indices:
        for table, index_of, side in ((left, index_of_left, b1), (right, index_of_right, b2)):
            key = (o1 if side is b1 else o2).key(table[k])
            if key in index_of:
                fail(f"{side} value {table[k]} reached at {index_of[key]} and {k}")
            index_of[key] = k
        report.mapping[o1.key(left[k])] = right[k]

    for o, b, table in ((o1, b1, left), (o2, b2, right)):
        if o.key(o.from_digits("1")) != o.key(table[1]):
            fail(f"{b}: one is not the successor of zero")
        report.checked += 1
    out.append(f"0 |-> {right[0]}: ok")
    out.append(f"1 |-> {right[1]}: ok")

    lo, hi = indices[0], indices[-1]
    for i in indices:
        for j in indices:
            if not lo <= i + j <= hi:
                continue
            s1 = o1.add(left[i], left[j])
            s2 = o2.add(right[i], right[j])
            report.checked += 1
            k = index_of_left.get(o1.key(s1))
            if k is None or o2.key(right[k]) != o2.key(s2):
                fail(f"f({left[i]} + {left[j]}) != f({left[i]}) + f({left[j]})")
            else:
                out.append(f"f({i} + {j}) = f({i}) + f({j}): ok")
        if b1.sort == INT:
            report.checked += 1
            n1, n2 = o1.neg(left[i]), o2.neg(right[i])
            k = index_of_left.get(o1.key(n1))
            if k is None or o2.key(right[k]) != o2.key(n2):
                fail(f"f(-{left[i]}) != -f({left[i]})")
            else:
                out.append(f"f(-{i}) = -f({i}): ok")
    return report

