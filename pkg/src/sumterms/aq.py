"""Abstract arithmetical quantities: parsing, the two syntactic equalities,
sumterm structure, splitting, substitution and let.

Parsing abstracts from spacing and from redundant brackets.  Redundant pairs
are not thrown away; they are counted per position in a ``BracketedAQ`` so the
finer bracket-aware equality can still see them.  Brackets around a sum that
sits inside another sum (or under a minus) are structural and produce a
nested ``Sum`` node, so ``1+2+5`` and ``(1+2)+5`` are different AQs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import IndexOutOfRange, NotAPolyInfixSum, OpenTerm, ParseError
from .sign import Sign, TokenKind, render_text, tokenize
from .terms import (
    AQ,
    ZERO,
    Const,
    Neg,
    Sum,
    Var,
    is_closed,
    is_decimal_natural,
)

__all__ = [
    "AQ",
    "BracketedAQ",
    "Const",
    "Neg",
    "Sum",
    "Sumtuple",
    "Var",
    "eq_aq",
    "eq_aq_bp",
    "from_json",
    "is_sumterm",
    "length",
    "let_in",
    "parse",
    "parse_aq",
    "parse_sumtuple",
    "split_left",
    "split_right",
    "substitute",
    "summand",
    "sumtuple_valid",
    "to_json",
]


@dataclass(frozen=True)
class BracketedAQ:
    """An AQ plus the redundant bracket pairs its source sign carried.

    ``redundancy`` is a sorted tuple of ``(path, count)`` pairs; the path
    ``()`` holds pairs wrapped around the whole expression.
    """

    aq: AQ
    redundancy: tuple = ()

    @property
    def counts(self) -> dict:
        return dict(self.redundancy)

    def total_redundant(self) -> int:
        return sum(c for _, c in self.redundancy)

    def erase(self) -> AQ:
        return self.aq


# -- parsing ---------------------------------------------------------------

# A parsed item is (node, redundancy-dict, outer-bracket-count, delimited).
# ``delimited`` marks sums whose extent is fixed by syntax other than round
# brackets (prefix ``plus(a,b)``, substitution of a whole variable), so that
# brackets around them are never structural.


def _structural(node, outer, delimited) -> int:
    return 1 if isinstance(node, Sum) and outer >= 1 and not delimited else 0


def _place(red: dict, index: int, item) -> None:
    node, inner, outer, delimited = item
    for path, count in inner.items():
        key = (index,) + path
        red[key] = red.get(key, 0) + count
    extra = outer - _structural(node, outer, delimited)
    if extra:
        red[(index,)] = red.get((index,), 0) + extra


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = [t for t in tokenize(text) if t.kind is not TokenKind.SPACE]
        self.pos = 0

    def peek(self, offset: int = 0):
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def peek_kind(self, offset: int = 0):
        t = self.peek(offset)
        return t.kind if t else None

    def here(self) -> int:
        t = self.peek()
        return t.offset if t else len(self.text)

    def take(self, kind: TokenKind, what: str):
        t = self.peek()
        if t is None or t.kind is not kind:
            raise ParseError(self.here(), what)
        self.pos += 1
        return t

    def end(self):
        if self.peek() is not None:
            raise ParseError(self.here(), "end of input")

    def expr(self):
        if self.peek_kind() is TokenKind.LET_KW:
            return self.let_expr()
        return self.chain()

    def let_expr(self):
        self.take(TokenKind.LET_KW, "'let'")
        name = self.take(TokenKind.VAR, "variable").lexeme
        self.take(TokenKind.EQUALS, "'='")
        binding = self.expr()
        self.take(TokenKind.IN_KW, "'in'")
        body = self.expr()
        unit = binding[2] >= 1 or binding[3]
        return let_in(name, binding[0], body[0], unit=unit), {}, 0, False

    def chain(self):
        items = [self.unary()]
        while self.peek_kind() in (TokenKind.PLUS, TokenKind.MINUS):
            op = self.take(self.peek_kind(), "operator")
            item = self.unary()
            if op.kind is TokenKind.MINUS:
                item = self.negate(item)
            items.append(item)
        if len(items) == 1:
            return items[0]
        red: dict = {}
        for i, item in enumerate(items):
            _place(red, i, item)
        return Sum(tuple(it[0] for it in items)), red, 0, False

    def negate(self, item):
        red: dict = {}
        _place(red, 0, item)
        return Neg(item[0]), red, 0, False

    def unary(self):
        kind = self.peek_kind()
        if kind is TokenKind.MINUS:
            self.pos += 1
            return self.negate(self.unary())
        if kind is TokenKind.SUBST_OPEN:
            return self.subst()
        return self.atom()

    def subst(self):
        self.take(TokenKind.SUBST_OPEN, "'['")
        replacement = self.expr()[0]
        self.take(TokenKind.SUBST_SLASH, "'/'")
        name = self.take(TokenKind.VAR, "variable").lexeme
        self.take(TokenKind.SUBST_CLOSE, "']'")
        node, red, outer, delimited = self.unary()
        result = substitute(node, name, replacement)
        return result, red, outer, delimited or node == Var(name)

    def prefix_plus(self):
        self.take(TokenKind.OPEN, "'('")
        left = self.expr()
        self.take(TokenKind.COMMA, "','")
        right = self.expr()
        self.take(TokenKind.CLOSE, "')'")
        red: dict = {}
        for i, (node, inner, outer, _) in enumerate((left, right)):
            for path, count in inner.items():
                red[(i,) + path] = red.get((i,) + path, 0) + count
            if outer:
                red[(i,)] = red.get((i,), 0) + outer
        return Sum((left[0], right[0])), red, 0, True

    def atom(self):
        t = self.peek()
        if t is None:
            raise ParseError(self.here(), "operand")
        if t.kind is TokenKind.DIGIT_RUN:
            if not is_decimal_natural(t.lexeme):
                raise ParseError(t.offset, "decimal constant without leading zero")
            self.pos += 1
            return Const(t.lexeme), {}, 0, False
        if t.kind is TokenKind.VAR:
            self.pos += 1
            if t.lexeme == "plus" and self.peek_kind() is TokenKind.OPEN:
                return self.prefix_plus()
            return Var(t.lexeme), {}, 0, False
        if t.kind is TokenKind.PLUS and self.peek_kind(1) is TokenKind.OPEN:
            self.pos += 1
            return self.prefix_plus()
        if t.kind is TokenKind.OPEN:
            self.pos += 1
            node, red, outer, delimited = self.expr()
            self.take(TokenKind.CLOSE, "')'")
            return node, red, outer + 1, delimited
        raise ParseError(t.offset, "operand")


def _source(s) -> str:
    return s.text if isinstance(s, Sign) else s


def parse(s) -> BracketedAQ:
    p = _Parser(_source(s))
    node, red, outer, _ = p.expr()
    p.end()
    red = dict(red)
    if outer:
        red[()] = red.get((), 0) + outer
    return BracketedAQ(node, tuple(sorted((k, v) for k, v in red.items() if v)))


def parse_aq(s) -> AQ:
    return parse(s).aq


def _as_aq(x) -> AQ:
    if isinstance(x, BracketedAQ):
        return x.aq
    if isinstance(x, (str, Sign)):
        return parse_aq(x)
    return x


def _as_bracketed(x) -> BracketedAQ:
    if isinstance(x, BracketedAQ):
        return x
    if isinstance(x, (str, Sign)):
        return parse(x)
    return BracketedAQ(x)


# -- equalities ------------------------------------------------------------

def eq_aq(a, b) -> bool:
    return _as_aq(a) == _as_aq(b)


def eq_aq_bp(a, b) -> bool:
    """Bracket-aware equality: same tree and same redundant pairs per node."""
    a, b = _as_bracketed(a), _as_bracketed(b)
    return a.aq == b.aq and a.redundancy == b.redundancy


# -- sumterm structure -----------------------------------------------------

def is_sumterm(a) -> bool:
    a = _as_aq(a)
    return isinstance(a, Sum) and len(a.args) == 2


def split_left(a) -> AQ:
    a = _as_aq(a)
    return a.args[0] if is_sumterm(a) else ZERO


def split_right(a) -> AQ:
    a = _as_aq(a)
    return a.args[1] if is_sumterm(a) else ZERO


def length(a) -> int:
    a = _as_aq(a)
    if not isinstance(a, Sum):
        raise NotAPolyInfixSum(f"{render_text(a)} is not a sum")
    return len(a.args)


def summand(a, k: int) -> AQ:
    """The k-th summand (1-based) of a sumterm or poly-infix sumterm."""
    a = _as_aq(a)
    n = length(a)
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"summand {k} of a sum of length {n}")
    return a.args[k - 1]


# -- substitution and let --------------------------------------------------

def substitute(target, var: str, replacement) -> AQ:
    """``[replacement/var] target``; the replacement always lands as one node."""
    target, replacement = _as_aq(target), _as_aq(replacement)

    def go(t):
        if isinstance(t, Var):
            return replacement if t.name == var else t
        if isinstance(t, Neg):
            return Neg(go(t.arg))
        if isinstance(t, Sum):
            return Sum(tuple(go(c) for c in t.args))
        return t

    return go(target)


def let_in(var: str, binding, body, unit: bool = False) -> AQ:
    """``let var = binding in body`` without introducing brackets.

    A sum bound to ``var`` is spliced into any sum that has ``var`` as a direct
    summand.  With ``unit=True`` the binding behaves as if bracketed and the
    result coincides with substitution.
    """
    binding, body = _as_aq(binding), _as_aq(body)
    splice = isinstance(binding, Sum) and not unit
    target = Var(var)

    def go(t):
        if t == target:
            return binding
        if isinstance(t, Neg):
            return Neg(go(t.arg))
        if isinstance(t, Sum):
            out = []
            for c in t.args:
                if splice and c == target:
                    out.extend(binding.args)
                else:
                    out.append(go(c))
            return Sum(tuple(out))
        return t

    return go(body)


# -- sumtuples -------------------------------------------------------------

@dataclass(frozen=True)
class Sumtuple:
    left: AQ
    right: AQ
    sum: AQ

    def __str__(self):
        return f"({render_text(self.left)},{render_text(self.right)};{render_text(self.sum)})"


def parse_sumtuple(s) -> Sumtuple:
    """Read ``(a,b;c)``, ``plus(a,b;c)`` or ``+(a,b;c)``."""
    p = _Parser(_source(s))
    t = p.peek()
    if t is not None and (
        (t.kind is TokenKind.VAR and t.lexeme == "plus") or t.kind is TokenKind.PLUS
    ):
        p.pos += 1
    p.take(TokenKind.OPEN, "'('")
    a = p.expr()[0]
    p.take(TokenKind.COMMA, "','")
    b = p.expr()[0]
    p.take(TokenKind.SEMICOLON, "';'")
    c = p.expr()[0]
    p.take(TokenKind.CLOSE, "')'")
    p.end()
    return Sumtuple(a, b, c)


def sumtuple_valid(t: Sumtuple) -> bool:
    from .semantics import DECIMAL_INT, evaluate

    for part in (t.left, t.right, t.sum):
        if not is_closed(part):
            raise OpenTerm(f"sumtuple component {render_text(part)} has variables")
    total = evaluate(Sum((t.left, t.right)), DECIMAL_INT)
    return total == evaluate(t.sum, DECIMAL_INT)


# -- structured dump -------------------------------------------------------

def to_json(a: AQ) -> list:
    if isinstance(a, Const):
        return ["const", a.digits]
    if isinstance(a, Var):
        return ["var", a.name]
    if isinstance(a, Neg):
        return ["neg", to_json(a.arg)]
    return ["sum"] + [to_json(c) for c in a.args]


def from_json(data) -> AQ:
    if isinstance(data, str):
        data = json.loads(data)
    tag = data[0]
    if tag == "const":
        return Const(data[1])
    if tag == "var":
        return Var(data[1])
    if tag == "neg":
        return Neg(from_json(data[1]))
    if tag == "sum":
        return Sum(tuple(from_json(c) for c in data[1:]))
    raise ValueError(f"unknown AQ tag {tag!r}")
