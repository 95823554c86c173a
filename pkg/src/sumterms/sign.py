"""Concrete signs: tokenizing, counting operators below the AQ level, rendering.

A sign is tangible text.  Brackets and whitespace are real here; they are
abstracted away only when a sign is parsed into an AQ.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .errors import LexError, UnbalancedBrackets
from .terms import AQ, Const, Neg, Sum, Var


class TokenKind(enum.Enum):
    DIGIT_RUN = "DigitRun"
    PLUS = "Plus"
    MINUS = "Minus"
    OPEN = "Open"
    CLOSE = "Close"
    VAR = "Var"
    SPACE = "Space"
    LET_KW = "LetKw"
    IN_KW = "InKw"
    EQUALS = "Equals"
    SUBST_OPEN = "SubstOpen"
    SUBST_SLASH = "SubstSlash"
    SUBST_CLOSE = "SubstClose"
    COMMA = "Comma"
    SEMICOLON = "Semicolon"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    offset: int


_SINGLE = {
    "+": TokenKind.PLUS,
    "＋": TokenKind.PLUS,  # fullwidth plus
    "-": TokenKind.MINUS,
    "−": TokenKind.MINUS,  # minus sign
    "(": TokenKind.OPEN,
    ")": TokenKind.CLOSE,
    "=": TokenKind.EQUALS,
    "[": TokenKind.SUBST_OPEN,
    "/": TokenKind.SUBST_SLASH,
    "]": TokenKind.SUBST_CLOSE,
    ",": TokenKind.COMMA,
    ";": TokenKind.SEMICOLON,
}

_KEYWORDS = {"let": TokenKind.LET_KW, "in": TokenKind.IN_KW}


def _is_ident_start(c: str) -> bool:
    return c.isascii() and c.isalpha()


def _is_ident_char(c: str) -> bool:
    return c.isascii() and (c.isalnum() or c == "_")


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        start = i
        if c.isspace():
            while i < n and text[i].isspace():
                i += 1
            tokens.append(Token(TokenKind.SPACE, text[start:i], start))
        elif c.isascii() and c.isdigit():
            while i < n and text[i].isascii() and text[i].isdigit():
                i += 1
            tokens.append(Token(TokenKind.DIGIT_RUN, text[start:i], start))
        elif _is_ident_start(c):
            while i < n and _is_ident_char(text[i]):
                i += 1
            word = text[start:i]
            tokens.append(Token(_KEYWORDS.get(word, TokenKind.VAR), word, start))
        elif c in _SINGLE:
            i += 1
            tokens.append(Token(_SINGLE[c], c, start))
        else:
            raise LexError(start, c)
    return tokens


def detokenize(tokens: list[Token]) -> str:
    return "".join(t.lexeme for t in tokens)


@dataclass(frozen=True)
class Sign:
    text: str

    @cached_property
    def tokens(self) -> list[Token]:
        return tokenize(self.text)

    def __str__(self):
        return self.text


def _text(s) -> str:
    return s.text if isinstance(s, Sign) else s


def count_bracket_pairs(s) -> int:
    """Number of matched round-bracket pairs in the sign, taken literally."""
    depth = pairs = 0
    for c in _text(s):
        if c == "(":
            depth += 1
        elif c == ")":
            if depth == 0:
                raise UnbalancedBrackets(f"unmatched ')' in {_text(s)!r}")
            depth -= 1
            pairs += 1
    if depth:
        raise UnbalancedBrackets(f"unclosed '(' in {_text(s)!r}")
    return pairs


def count_spaces(s) -> int:
    return sum(1 for c in _text(s) if c.isspace())


class RenderStyle(enum.Enum):
    MINIMAL = "minimal"
    FULLY_BRACKETED = "fully-bracketed"
    SPACED = "spaced"


def render(aq: AQ, style: RenderStyle = RenderStyle.MINIMAL) -> Sign:
    style = RenderStyle(style)
    if style is RenderStyle.FULLY_BRACKETED:
        return Sign(_full(aq))
    return Sign(_minimal(aq, " " if style is RenderStyle.SPACED else ""))


def render_text(aq: AQ) -> str:
    """Minimal rendering as a plain string (the AQ serialized form)."""
    return _minimal(aq, "")


def _minimal(t: AQ, sp: str) -> str:
    if isinstance(t, Const):
        return t.digits
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Neg):
        return "-" + _neg_operand(t.arg, sp)
    parts = [_summand(t.args[0], sp)]
    for child in t.args[1:]:
        if isinstance(child, Neg):
            parts.append(f"{sp}-{sp}" + _neg_operand(child.arg, sp))
        else:
            parts.append(f"{sp}+{sp}" + _summand(child, sp))
    return "".join(parts)


def _neg_operand(t: AQ, sp: str) -> str:
    if isinstance(t, (Const, Var)):
        return _minimal(t, sp)
    return f"({_minimal(t, sp)})"


def _summand(t: AQ, sp: str) -> str:
    if isinstance(t, Sum):
        return f"({_minimal(t, sp)})"
    return _minimal(t, sp)


def _full(t: AQ) -> str:
    if isinstance(t, Const):
        return t.digits
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Neg):
        return f"(-{_full(t.arg)})"
    return "(" + "+".join(_full(c) for c in t.args) + ")"
