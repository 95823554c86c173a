import pytest
from hypothesis import given, strategies as st

from sumterms.aq import eq_aq, parse_aq
from sumterms.errors import LexError, UnbalancedBrackets
from sumterms.sign import (
    RenderStyle, Sign, TokenKind, count_bracket_pairs, count_spaces, detokenize, render, tokenize,
)
from sumterms.terms import Const, Neg, Sum

from conftest import aqs


def kinds(text):
    return [t.kind for t in tokenize(text)]


def test_tokenize_simple_sum():
    toks = tokenize("1+2")
    assert [(t.kind, t.lexeme, t.offset) for t in toks] == [
        (TokenKind.DIGIT_RUN, "1", 0), (TokenKind.PLUS, "+", 1), (TokenKind.DIGIT_RUN, "2", 2)]


def test_tokenize_nested_brackets():
    assert kinds("((1))") == [TokenKind.OPEN, TokenKind.OPEN, TokenKind.DIGIT_RUN, TokenKind.CLOSE, TokenKind.CLOSE]


def test_tokenize_rejects_unknown_character():
    with pytest.raises(LexError) as info:
        tokenize("1 @ 2")
    assert info.value.offset == 2 and info.value.found == "@"


def test_tokenize_keywords_and_meta_syntax():
    assert kinds("let x = 1 in x") == [
        TokenKind.LET_KW, TokenKind.SPACE, TokenKind.VAR, TokenKind.SPACE, TokenKind.EQUALS, TokenKind.SPACE,
        TokenKind.DIGIT_RUN, TokenKind.SPACE, TokenKind.IN_KW, TokenKind.SPACE, TokenKind.VAR]
    assert kinds("[1/X]") == [TokenKind.SUBST_OPEN, TokenKind.DIGIT_RUN, TokenKind.SUBST_SLASH,
                              TokenKind.VAR, TokenKind.SUBST_CLOSE]
    assert kinds("(1,2;3)")[2:6] == [TokenKind.COMMA, TokenKind.DIGIT_RUN, TokenKind.SEMICOLON, TokenKind.DIGIT_RUN]


def test_unicode_minus_is_a_minus():
    assert kinds("3−1")[1] is TokenKind.MINUS


@given(st.text(alphabet="0123456789+-() xyz[]/,;=", max_size=40))
def test_tokens_cover_text_contiguously(text):
    toks = tokenize(text)
    assert detokenize(toks) == text
    pos = 0
    for t in toks:
        assert t.offset == pos
        pos += len(t.lexeme)
    assert tokenize(detokenize(toks)) == toks


@pytest.mark.parametrize("text,pairs", [("((1+2)+(2+0))+0", 3), ("0", 0), ("(0)", 1), ("((0))", 2)])
def test_count_bracket_pairs(text, pairs):
    assert count_bracket_pairs(text) == pairs
    assert count_bracket_pairs(Sign(text)) == pairs


@pytest.mark.parametrize("text", ["(1", "1)", ")("])
def test_count_bracket_pairs_unbalanced(text):
    with pytest.raises(UnbalancedBrackets):
        count_bracket_pairs(text)


@pytest.mark.parametrize("text,spaces", [("1 + 2", 2), ("1+2", 0), ("", 0)])
def test_count_spaces(text, spaces):
    assert count_spaces(text) == spaces


@given(st.text(alphabet="1+ ()", max_size=20), st.text(alphabet="1+ ()", max_size=20), st.integers(0, 3))
def test_count_spaces_additive(a, b, k):
    assert count_spaces(a + " " * k + b) == count_spaces(a) + k + count_spaces(b)


def test_render_examples():
    one, two, five = Const("1"), Const("2"), Const("5")
    assert render(Sum((one, two))).text == "1+2"
    assert render(Sum((Sum((one, two)), five))).text == "(1+2)+5"
    assert render(Neg(Sum((one, two)))).text == "-(1+2)"
    assert render(Sum((one, two)), RenderStyle.SPACED).text == "1 + 2"
    assert render(Sum((one, two)), RenderStyle.FULLY_BRACKETED).text.count("(") >= 1


@given(aqs())
def test_render_round_trip_every_style(a):
    for style in RenderStyle:
        assert eq_aq(parse_aq(render(a, style).text), a)


@given(aqs())
def test_minimal_uses_fewest_brackets(a):
    minimal = count_bracket_pairs(render(a, RenderStyle.MINIMAL))
    assert minimal <= count_bracket_pairs(render(a, RenderStyle.FULLY_BRACKETED))
