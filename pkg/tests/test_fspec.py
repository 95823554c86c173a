import random

import pytest
from hypothesis import given, settings, strategies as st

from sumterms.aq import parse_aq
from sumterms.errors import DomainError, OpenTerm, ScaleError, SortError
from sumterms.fspec import (
    Axiom, CheckResult, Derivation, NotDerivable, Prover, check, check_text, check_trace, digit_successor,
    dump_derivation, dump_trace, instance, load_derivation, load_trace, negsum_chain, normalize, prove,
    successor_chain_add,
)
from sumterms.fspec.proof import AxiomStep, Sym, Trans
from sumterms.semantics import DecimalValue, embed, evaluate, is_decimal_normal_form
from sumterms.sign import render_text
from sumterms.terms import Const, Neg, Sum, subterm, replace

from conftest import closed_aqs, oracle, random_aq

P = parse_aq


def nf(text, **kw):
    return render_text(normalize(P(text), **kw).normal_form)


@pytest.mark.parametrize("text,expected", [("9+1", "10"), ("19+1", "20"), ("5+(-3)", "2"), ("-(-7)", "7"),
                                           ("3+(-5)", "-2"), ("0+0", "0"), ("(-4)+(-6)", "-10")])
def test_normalize_examples(text, expected):
    assert nf(text) == expected


def test_normal_form_has_empty_trace():
    t = normalize(P("-12"))
    assert len(t) == 0 and t.normal_form == P("-12")


def test_normalize_open_term():
    with pytest.raises(OpenTerm):
        normalize(P("x+1"))


def replay(trace):
    """Apply each step at its position and compare with the recorded result."""
    cur = trace.start
    for step in trace.steps:
        lhs, rhs = step.sides()
        if step.reverse:
            lhs, rhs = rhs, lhs
        assert subterm(cur, step.path) == lhs
        cur = replace(cur, step.path, rhs)
        assert cur == step.result
    assert cur == trace.normal_form


@given(closed_aqs(10))
def test_normalize_agrees_with_oracle_and_replays(a):
    t = normalize(a)
    assert is_decimal_normal_form(t.normal_form)
    assert evaluate(t.normal_form).to_int() == oracle(a)
    replay(t)
    assert check_trace(t)


@settings(max_examples=60)
@given(closed_aqs(8), st.integers(0, 10**6))
def test_two_strategies_reach_the_same_normal_form(a, seed):
    t = normalize(a, strategy="random", seed=seed)
    assert t.normal_form == normalize(a).normal_form
    replay(t)


@pytest.mark.parametrize("d,expected", [(0, 1), (8, 9), ("3", "4")])
def test_digit_successor(d, expected):
    assert digit_successor(d) == expected


def test_digit_successor_of_nine():
    with pytest.raises(DomainError):
        digit_successor(9)


def test_axiom_instances():
    lhs, rhs, premise = instance(Axiom.CARRY_COND, {"sigma": "1", "tau": "2"})
    assert (render_text(lhs), render_text(rhs)) == ("19+1", "20")
    assert tuple(map(render_text, premise)) == ("1+1", "2")
    assert tuple(map(render_text, instance("NineOne", {})[:2])) == ("9+1", "10")
    with pytest.raises(DomainError):
        instance(Axiom.APPEND_SUCC, {"sigma": "05", "d": "1"})
    with pytest.raises(DomainError):
        instance(Axiom.DIGIT_SUCC, {"d": "9"})


@pytest.mark.parametrize("m,n,expected", [(99, 1, "100"), (7, 0, "7"), (38, 5, "43")])
def test_successor_chain_examples(m, n, expected):
    t = successor_chain_add(DecimalValue.of(m), DecimalValue.of(n))
    assert render_text(t.normal_form) == expected
    assert check_trace(t)
    replay(t)


def test_successor_chain_uses_plus_one_rules():
    t = successor_chain_add(DecimalValue.of(38), DecimalValue.of(5))
    assert {s.rule for s in t.steps} <= {"DigitSucc", "NineOne", "AppendSucc", "CarryCond", "Assoc", "Comm"}


def test_successor_chain_errors():
    with pytest.raises(ScaleError):
        successor_chain_add(DecimalValue.of(1), DecimalValue.of(20), bound=10)
    with pytest.raises(SortError):
        successor_chain_add(DecimalValue.of(-1), DecimalValue.of(2))


def test_negsum_chain_is_primitive():
    t = negsum_chain(Const("3"), Const("4"))
    assert t.normal_form == Neg(Sum((Const("3"), Const("4"))))
    assert all(s.rule not in ("NatAdd", "NegSum") for s in t.steps)
    replay(t)


# -- proofs -----------------------------------------------------------------

def test_prove_examples():
    d = prove(P("2+2"), P("1+3"))
    assert isinstance(d, Derivation) and check(d)
    no = prove(P("1"), P("2"))
    assert isinstance(no, NotDerivable) and not no
    assert (no.lhs_normal_form, no.rhs_normal_form) == (P("1"), P("2"))
    seven = prove(P("7+0"), P("7"))
    assert isinstance(seven.root, AxiomStep) and seven.root.axiom == "AddZero" and len(seven) == 1


def test_prove_open_goal():
    with pytest.raises(OpenTerm):
        prove(P("x"), P("x"))


@settings(max_examples=80)
@given(closed_aqs(6, max_const=150), closed_aqs(6, max_const=150))
def test_every_proof_checks(a, b):
    d = prove(a, Sum((b, Neg(b), a)))
    assert isinstance(d, Derivation)
    assert check(d)


def test_proof_scale_limit():
    with pytest.raises(ScaleError):
        Prover(proof_bound=10).prove(P("500+300"), P("800"))


def test_checker_rejects_bad_comm_instance():
    bad = AxiomStep("Comm", {"x": Const("1"), "y": Const("2")}, P("1+2"), P("2+3"))
    r = check(Derivation(P("1+2"), P("2+3"), bad))
    assert not r and r.index == 0 and "Comm" in r.reason


def test_checker_rejects_carry_without_premise():
    step = AxiomStep("CarryCond", {"sigma": "1", "tau": "2"}, P("19+1"), P("20"))
    r = check(Derivation(P("19+1"), P("20"), step))
    assert not r and "premise" in r.reason


def test_checker_rejects_goal_mismatch_and_broken_chain():
    one = AxiomStep("NineOne", {}, P("9+1"), P("10"))
    assert not check(Derivation(P("9+1"), P("11"), one))
    broken = Trans(one, one, P("9+1"), P("10"))
    assert not check(Derivation(P("9+1"), P("10"), broken))
    wrong_sym = Sym(one, P("9+1"), P("10"))
    assert not check(Derivation(P("9+1"), P("10"), wrong_sym))


def test_check_result_strings():
    assert str(CheckResult(True)) == "ok"
    assert str(CheckResult(False, 3, "why")) == "rejected at step 3: why"


def test_trace_checker_rejects_tampering():
    t = normalize(P("5+(-3)"))
    text = dump_trace(t)
    lines = text.splitlines()
    tampered = "\n".join(lines[:1] + [lines[1].replace('"result": "', '"result": "1+')] + lines[2:]) + "\n"
    assert not check_trace(load_trace(tampered))


# -- serialization ----------------------------------------------------------

@settings(max_examples=40)
@given(closed_aqs(6, max_const=150))
def test_derivation_text_round_trip(a):
    d = prove(a, normalize(a).normal_form)
    text = dump_derivation(d)
    again = load_derivation(text)
    assert dump_derivation(again) == text
    assert check(again) and check_text(text)


@settings(max_examples=40)
@given(closed_aqs(8))
def test_trace_text_round_trip(a):
    t = normalize(a)
    text = dump_trace(t)
    assert dump_trace(load_trace(text)) == text
    assert check_trace(load_trace(text))


def test_tampered_derivation_text():
    text = dump_derivation(prove(P("1+2"), P("2+1")))
    assert check_text(text)
    bad = text.replace('"y": "2"', '"y": "5"', 1)
    assert bad != text and not check_text(bad)
    assert not check_text("not json")


def test_desk_scale_sample_of_sign_combinations():
    rng = random.Random(7)
    prover = Prover()
    for _ in range(200):
        m, n = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
        goal = Sum((embed(DecimalValue.of(m)), embed(DecimalValue.of(n))))
        d = prover.prove(goal, embed(DecimalValue.of(m + n)))
        assert check(d), (m, n)


def test_random_generator_respects_shape():
    rng = random.Random(3)
    for _ in range(200):
        a = random_aq(rng)
        assert evaluate(a).to_int() == oracle(a)
