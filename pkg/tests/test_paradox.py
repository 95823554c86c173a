import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from sumterms.errors import ScriptError, SignatureViolation
from sumterms.fspec import normalize
from sumterms.aq import parse_aq, split_left, split_right
from sumterms.paradox import (
    KNOWN_MISTAKES, Decision, Justification, Lint, Mode, Policy, check_step, corpus_names, delayed_refinement,
    format_script, load_corpus, parse_claim, parse_line, parse_script, regress_report, run_bracket_paradox,
    run_paradox, run_script,
)
from sumterms.paradox.claims import OpApp, Plain
from sumterms.paradox.reasoner import SUM_SPLITTING_SCRIPT
from sumterms.sign import render_text

GOLDEN = Path(__file__).parent / "golden"
POLICIES = ["naive", "sumterm", "foundational", "pragmatic", "no-split", "fixed-signature"]
SOUND = ["sumterm", "foundational", "no-split", "fixed-signature"]


def golden(name):
    return (GOLDEN / name).read_text(encoding="utf-8")


# -- script format -----------------------------------------------------------

def test_claim_parsing():
    c = parse_claim("l_s(1+2) =_AQ^bp l_s((1)+2)")
    assert c.eq == "=_AQ^bp" and c.lhs == OpApp("l_s", "1+2") and c.rhs == OpApp("l_s", "(1)+2")
    assert parse_claim("1+2 = 2+1").lhs == Plain("1+2")
    assert parse_claim("#_sp(1 + 2) = 2").lhs.arg == "1 + 2"


@pytest.mark.parametrize("bad", ["1 = 2 = 3", "1 + 2", "l_s(1)+2 = 1", "1 = l_s(1", "1 == 2"])
def test_bad_claims(bad):
    with pytest.raises(ScriptError):
        parse_claim(bad)


@pytest.mark.parametrize("bad", ["1 = 1", "1 = 1 BY MAGIC", "1 = 1 BY CONG", "1 = 1 BY TRANS 1", "1 = 1 BY SYM x"])
def test_bad_lines(bad):
    with pytest.raises(ScriptError):
        parse_line(bad)


def test_script_round_trip():
    lines = parse_script("# comment\n\n" + SUM_SPLITTING_SCRIPT)
    assert len(lines) == 5
    assert format_script(lines) == SUM_SPLITTING_SCRIPT
    assert lines[4].justification == Justification("TRANS", (1, 3, 4))


# -- single steps ------------------------------------------------------------

def step(text, policy, *premises):
    line = parse_line(text)
    return check_step(line.claim, line.justification, policy, [parse_claim(p) for p in premises])


def test_cong_under_aq_premise_admitted_by_sumterm():
    d = step("l_s(1+2) =_AQ l_s(1+(2)) BY CONG 1", Policy(Mode.SUMTERM), "1+2 =_AQ 1+(2)")
    assert d == Decision("admitted")


def test_cong_under_value_premise_warned_by_pragmatic():
    d = step("l_s(1+2) = l_s(2+1) BY CONG 1", Policy(Mode.PRAGMATIC), "1+2 = 2+1")
    assert d.status == "warned" and d.admitted
    err = step("l_s(1+2) = l_s(2+1) BY CONG 1", Policy(Mode.PRAGMATIC, lint=Lint.ERROR), "1+2 = 2+1")
    assert err.status == "rejected"
    off = step("l_s(1+2) = l_s(2+1) BY CONG 1", Policy(Mode.PRAGMATIC, lint=Lint.OFF), "1+2 = 2+1")
    assert off.status == "admitted"


def test_pragmatic_only_lints_split_arguments_that_differ():
    same = step("l_s(1+2) = l_s(1+(2)) BY CONG 1", Policy(Mode.PRAGMATIC), "1+2 = 1+(2)")
    assert same.status == "admitted"


def test_signature_violations_raise():
    line = parse_line("1 = l_s(1+2) BY DEF")
    with pytest.raises(SignatureViolation):
        check_step(line.claim, line.justification, Policy(Mode.FIXED_SIGNATURE))
    with pytest.raises(SignatureViolation):
        check_step(line.claim, line.justification, Policy(Mode.NO_SPLIT))
    count = parse_line("#_bp((0)) = 1 BY DEF")
    assert check_step(count.claim, count.justification, Policy(Mode.NO_SPLIT)).admitted
    with pytest.raises(SignatureViolation):
        check_step(count.claim, count.justification, Policy(Mode.FIXED_SIGNATURE))


@pytest.mark.parametrize("text,premises,ok", [
    ("1+2 = 3 BY ARITH", (), True),
    ("1+2 = 4 BY ARITH", (), False),
    ("1+2 =_AQ 2+1 BY AQ", (), False),
    ("0 =_AQ ((0)) BY AQ", (), True),
    ("l_s(7) = 0 BY DEF", (), True),
    ("r_s(1+2+3) = 0 BY DEF", (), True),
    ("#_bp(((1+2)+(2+0))+0) = 3 BY DEF", (), True),
    ("3 = 1+2 BY SYM 1", ("1+2 = 3",), True),
    ("3 =_AQ 1+2 BY SYM 1", ("1+2 = 3",), False),
    ("1 = 3 BY TRANS 1 2", ("1 = 2", "2 = 3"), True),
    ("1 = 3 BY TRANS 1 2", ("1 = 2", "4 = 3"), False),
    ("l_s(1+2) =_AQ l_s(2+1) BY CONG 1", ("1+2 = 2+1",), False),
])
def test_naive_rules(text, premises, ok):
    assert step(text, Policy(), *premises).admitted is ok


# -- whole scripts ------------------------------------------------------------

@pytest.mark.parametrize("policy", POLICIES)
def test_paradox_golden(policy):
    assert run_paradox(Policy.named(policy)).text() == golden(f"paradox_{policy}.txt")


def test_naive_reproduces_the_chain():
    t = run_paradox(Policy())
    assert t.chain() == "1 = l_s(1+2) = l_s(2+1) = 2"
    assert str(t.conclusion) == "1 = 2"
    assert t.verdict.kind == "Consistent" and t.absurdities == ["1 = 2"]


def test_naive_with_foundational_check_detects_contradiction():
    t = run_paradox(Policy(Mode.NAIVE, foundational_check=True))
    assert str(t.verdict) == "ContradictionDetected(1 = 2)"


def test_sumterm_rejects_exactly_the_congruence():
    t = run_paradox(Policy.named("sumterm"))
    rejected = [e.index for e in t.steps if not e.decision.admitted]
    assert rejected == [3, 5]
    assert t.steps[2].decision.reason == "1+2 not =_AQ 2+1"
    assert t.verdict.step == 3 and t.verdict.reason == "1+2 not =_AQ 2+1"


@pytest.mark.parametrize("policy", ["no-split", "fixed-signature"])
def test_signature_policies_reject_step_one(policy):
    t = run_paradox(Policy.named(policy))
    assert t.verdict.kind == "StepRejected" and t.verdict.step == 1


@pytest.mark.parametrize("policy", SOUND)
def test_blocking_policies_never_admit_one_equals_two(policy):
    t = run_paradox(Policy.named(policy))
    assert "1 = 2" not in t.admitted_claims()
    assert not t.absurdities


def test_bracket_paradox_golden():
    aq = run_bracket_paradox("aq")
    assert aq.text() == golden("bracket_aq.txt")
    assert "#_bp(0) = #_bp((0))" in aq.admitted_claims() and str(aq.conclusion) == "0 = 1"
    assert aq.absurdities == ["0 = 1"]
    bp = run_bracket_paradox("aq_bp")
    assert bp.text() == golden("bracket_aq_bp.txt")
    assert bp.steps[0].decision.reason == "0 not =_AQ^bp (0)" and bp.consistent
    sp = run_bracket_paradox("aq_bp", spaces=True)
    assert sp.text() == golden("space_aq_bp.txt")
    assert sp.absurdities == ["2 = 0"]


def test_citing_a_later_step_is_rejected():
    t = run_script("1 = 1 BY SYM 2\n1 = 1 BY ARITH\n", Policy())
    assert t.steps[0].decision.reason == "step 2 is not an earlier step"


def test_json_form():
    j = run_paradox(Policy.named("sumterm")).to_json()
    assert j["verdict"] == {"kind": "StepRejected", "equation": "", "step": 3, "reason": "1+2 not =_AQ 2+1"}
    assert [s["status"] for s in j["steps"]] == ["admitted", "admitted", "rejected", "admitted", "rejected"]


# -- regress -------------------------------------------------------------------

def test_regress_golden():
    r = regress_report()
    assert r.text() == golden("regress.txt")
    levels = {lv.level: lv for lv in r.levels}
    assert list(levels) == ["value", "aq", "aq_bp", "sign"]
    assert "#_bp" in levels["aq"].broken and set(levels["aq_bp"].broken) == {"#_sp"}
    assert levels["value"].consistent and levels["sign"].consistent
    assert "conventionalism on signatures" in r.resolution


def test_regress_without_counting_operators():
    r = regress_report(disabled=("#_bp", "#_sp"))
    assert all(lv.consistent for lv in r.levels)
    assert r.text() == golden("regress_no_counting.txt")


# -- corpus and mistakes -------------------------------------------------------

def test_corpus_is_bundled():
    names = corpus_names()
    assert {"sum_splitting", "bracket_aq", "space_counting", "arithmetic"} <= set(names)
    assert format_script(load_corpus("sum_splitting")) == SUM_SPLITTING_SCRIPT


@pytest.mark.parametrize("name", corpus_names())
def test_delayed_refinement_on_corpus(name):
    script = load_corpus(name)
    t = run_script(script, Policy.named("pragmatic"))
    if all(e.decision.status == "admitted" for e in t.steps):
        refined = delayed_refinement(script)
        assert refined is not None
        for old, new in zip(script, refined):
            assert new.justification == old.justification
            assert new.claim.eq == old.claim.eq or (old.claim.eq == "=" and new.claim.eq == "=_AQ")
        assert all(e.decision.admitted for e in run_script(refined, Policy.named("sumterm")).steps)


def test_delayed_refinement_fails_on_the_paradox():
    assert delayed_refinement(SUM_SPLITTING_SCRIPT) is None


@pytest.mark.parametrize("mistake", KNOWN_MISTAKES, ids=lambda m: m.name)
def test_known_mistakes_are_refuted(mistake):
    assert mistake.refuted
    for cex in mistake.counterexamples():
        assert not mistake.holds(**cex)


def test_known_mistake_witnesses():
    by_name = {m.name: m for m in KNOWN_MISTAKES}
    assert not by_name["square-even"].holds(3)
    assert not by_name["product-with-opposite"].holds(1)
    assert not by_name["half-distribution"].holds(2, 1, 1)
    assert not by_name["sum-exceeds"].holds(1, 0)


# -- randomized scripts --------------------------------------------------------------

def _term(rng, pool, reuse=0.6):
    if pool and rng.random() < reuse:
        return rng.choice(pool)
    t = "+".join(str(rng.randint(0, 4)) for _ in range(rng.choice([1, 2, 2, 2, 3])))
    pool.append(t)
    return t


def _variants(rng, t, pool):
    """Some signs with the value of t: commuted, bracketed or evaluated."""
    parts = t.split("+")
    options = ["+".join(reversed(parts)), f"({t})", str(sum(map(int, parts)))]
    if len(parts) == 3:
        options.append(f"({parts[0]}+{parts[1]})+{parts[2]}")
    v = rng.choice(options)
    if "(" not in v:
        pool.append(v)
    return v


def _split(op, t):
    a = parse_aq(t)
    return render_text(split_left(a) if op == "l_s" else split_right(a))


def _chain(rng, claims):
    """Indices (1-based) of a chain of at least two claims, linked by their sides."""
    # prefer chains that enter and leave the operator layer
    entries = [k for k, c in enumerate(claims) if isinstance(c.lhs, Plain) and isinstance(c.rhs, OpApp)]
    start = rng.choice(entries) if entries and rng.random() < 0.8 else rng.randrange(len(claims))
    path, seen = [start], {start}
    for _ in range(3):
        if isinstance(claims[path[-1]].rhs, Plain) and len(path) >= 2:
            break
        nxt = [k for k in range(len(claims)) if k not in seen and str(claims[k].lhs) == str(claims[path[-1]].rhs)]
        if not nxt:
            break
        path.append(rng.choice(nxt))
        seen.add(path[-1])
    return [k + 1 for k in path] if len(path) >= 2 else None


def random_script(seed, split_ops=True):
    rng = random.Random(seed)
    lines, pool = [], []
    kinds = ["ARITH", "AQ", "DEF", "DEF", "CONG", "SYM", "TRANS", "TRANS", "SPLIT"]
    if not split_ops:
        kinds = ["ARITH", "AQ", "SYM", "TRANS"]
    for _ in range(rng.randint(3, 12)):
        kind = rng.choice(kinds)
        claims = [parse_line(line).claim for line in lines]
        if kind == "SPLIT":
            n = len(lines)
            t = _term(rng, pool)
            v = _variants(rng, t, pool)
            op = rng.choice(["l_s", "r_s"])
            eq, rule = rng.choice([("=", "ARITH"), ("=_AQ", "AQ")])
            lines += [
                f"{_split(op, t)} = {op}({t}) BY DEF",
                f"{t} {eq} {v} BY {rule}",
                f"{op}({t}) = {op}({v}) BY CONG {n + 2}",
                f"{op}({v}) = {_split(op, v)} BY DEF",
                f"{_split(op, t)} = {_split(op, v)} BY TRANS {n + 1} {n + 3} {n + 4}",
            ]
        elif kind == "ARITH":
            t = _term(rng, pool)
            lines.append(f"{t} = {_variants(rng, t, pool)} BY ARITH")
        elif kind == "AQ":
            t = _term(rng, pool)
            lines.append(f"{t} =_AQ ({t}) BY AQ")
        elif kind == "DEF":
            t = _term(rng, pool, reuse=0.9)
            op = rng.choice(["l_s", "r_s"])
            parts = t.split("+")
            value = (parts[0] if op == "l_s" else parts[1]) if len(parts) == 2 else "0"
            lines.append(f"{value} = {op}({t}) BY DEF" if rng.random() < 0.5 else f"{op}({t}) = {value} BY DEF")
        elif kind == "SYM" and claims:
            k = rng.randint(1, len(claims))
            c = claims[k - 1]
            lines.append(f"{c.rhs} {c.eq} {c.lhs} BY SYM {k}")
        elif kind == "CONG":
            plain = [k for k, c in enumerate(claims, 1) if isinstance(c.lhs, Plain) and isinstance(c.rhs, Plain)]
            arith = [k for k in plain if lines[k - 1].endswith("ARITH")]
            if plain:
                k = rng.choice(arith if arith and rng.random() < 0.7 else plain)
                op = rng.choice(["l_s", "r_s"])
                lines.append(f"{op}({claims[k - 1].lhs}) = {op}({claims[k - 1].rhs}) BY CONG {k}")
        elif kind == "TRANS" and len(claims) >= 2:
            chain = _chain(rng, claims)
            if chain:
                refs = " ".join(map(str, chain))
                lines.append(f"{claims[chain[0] - 1].lhs} = {claims[chain[-1] - 1].rhs} BY TRANS {refs}")
    return "".join(line + "\n" for line in lines)


def _distinct_normal_forms(claim):
    a = normalize(parse_aq(claim.lhs.text)).normal_form
    b = normalize(parse_aq(claim.rhs.text)).normal_form
    return a != b


@settings(max_examples=300)
@given(st.integers(0, 10**9))
def test_sound_policies_admit_no_false_closed_equation(seed):
    script = random_script(seed)
    for name in SOUND:
        trace = run_script(script, Policy.named(name))
        for e in trace.steps:
            c = e.line.claim
            if e.decision.admitted and isinstance(c.lhs, Plain) and isinstance(c.rhs, Plain):
                assert not _distinct_normal_forms(c), (name, script)


def test_random_scripts_can_reach_the_paradox_under_naive():
    hits = 0
    for seed in range(300):
        trace = run_script(random_script(seed), Policy())
        hits += bool(trace.absurdities)
    assert hits >= 20


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_policies_agree_on_split_free_scripts(seed):
    script = random_script(seed, split_ops=False)
    admitted = {name: run_script(script, Policy.named(name)).admitted_claims() for name in POLICIES}
    assert len({tuple(v) for v in admitted.values()}) == 1
