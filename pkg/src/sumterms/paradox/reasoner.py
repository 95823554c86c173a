"""Running scripts under a policy, and the canonical paradox scripts."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..errors import SignatureViolation, SumtermsError
from ..fspec.rewrite import normalize
from ..aq import parse
from ..sign import render_text
from .claims import EQ, EQ_AQ, EQ_BP, Claim, ScriptLine, parse_script
from .policy import Decision, Mode, Policy, check_step, closed_plain, plain_value_pair

SUM_SPLITTING_SCRIPT = """\
1 = l_s(1+2) BY DEF
1+2 = 2+1 BY ARITH
l_s(1+2) = l_s(2+1) BY CONG 2
l_s(2+1) = 2 BY DEF
1 = 2 BY TRANS 1 3 4
"""


def bracket_script(level: str) -> str:
    """0 and (0) are one AQ, yet they have different numbers of bracket pairs."""
    eq = {"aq": EQ_AQ, "aq_bp": EQ_BP}[level]
    return (
        f"0 {eq} (0) BY AQ\n"
        "#_bp(0) = #_bp((0)) BY CONG 1\n"
        "0 = #_bp(0) BY DEF\n"
        "#_bp((0)) = 1 BY DEF\n"
        "0 = 1 BY TRANS 3 2 4\n"
    )


SPACE_SCRIPT = """\
1 + 2 =_AQ^bp 1+2 BY AQ
#_sp(1 + 2) = #_sp(1+2) BY CONG 1
2 = #_sp(1 + 2) BY DEF
#_sp(1+2) = 0 BY DEF
2 = 0 BY TRANS 3 2 4
"""


@dataclass(frozen=True)
class TraceEntry:
    index: int
    line: ScriptLine
    decision: Decision

    def __str__(self):
        return f"{self.index}. {self.line}  [{self.decision}]"


@dataclass(frozen=True)
class Verdict:
    kind: str  # "Consistent", "ContradictionDetected" or "StepRejected"
    equation: str = ""
    step: int | None = None
    reason: str = ""

    def __str__(self):
        if self.kind == "ContradictionDetected":
            return f"ContradictionDetected({self.equation})"
        if self.kind == "StepRejected":
            return f"StepRejected({self.step}: {self.reason})"
        return "Consistent"


@dataclass
class ReasoningTrace:
    policy: Policy
    steps: list = field(default_factory=list)
    verdict: Verdict = Verdict("Consistent")
    absurdities: list = field(default_factory=list)

    @property
    def admitted(self) -> list:
        return [e for e in self.steps if e.decision.admitted]

    @property
    def consistent(self) -> bool:
        """No absurd closed claim was admitted."""
        return not self.absurdities and self.verdict.kind != "ContradictionDetected"

    def admitted_claims(self) -> list:
        return [str(e.line.claim) for e in self.admitted]

    @property
    def conclusion(self) -> Claim | None:
        """The last step's claim, when that step was admitted."""
        if self.steps and self.steps[-1].decision.admitted:
            return self.steps[-1].line.claim
        return None

    def chain(self) -> str | None:
        """The last admitted TRANS step spelled out link by link."""
        for e in reversed(self.admitted):
            j = e.line.justification
            if j.rule == "TRANS":
                links = [self.steps[k - 1].line.claim for k in j.refs]
                parts = [str(links[0].lhs)] + [f"{c.eq} {c.rhs}" for c in links]
                return " ".join(parts)
        return None

    def text(self) -> str:
        head = f"policy: {self.policy.mode.value}"
        if self.policy.mode is Mode.SUMTERM:
            head += f" (level {self.policy.level})"
        out = [head]
        out += [str(e) for e in self.steps]
        out.append(f"verdict: {self.verdict}")
        out += [f"absurd: {a}" for a in self.absurdities]
        chain = self.chain()
        if chain:
            out.append(f"chain: {chain}")
        if self.conclusion is not None:
            out.append(f"conclusion: {self.conclusion}")
        return "\n".join(out) + "\n"

    def to_json(self) -> dict:
        return {
            "policy": self.policy.mode.value,
            "steps": [
                {"index": e.index, "claim": str(e.line.claim), "by": str(e.line.justification),
                 "status": e.decision.status, "reason": e.decision.reason}
                for e in self.steps
            ],
            "chain": self.chain(),
            "conclusion": str(self.conclusion) if self.conclusion is not None else None,
            "verdict": {"kind": self.verdict.kind, "equation": self.verdict.equation,
                        "step": self.verdict.step, "reason": self.verdict.reason},
            "absurdities": list(self.absurdities),
        }


def _distinct_normal_forms(claim: Claim):
    """Normal forms of a closed plain claim's sides when they differ, else None."""
    if not closed_plain(claim):
        return None
    a = normalize(parse(claim.lhs.text).aq).normal_form
    b = normalize(parse(claim.rhs.text).aq).normal_form
    return None if a == b else (render_text(a), render_text(b))


def _false_closed(claim: Claim) -> bool:
    if not closed_plain(claim):
        return False
    try:
        a, b = plain_value_pair(claim)
    except SumtermsError:
        return False
    return a != b


def run_script(script, policy: Policy) -> ReasoningTrace:
    """Check every line in order; a step citing a rejected step is rejected."""
    lines = parse_script(script) if isinstance(script, str) else list(script)
    trace = ReasoningTrace(policy)
    first_failure = None
    for index, line in enumerate(lines, 1):
        refs = line.justification.refs
        bad = [k for k in refs if not 1 <= k < index]
        dead = [k for k in refs if 1 <= k < index and not trace.steps[k - 1].decision.admitted]
        contradiction = None
        if bad:
            decision = Decision("rejected", f"step {bad[0]} is not an earlier step")
        elif dead:
            decision = Decision("rejected", f"depends on rejected step {dead[0]}")
        else:
            premises = [trace.steps[k - 1].line.claim for k in refs]
            try:
                decision = check_step(line.claim, line.justification, policy, premises)
            except SignatureViolation as exc:
                decision = Decision("rejected", f"SignatureViolation: {exc}")
            if decision.admitted and policy.checks_foundations:
                nfs = _distinct_normal_forms(line.claim)
                if nfs:
                    contradiction = str(line.claim)
                    decision = Decision(
                        "rejected", f"contradicts the integer specification: normal forms {nfs[0]} and {nfs[1]}"
                    )
        trace.steps.append(TraceEntry(index, line, decision))
        if decision.admitted and _false_closed(line.claim):
            trace.absurdities.append(str(line.claim))
        if first_failure is None and not decision.admitted:
            if contradiction is not None:
                first_failure = Verdict("ContradictionDetected", equation=contradiction, step=index)
            else:
                first_failure = Verdict("StepRejected", step=index, reason=decision.reason)
    if first_failure is not None:
        trace.verdict = first_failure
    return trace


def run_paradox(policy: Policy) -> ReasoningTrace:
    """The sum splitting derivation of 1 = 2 under the given policy."""
    return run_script(SUM_SPLITTING_SCRIPT, policy)


def run_bracket_paradox(level: str, spaces: bool = False) -> ReasoningTrace:
    """Bracket pair counting at level ``aq`` or ``aq_bp`` under the sumterm view.

    With ``spaces`` the space-counting variant is run instead (meant for
    level ``aq_bp``, where bracket counting is already repaired).
    """
    policy = Policy(Mode.SUMTERM, level=level)
    return run_script(SPACE_SCRIPT if spaces else bracket_script(level), policy)


def delayed_refinement(script, policy: Policy | None = None):
    """Replay a script under the sumterm policy, upgrading = to =_AQ where that is admitted.

    Returns the refined script lines, or None when some step cannot be
    replayed even after upgrading.
    """
    policy = policy or Policy(Mode.SUMTERM)
    lines = parse_script(script) if isinstance(script, str) else list(script)
    refined: list[ScriptLine] = []
    for line in lines:
        premises = [refined[k - 1].claim for k in line.justification.refs if 1 <= k <= len(refined)]
        if len(premises) != len(line.justification.refs):
            return None
        candidates = [line]
        if line.claim.eq == EQ:
            candidates.insert(0, replace(line, claim=replace(line.claim, eq=EQ_AQ)))
        for cand in candidates:
            try:
                ok = check_step(cand.claim, cand.justification, policy, premises).status == "admitted"
            except SignatureViolation:
                ok = False
            if ok:
                refined.append(cand)
                break
        else:
            return None
    return refined
