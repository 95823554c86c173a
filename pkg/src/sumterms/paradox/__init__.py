"""Scripts of equational claims checked under interchangeable policies."""
from .claims import Claim, Justification, ScriptLine, parse_claim, parse_line, parse_script, format_script
from .policy import Decision, Lint, Mode, Policy, check_step
from .reasoner import (
    ReasoningTrace, Verdict, delayed_refinement, run_bracket_paradox, run_paradox, run_script,
)
from .regress import RegressReport, regress_report
from .mistakes import KNOWN_MISTAKES, Mistake, corpus_names, corpus_text, load_corpus

__all__ = [
    "Claim", "Justification", "ScriptLine", "parse_claim", "parse_line", "parse_script", "format_script",
    "Decision", "Lint", "Mode", "Policy", "check_step",
    "ReasoningTrace", "Verdict", "delayed_refinement", "run_bracket_paradox", "run_paradox", "run_script",
    "RegressReport", "regress_report",
    "KNOWN_MISTAKES", "Mistake", "corpus_names", "corpus_text", "load_corpus",
]
