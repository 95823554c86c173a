"""Equational specification of decimal integer addition: rewriting, proofs, checking."""
from .axioms import Axiom, PLUS_ONE_FAMILY, digit_successor, instance
from .checker import CheckResult, check, check_text, check_trace
from .proof import Derivation, NotDerivable, Prover, prove
from .rewrite import RewriteTrace, TraceStep, negsum_chain, normalize, successor_chain_add
from .serialize import dump_derivation, dump_trace, load_derivation, load_trace

__all__ = [
    "Axiom", "PLUS_ONE_FAMILY", "digit_successor", "instance",
    "CheckResult", "check", "check_text", "check_trace",
    "Derivation", "NotDerivable", "Prover", "prove",
    "RewriteTrace", "TraceStep", "negsum_chain", "normalize", "successor_chain_add",
    "dump_derivation", "dump_trace", "load_derivation", "load_trace",
]
