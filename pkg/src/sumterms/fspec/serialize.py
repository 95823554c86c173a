"""Line-oriented JSON for derivations and rewrite traces.

Derivation text::

    {"format": "derivation/1", "goal": {"lhs": "1+1", "rhs": "2"}}
    {"id": 0, "kind": "axiom", "axiom": "DigitSucc", "bind": {"d": "1"}, "lhs": "2", "rhs": "1+1"}
    {"id": 1, "kind": "sym", "from": [0], "lhs": "1+1", "rhs": "2"}

One object per line, premises before the steps that use them.  ``kind`` is
one of ``axiom``, ``refl``, ``sym``, ``trans``, ``cong``, ``inst``.  Terms are
rendered in minimal notation.  ``bind`` maps pattern variables to terms,
except ``sigma``, ``tau``, ``rho`` and ``d``, which hold digit strings, and
``args`` (PolyInfix), which holds a list of terms.  ``premise`` (axiom steps)
and ``from`` refer to earlier ids; ``path`` (cong) lists child indices.

Trace text starts with ``{"format": "trace/1", "start": ..., "normal_form": ...}``
and has one line per step: ``rule``, ``reverse``, ``path``, ``bind``,
``result`` and, for conditional steps, a nested ``premise`` trace object.
"""
from __future__ import annotations

import json

from ..aq import parse_aq
from ..errors import ScriptError, SumtermsError
from ..sign import render_text
from .proof import AxiomStep, Cong, Derivation, Inst, Refl, Sym, Trans, topological
from .rewrite import RewriteTrace, TraceStep, derived_sides, DERIVED_RULES
from .axioms import instance

DERIVATION_FORMAT = "derivation/1"
TRACE_FORMAT = "trace/1"
_DIGIT_KEYS = frozenset({"sigma", "tau", "rho", "d"})


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "), ensure_ascii=False)


def _bind_out(b: dict) -> dict:
    out = {}
    for k, v in b.items():
        if k in _DIGIT_KEYS:
            out[k] = v
        elif k == "args":
            out[k] = [render_text(a) for a in v]
        else:
            out[k] = render_text(v)
    return out


def _bind_in(b: dict) -> dict:
    out = {}
    for k, v in b.items():
        if k in _DIGIT_KEYS:
            out[k] = v
        elif k == "args":
            out[k] = tuple(parse_aq(a) for a in v)
        else:
            out[k] = parse_aq(v)
    return out


# -- derivations ---------------------------------------------------------------

def dump_derivation(d: Derivation) -> str:
    lines = [_dump({"format": DERIVATION_FORMAT,
                    "goal": {"lhs": render_text(d.lhs), "rhs": render_text(d.rhs)}})]
    ids: dict[int, int] = {}
    for i, node in enumerate(topological(d.root)):
        ids[id(node)] = i
        rec = {"id": i, "kind": node.kind}
        if isinstance(node, AxiomStep):
            rec["axiom"] = node.axiom
            rec["bind"] = _bind_out(node.bindings)
            if node.premise is not None:
                rec["premise"] = ids[id(node.premise)]
        elif isinstance(node, Inst):
            rec["bind"] = _bind_out(node.bindings)
        elif isinstance(node, Cong):
            rec["path"] = list(node.path)
        if not isinstance(node, (AxiomStep, Refl)):
            rec["from"] = [ids[id(p)] for p in node.premises()]
        if isinstance(node, Refl):
            rec["term"] = render_text(node.term)
        else:
            rec["lhs"] = render_text(node.lhs)
            rec["rhs"] = render_text(node.rhs)
        lines.append(_dump(rec))
    return "\n".join(lines) + "\n"


def load_derivation(text: str) -> Derivation:
    """Rebuild a derivation exactly as written; validity is the checker's job."""
    rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not rows or rows[0].get("format") != DERIVATION_FORMAT:
        raise ScriptError("missing derivation header")
    goal = rows[0]["goal"]
    nodes: dict[int, object] = {}
    node = None
    try:
        for rec in rows[1:]:
            kind = rec["kind"]
            refs = [nodes[j] for j in rec.get("from", [])]
            if kind == "refl":
                node = Refl(parse_aq(rec["term"]))
            else:
                lhs, rhs = parse_aq(rec["lhs"]), parse_aq(rec["rhs"])
                if kind == "axiom":
                    premise = nodes[rec["premise"]] if "premise" in rec else None
                    node = AxiomStep(rec["axiom"], _bind_in(rec.get("bind", {})), lhs, rhs, premise)
                elif kind == "sym":
                    node = Sym(refs[0], lhs, rhs)
                elif kind == "trans":
                    node = Trans(refs[0], refs[1], lhs, rhs)
                elif kind == "cong":
                    node = Cong(tuple(rec["path"]), refs[0], lhs, rhs)
                elif kind == "inst":
                    node = Inst(refs[0], _bind_in(rec.get("bind", {})), lhs, rhs)
                else:
                    raise ScriptError(f"unknown step kind {kind!r}")
            nodes[rec["id"]] = node
    except (KeyError, IndexError, TypeError) as exc:
        raise ScriptError(f"malformed derivation line: {exc}") from exc
    if node is None:
        raise ScriptError("derivation has no steps")
    return Derivation(parse_aq(goal["lhs"]), parse_aq(goal["rhs"]), node)


# -- traces ------------------------------------------------------------------------

def _trace_obj(t: RewriteTrace) -> dict:
    return {"start": render_text(t.start), "normal_form": render_text(t.normal_form),
            "steps": [_step_obj(s) for s in t.steps]}


def _step_obj(s: TraceStep) -> dict:
    rec = {"rule": s.rule, "reverse": s.reverse, "path": list(s.path),
           "bind": _bind_out(s.bindings), "result": render_text(s.result)}
    if s.premise is not None:
        rec["premise"] = _trace_obj(s.premise)
    return rec


def dump_trace(t: RewriteTrace) -> str:
    lines = [_dump({"format": TRACE_FORMAT, "start": render_text(t.start),
                    "normal_form": render_text(t.normal_form)})]
    lines.extend(_dump(_step_obj(s)) for s in t.steps)
    return "\n".join(lines) + "\n"


def _step_in(rec: dict) -> TraceStep:
    b = _bind_in(rec.get("bind", {}))
    rule = rec["rule"]
    try:
        lhs, rhs = derived_sides(rule, b) if rule in DERIVED_RULES else instance(rule, b)[:2]
    except (SumtermsError, KeyError, ValueError):
        lhs = rhs = None  # left for the checker to reject
    premise = _trace_in(rec["premise"]) if "premise" in rec else None
    return TraceStep(rule, bool(rec["reverse"]), tuple(rec["path"]), b,
                     parse_aq(rec["result"]), premise, lhs, rhs)


def _trace_in(obj: dict) -> RewriteTrace:
    steps = [_step_in(r) for r in obj["steps"]]
    return RewriteTrace(parse_aq(obj["start"]), steps, parse_aq(obj["normal_form"]))


def load_trace(text: str) -> RewriteTrace:
    rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not rows or rows[0].get("format") != TRACE_FORMAT:
        raise ScriptError("missing trace header")
    try:
        head = rows[0]
        return _trace_in({"start": head["start"], "normal_form": head["normal_form"], "steps": rows[1:]})
    except (KeyError, TypeError) as exc:
        raise ScriptError(f"malformed trace line: {exc}") from exc
