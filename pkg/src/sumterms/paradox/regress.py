"""The tower of equalities and the counting operators that break each level.

Each level has an equality on signs: same value, same AQ, same AQ with the
same redundant brackets, and literal identity.  An operator breaks a level
when two signs equal at that level are mapped to different results.  An
operator is only tested at levels at least as fine as its declared level:
the split operators are declared on AQs (the sumterm view), so they are not
expected to respect value equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..aq import eq_aq, eq_aq_bp, is_sumterm, parse, split_left, split_right
from ..semantics import evaluate
from ..sign import count_bracket_pairs, count_spaces

LEVELS = ("value", "aq", "aq_bp", "sign")
_RANK = {name: i for i, name in enumerate(LEVELS)}
SYMBOL = {"value": "=", "aq": "=_AQ", "aq_bp": "=_AQ^bp", "sign": "≡"}

# declared level of each operator
DECLARED = {"l_s": "aq", "r_s": "aq", "#_bp": "aq", "#_sp": "aq"}

WITNESSES = (
    "0", "(0)", "((0))", "1", "2", "3",
    "1+2", "1 + 2", "1+ 2", "(1+2)", "1+(2)", "(1)+2", "((1)+2)", "2+1",
    "1+2+5", "(1+2)+5", "3+0", "0+3",
)


def _related(level: str, s: str, t: str) -> bool:
    if level == "sign":
        return s == t
    if level == "aq_bp":
        return eq_aq_bp(s, t)
    if level == "aq":
        return eq_aq(s, t)
    return evaluate(parse(s).aq) == evaluate(parse(t).aq)


def _apply(op: str, s: str):
    """A comparable result, or None where the operator is undefined."""
    if op == "#_bp":
        return count_bracket_pairs(s)
    if op == "#_sp":
        return count_spaces(s)
    a = parse(s).aq
    if not is_sumterm(a):
        return None
    return split_left(a) if op == "l_s" else split_right(a)


def _same_result(op: str, x, y) -> bool:
    return eq_aq(x, y) if op in ("l_s", "r_s") else x == y


@dataclass(frozen=True)
class LevelReport:
    level: str
    tested: tuple
    broken: dict = field(default_factory=dict)  # op -> (sign, sign)
    note: str = ""

    @property
    def consistent(self) -> bool:
        return not self.broken

    def line(self) -> str:
        head = f"level {self.level} ({SYMBOL[self.level]}): "
        if self.broken:
            parts = [f"broken by {op}: {s!r} {SYMBOL[self.level]} {t!r} but {op} differs"
                     for op, (s, t) in self.broken.items()]
            body = "; ".join(parts)
        else:
            body = "consistent"
        return head + body + (f" ({self.note})" if self.note else "")


@dataclass(frozen=True)
class RegressReport:
    levels: tuple
    resolution: str

    def text(self) -> str:
        return "\n".join([*(lv.line() for lv in self.levels), f"resolution: {self.resolution}"]) + "\n"

    def to_json(self) -> dict:
        return {
            "levels": [
                {"level": lv.level, "equality": SYMBOL[lv.level], "tested": list(lv.tested),
                 "broken": {op: list(pair) for op, pair in lv.broken.items()},
                 "consistent": lv.consistent, "note": lv.note}
                for lv in self.levels
            ],
            "resolution": self.resolution,
        }


RESOLUTION = (
    "conventionalism on signatures: a fixed signature rejects #_bp and #_sp, "
    "while l_s and r_s are kept as operations on sumterms"
)


def regress_report(disabled=(), witnesses=WITNESSES) -> RegressReport:
    """Check every enabled operator against every level over the witness signs."""
    enabled = [op for op in DECLARED if op not in set(disabled)]
    reports = []
    for level in LEVELS:
        tested = tuple(op for op in enabled if _RANK[DECLARED[op]] <= _RANK[level])
        skipped = [op for op in enabled if op not in tested]
        broken = {}
        for op in tested:
            for s, t in combinations(witnesses, 2):
                if not _related(level, s, t):
                    continue
                x, y = _apply(op, s), _apply(op, t)
                if x is None or y is None:
                    continue
                if not _same_result(op, x, y):
                    broken[op] = (s, t)
                    break
        note = f"{', '.join(skipped)} not tested: declared on AQs" if skipped else ""
        reports.append(LevelReport(level, tested, broken, note))
    return RegressReport(tuple(reports), RESOLUTION)
