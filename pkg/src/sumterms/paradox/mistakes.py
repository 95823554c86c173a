"""Known wrong inferences, each refuted by an integer oracle.

Products only ever appear here, evaluated by Python integers; the
equational specification of the integers has no multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import product
from typing import Callable

from .claims import ScriptLine, parse_script


@dataclass(frozen=True)
class Mistake:
    name: str
    claim: str
    variables: tuple
    holds: Callable[..., bool]

    def counterexamples(self, bound: int = 5, limit: int = 3) -> list[dict]:
        found = []
        for values in product(range(-bound, bound + 1), repeat=len(self.variables)):
            if not self.holds(*values):
                found.append(dict(zip(self.variables, values)))
                if len(found) == limit:
                    break
        return found

    @property
    def refuted(self) -> bool:
        return bool(self.counterexamples(limit=1))


KNOWN_MISTAKES = (
    Mistake("square-even", "x·x is even", ("x",), lambda x: (x * x) % 2 == 0),
    Mistake("product-with-opposite", "x·(−x) = 0", ("x",), lambda x: x * -x == 0),
    Mistake("half-distribution", "x·(y+z) = (x·y)+z", ("x", "y", "z"), lambda x, y, z: x * (y + z) == x * y + z),
    Mistake("sum-exceeds", "x+y > x", ("x", "y"), lambda x, y: x + y > x),
)


def corpus_names() -> list[str]:
    files = resources.files(__package__).joinpath("corpus").iterdir()
    return sorted(f.name[:-4] for f in files if f.name.endswith(".txt"))


def corpus_text(name: str) -> str:
    return resources.files(__package__).joinpath("corpus", f"{name}.txt").read_text(encoding="utf-8")


def load_corpus(name: str) -> list[ScriptLine]:
    return parse_script(corpus_text(name))
