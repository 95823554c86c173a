"""Tree nodes for arithmetical quantities and positional helpers.

An AQ is one of four immutable node kinds:

* ``Const(digits)`` -- a decimal natural in normal form (``"0"`` or no leading zero)
* ``Var(name)``
* ``Neg(arg)`` -- the opposite of ``arg``
* ``Sum(args)`` -- a poly-infix sum, ``len(args) >= 2``

Structural equality of these nodes is AQ equality.  Positions are tuples of
child indices; ``Neg`` has the single child index 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .errors import IndexOutOfRange


def is_decimal_natural(digits: str) -> bool:
    return (
        bool(digits)
        and digits.isascii()
        and digits.isdigit()
        and (digits == "0" or digits[0] != "0")
    )


def is_positive_decimal(digits: str) -> bool:
    return is_decimal_natural(digits) and digits != "0"


@dataclass(frozen=True, slots=True)
class Const:
    digits: str

    def __post_init__(self):
        if not is_decimal_natural(self.digits):
            raise ValueError(f"not a decimal natural: {self.digits!r}")

    def __repr__(self):
        return f"Const({self.digits!r})"


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True)
class Neg:
    arg: "AQ"

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True, slots=True)
class Sum:
    args: tuple

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) < 2:
            raise ValueError("a sum needs at least two summands")

    def __repr__(self):
        return f"Sum[{', '.join(map(repr, self.args))}]"


AQ = Union[Const, Var, Neg, Sum]

ZERO = Const("0")
ONE = Const("1")


def plus(*args: AQ) -> Sum:
    return Sum(tuple(args))


def children(t: AQ) -> tuple:
    if isinstance(t, Sum):
        return t.args
    if isinstance(t, Neg):
        return (t.arg,)
    return ()


def subterm(t: AQ, path: tuple) -> AQ:
    for i in path:
        kids = children(t)
        if not 0 <= i < len(kids):
            raise IndexOutOfRange(f"no child {i} at {t!r}")
        t = kids[i]
    return t


def replace(t: AQ, path: tuple, new: AQ) -> AQ:
    """Return ``t`` with the subterm at ``path`` replaced by ``new``."""
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, Sum):
        if not 0 <= i < len(t.args):
            raise IndexOutOfRange(f"no child {i} at {t!r}")
        args = list(t.args)
        args[i] = replace(args[i], rest, new)
        return Sum(tuple(args))
    if isinstance(t, Neg) and i == 0:
        return Neg(replace(t.arg, rest, new))
    raise IndexOutOfRange(f"no child {i} at {t!r}")


def positions(t: AQ, prefix: tuple = ()) -> Iterator[tuple]:
    """All positions of ``t`` in pre-order."""
    stack = [(t, prefix)]
    while stack:
        node, path = stack.pop()
        yield path
        kids = children(node)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((kids[i], path + (i,)))


def variables(t: AQ) -> set:
    out = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.name)
        else:
            stack.extend(children(node))
    return out


def is_closed(t: AQ) -> bool:
    return not variables(t)


def size(t: AQ) -> int:
    return sum(1 for _ in positions(t))


def depth(t: AQ) -> int:
    kids = children(t)
    return 1 + max(map(depth, kids)) if kids else 1
