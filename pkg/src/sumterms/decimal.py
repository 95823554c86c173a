"""School arithmetic on decimal digit strings.

Operands are decimal naturals in normal form.  Nothing here converts to
machine integers; the column algorithms work digit by digit so they can serve
as a route independent of Python's big integers.
"""

_DIGITS = "0123456789"


def compare(a: str, b: str) -> int:
    """-1, 0 or 1 as a is less than, equal to, or greater than b."""
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    if a == b:
        return 0
    return -1 if a < b else 1


def add(a: str, b: str) -> str:
    out = []
    carry = 0
    i, j = len(a) - 1, len(b) - 1
    while i >= 0 or j >= 0 or carry:
        s = carry
        if i >= 0:
            s += _DIGITS.index(a[i])
            i -= 1
        if j >= 0:
            s += _DIGITS.index(b[j])
            j -= 1
        carry, digit = divmod(s, 10)
        out.append(_DIGITS[digit])
    return "".join(reversed(out)).lstrip("0") or "0"


def sub(a: str, b: str) -> str:
    """a - b for a >= b."""
    if compare(a, b) < 0:
        raise ValueError(f"{a} - {b} is negative")
    out = []
    borrow = 0
    j = len(b) - 1
    for i in range(len(a) - 1, -1, -1):
        d = _DIGITS.index(a[i]) - borrow
        if j >= 0:
            d -= _DIGITS.index(b[j])
            j -= 1
        borrow = 1 if d < 0 else 0
        out.append(_DIGITS[d + 10 * borrow])
    return "".join(reversed(out)).lstrip("0") or "0"


def succ(a: str) -> str:
    return add(a, "1")


def pred(a: str) -> str:
    return sub(a, "1")


def add_signed(neg_a: bool, a: str, neg_b: bool, b: str) -> tuple[bool, str]:
    """Add two sign-magnitude decimals; returns (negative, magnitude)."""
    if neg_a == neg_b:
        mag = add(a, b)
        return (neg_a and mag != "0"), mag
    c = compare(a, b)
    if c == 0:
        return False, "0"
    if c > 0:
        return neg_a, sub(a, b)
    return neg_b, sub(b, a)
