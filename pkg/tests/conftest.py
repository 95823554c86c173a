import random

from hypothesis import settings, strategies as st

from sumterms.terms import Const, Neg, Sum, Var

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def random_aq(rng: random.Random, depth: int = 6, variables=()):
    """A random AQ of at most ``depth`` levels below the root, biased towards small trees."""
    if depth == 0 or rng.random() < 0.25 + 0.12 * (6 - depth):
        if variables and rng.random() < 0.2:
            return Var(rng.choice(variables))
        return Const(str(rng.randint(0, 10 ** rng.randint(0, 6))))
    if rng.random() < 0.2:
        return Neg(random_aq(rng, depth - 1, variables))
    arity = min(rng.randint(2, 8), rng.randint(2, 8))
    return Sum(tuple(random_aq(rng, depth - 1, variables) for _ in range(arity)))


def oracle(t) -> int:
    """Big-integer value of a closed AQ, independent of the library."""
    if isinstance(t, Const):
        return int(t.digits)
    if isinstance(t, Neg):
        return -oracle(t.arg)
    return sum(oracle(c) for c in t.args)


def aqs(max_leaves: int = 12, variables=("x", "y"), max_const: int = 10**4):
    consts = st.integers(0, max_const).map(lambda n: Const(str(n)))
    leaves = consts | st.sampled_from(variables).map(Var) if variables else consts
    return st.recursive(
        leaves,
        lambda kids: kids.map(Neg) | st.lists(kids, min_size=2, max_size=4).map(lambda xs: Sum(tuple(xs))),
        max_leaves=max_leaves,
    )


def closed_aqs(max_leaves: int = 12, max_const: int = 10**4):
    return aqs(max_leaves, variables=(), max_const=max_const)
