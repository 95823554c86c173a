"""Exception hierarchy shared by every module."""


class SumtermsError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class LexError(SumtermsError):
    def __init__(self, offset: int, found: str):
        self.offset = offset
        self.found = found
        super().__init__(f"unexpected character {found!r} at offset {offset}")


class ParseError(SumtermsError):
    def __init__(self, offset: int, expectation: str):
        self.offset = offset
        self.expectation = expectation
        super().__init__(f"parse error at offset {offset}: expected {expectation}")


class UnbalancedBrackets(SumtermsError):
    pass


class NotAPolyInfixSum(SumtermsError):
    pass


class IndexOutOfRange(SumtermsError, IndexError):
    pass


class OpenTerm(SumtermsError):
    pass


class SortError(SumtermsError):
    pass


class ScaleError(SumtermsError):
    pass


class DomainError(SumtermsError):
    pass


class SignatureViolation(SumtermsError):
    pass


class ScriptError(SumtermsError):
    pass
