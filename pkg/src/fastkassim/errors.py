"""Exception types raised across the package.

Every error carries a stable ``code`` (its class name) so that CLI output
and foreign-language wrappers can identify failures without parsing
free-form messages.
"""


class FastkassimError(Exception):
    """Base class for all errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- bracketed tree reading ---

class TreeReadError(FastkassimError):
    """Syntax error in a bracketed tree expression.

    ``offset`` is the byte offset (UTF-8) of the offending position.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnbalancedParens(TreeReadError):
    pass


class EmptyLabel(TreeReadError):
    pass


class EmptyInput(FastkassimError):
    pass


# --- kernel ---

class DegenerateTree(FastkassimError):
    pass


class OracleCapExceeded(FastkassimError):
    pass


# --- assignment ---

class NonFiniteEntry(FastkassimError):
    pass


# --- document scoring ---

class EmptyDocument(FastkassimError):
    pass


class EmptyReferenceSet(FastkassimError):
    pass


# --- ingest ---

class ParserLaunchFailure(FastkassimError):
    pass


class ParserOutputMismatch(FastkassimError):
    pass


class MalformedTree(FastkassimError):
    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class CacheCorrupt(FastkassimError):
    pass


# --- evaluation ---

class MalformedRecord(FastkassimError):
    pass


class TooFewScores(FastkassimError):
    pass


class ZeroVariance(FastkassimError):
    pass


class LengthMismatch(FastkassimError):
    pass


# --- benchmark ---

class InsufficientPairsInBin(FastkassimError):
    pass
