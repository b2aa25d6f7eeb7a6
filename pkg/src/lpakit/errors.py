"""Exception hierarchy.

Precondition failures (exit status 2 on the command line) derive from
:class:`PreconditionError`; malformed input files (exit status 1) derive from
:class:`ParseError`.
"""


class LPAError(Exception):
    """Base class for all errors raised by lpakit."""


class PreconditionError(LPAError, ValueError):
    """An operation was called outside the hypotheses it requires."""


class UnknownVertex(PreconditionError):
    pass


class NotHereditary(PreconditionError):
    pass


class NotSaturated(PreconditionError):
    pass


class NotAcyclic(PreconditionError):
    pass


class EmptySet(PreconditionError):
    pass


class ConditionViolated(PreconditionError):
    """Some vertex lies on two distinct cycles."""


class UnsupportedField(PreconditionError):
    pass


class IncompleteChoice(PreconditionError):
    pass


class GraphMismatch(PreconditionError):
    pass


class FieldMismatch(PreconditionError):
    pass


class InternalLimit(LPAError, RuntimeError):
    """A provably terminating computation exceeded its step budget."""


class ParseError(LPAError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


class DuplicateId(ParseError):
    pass


class UnknownEndpoint(ParseError):
    pass
