"""Exception types shared across the package."""


class NearcutError(Exception):
    """Base class for package errors."""


class InputError(NearcutError):
    """Malformed instance data or invalid operation arguments."""


class LimitError(NearcutError):
    """Exhaustive enumeration was asked to go beyond the configured node limit."""


class PreconditionError(NearcutError):
    """A documented operation precondition does not hold.

    `witness` carries the offending object (a cut mask, a pair of masks, ...)
    when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InfeasibleError(NearcutError):
    """No feasible solution exists; `witness` names an uncoverable cut."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetError(NearcutError):
    """Search aborted: the node budget ran out before optimality was proven."""


class InvariantError(NearcutError):
    """A runtime-verified structural guarantee failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
