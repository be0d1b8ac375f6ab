"""Exception hierarchy.

The CLI maps each family to an exit code: input problems exit with 2,
exceeded enumeration caps with 3 and violated preconditions with 4.
"""


class JAError(Exception):
    """Base class for all errors raised by the package."""


class InputError(JAError, ValueError):
    """Malformed or invalid user input (formulas, agendas, profiles, files)."""


class FormulaSyntaxError(InputError):
    """A formula string does not conform to the grammar."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundAtomError(InputError):
    """An atom has no value in the valuation used for evaluation."""


class CapExceededError(JAError):
    """An enumeration would exceed a configured size cap."""


class PreconditionError(JAError):
    """An operation was called on inputs outside its domain."""
