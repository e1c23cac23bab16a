"""
Exception hierarchy shared by the library, the CLI and the web app.
"""


class CirculantError(ValueError):
    """Base class for every error raised by the library."""


class InvalidInputError(CirculantError):
    """Malformed circulant, modulus, partition, multiplier or divisor."""


class SearchBoundExceeded(CirculantError):
    """A backtracking search was asked for a digraph above the configured order bound."""


class GroupBudgetExceeded(CirculantError):
    """An enumeration would exceed the configured element or order budget."""


class NotConnectedError(CirculantError):
    """The circulant does not generate Z_n."""


class NotArcTransitiveError(CirculantError):
    """The automorphism group is not transitive on arcs."""


class TheoremViolation(CirculantError):
    """
    A structural postcondition failed.

    Raised only when the decomposition machinery produces something the
    structure theorems rule out, so it always signals a bug.
    """
