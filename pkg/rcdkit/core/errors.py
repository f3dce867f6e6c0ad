"""Exceptions raised by rcdkit.

Every error carries the process exit code the CLI maps it to:
1 for bad input or usage, 2 for refused work.
"""


class RcdkitError(Exception):
    """Base class for all rcdkit errors."""

    exit_code = 1


class MalformedDocument(RcdkitError):
    """The instance document is not valid JSON or has the wrong shape."""


class DimensionMismatch(RcdkitError):
    """Operands live on state spaces of different sizes."""


class NotAProbability(RcdkitError):
    """A measure or kernel row is negative somewhere or does not sum to 1."""


class IndexOutOfRange(RcdkitError):
    """A state index is outside [0, n)."""


class ZeroMassEvent(RcdkitError):
    """Conditioning on an event of measure zero."""


class OverlappingBlocks(RcdkitError):
    """Two partition blocks share a state."""


class UncoveredStates(RcdkitError):
    """Partition blocks do not cover every state."""


class EmptyBlock(RcdkitError):
    """A partition block has no members."""


class AmbiguousAtoms(RcdkitError):
    """Approximate row clustering is not consistent at the given epsilon."""


class NotACounterexample(RcdkitError):
    """The instance handed to the shrinker does not violate the law."""


class UnknownLaw(RcdkitError):
    """No law is registered under the requested id."""


class TooLarge(RcdkitError):
    """The request exceeds an enumeration cap."""

    exit_code = 2


class FloatModeRefused(RcdkitError):
    """Exact-only machinery was asked to run on float-mode data."""

    exit_code = 2
