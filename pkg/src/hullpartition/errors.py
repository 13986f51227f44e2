"""Exception types shared across the package."""


class HullPartitionError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(HullPartitionError, ValueError):
    """Input points or polygons do not span a two-dimensional region."""


class ParseError(HullPartitionError, ValueError):
    """An instance or result file is malformed."""


class NotDisjoint(HullPartitionError, ValueError):
    """An operation that requires pairwise interior-disjoint polygons was
    given overlapping ones."""


class TooLarge(HullPartitionError, ValueError):
    """Brute-force enumeration was asked for an instance beyond its size guard."""


class OrderViolation(HullPartitionError, RuntimeError):
    """Polygons were fed to a working set out of the required sweep order."""
