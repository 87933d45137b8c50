"""
Exception hierarchy.

Every error raised by the library derives from NonstdError so that the
command line and the HTTP surface can map them to a single exit path.
"""

from typing import FrozenSet, Optional


class NonstdError(Exception):
    """Base class for all library errors."""


class UsageError(NonstdError, ValueError):
    """Malformed user input (flags, rationals, partitions, corpus lines)."""


# Levi-Civita arithmetic

class LCError(NonstdError, ArithmeticError):
    """Base class for errors of the infinitesimal field."""


class ZeroDivisionLC(LCError, ZeroDivisionError):
    """Inverse of a value whose term map is empty."""


class Unlimited(LCError):
    """Standard part requested for a large (unlimited) value."""


class DivisorStraddlesZero(LCError):
    """Interval division by an interval that cannot be separated from zero."""


class ExponentDenominatorTooLarge(LCError):
    """A rational exponent exceeds the configured denominator bound."""


# Expressions

class ExprError(NonstdError):
    """Base class for expression errors."""


class ExprSyntaxError(ExprError, UsageError):
    """
    Parse failure.

    Attributes:
        offset (int): Byte offset of the offending token
        expected (FrozenSet[str]): Tokens that would have been accepted
    """

    def __init__(self, message: str, offset: int, expected: FrozenSet[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        hint = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{hint}")


class DomainError(ExprError):
    """
    The function is undefined at the requested point or on the whole cell.

    Attributes:
        node: The expression node that failed
        reason (str): Human readable cause
    """

    def __init__(self, node, reason: str):
        self.node = node
        self.reason = reason
        super().__init__(f"{reason} in {node}")


class EnclosureUnbounded(ExprError):
    """An interval enclosure would be infinite, although f may be defined on part of the cell."""

    def __init__(self, node, reason: str):
        self.node = node
        self.reason = reason
        super().__init__(f"{reason} in {node}")


class NotDifferentiable(ExprError):
    """Symbolic differentiation met a node it does not differentiate."""


class UnlimitedTranscendental(ExprError):
    """A transcendental node cannot be expanded at the given Levi-Civita argument."""


class NotRational(ExprError):
    """Expression lies outside the rational-function fragment."""


# Series and integration

class SeriesError(NonstdError):
    """Base class for series errors."""


class NotNonNegative(SeriesError):
    """Non-negativity of the terms could not be certified."""

    def __init__(self, message: str, index: Optional[int] = None):
        self.index = index
        super().__init__(message)


class PartitionError(UsageError):
    """Partition points are not strictly increasing or too few."""
