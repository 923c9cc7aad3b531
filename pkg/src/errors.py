#!/usr/bin/env python3
"""
Exception hierarchy for archgroups.

Three families, one per CLI exit code:
    ParseError        -> exit 2
    ContractViolation -> exit 3
    BudgetExceeded    -> exit 4

Anything else escaping a command is an internal error (exit 1).
"""

INTERNAL_ERROR_EXIT = 1


class ArchGroupsError(Exception):
    """Root of every error raised by the library"""

    exit_code = INTERNAL_ERROR_EXIT


class ParseError(ArchGroupsError):
    """Malformed expression, literal or command"""

    exit_code = 2


class ContractViolation(ArchGroupsError):
    """An operation was called outside its precondition"""

    exit_code = 3


class DivisionByZero(ContractViolation):
    pass


class ModeViolation(ContractViolation):
    """Field operation attempted on linear-mode symbols"""


class NotAMember(ContractViolation):
    pass


class UnitNotPositive(ContractViolation):
    pass


class DimensionMismatch(ContractViolation):
    pass


class PoleAtInput(ContractViolation):
    pass


class RationalAlpha(ContractViolation):
    pass


class UnknownSymbol(ContractViolation):
    pass


class InvalidInjection(ContractViolation):
    pass


class ExponentGroupMismatch(ContractViolation):
    pass


class ZeroSeries(ContractViolation):
    pass


class InvalidType(ContractViolation):
    """Type vector violates the +-1 leading entry or independence condition"""


class BudgetExceeded(ArchGroupsError):
    exit_code = 4


class RefinementBudgetExceeded(BudgetExceeded):
    """
    Raised when interval refinement does not settle within the configured
    number of rounds. Usually means a symbol binding breaks the independence
    contract (e.g. an "algebraic" symbol bound to sqrt(2)) or that a finite
    decimal binding has run out of digits.
    """
