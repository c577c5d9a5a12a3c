"""Exception hierarchy shared by all corrhier modules."""

from __future__ import annotations


class CorrHierError(Exception):
    """Base class for every error raised by corrhier."""


class ParseError(CorrHierError, ValueError):
    """Malformed textual input (Pauli strings, edge lists, graph6)."""

    def __init__(self, message: str, *, line: int | None = None, position: int | None = None):
        self.line = line
        self.position = position
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class DimensionError(CorrHierError, ValueError):
    """Operands act on different numbers of qubits."""


class GroupError(CorrHierError, ValueError):
    """Generator set is not a valid stabilizer group."""


class CapacityError(CorrHierError):
    """A configured enumeration limit would be exceeded."""

    def __init__(self, message: str, limit: int):
        self.limit = limit
        super().__init__(f"{message} (limit {limit})")


class DomainError(CorrHierError, ValueError):
    """Numerical input outside the domain of an operation."""


class PhaseError(CorrHierError, ArithmeticError):
    """A product that should be Hermitian picked up an imaginary phase."""
