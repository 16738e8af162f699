"""
Exception hierarchy for the fuzzy logic programming engine.

Problems with the input (program text, partitions, interpretations) are
ValueErrors; failures of the engine itself (budgets, consistency checks)
are RuntimeErrors. Routers and the CLI rely on that split.
"""
from typing import Any, Optional


class FlpError(Exception):
    """Base class for all engine errors."""


class ProgramSyntaxError(FlpError, ValueError):
    """Program text does not follow the grammar."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{location}")


class NestedNegationError(ProgramSyntaxError):
    """Negation applied to something other than an atom."""


class ConstantRangeError(ProgramSyntaxError):
    """Truth constant outside [0,1]."""


class UnknownConnectiveError(FlpError, ValueError):
    """Family or aggregator id that is not registered."""


class ConnectiveRegistrationError(FlpError, ValueError):
    """User-defined family rejected by the axiom or adjointness gate."""


class SignatureMismatchError(FlpError, ValueError):
    """Operands range over different atom sets."""


class UnknownAtomError(SignatureMismatchError, KeyError):
    """Lookup of an atom outside the signature."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class PartitionError(FlpError, ValueError):
    """Partition is not disjoint, not covering, or not stratifiable."""


class ArithmeticModeError(FlpError, ValueError):
    """Connective family unavailable in the selected arithmetic mode."""


class EnumerationLimitError(FlpError, ValueError):
    """Grid enumeration would exceed the configured cap."""


class ConfigurationError(FlpError, RuntimeError):
    """Malformed environment configuration."""


class IterationBudgetExhausted(FlpError, RuntimeError):
    """A fixpoint iteration ran out of steps before converging."""

    def __init__(self, message: str, partial: Any = None):
        self.partial = partial
        super().__init__(message)


class NonMonotoneIterationError(FlpError, RuntimeError):
    """An iterate decreased although the operator was declared monotone."""


class InternalConsistencyError(FlpError, RuntimeError):
    """Two characterizations that must agree produced different answers."""


class UltimateMethodError(FlpError, ValueError):
    """Exact ultimate bounds requested where the candidate method is unsound."""
