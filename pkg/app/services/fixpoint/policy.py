from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from app.core.config import get_max_iterations
from app.core.exceptions import IterationBudgetExhausted
from app.models.lattice import ArithmeticMode


class FixpointStatus(str, Enum):
    CONVERGED = "converged"
    CONVERGED_WITHIN_EPSILON = "converged_within_epsilon"
    ITERATION_BUDGET_EXHAUSTED = "iteration_budget_exhausted"


@dataclass(frozen=True)
class ConvergencePolicy:
    """
    When an iteration counts as converged.

    Without epsilon the iteration must stabilize literally (exact mode).
    With epsilon, values are doubles and consecutive iterates within
    epsilon in the sup-norm end the iteration with a non-exact status.
    """
    epsilon: Optional[Fraction] = None
    max_iterations: int = field(default_factory=get_max_iterations)
    trace: bool = False

    def __post_init__(self):
        if self.epsilon is not None and self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations <= 0:
            raise ValueError("max_iterations must be a positive integer")

    @classmethod
    def exact(cls, max_iterations: Optional[int] = None, trace: bool = False) -> "ConvergencePolicy":
        return cls(None, max_iterations or get_max_iterations(), trace)

    @classmethod
    def within(cls, epsilon, max_iterations: Optional[int] = None, trace: bool = False) -> "ConvergencePolicy":
        return cls(Fraction(epsilon), max_iterations or get_max_iterations(), trace)

    @property
    def is_exact(self) -> bool:
        return self.epsilon is None

    @property
    def mode(self) -> ArithmeticMode:
        return ArithmeticMode.EXACT if self.is_exact else ArithmeticMode.APPROXIMATE

    def without_trace(self) -> "ConvergencePolicy":
        return replace(self, trace=False) if self.trace else self

    def with_trace(self) -> "ConvergencePolicy":
        return replace(self, trace=True)

    def close_enough(self, distance) -> bool:
        return not self.is_exact and distance <= self.epsilon

    def same(self, a, b) -> bool:
        """Equality in exact mode, epsilon-closeness otherwise."""
        if self.is_exact:
            return a == b
        return a.distance(b) <= self.epsilon


@dataclass
class FixpointResult:
    """
    Outcome of a fixpoint iteration.

    `steps` counts productive applications, i.e. those that changed the value.
    """
    value: Any
    status: FixpointStatus
    steps: int
    operator: str = ""
    trace: Optional[List[Any]] = None
    methods: Optional[Dict[str, str]] = None

    @property
    def converged(self) -> bool:
        return self.status is not FixpointStatus.ITERATION_BUDGET_EXHAUSTED

    def require_converged(self) -> "FixpointResult":
        """
        Raises:
            IterationBudgetExhausted: If the iteration did not converge, carrying this result
        """
        if not self.converged:
            raise IterationBudgetExhausted(
                f"{self.operator or 'fixpoint'} iteration did not converge within {self.steps} steps; "
                "raise --max-iters or use --mode approx with --epsilon",
                partial=self,
            )
        return self
