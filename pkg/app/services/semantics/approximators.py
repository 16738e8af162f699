from abc import ABC, abstractmethod
from typing import Dict, Tuple

from app.models.lattice import Atom, Interpretation, InterpretationPair
from app.models.program import Program
from app.services.connectives.registry import ConnectiveRegistry, connective_registry
from app.services.semantics.operators import check_signature, consequence

Annotations = Dict[Atom, str]


class Approximator(ABC):
    """
    Abstract base class for approximators of T_P.

    An approximator maps interpretation pairs to interpretation pairs, is
    <=p-monotone and sends (I, I) to (T_P(I), T_P(I)). The fixpoint engine
    only talks to this interface, so the standard and the ultimate
    approximator are interchangeable strategies.
    """

    def __init__(self, program: Program, registry: ConnectiveRegistry = connective_registry):
        self.program = program
        self.registry = registry

    @property
    @abstractmethod
    def name(self) -> str:
        """Operator label used in traces and logs"""
        pass

    @abstractmethod
    def apply(self, pair: InterpretationPair) -> InterpretationPair:
        """
        Apply the approximator to a pair.

        Args:
            pair: (lower, upper) over the program signature, consistent or not

        Returns:
            New pair (lower', upper')
        """
        pass

    def apply_annotated(self, pair: InterpretationPair) -> Tuple[InterpretationPair, Annotations]:
        """Apply and report, per atom, which method produced the bounds."""
        return self.apply(pair), {atom: "corner" for atom in pair.atoms}

    def lower_bound(self, lower: Interpretation, upper: Interpretation) -> Interpretation:
        return self.apply(InterpretationPair(lower, upper)).lower

    def upper_bound(self, lower: Interpretation, upper: Interpretation) -> Interpretation:
        return self.apply(InterpretationPair(lower, upper)).upper

    def _check(self, pair: InterpretationPair) -> None:
        check_signature(self.program, pair.lower)


class StandardApproximator(Approximator):
    """
    Symmetric approximator A_P.

    The lower bound evaluates bodies with positive atoms read from L and
    negated atoms read as 1 - U(p); the upper bound is the same computation
    with L and U swapped.
    """

    @property
    def name(self) -> str:
        return "A_P"

    def lower_bound(self, lower: Interpretation, upper: Interpretation) -> Interpretation:
        return consequence(self.program, lower, upper, self.registry)

    def upper_bound(self, lower: Interpretation, upper: Interpretation) -> Interpretation:
        return consequence(self.program, upper, lower, self.registry)

    def apply(self, pair: InterpretationPair) -> InterpretationPair:
        self._check(pair)
        return InterpretationPair(
            self.lower_bound(pair.lower, pair.upper),
            self.upper_bound(pair.lower, pair.upper),
        )


def approximator(program: Program, pair: InterpretationPair,
                 registry: ConnectiveRegistry = connective_registry) -> InterpretationPair:
    """A_P(L, U) = (fst A_P(L, U), fst A_P(U, L))."""
    return StandardApproximator(program, registry).apply(pair)
