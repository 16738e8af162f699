import itertools
import logging
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from app.core.config import get_enumeration_cap
from app.core.exceptions import EnumerationLimitError, InternalConsistencyError
from app.models.lattice import (
    Interpretation,
    InterpretationPair,
    leq_precision,
    to_truth_value,
)
from app.models.program import Program
from app.services.connectives.registry import ConnectiveRegistry, connective_registry
from app.services.fixpoint.iteration import iterate, lfp_monotone
from app.services.fixpoint.policy import ConvergencePolicy, FixpointResult, FixpointStatus
from app.services.semantics.approximators import Approximator, StandardApproximator
from app.services.semantics.operators import check_signature, is_model, reduct, tp

logger = logging.getLogger(__name__)


def grid_points(resolution: int, policy: ConvergencePolicy) -> List:
    """The values 0, 1/n, ..., 1 in the policy's arithmetic."""
    if resolution < 1:
        raise ValueError("grid resolution must be 1/n for a positive integer n")
    return [to_truth_value(Fraction(k, resolution), policy.mode) for k in range(resolution + 1)]


class SemanticsService:
    """
    Fixpoint semantics of normal fuzzy logic programs.

    Every construction takes an optional approximator strategy; the standard
    approximator A_P is used when none is given, and the ultimate
    approximator plugs into the same constructions.
    """

    def __init__(self, registry: ConnectiveRegistry = connective_registry):
        self.registry = registry

    def _approximator(self, program: Program, approximator: Optional[Approximator]) -> Approximator:
        return approximator or StandardApproximator(program, self.registry)

    def least_model(self, program: Program, policy: ConvergencePolicy) -> FixpointResult:
        """Least fixpoint of T_P from bottom (the least model for positive programs)."""
        bottom = Interpretation.bottom(program.atoms, policy.mode)
        return lfp_monotone(lambda value: tp(program, value, self.registry), bottom, policy, "T_P")

    def kripke_kleene(self, program: Program, policy: ConvergencePolicy,
                      approximator: Optional[Approximator] = None) -> FixpointResult:
        """
        Kripke-Kleene fixpoint: <=p-least fixpoint of the approximator, from (bottom, top).

        Returns:
            FixpointResult whose value is an InterpretationPair
        """
        approx = self._approximator(program, approximator)
        start = InterpretationPair.least_precise(program.atoms, policy.mode)
        result = iterate(approx.apply, start, policy, leq_precision, approx.name)
        logger.info("Kripke-Kleene fixpoint (%s): %s after %d steps", approx.name, result.status.value, result.steps)
        return result

    def stable_approximator(self, program: Program, pair: InterpretationPair, policy: ConvergencePolicy,
                            approximator: Optional[Approximator] = None) -> InterpretationPair:
        """
        Stable approximator: (lfp of z -> fst A(z, U), lfp of z -> snd A(L, z)).

        Both inner least fixpoints are iterated from bottom.

        Raises:
            IterationBudgetExhausted: If an inner fixpoint does not converge
        """
        return self._stable_step(program, pair, policy, approximator)[0]

    def _stable_step(self, program: Program, pair: InterpretationPair, policy: ConvergencePolicy,
                     approximator: Optional[Approximator]) -> Tuple[InterpretationPair, FixpointStatus]:
        # status is the weaker of the two inner statuses
        approx = self._approximator(program, approximator)
        check_signature(program, pair.lower)
        inner = policy.without_trace()
        bottom = Interpretation.bottom(pair.atoms, policy.mode)
        lower = lfp_monotone(
            lambda z: approx.lower_bound(z, pair.upper), bottom, inner, f"fst {approx.name}(., U)"
        ).require_converged()
        upper = lfp_monotone(
            lambda z: approx.upper_bound(pair.lower, z), bottom, inner, f"snd {approx.name}(L, .)"
        ).require_converged()
        status = FixpointStatus.CONVERGED
        if FixpointStatus.CONVERGED_WITHIN_EPSILON in (lower.status, upper.status):
            status = FixpointStatus.CONVERGED_WITHIN_EPSILON
        return InterpretationPair(lower.value, upper.value), status

    def well_founded(self, program: Program, policy: ConvergencePolicy,
                     approximator: Optional[Approximator] = None) -> FixpointResult:
        """
        Well-founded fixpoint: <=p-least fixpoint of the stable approximator, from (bottom, top).

        The visited pairs are kept in the result when the policy asks for a trace.
        A run whose inner least fixpoints stopped within epsilon is reported as
        converged_within_epsilon even when the outer iteration stabilized.
        """
        approx = self._approximator(program, approximator)
        start = InterpretationPair.least_precise(program.atoms, policy.mode)
        inner_statuses = set()

        def step(pair: InterpretationPair) -> InterpretationPair:
            value, status = self._stable_step(program, pair, policy, approx)
            inner_statuses.add(status)
            return value

        result = iterate(step, start, policy, leq_precision, f"{approx.name}^st")
        if result.status is FixpointStatus.CONVERGED and FixpointStatus.CONVERGED_WITHIN_EPSILON in inner_statuses:
            result.status = FixpointStatus.CONVERGED_WITHIN_EPSILON
        logger.info("Well-founded fixpoint (%s): %s after %d steps", approx.name, result.status.value, result.steps)
        return result

    def is_partial_stable(self, program: Program, pair: InterpretationPair, policy: ConvergencePolicy,
                          approximator: Optional[Approximator] = None) -> bool:
        """True iff the pair is a fixpoint of the stable approximator."""
        return policy.same(self.stable_approximator(program, pair, policy, approximator), pair)

    def is_stable_model(self, program: Program, interpretation: Interpretation,
                        policy: ConvergencePolicy) -> bool:
        """
        Decide whether I is a stable model, in two ways: I is the least model
        of the reduct P_I, and (I, I) is a fixpoint of the stable approximator.

        Raises:
            InternalConsistencyError: If the two characterizations disagree
        """
        reduced = reduct(program, interpretation)
        least = self.least_model(reduced, policy.without_trace()).require_converged().value
        by_reduct = policy.same(least, interpretation)
        by_approximator = self.is_partial_stable(program, InterpretationPair.exact(interpretation), policy)
        if by_reduct != by_approximator:
            raise InternalConsistencyError(
                f"stable-model characterizations disagree for {interpretation!r}: "
                f"reduct says {by_reduct}, stable approximator says {by_approximator}"
            )
        return by_reduct

    def _grid(self, program: Program, resolution: int, policy: ConvergencePolicy,
              below: Optional[Interpretation] = None) -> Iterator[Interpretation]:
        atoms = program.atoms
        points = grid_points(resolution, policy)
        columns = [
            [value for value in points if below is None or value <= below[atom]]
            for atom in atoms
        ]
        size = 1
        for column in columns:
            size *= len(column)
        cap = get_enumeration_cap()
        if size > cap:
            raise EnumerationLimitError(
                f"grid 1/{resolution} over {len(atoms)} atoms has {size} points, above the cap of {cap} "
                "(FLP_ENUMERATION_CAP); use a coarser grid"
            )
        for values in itertools.product(*columns):
            yield Interpretation._trusted(dict(zip(atoms, values)))

    def enumerate_stable_models(self, program: Program, resolution: int,
                                policy: ConvergencePolicy) -> List[Interpretation]:
        """
        Stable models whose values all lie on the grid 0, 1/n, ..., 1.

        Args:
            program: Program to search
            resolution: n, for the grid step 1/n
            policy: Convergence policy

        Returns:
            Grid stable models, sorted by their value vectors

        Raises:
            EnumerationLimitError: If (n+1)^|atoms| exceeds FLP_ENUMERATION_CAP
        """
        models = []
        checked = 0
        for candidate in self._grid(program, resolution, policy):
            # stable models are fixpoints of T_P
            if not policy.same(tp(program, candidate, self.registry), candidate):
                continue
            checked += 1
            if self.is_stable_model(program, candidate, policy):
                models.append(candidate)
        logger.info("Grid 1/%d: %d fixpoints of T_P, %d stable", resolution, checked, len(models))
        return sorted(models, key=lambda model: tuple(model.values()))

    def is_model_minimal_on_grid(self, program: Program, interpretation: Interpretation,
                                 resolution: int, policy: ConvergencePolicy) -> bool:
        """True iff no grid interpretation strictly below I is a model of the program."""
        for candidate in self._grid(program, resolution, policy, below=interpretation):
            if candidate != interpretation and is_model(program, candidate, self.registry):
                return False
        return True


# Singleton instance
semantics_service = SemanticsService()
